"""Minimal graded free resolutions over a weighted polynomial ring.

Each step takes homogeneous candidate generators of a submodule of a free
module, runs a degree-by-degree Groebner basis computation in which the
candidates of degree d are reduced only after every S-pair of degree d,
and keeps exactly the candidates that survive.  Those survivors are a
minimal generating set.  Every basis element remembers its expression in
the survivors, so each S-pair that reduces to zero yields a syzygy among
them (Schreyer), and these syzygies are the candidates of the next step.

Module elements are dicts ``{(component, monomial): coeff}``.  The term
order compares shifted total degree, then the ring order on the monomial,
then the component (lower index is larger).
"""

from __future__ import annotations

import heapq
import logging
from dataclasses import dataclass, field
from itertools import count
from operator import add, sub

from .arith import inverse_mod

log = logging.getLogger(__name__)


def _mask(m):
    bits = 0
    for i, e in enumerate(m):
        if e:
            bits |= 1 << i
    return bits


def _divides(a, b):
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def _lcm(a, b):
    return tuple(x if x > y else y for x, y in zip(a, b))


class _MElem:
    __slots__ = ("comp", "lm", "mask", "tail", "rep", "degree")

    def __init__(self, terms, lead, rep, degree):
        self.comp, self.lm = lead
        self.mask = _mask(self.lm)
        self.tail = [(k, c) for k, c in terms.items() if k != lead]
        self.rep = rep
        self.degree = degree


class _ModuleKernel:
    """Degree-driven module Groebner basis with representation tracking."""

    def __init__(self, ring, shifts):
        self.ring = ring
        self.p = ring.p
        self.shifts = shifts
        rdkey = ring.dkey
        mdeg = ring.mono_degree
        self.key = lambda t: (-(mdeg(t[1]) + shifts[t[0]]), rdkey(t[1]), t[0])
        self.by_comp = {}
        self.elems = []
        self.pairs = []
        self.serial = count()
        self.zero_pairs = 0

    def _scale(self, terms, c):
        p = self.p
        return {k: (v * c) % p for k, v in terms.items()}

    def _axpy(self, target, mono, coeff, terms):
        """target -= coeff * mono * terms (in place)."""
        p = self.p
        for (comp, m), c in terms:
            nk = (comp, tuple(map(add, m, mono)))
            v = (target.get(nk, 0) - coeff * c) % p
            if v:
                target[nk] = v
            else:
                target.pop(nk, None)

    def reduce(self, terms, rep):
        """Top-reduce ``terms`` (tracking ``rep``) until its leading term is
        irreducible or it vanishes.  Mutates and returns both."""
        key = self.key
        p = self.p
        while terms:
            lead = min(terms, key=key)
            comp, m = lead
            cands = self.by_comp.get(comp)
            g = None
            if cands:
                mm = _mask(m)
                for e in cands:
                    if e.mask & ~mm == 0 and _divides(e.lm, m):
                        g = e
                        break
            if g is None:
                return terms, rep, lead
            c = terms.pop(lead)
            q = tuple(map(sub, m, g.lm))
            self._axpy(terms, q, c, g.tail)
            self._axpy(rep, q, c, g.rep.items())
        return terms, rep, None

    def add(self, terms, rep, lead, degree):
        c = terms[lead]
        if c != 1:
            ci = inverse_mod(c, self.p)
            terms = self._scale(terms, ci)
            rep = self._scale(rep, ci)
        e = _MElem(terms, lead, rep, degree)
        same = self.by_comp.setdefault(e.comp, [])
        j = len(self.elems)
        # Schreyer pruning: keep pairs whose lcm quotient on e is minimal
        quots = []
        for old in same:
            l = _lcm(old.lm, e.lm)
            quots.append((tuple(map(sub, l, e.lm)), old, l))
        for idx, (q, old, l) in enumerate(quots):
            if any(_divides(q2, q) and (q2 != q or idx2 < idx)
                   for idx2, (q2, _, _) in enumerate(quots) if idx2 != idx):
                continue
            d = self.ring.mono_degree(l) + self.shifts[e.comp]
            heapq.heappush(self.pairs, (d, next(self.serial), old, e, l))
        same.append(e)
        self.elems.append(e)
        return e

    def spair(self, a, b, l):
        qa = tuple(map(sub, l, a.lm))
        qb = tuple(map(sub, l, b.lm))
        terms, rep = {}, {}
        self._axpy(terms, qa, self.p - 1, a.tail)
        self._axpy(terms, qb, 1, b.tail)
        self._axpy(rep, qa, self.p - 1, a.rep.items())
        self._axpy(rep, qb, 1, b.rep.items())
        return terms, rep


def _module_degree(terms, ring, shifts):
    k = next(iter(terms))
    return ring.mono_degree(k[1]) + shifts[k[0]]


def minimal_generators_and_syzygies(ring, shifts, candidates):
    """Select a minimal generating set from ``candidates`` and compute
    generators of its syzygy module.

    Returns ``(minimal, minimal_degrees, syzygies)`` where ``syzygies`` are
    module elements over the free module on ``minimal`` (component k is the
    k-th minimal generator).
    """
    cands = []
    for order, c in enumerate(candidates):
        if c:
            cands.append((_module_degree(c, ring, shifts), order, c))
    cands.sort(key=lambda t: (t[0], t[1]))
    kernel = _ModuleKernel(ring, shifts)
    minimal, min_degs, syz = [], [], []
    zero = ring.zero_mono
    ci = 0
    while ci < len(cands) or kernel.pairs:
        next_c = cands[ci][0] if ci < len(cands) else None
        next_p = kernel.pairs[0][0] if kernel.pairs else None
        if next_p is not None and (next_c is None or next_p <= next_c):
            d, _, a, b, l = heapq.heappop(kernel.pairs)
            terms, rep = kernel.spair(a, b, l)
            terms, rep, lead = kernel.reduce(terms, rep)
            if lead is None:
                kernel.zero_pairs += 1
                if rep:
                    syz.append(rep)
            else:
                kernel.add(terms, rep, lead, d)
            continue
        d, _, c = cands[ci]
        ci += 1
        k = len(minimal)
        terms, rep, lead = kernel.reduce(dict(c), {(k, zero): 1})
        if lead is None:
            continue
        minimal.append(c)
        min_degs.append(d)
        kernel.add(terms, rep, lead, d)
    return minimal, min_degs, syz


@dataclass
class BettiTable:
    """Graded Betti numbers ``betti[i][j]`` of a minimal free resolution."""

    betti: dict
    differentials: list = field(default_factory=list, repr=False)
    step_times: list = field(default_factory=list, repr=False)

    @property
    def projective_dimension(self):
        return max((i for i, row in self.betti.items() if any(row.values())), default=0)

    def total(self, i):
        return sum(self.betti.get(i, {}).values())

    def totals(self):
        return [self.total(i) for i in range(self.projective_dimension + 1)]

    def euler_numerator(self):
        top = max((j for row in self.betti.values() for j in row), default=0)
        out = [0] * (top + 1)
        for i, row in self.betti.items():
            for j, b in row.items():
                out[j] += (-1) ** i * b
        return out

    def as_grid(self):
        """Rows indexed by ``j - i`` (the usual Macaulay-style layout)."""
        cells = {}
        for i, row in self.betti.items():
            for j, b in row.items():
                if b:
                    cells[(j - i, i)] = b
        if not cells:
            return [], []
        lo = min(r for r, _ in cells)
        hi = max(r for r, _ in cells)
        width = self.projective_dimension + 1
        rows = list(range(lo, hi + 1))
        return rows, [[cells.get((r, i), 0) for i in range(width)] for r in rows]

    def render(self):
        rows, grid = self.as_grid()
        width = self.projective_dimension + 1
        header = "       " + " ".join(f"{i:>5}" for i in range(width))
        lines = [header, "total: " + " ".join(f"{t:>5}" for t in self.totals())]
        for r, vals in zip(rows, grid):
            lines.append(f"{r:>5}: " + " ".join(f"{v:>5}" if v else "    ." for v in vals))
        return "\n".join(lines)

    def to_json(self):
        return {str(i): {str(j): b for j, b in sorted(row.items())} for i, row in sorted(self.betti.items())}


def resolve(ring, generators, max_steps=None):
    """Minimal free resolution of ``ring / (generators)``.

    ``generators`` are nonzero homogeneous Polynomials of ``ring``.  The
    returned table also keeps each differential as the list of minimal
    generator vectors (module dicts) of the corresponding syzygy module.
    """
    cands = [{(0, m): c for m, c in g.coeffs.items()} for g in generators if not g.is_zero()]
    return resolve_module(ring, [0], cands, max_steps)


def resolve_module(ring, shifts, relations, max_steps=None):
    """Minimal free resolution of the cokernel of ``relations`` inside the
    free module with generators in degrees ``shifts``."""
    import time

    row0 = {}
    for d in shifts:
        row0[d] = row0.get(d, 0) + 1
    betti = {0: dict(sorted(row0.items()))}
    differentials = []
    step_times = []
    shifts = list(shifts)
    cands = [r for r in relations if r]
    i = 1
    limit = ring.nvars + 1 if max_steps is None else max_steps
    while cands and i <= limit:
        t0 = time.perf_counter()
        minimal, degs, syz = minimal_generators_and_syzygies(ring, shifts, cands)
        step_times.append(time.perf_counter() - t0)
        log.info("resolution step %d: %d minimal generators, %d syzygy candidates",
                 i, len(minimal), len(syz))
        if not minimal:
            break
        row = {}
        for d in degs:
            row[d] = row.get(d, 0) + 1
        betti[i] = dict(sorted(row.items()))
        differentials.append(minimal)
        shifts = degs
        cands = syz
        i += 1
    if cands and i > limit:
        raise RuntimeError("resolution did not terminate within the syzygy bound")
    return BettiTable(betti, differentials, step_times)


def module_leading_terms(ring, shifts, generators):
    """Leading terms ``(component, monomial)`` of a Groebner basis of the
    submodule generated by ``generators``."""
    cands = []
    for order, c in enumerate(generators):
        if c:
            cands.append((_module_degree(c, ring, shifts), order, c))
    cands.sort(key=lambda t: (t[0], t[1]))
    kernel = _ModuleKernel(ring, shifts)
    ci = 0
    while ci < len(cands) or kernel.pairs:
        next_c = cands[ci][0] if ci < len(cands) else None
        next_p = kernel.pairs[0][0] if kernel.pairs else None
        if next_p is not None and (next_c is None or next_p <= next_c):
            d, _, a, b, l = heapq.heappop(kernel.pairs)
            terms, rep = kernel.spair(a, b, l)
        else:
            d, _, terms = cands[ci]
            terms, rep = dict(terms), {}
            ci += 1
        terms, rep, lead = kernel.reduce(terms, rep)
        if lead is not None:
            kernel.add(terms, rep, lead, d)
    return [(e.comp, e.lm) for e in kernel.elems]


def has_unit_entries(vectors):
    """Whether any vector has a nonzero constant coordinate."""
    for v in vectors:
        for (_, m), c in v.items():
            if c and not any(m):
                return True
    return False
