"""An invariant ring as a finite module over a polynomial subring.

Let theta_1..theta_r be algebraically independent homogeneous invariants of
H over which S = T^H is finite, and R = K[theta].  S is then a finitely
generated graded R-module and, R being a polynomial ring, the graded
Auslander-Buchsbaum formula gives ``depth S = r - pd_R S``.

Module generators are read off degree by degree as a complement of
``theta * S`` in S.  Relations are the kernel of the evaluation map
``R^k -> S``, found by linear algebra inside each block-degree piece of T;
relations generated by lower-degree ones are discarded.  Relations are
collected until the Hilbert series of ``R^k / relations`` equals the
(independently known) Hilbert series of S, which certifies the
presentation.  The cokernel is then resolved over R.

When the ring of S has many generators this is far cheaper than
resolving its presentation ideal: the free modules involved have rank
around ``|G/H|`` instead of the thousands of syzygies of the ideal.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

from .arith import RowSpace, kernel_rows
from .groebner import MonomialIdeal, hilbert_series
from .invariants import InvariantEngine, engine_for
from .polyring import PolynomialRing, monomials_of_degree
from .resolution import module_leading_terms, resolve_module

log = logging.getLogger(__name__)


class NormalizationError(ValueError):
    pass


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _denominator(weights):
    out = [1]
    for w in weights:
        out = _poly_mul(out, [1] + [0] * (w - 1) + [-1])
    return out


def _trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _same_series(numerator, weights, series):
    lhs = _poly_mul(list(numerator) or [0], _denominator(series.weights))
    rhs = _poly_mul(series.numerator, _denominator(weights))
    return _trim(lhs) == _trim(rhs)


@dataclass
class ModulePresentation:
    """``S = R^k / relations`` with generators ``generators`` of S."""

    ring: PolynomialRing
    theta: list
    generators: list
    shifts: list
    relations: list
    top_degree: int
    betti: object = field(default=None, repr=False)

    @property
    def num_generators(self):
        return len(self.generators)

    def hilbert_numerator(self):
        """Numerator over ``prod(1 - s^deg theta)`` from the initial module."""
        lead = module_leading_terms(self.ring, self.shifts, self.relations)
        by_comp = {}
        for comp, m in lead:
            by_comp.setdefault(comp, []).append(m)
        total = [0]
        for j, shift in enumerate(self.shifts):
            mono = MonomialIdeal(self.ring.nvars, by_comp.get(j, []))
            num = [0] * shift + hilbert_series(mono, self.ring.weights).numerator
            size = max(len(total), len(num))
            total = [(total[k] if k < len(total) else 0) + (num[k] if k < len(num) else 0)
                     for k in range(size)]
        return _trim(total)

    def matches_series(self, series):
        """Exact comparison with a HilbertSeries given over other weights."""
        return _same_series(self.hilbert_numerator(), self.ring.weights, series)

    def euler_check(self, series):
        """Alternating Betti sum over R equals the Hilbert numerator of S."""
        return _same_series(self.resolve().euler_numerator(), self.ring.weights, series)

    def resolve(self):
        if self.betti is None:
            self.betti = resolve_module(self.ring, self.shifts, self.relations)
        return self.betti

    @property
    def depth(self):
        return self.ring.nvars - self.resolve().projective_dimension


def _coarsen(blocks, polys):
    """Merge blocks until every polynomial lives in a single block degree."""
    owner = {}
    for b, idx in enumerate(blocks):
        for i in idx:
            owner[i] = b
    parent = list(range(len(blocks)))

    def find(b):
        while parent[b] != b:
            parent[b] = parent[parent[b]]
            b = parent[b]
        return b
    for f in polys:
        touched = {owner[i] for m in f.coeffs for i, e in enumerate(m) if e}
        first = min(touched, default=None)
        for b in touched:
            parent[find(b)] = find(first)
    merged = {}
    for b, idx in enumerate(blocks):
        merged.setdefault(find(b), []).extend(idx)
    return sorted(sorted(idx) for idx in merged.values())


class _Builder:
    def __init__(self, H, ambient, theta):
        self.eng = engine_for(H, ambient)
        # monomials of a theta must share a block degree; theta touching
        # several blocks therefore merges them
        blocks = _coarsen(self.eng.blocks, [f for f in theta if not f.is_zero()])
        if blocks != self.eng.blocks:
            self.eng = InvariantEngine(H, ambient, blocks)
        self.p = ambient.p
        self.theta = list(theta)
        self.tdeg = []
        self.tbdeg = []
        for f in self.theta:
            if f.is_zero() or not f.is_homogeneous():
                raise NormalizationError(f"{f} is zero or not homogeneous")
            pieces = self.eng.split_by_piece(f)
            if len(pieces) != 1:
                raise NormalizationError(f"{f} is not homogeneous in block degree")
            self.tdeg.append(f.degree())
            self.tbdeg.append(next(iter(pieces)))
        r = len(self.theta)
        self.R = PolynomialRing(self.p, [f"r{i + 1}" for i in range(r)], self.tdeg)
        self._tmonos = {}
        self._values = {self.R.zero_mono: ambient.one()}

    def theta_monomials(self, n, bdeg):
        """Monomials in theta of degree n and block degree bdeg."""
        if n < 0 or min(bdeg) < 0:
            return []
        if n not in self._tmonos:
            groups = {}
            for m in monomials_of_degree(self.R, n):
                b = [0] * len(bdeg)
                for i, e in enumerate(m):
                    if e:
                        for k, v in enumerate(self.tbdeg[i]):
                            b[k] += e * v
                groups.setdefault(tuple(b), []).append(m)
            self._tmonos[n] = groups
        return self._tmonos[n].get(bdeg, [])

    def value(self, m):
        v = self._values.get(m)
        if v is None:
            i = next(k for k, e in enumerate(m) if e)
            rest = m[:i] + (m[i] - 1,) + m[i + 1:]
            v = self.theta[i] * self.value(rest)
            self._values[m] = v
        return v

    def module_generators(self, run):
        """Complement of ``theta * S`` in S, degree by degree, until ``run``
        consecutive degrees contribute nothing."""
        eng = self.eng
        gens = []
        quiet, n = 0, 0
        while quiet < run:
            found = 0
            for bdeg, monos in eng.pieces(n).items():
                basis = eng.piece_basis(n, bdeg)
                if not basis:
                    continue
                space = RowSpace(len(monos), self.p)
                for i, f in enumerate(self.theta):
                    lower = tuple(a - b for a, b in zip(bdeg, self.tbdeg[i]))
                    rest = n - self.tdeg[i]
                    if rest < 0 or min(lower) < 0 or lower not in eng.pieces(rest):
                        continue
                    for v in eng.piece_basis(rest, lower):
                        prod = f * eng.vec_to_poly(rest, lower, v)
                        space.add(eng.poly_to_vec(n, bdeg, prod))
                for v in basis:
                    if space.add(v):
                        gens.append((eng.vec_to_poly(n, bdeg, v), n, bdeg))
                        found += 1
            quiet = 0 if found else quiet + 1
            n += 1
        return gens

    def relations_in_piece(self, gens, n, bdeg, kernels):
        """Kernel of the evaluation map on the (n, bdeg) piece and the part
        of it not generated by lower-degree kernels."""
        eng = self.eng
        domain = []
        for j, (_, dj, bj) in enumerate(gens):
            want = tuple(a - b for a, b in zip(bdeg, bj))
            for mu in self.theta_monomials(n - dj, want):
                domain.append((j, mu))
        if not domain:
            return [], []
        index = {k: c for c, k in enumerate(domain)}
        monos = eng.pieces(n)[bdeg]
        mindex = {m: r for r, m in enumerate(monos)}
        rows = {}
        for c, (j, mu) in enumerate(domain):
            img = self.value(mu) * gens[j][0]
            for m, v in img.coeffs.items():
                rows.setdefault(mindex[m], [0] * len(domain))[c] = v
        kernel = kernel_rows([rows[r] for r in sorted(rows)], len(domain), self.p)
        if not kernel:
            return [], []
        space = RowSpace(len(domain), self.p)
        for i in range(len(self.theta)):
            lower = (n - self.tdeg[i], tuple(a - b for a, b in zip(bdeg, self.tbdeg[i])))
            for rel in kernels.get(lower, ()):
                vec = [0] * len(domain)
                for (j, mu), c in rel.items():
                    shifted = mu[:i] + (mu[i] + 1,) + mu[i + 1:]
                    vec[index[(j, shifted)]] = c
                space.add(vec)
        full = [{domain[c]: v for c, v in enumerate(vec) if v} for vec in kernel]
        new = [full[k] for k, vec in enumerate(kernel) if space.add(vec)]
        return full, new


def module_presentation(H, ambient, theta, series, run, max_degree=64):
    """Present ``S = T^H`` as a module over ``K[theta]``.

    ``series`` is the Hilbert series of S (for instance from a presentation
    of S as an algebra); relations are collected until it is matched.
    ``run`` is the largest degree of an algebra generator of S: once that
    many consecutive degrees of ``S / theta S`` vanish, every product of
    generators passes through the window, so all higher degrees vanish too.
    """
    b = _Builder(H, ambient, theta)
    gens = b.module_generators(run)
    shifts = [d for _, d, _ in gens]
    log.info("module generators over R: %d, degrees %s", len(gens), shifts)
    kernels = {}
    relations = []
    pres = ModulePresentation(b.R, b.theta, [g for g, _, _ in gens], shifts, relations, 0)
    top = max(shifts)
    n = min(shifts)
    dirty = True
    while n <= max_degree:
        added = 0
        for bdeg in b.eng.pieces(n):
            full, new = b.relations_in_piece(gens, n, bdeg, kernels)
            if full:
                kernels[(n, bdeg)] = full
            for rel in new:
                relations.append({(j, mu): c for (j, mu), c in rel.items()})
                added += 1
        dirty = dirty or added > 0
        if added:
            log.info("degree %d: %d new relations", n, added)
        if n >= top and dirty:
            dirty = False
            if pres.matches_series(series):
                pres.top_degree = n
                return pres
        n += 1
    raise NormalizationError(f"module presentation not certified by degree {max_degree}")
