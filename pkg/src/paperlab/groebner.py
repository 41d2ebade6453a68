"""Groebner bases over F_p: division, Buchberger, elimination, dimension and
Hilbert series of monomial ideals.

Internally polynomials are plain ``{monomial: coeff}`` dicts and basis
elements are kept monic.  Pair selection is the normal strategy (smallest
lcm degree first, FIFO among ties) with the Gebauer-Moeller criteria, so a
run is fully deterministic for a given generator list.
"""

from __future__ import annotations

import heapq
import logging
from functools import lru_cache
from itertools import count
from operator import add, sub

from .arith import inverse_mod
from .polyring import MonomialOrder, Polynomial, PolynomialRing

log = logging.getLogger(__name__)


class OrderError(ValueError):
    pass


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


def _coprime(a, b):
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


class _Elem:
    """A monic basis element with cached leading data."""

    __slots__ = ("lm", "mask", "terms", "tail")

    def __init__(self, terms, lm):
        self.terms = terms
        self.lm = lm
        self.mask = _mask(lm)
        self.tail = [(m, c) for m, c in terms.items() if m != lm]


def _leading(terms, dkey):
    return min(terms, key=dkey)


def _make_monic(terms, dkey, p):
    lm = _leading(terms, dkey)
    c = terms[lm]
    if c != 1:
        ci = inverse_mod(c, p)
        terms = {m: (v * ci) % p for m, v in terms.items()}
    return terms, lm


def _find_divisor(m, mmask, basis):
    for g in basis:
        if g.mask & ~mmask == 0 and _divides(g.lm, m):
            return g
    return None


def _reduce(terms, basis, dkey, p, full=True, quotients=None):
    """Normal form of ``terms`` with respect to ``basis`` (monic elements).

    With ``full=False`` only the leading term is reduced (stops at the first
    irreducible leading term).  When ``quotients`` is a dict it collects
    ``{id(basis element): {monomial: coeff}}``.
    """
    if not basis:
        return dict(terms)
    f = dict(terms)
    heap = [(dkey(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    while heap:
        _, m = heapq.heappop(heap)
        c = f.pop(m, 0)
        if not c:
            continue
        g = _find_divisor(m, _mask(m), basis)
        if g is None:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        q = tuple(map(sub, m, g.lm))
        if quotients is not None:
            qd = quotients.setdefault(id(g), {})
            qd[q] = (qd.get(q, 0) + c) % p
        for gm, gc in g.tail:
            nm = tuple(map(add, gm, q))
            old = f.get(nm)
            if old is None:
                v = (-c * gc) % p
                if v:
                    f[nm] = v
                    heapq.heappush(heap, (dkey(nm), nm))
            else:
                v = (old - c * gc) % p
                if v:
                    f[nm] = v
                else:
                    del f[nm]
    return rem


def _spoly(a, b, dkey, p):
    lcm = _lcm(a.lm, b.lm)
    qa = tuple(map(sub, lcm, a.lm))
    qb = tuple(map(sub, lcm, b.lm))
    out = {}
    for m, c in a.tail:
        nm = tuple(map(add, m, qa))
        out[nm] = c
    for m, c in b.tail:
        nm = tuple(map(add, m, qb))
        v = (out.get(nm, 0) - c) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return out


class GroebnerStats:
    def __init__(self):
        self.pairs_considered = 0
        self.pairs_reduced = 0
        self.zero_reductions = 0
        self.truncated_at = None

    def as_dict(self):
        return dict(pairs_considered=self.pairs_considered,
                    pairs_reduced=self.pairs_reduced,
                    zero_reductions=self.zero_reductions,
                    truncated_at=self.truncated_at)


def buchberger_raw(gens, ring, degree_bound=None, stats=None):
    """Reduced Groebner basis of the dict-polynomials ``gens``.

    Returns a list of monic dicts sorted by increasing leading monomial.
    With ``degree_bound`` set, pairs whose lcm degree exceeds the bound are
    skipped, which for homogeneous input gives a basis truncated at that
    degree.
    """
    p = ring.p
    dkey = ring.dkey
    deg = ring.mono_degree
    stats = stats if stats is not None else GroebnerStats()
    elems = []        # every element ever added, by index
    current = []      # indices of elements in the current basis G
    pairs = []        # heap of (lcm degree, serial, i, j)
    serial = count()

    def usable():
        return [elems[k] for k in current]

    def update(h):
        nonlocal current, pairs
        hlm = elems[h].lm
        cands = [(g, _lcm(elems[g].lm, hlm)) for g in current]
        kept = []
        for idx, (g, l) in enumerate(cands):
            if _coprime(elems[g].lm, hlm):
                kept.append((g, l, True))
                continue
            redundant = False
            for g2, l2 in cands[idx + 1:]:
                if _divides(l2, l):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in kept:
                    if _divides(l2, l):
                        redundant = True
                        break
            if not redundant:
                kept.append((g, l, False))
        new_pairs = []
        for entry in pairs:
            d, s, i, j = entry
            l = _lcm(elems[i].lm, elems[j].lm)
            if (_divides(hlm, l) and _lcm(elems[i].lm, hlm) != l
                    and _lcm(elems[j].lm, hlm) != l):
                continue
            new_pairs.append(entry)
        for g, l, coprime in kept:
            if coprime:
                continue
            new_pairs.append((deg(l), next(serial), g, h))
        heapq.heapify(new_pairs)
        pairs = new_pairs
        current = [g for g in current if not _divides(hlm, elems[g].lm)] + [h]

    def add_elem(terms):
        terms, lm = _make_monic(terms, dkey, p)
        elems.append(_Elem(terms, lm))
        update(len(elems) - 1)
        return elems[-1]

    # seed: reduce inputs one at a time, ordered for determinism by degree
    order = sorted(range(len(gens)), key=lambda k: (max((deg(m) for m in gens[k]), default=0), k))
    for k in order:
        g = {m: c % p for m, c in gens[k].items() if c % p}
        if not g:
            continue
        r = _reduce(g, usable(), dkey, p)
        if r:
            e = add_elem(r)
            if e.lm == ring.zero_mono:
                return [{ring.zero_mono: 1}]

    while pairs:
        d, _, i, j = heapq.heappop(pairs)
        stats.pairs_considered += 1
        if degree_bound is not None and d > degree_bound:
            stats.truncated_at = degree_bound
            continue
        s = _spoly(elems[i], elems[j], dkey, p)
        stats.pairs_reduced += 1
        r = _reduce(s, usable(), dkey, p) if s else {}
        if not r:
            stats.zero_reductions += 1
            continue
        e = add_elem(r)
        if e.lm == ring.zero_mono:
            return [{ring.zero_mono: 1}]

    # minimal basis, then interreduce tails
    basis = [elems[k] for k in current]
    basis.sort(key=lambda e: dkey(e.lm), reverse=True)
    reduced = []
    for idx, e in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        tail = _reduce(dict(e.tail), others, dkey, p)
        t = dict(tail)
        t[e.lm] = 1
        reduced.append(t)
    return reduced


# ---------------------------------------------------------------------------
# public API
# ---------------------------------------------------------------------------

def _as_dicts(polys, ring):
    out = []
    for f in polys:
        if f.ring != ring:
            raise ValueError("generators live in different rings")
        out.append(f.coeffs)
    return out


def reduce(f, basis):
    """Divide ``f`` by ``basis``: returns ``(normal_form, quotients)``.

    The reducer for each term is the first basis element (list order) whose
    leading monomial divides it, so ``f == sum(q*b) + normal_form``.
    """
    ring = f.ring
    p, dkey = ring.p, ring.dkey
    elems, scales = [], []
    for b in basis:
        if b.ring != ring:
            raise ValueError("basis element in a different ring")
        if b.is_zero():
            elems.append(None)
            scales.append(0)
            continue
        terms, lm = _make_monic(dict(b.coeffs), dkey, p)
        elems.append(_Elem(terms, lm))
        scales.append(inverse_mod(b.coeffs[lm], p))
    live = [e for e in elems if e is not None]
    quot = {}
    nf = _reduce(f.coeffs, live, dkey, p, quotients=quot)
    quotients = []
    for e, s in zip(elems, scales):
        if e is None:
            quotients.append(ring.zero())
        else:
            q = quot.get(id(e), {})
            quotients.append(ring.from_dict({m: c * s for m, c in q.items()}))
    return Polynomial(ring, nf), quotients


def normal_form(f, basis_elems, ring):
    return Polynomial(ring, _reduce(f.coeffs, basis_elems, ring.dkey, ring.p))


def buchberger(gens, degree_bound=None, stats=None):
    """Reduced Groebner basis (list of monic Polynomials) of ``gens``."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    raw = buchberger_raw(_as_dicts(gens, ring), ring, degree_bound, stats)
    return [Polynomial(ring, t) for t in raw]


def s_polynomial(f, g):
    ring = f.ring
    dkey, p = ring.dkey, ring.p
    a = _Elem(*_make_monic(dict(f.coeffs), dkey, p))
    b = _Elem(*_make_monic(dict(g.coeffs), dkey, p))
    return Polynomial(ring, _spoly(a, b, dkey, p))


class Ideal:
    """An ideal of a polynomial ring, with a lazily cached reduced basis."""

    def __init__(self, ring, generators, gb=None, truncated_at=None):
        self.ring = ring
        self.generators = [g for g in generators]
        for g in self.generators:
            if g.ring != ring:
                raise ValueError("generator in a different ring")
        self._gb = gb
        self._elems = None
        self.truncated_at = truncated_at
        self.stats = None

    @property
    def order(self):
        return self.ring.order

    def __repr__(self):
        return f"Ideal({[str(g) for g in self.generators]})"

    def groebner_basis(self, degree_bound=None):
        if self._gb is None or (degree_bound is None and self.truncated_at is not None):
            self.stats = GroebnerStats()
            self._gb = buchberger(self.generators, degree_bound, self.stats)
            self.truncated_at = self.stats.truncated_at
            self._elems = None
        return self._gb

    def _basis_elems(self):
        if self._elems is None:
            self._elems = [_Elem(dict(g.coeffs), g.leading_monomial()) for g in self.groebner_basis()]
        return self._elems

    def is_zero(self):
        return not self.groebner_basis()

    def is_unit(self):
        gb = self.groebner_basis()
        return len(gb) == 1 and gb[0].leading_monomial() == self.ring.zero_mono

    def normal_form(self, f):
        return Polynomial(self.ring, _reduce(f.coeffs, self._basis_elems(), self.ring.dkey, self.ring.p))

    def contains(self, f):
        return self.normal_form(f).is_zero()

    def initial_ideal(self):
        return MonomialIdeal(self.ring.nvars, [g.leading_monomial() for g in self.groebner_basis()])

    def krull_dimension(self):
        return krull_dimension(self)

    def hilbert_series(self):
        return hilbert_series(self.initial_ideal(), self.ring.weights)


def ideal_membership(f, ideal):
    return ideal.contains(f)


def elimination_ideal(ideal, keep):
    """Intersect ``ideal`` with the subring on the trailing ``keep`` variables.

    The ring order must be a block order whose first block is exactly the
    eliminated variables.
    """
    ring = ideal.ring
    order = ring.order
    n_elim = ring.nvars - keep
    if order.kind != "block" or order.block != n_elim:
        raise OrderError(f"elimination of {n_elim} variables needs block order "
                         f"with first block {n_elim}, got {order.describe()}")
    small = PolynomialRing(ring.field, ring.names[n_elim:], ring.weights[n_elim:], MonomialOrder("grevlex"))
    kept = []
    for g in ideal.groebner_basis():
        if all(not any(m[:n_elim]) for m in g.coeffs):
            kept.append(Polynomial(small, {m[n_elim:]: c for m, c in g.coeffs.items()}))
    kept.sort(key=lambda g: small.dkey(g.leading_monomial()), reverse=True)
    return Ideal(small, kept, gb=kept, truncated_at=ideal.truncated_at)


# ---------------------------------------------------------------------------
# monomial ideals
# ---------------------------------------------------------------------------

def _minimalize(monos):
    monos = sorted(set(monos), key=lambda m: (sum(m), m))
    out = []
    for m in monos:
        if not any(_divides(g, m) for g in out):
            out.append(m)
    return out


class MonomialIdeal:
    """Monomial ideal given by its minimal generators (an antichain)."""

    def __init__(self, nvars, monomials):
        self.nvars = nvars
        self.generators = tuple(_minimalize(tuple(m) for m in monomials))

    def __eq__(self, other):
        return isinstance(other, MonomialIdeal) and set(self.generators) == set(other.generators)

    def __repr__(self):
        return f"MonomialIdeal({list(self.generators)})"

    def contains(self, m):
        return any(_divides(g, m) for g in self.generators)

    def is_unit(self):
        return (0,) * self.nvars in self.generators


def initial_ideal(ideal):
    return ideal.initial_ideal()


def krull_dimension(ideal_or_monomial):
    """Dimension of ``ring / I`` as the largest set of variables containing
    the support of no minimal generator of the initial ideal; -1 for the
    unit ideal."""
    if isinstance(ideal_or_monomial, Ideal):
        mono = ideal_or_monomial.initial_ideal()
    else:
        mono = ideal_or_monomial
    if mono.is_unit():
        return -1
    n = mono.nvars
    supports = sorted({_mask(g) for g in mono.generators}, key=lambda s: bin(s).count("1"))
    best = 0

    def search(i, chosen, size):
        nonlocal best
        if size + (n - i) <= best:
            return
        if i == n:
            best = size
            return
        with_i = chosen | (1 << i)
        if not any(s & ~with_i == 0 for s in supports):
            search(i + 1, with_i, size + 1)
        search(i + 1, chosen, size)

    search(0, 0, 0)
    return best


class HilbertSeries:
    """``numerator(s) / prod(1 - s^w)`` with an integer numerator."""

    def __init__(self, numerator, weights):
        num = list(numerator)
        while len(num) > 1 and num[-1] == 0:
            num.pop()
        self.numerator = num or [0]
        self.weights = tuple(weights)

    def __eq__(self, other):
        return (isinstance(other, HilbertSeries) and self.numerator == other.numerator
                and sorted(self.weights) == sorted(other.weights))

    def expand(self, upto):
        """Coefficients of s^0..s^upto."""
        coeffs = [self.numerator[k] if k < len(self.numerator) else 0 for k in range(upto + 1)]
        for w in self.weights:
            for k in range(w, upto + 1):
                coeffs[k] += coeffs[k - w]
        return coeffs

    def pole_order(self):
        """Order of the pole at s = 1, i.e. the dimension."""
        num = list(self.numerator)
        k = 0
        while any(num):
            if sum(num) != 0:
                break
            # divide by (1 - s)
            q = []
            acc = 0
            for c in num[:-1]:
                acc += c
                q.append(acc)
            num = q
            k += 1
        else:
            return -1
        return len(self.weights) - k

    def __str__(self):
        terms = []
        for k, c in enumerate(self.numerator):
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            body = "1" if k == 0 else ("s" if k == 1 else f"s^{k}")
            if k and mag == 1:
                piece = body
            elif k:
                piece = f"{mag}*{body}"
            else:
                piece = str(mag)
            terms.append((sign, piece))
        if not terms:
            num = "0"
        else:
            num = ("-" if terms[0][0] == "-" else "") + terms[0][1]
            num += "".join(f" {s} {t}" for s, t in terms[1:])
        den = "".join(f"(1 - s^{w})" if w > 1 else "(1 - s)" for w in self.weights)
        return f"({num}) / ({den or '1'})"


def _poly_mul(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_add(a, b):
    n = max(len(a), len(b))
    return [(a[k] if k < len(a) else 0) + (b[k] if k < len(b) else 0) for k in range(n)]


@lru_cache(maxsize=None)
def _numerator(gens, weights):
    """Numerator of the Hilbert series of ring/(gens) over prod(1 - s^w)."""
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return (0,)

    def mdeg(m):
        return sum(e * w for e, w in zip(m, weights))

    # pairwise coprime generators: product formula
    if all(_coprime(a, b) for i, a in enumerate(gens) for b in gens[i + 1:]):
        out = [1]
        for g in gens:
            d = mdeg(g)
            out = _poly_mul(out, [1] + [0] * (d - 1) + [-1])
        return tuple(out)
    # pivot on the variable occurring in most generators
    n = len(weights)
    occ = [sum(1 for g in gens if g[i]) for i in range(n)]
    v = max(range(n), key=lambda i: (occ[i], -i))
    pivot = [0] * n
    pivot[v] = 1
    pivot = tuple(pivot)
    # ring/I has series H(I + x) + s^w H(I : x)
    plus = tuple(_minimalize(list(gens) + [pivot]))
    colon = tuple(_minimalize([tuple(e - 1 if i == v and e else e for i, e in enumerate(g)) for g in gens]))
    a = list(_numerator(plus, weights))
    b = [0] * weights[v] + list(_numerator(colon, weights))
    return tuple(_poly_add(a, b))


def hilbert_series(mono_ideal, weights):
    weights = tuple(weights)
    if len(weights) != mono_ideal.nvars:
        raise ValueError("one weight per variable required")
    gens = tuple(sorted(mono_ideal.generators))
    return HilbertSeries(_numerator(gens, weights), weights)
