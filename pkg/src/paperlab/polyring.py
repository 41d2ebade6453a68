"""Weighted multivariate polynomial rings over F_p.

Monomials are exponent tuples; a :class:`Polynomial` wraps a dict
``{monomial: coefficient}`` with no zero coefficients.  Term orders are
expressed through a *descending key*: sorting monomials by ``order.dkey``
lists them from largest to smallest, and the same key drives the heaps in
the Groebner kernel.

The group action convention is ``f -> f(MX)`` where ``X`` is the column of
variables in ring order; this is a right action,
``f(MX)`` then ``(NX)`` gives ``f(MNX)``.
"""

from __future__ import annotations

import re
from functools import lru_cache
from operator import add

from .arith import MatrixFp, PrimeField, inverse_mod


class PolynomialSyntaxError(ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position


class RingMismatchError(ValueError):
    pass


# ---------------------------------------------------------------------------
# monomial orders
# ---------------------------------------------------------------------------

class MonomialOrder:
    """A term order on exponent tuples.

    ``kind`` is ``"grevlex"``, ``"lex"`` or ``"block"``.  The block order
    compares the first ``block`` variables by weighted grevlex and breaks
    ties by weighted grevlex on the remaining variables, so it eliminates
    the first block.
    """

    KINDS = ("grevlex", "lex", "block")

    def __init__(self, kind="grevlex", block=None):
        if kind not in self.KINDS:
            raise ValueError(f"unknown monomial order {kind!r}")
        if kind == "block" and (block is None or block < 0):
            raise ValueError("block order needs a nonnegative first-block size")
        self.kind = kind
        self.block = block if kind == "block" else None

    def __eq__(self, other):
        return isinstance(other, MonomialOrder) and (self.kind, self.block) == (other.kind, other.block)

    def __hash__(self):
        return hash((self.kind, self.block))

    def __repr__(self):
        if self.kind == "block":
            return f"MonomialOrder('block', {self.block})"
        return f"MonomialOrder({self.kind!r})"

    def describe(self):
        return f"block({self.block})" if self.kind == "block" else self.kind

    @classmethod
    def parse(cls, text):
        """Accept ``grevlex``, ``lex`` or ``block:k`` / ``block(k)``."""
        m = re.fullmatch(r"\s*block\s*[:(]\s*(\d+)\s*\)?\s*", text)
        if m:
            return cls("block", int(m.group(1)))
        return cls(text.strip())

    def make_dkey(self, weights):
        """Descending key: ``dkey(a) < dkey(b)`` iff ``a > b`` in this order."""
        weights = tuple(weights)
        if self.kind == "lex":
            return lambda m: tuple(-e for e in m)
        if self.kind == "grevlex":
            if all(w == 1 for w in weights):
                return lambda m: (-sum(m), m[::-1])
            return lambda m: (-sum(map(int.__mul__, m, weights)), m[::-1])
        k = self.block
        w1, w2 = weights[:k], weights[k:]

        def dkey(m):
            a, b = m[:k], m[k:]
            return (-sum(map(int.__mul__, a, w1)), a[::-1],
                    -sum(map(int.__mul__, b, w2)), b[::-1])
        return dkey


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


# ---------------------------------------------------------------------------
# rings
# ---------------------------------------------------------------------------

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")


class PolynomialRing:
    """F_p[names] with positive integer weights and a default term order."""

    def __init__(self, p, names, weights=None, order=GREVLEX):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.p = self.field.p
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("variable names must be unique")
        for name in names:
            if not _NAME_RE.fullmatch(name):
                raise ValueError(f"invalid variable name {name!r}")
        weights = tuple(int(w) for w in (weights if weights is not None else [1] * len(names)))
        if len(weights) != len(names):
            raise ValueError("one weight per variable required")
        if any(w < 1 for w in weights):
            raise ValueError("weights must be >= 1")
        self.names = names
        self.weights = weights
        self.order = order
        self.nvars = len(names)
        self.index = {n: i for i, n in enumerate(names)}
        self.dkey = order.make_dkey(weights)
        self.zero_mono = (0,) * self.nvars
        self._unit_weights = all(w == 1 for w in weights)

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.p == other.p
                and self.names == other.names and self.weights == other.weights
                and self.order == other.order)

    def __hash__(self):
        return hash((self.p, self.names, self.weights, self.order))

    def __repr__(self):
        return (f"PolynomialRing(p={self.p}, names={list(self.names)}, "
                f"weights={list(self.weights)}, order={self.order.describe()})")

    def with_order(self, order):
        return PolynomialRing(self.field, self.names, self.weights, order)

    def mono_degree(self, m):
        if self._unit_weights:
            return sum(m)
        return sum(e * w for e, w in zip(m, self.weights))

    # constructors -----------------------------------------------------

    def zero(self):
        return Polynomial(self, {})

    def one(self):
        return Polynomial(self, {self.zero_mono: 1})

    def const(self, c):
        c %= self.p
        return Polynomial(self, {self.zero_mono: c} if c else {})

    def var(self, name_or_index):
        i = self.index[name_or_index] if isinstance(name_or_index, str) else name_or_index
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self):
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1):
        exps = tuple(exps)
        coeff %= self.p
        return Polynomial(self, {exps: coeff} if coeff else {})

    def from_dict(self, terms):
        p = self.p
        return Polynomial(self, {m: c % p for m, c in terms.items() if c % p})

    def parse(self, text):
        return parse_polynomial(text, self)

    def monomials_of_degree(self, n):
        return monomials_of_degree(self, n)


# ---------------------------------------------------------------------------
# polynomials
# ---------------------------------------------------------------------------

def _mono_str(ring, m):
    parts = []
    for name, e in zip(ring.names, m):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


class Polynomial:
    """An element of a :class:`PolynomialRing`; treat as immutable."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring, terms):
        self.ring = ring
        self._terms = terms
        self._sorted = None

    # structure ----------------------------------------------------------

    @property
    def coeffs(self):
        """The underlying ``{monomial: coefficient}`` dict (do not mutate)."""
        return self._terms

    def terms(self):
        """Terms ``(monomial, coefficient)`` in strictly descending order."""
        if self._sorted is None:
            dkey = self.ring.dkey
            self._sorted = sorted(self._terms.items(), key=lambda t: dkey(t[0]))
        return self._sorted

    def monomials(self):
        return [m for m, _ in self.terms()]

    def __len__(self):
        return len(self._terms)

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self):
        return not self._terms or (len(self._terms) == 1 and self.ring.zero_mono in self._terms)

    def constant_coefficient(self):
        return self._terms.get(self.ring.zero_mono, 0)

    def leading_term(self):
        if not self._terms:
            raise ValueError("zero polynomial has no leading term")
        return self.terms()[0]

    def leading_monomial(self):
        return self.leading_term()[0]

    def leading_coefficient(self):
        return self.leading_term()[1]

    def degree(self):
        """Weighted total degree (max over terms); -1 for the zero polynomial."""
        if not self._terms:
            return -1
        return max(self.ring.mono_degree(m) for m in self._terms)

    def is_homogeneous(self):
        degs = {self.ring.mono_degree(m) for m in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self):
        comps = {}
        for m, c in self._terms.items():
            comps.setdefault(self.ring.mono_degree(m), {})[m] = c
        return {d: Polynomial(self.ring, t) for d, t in sorted(comps.items())}

    def variables_used(self):
        used = set()
        for m in self._terms:
            used.update(i for i, e in enumerate(m) if e)
        return sorted(used)

    def monic(self):
        if not self._terms:
            return self
        inv = inverse_mod(self.leading_coefficient(), self.ring.p)
        return self.scale(inv)

    # arithmetic ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError(f"{self.ring!r} vs {other.ring!r}")
            return other
        if isinstance(other, int):
            return self.ring.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = dict(self._terms)
        for m, c in other._terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other + (-self)

    def scale(self, c):
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: (v * c) % p for m, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        out = {}
        get = out.get
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(map(add, m1, m2))
                out[m] = (get(m, 0) + c1 * c2) % p
        return Polynomial(self.ring, {m: c for m, c in out.items() if c})

    __rmul__ = __mul__

    def mul_term(self, mono, coeff):
        p = self.ring.p
        return Polynomial(self.ring, {tuple(map(add, m, mono)): (c * coeff) % p
                                      for m, c in self._terms.items()})

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative int")
        result = self.ring.one()
        base = self
        while k:
            if k & 1:
                result = result * base
            k >>= 1
            if k:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.const(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    # substitution -------------------------------------------------------

    def compose(self, images, target=None):
        """Substitute ``images[i]`` for the i-th variable.

        ``images`` are polynomials in a common ``target`` ring.
        """
        if len(images) != self.ring.nvars:
            raise ValueError("need one image per variable")
        if target is None:
            target = images[0].ring if images else self.ring
        powers = [dict() for _ in images]

        def power(i, e):
            cache = powers[i]
            if e not in cache:
                cache[e] = images[i] ** e if e < 2 or (e - 1) not in cache else cache[e - 1] * images[i]
            return cache[e]

        p = target.p
        acc = {}
        for m, c in self._terms.items():
            term = target.const(c)
            for i, e in enumerate(m):
                if e:
                    term = term * power(i, e)
            for tm, tc in term._terms.items():
                v = (acc.get(tm, 0) + tc) % p
                if v:
                    acc[tm] = v
                else:
                    acc.pop(tm, None)
        return Polynomial(target, acc)

    def substitute_linear(self, M):
        return substitute_linear(self, M)

    def to_ring(self, ring, mapping=None):
        """Re-root in ``ring``; ``mapping[i]`` is the target index of variable i."""
        if mapping is None:
            mapping = [ring.index[n] for n in self.ring.names]
        out = {}
        n = ring.nvars
        for m, c in self._terms.items():
            e = [0] * n
            for i, k in enumerate(m):
                if k:
                    e[mapping[i]] += k
            out[tuple(e)] = c
        return Polynomial(ring, out)

    # printing -----------------------------------------------------------

    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f):
    if not f._terms:
        return "0"
    out = []
    for m, c in f.terms():
        ms = _mono_str(f.ring, m)
        if not ms:
            out.append(str(c))
        elif c == 1:
            out.append(ms)
        else:
            out.append(f"{c}*{ms}")
    return " + ".join(out)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


def _tokenize(text):
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:  # trailing whitespace
            break
        if m.group(1) is not None:
            tokens.append(("int", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            tokens.append(("name", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            ch = m.group(3)
            if ch not in "+-*^()":
                raise PolynomialSyntaxError(f"unexpected character {ch!r}", m.start(3))
            tokens.append(("op", ch, m.start(3)))
        pos = m.end()
    tokens.append(("end", None, len(text)))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.tokens = _tokenize(text)
        self.i = 0
        self.ring = ring

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect_op(self, op):
        kind, val, pos = self.take()
        if kind != "op" or val != op:
            raise PolynomialSyntaxError(f"expected {op!r}", pos)

    def expr(self):
        kind, val, pos = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term().scale(sign)
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                t = self.term()
                acc = acc + t if val == "+" else acc - t
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                acc = acc * self.factor()
            else:
                return acc

    def factor(self):
        kind, val, pos = self.take()
        if kind == "int":
            base = self.ring.const(val)
        elif kind == "name":
            if val not in self.ring.index:
                raise PolynomialSyntaxError(f"unknown variable {val!r}", pos)
            base = self.ring.var(val)
        elif kind == "op" and val == "(":
            base = self.expr()
            self.expect_op(")")
        else:
            raise PolynomialSyntaxError("expected a coefficient, variable or '('", pos)
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "int":
                raise PolynomialSyntaxError("expected an integer exponent", pos)
            base = base ** val
        return base


def parse_polynomial(text, ring):
    """Parse ``text`` (``*``, ``^``, ``+``, ``-``, integers, variable names)."""
    parser = _Parser(text, ring)
    result = parser.expr()
    kind, _, pos = parser.peek()
    if kind != "end":
        raise PolynomialSyntaxError("unexpected trailing input", pos)
    return result


# ---------------------------------------------------------------------------
# linear substitution and degree enumeration
# ---------------------------------------------------------------------------

def linear_images(ring, M):
    """The entries of ``M X`` as polynomials of ``ring``."""
    if not isinstance(M, MatrixFp):
        M = MatrixFp(M, ring.p)
    n = ring.nvars
    if (M.rows, M.cols) != (n, n):
        raise ValueError(f"matrix is {M.rows}x{M.cols}, ring has {n} variables")
    if M.p != ring.p:
        raise RingMismatchError("matrix and ring have different characteristic")
    images = []
    for i in range(n):
        terms = {}
        for j, c in enumerate(M.row(i)):
            if c:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = c
        images.append(Polynomial(ring, terms))
    return images


def substitute_linear(f, M):
    """Return ``f(MX)``."""
    return f.compose(linear_images(f.ring, M), f.ring)


@lru_cache(maxsize=None)
def _compositions(weights, n):
    if not weights:
        return [()] if n == 0 else []
    w = weights[0]
    out = []
    for e in range(n // w, -1, -1):
        for rest in _compositions(weights[1:], n - e * w):
            out.append((e,) + rest)
    return out


def monomials_of_degree(ring, n):
    """All monomials of weighted degree ``n`` in descending ring order."""
    if n < 0:
        return []
    return sorted(_compositions(ring.weights, n), key=ring.dkey)


def count_monomials(weights, n):
    """Coefficient of s^n in prod 1/(1 - s^w), by a counting recurrence."""
    table = [1] + [0] * n
    for w in weights:
        for k in range(w, n + 1):
            table[k] += table[k - w]
    return table[n] if n >= 0 else 0
