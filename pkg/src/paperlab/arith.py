"""Prime field arithmetic and dense linear algebra over F_p.

Scalars are plain Python ints kept in the canonical range ``[0, p)``.
Matrices are immutable row-major grids (:class:`MatrixFp`); the raw
list-of-lists helpers :func:`rref_rows` and :func:`kernel_rows` are what the
degreewise computations call in their inner loops.
"""

from __future__ import annotations

import json

MAX_CHARACTERISTIC = 2 ** 15


class FieldError(ArithmeticError):
    """Raised for invalid characteristics and for inverting zero."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def inverse_mod(a: int, p: int) -> int:
    """Inverse of ``a`` modulo ``p`` by the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise FieldError(f"0 has no inverse modulo {p}")
    x, next_x = 1, 0
    g, next_g = a, p
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        g, next_g = next_g, g - q * next_g
    return x % p


class PrimeField:
    """The field F_p for a prime ``p <= 2**15``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or isinstance(p, bool):
            raise FieldError(f"characteristic must be an int, got {p!r}")
        if not is_prime(p):
            raise FieldError(f"{p} is not prime")
        if p > MAX_CHARACTERISTIC:
            raise FieldError(f"{p} exceeds the supported bound {MAX_CHARACTERISTIC}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __call__(self, value: int) -> int:
        return value % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def inv(self, a):
        return inverse_mod(a, self.p)

    def elements(self):
        return range(self.p)


# ---------------------------------------------------------------------------
# raw row operations (lists of ints, reduced mod p)
# ---------------------------------------------------------------------------

def rref_rows(rows, ncols, p):
    """Reduced row echelon form of ``rows`` (copied, not mutated).

    Returns ``(echelon_rows, pivots)``.  Pivots are chosen leftmost column
    first, topmost available row first, so the output is reproducible.
    """
    work = [[v % p for v in r] for r in rows]
    pivots = []
    top = 0
    nrows = len(work)
    for col in range(ncols):
        if top == nrows:
            break
        src = None
        for r in range(top, nrows):
            if work[r][col]:
                src = r
                break
        if src is None:
            continue
        work[top], work[src] = work[src], work[top]
        prow = work[top]
        c = prow[col]
        if c != 1:
            ci = inverse_mod(c, p)
            prow = [(v * ci) % p for v in prow]
            work[top] = prow
        for r in range(nrows):
            if r != top:
                row = work[r]
                f = row[col]
                if f:
                    work[r] = [(a - f * b) % p for a, b in zip(row, prow)]
        pivots.append(col)
        top += 1
    return work[:top], pivots


def kernel_rows(rows, ncols, p):
    """Basis of the right null space ``{v : rows . v = 0}``.

    One vector per free column, free columns in ascending order; each vector
    has a 1 at its free column.
    """
    echelon, pivots = rref_rows(rows, ncols, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, pc in zip(echelon, pivots):
            if row[free]:
                v[pc] = (-row[free]) % p
        basis.append(v)
    return basis


class RowSpace:
    """Incrementally maintained row space in echelon form.

    ``add`` reduces a vector against the current pivots and keeps it when a
    nonzero remainder is left.  Used for "extend a basis of a subspace" and
    rank-so-far questions without rebuilding the whole matrix.
    """

    def __init__(self, ncols, p):
        self.ncols = ncols
        self.p = p
        self.rows = {}  # pivot column -> normalized row

    def __len__(self):
        return len(self.rows)

    def reduce(self, vec):
        p = self.p
        v = [x % p for x in vec]
        for col in sorted(self.rows):
            c = v[col]
            if c:
                row = self.rows[col]
                v = [(a - c * b) % p for a, b in zip(v, row)]
        return v

    def add(self, vec) -> bool:
        v = self.reduce(vec)
        for col, c in enumerate(v):
            if c:
                ci = inverse_mod(c, self.p)
                v = [(x * ci) % self.p for x in v]
                # keep the stored rows mutually reduced on pivot columns
                for pc, row in self.rows.items():
                    f = row[col]
                    if f:
                        self.rows[pc] = [(a - f * b) % self.p for a, b in zip(row, v)]
                self.rows[col] = v
                return True
        return False

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))


# ---------------------------------------------------------------------------
# matrices
# ---------------------------------------------------------------------------

class MatrixFp:
    """Immutable dense matrix over F_p."""

    __slots__ = ("p", "rows", "cols", "_entries", "_key")

    def __init__(self, entries, p: int):
        grid = [list(r) for r in entries]
        self.p = p
        self.rows = len(grid)
        self.cols = len(grid[0]) if grid else 0
        if any(len(r) != self.cols for r in grid):
            raise ValueError("ragged matrix rows")
        self._entries = tuple(tuple(int(v) % p for v in r) for r in grid)
        self._key = None

    @classmethod
    def identity(cls, n, p):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], p)

    @classmethod
    def zeros(cls, rows, cols, p):
        return cls([[0] * cols for _ in range(rows)], p)

    @classmethod
    def from_json(cls, text: str, p: int):
        """Parse a JSON array-of-arrays of integers, reducing mod p."""
        data = json.loads(text)
        if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
            raise ValueError("matrix JSON must be an array of arrays")
        return cls(data, p)

    def to_lists(self):
        return [list(r) for r in self._entries]

    def __getitem__(self, ij):
        i, j = ij
        return self._entries[i][j]

    def row(self, i):
        return self._entries[i]

    @property
    def entries(self):
        return self._entries

    @property
    def is_square(self):
        return self.rows == self.cols

    def key(self) -> str:
        """Canonical encoding: row-major base-p digit string."""
        if self._key is None:
            width = len(str(self.p - 1))
            self._key = "".join(str(v).zfill(width) for r in self._entries for v in r)
        return self._key

    def __eq__(self, other):
        return (isinstance(other, MatrixFp) and self.p == other.p
                and self._entries == other._entries)

    def __hash__(self):
        return hash((self.p, self._entries))

    def __repr__(self):
        return f"MatrixFp({self.to_lists()}, p={self.p})"

    def _check(self, other):
        if not isinstance(other, MatrixFp) or other.p != self.p:
            raise ValueError("matrices over different fields")

    def __add__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return MatrixFp([[a + b for a, b in zip(r, s)]
                         for r, s in zip(self._entries, other._entries)], self.p)

    def __sub__(self, other):
        self._check(other)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        return MatrixFp([[a - b for a, b in zip(r, s)]
                         for r, s in zip(self._entries, other._entries)], self.p)

    def __matmul__(self, other):
        self._check(other)
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        cols = list(zip(*other._entries)) if other.rows else [()] * other.cols
        return MatrixFp([[sum(a * b for a, b in zip(r, c)) for c in cols]
                         for r in self._entries], self.p)

    def apply(self, vec):
        return [sum(a * b for a, b in zip(r, vec)) % self.p for r in self._entries]

    def transpose(self):
        return MatrixFp(list(zip(*self._entries)) if self.rows else [], self.p)

    def rref(self):
        """Return ``(rank, pivots, echelon)`` with deterministic pivoting."""
        echelon, pivots = rref_rows(self._entries, self.cols, self.p)
        padded = echelon + [[0] * self.cols for _ in range(self.rows - len(echelon))]
        return len(pivots), pivots, MatrixFp(padded, self.p) if self.rows else self

    def rank(self) -> int:
        return len(rref_rows(self._entries, self.cols, self.p)[1])

    def kernel_basis(self):
        return kernel_rows(self._entries, self.cols, self.p)

    def is_invertible(self) -> bool:
        return self.is_square and self.rank() == self.rows

    def inverse(self):
        if not self.is_invertible():
            raise FieldError("matrix is singular")
        n = self.rows
        aug = [list(r) + [int(i == j) for j in range(n)] for i, r in enumerate(self._entries)]
        echelon, _ = rref_rows(aug, 2 * n, self.p)
        return MatrixFp([r[n:] for r in echelon], self.p)

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result = MatrixFp.identity(self.rows, self.p)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base
            k >>= 1
        return result
