"""Finite matrix groups over F_p, enumerated explicitly.

The groups in scope are p-groups of order at most p^d, so closure by
breadth-first multiplication is cheap and the element list doubles as the
group's canonical description.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from math import gcd

from .arith import MatrixFp
from .polyring import substitute_linear

DEFAULT_CAP = 10 ** 6


class GroupError(ValueError):
    pass


class GroupSizeError(GroupError):
    """Closure grew past the configured element cap."""


class MatrixGroup:
    """Finite subgroup of GL_n(F_p) generated by ``generators``.

    Elements are computed on first use and kept in discovery order.
    """

    def __init__(self, generators, p=None, n=None, cap=DEFAULT_CAP):
        gens = list(generators)
        if gens:
            p = gens[0].p if p is None else p
            n = gens[0].rows if n is None else n
        if p is None or n is None:
            raise GroupError("an empty generator list needs explicit p and n")
        for g in gens:
            if g.p != p or g.rows != n or g.cols != n:
                raise GroupError("generators must be n x n over the same field")
            if not g.is_invertible():
                raise GroupError(f"generator {g.to_lists()} is not invertible")
        self.p = p
        self.n = n
        self.generators = gens
        self.cap = cap
        self._elements = None
        self._keys = None

    def __repr__(self):
        return f"MatrixGroup(p={self.p}, n={self.n}, gens={len(self.generators)})"

    @property
    def identity(self):
        return MatrixFp.identity(self.n, self.p)

    def _close(self):
        ident = self.identity
        elements = [ident]
        keys = {ident.key()}
        queue = deque([ident])
        while queue:
            g = queue.popleft()
            for s in self.generators:
                h = g @ s
                k = h.key()
                if k not in keys:
                    if len(elements) >= self.cap:
                        raise GroupSizeError(f"closure exceeds {self.cap} elements")
                    keys.add(k)
                    elements.append(h)
                    queue.append(h)
        self._elements = elements
        self._keys = keys

    @property
    def elements(self):
        if self._elements is None:
            self._close()
        return self._elements

    def order(self):
        return len(self.elements)

    def __len__(self):
        return self.order()

    def __contains__(self, M):
        if self._keys is None:
            self._close()
        return M.p == self.p and M.rows == self.n and M.key() in self._keys

    def is_subgroup_of(self, other):
        return all(g in other for g in self.generators)

    def element_order(self, M):
        ident = self.identity
        k, power = 1, M
        while power != ident:
            power = power @ M
            k += 1
        return k

    def same_elements(self, other):
        return {g.key() for g in self.elements} == {g.key() for g in other.elements}


def closure(generators, p=None, n=None, cap=DEFAULT_CAP):
    G = MatrixGroup(generators, p, n, cap)
    G.elements  # force enumeration so size errors surface here
    return G


def act(M, f):
    """The action of a group element on a polynomial: ``f -> f(MX)``."""
    return substitute_linear(f, M)


def is_bireflection(M):
    """True iff ``M`` fixes a subspace of codimension at most 2."""
    if not M.is_square:
        raise GroupError("bireflection test needs a square matrix")
    return (M - MatrixFp.identity(M.rows, M.p)).rank() <= 2


def fixed_space_codimension(M):
    return (M - MatrixFp.identity(M.rows, M.p)).rank()


def bireflections(G):
    return [g for g in G.elements if is_bireflection(g)]


def generated_by_bireflections(G):
    refl = bireflections(G)
    sub = MatrixGroup(refl, G.p, G.n, G.cap)
    return sub.order() == G.order()


def is_abelian(G):
    gens = G.generators
    return all(a @ b == b @ a for i, a in enumerate(gens) for b in gens[i + 1:])


@dataclass(frozen=True)
class QuotientStructure:
    invariant_factors: tuple

    @property
    def order(self):
        out = 1
        for f in self.invariant_factors:
            out *= f
        return out


def _log_p(n, p):
    k = 0
    while n > 1:
        if n % p:
            raise GroupError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


def elementary_abelian_quotient(G, H):
    """Invariant factors of G/H for G elementary abelian and H <= G."""
    if not is_abelian(G):
        raise GroupError("G is not abelian")
    ident = G.identity
    for g in G.elements:
        if g != ident and (g ** G.p) != ident:
            raise GroupError("G is not elementary abelian")
    if not all(h in G for h in H.elements):
        raise GroupError("H is not a subgroup of G")
    dim_g = _log_p(G.order(), G.p)
    dim_h = _log_p(H.order(), G.p)
    return QuotientStructure((G.p,) * (dim_g - dim_h))


def has_nontrivial_character(G):
    """Whether G admits a nontrivial homomorphism to F_p^x (G abelian)."""
    if not is_abelian(G):
        raise GroupError("character test is implemented for abelian groups only")
    return any(gcd(G.element_order(g), G.p - 1) > 1 for g in G.elements)


def lagrange_holds(G, H):
    return G.order() % H.order() == 0
