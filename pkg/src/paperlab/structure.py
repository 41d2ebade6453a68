"""Finitely presented graded subalgebras of a polynomial ring.

A :class:`PresentedRing` records generators ``g_1..g_m`` of a subalgebra of
an ambient ring ``T``, the weighted ring ``K[t_1..t_m]`` with
``deg t_j = deg g_j``, and the kernel of ``t_j -> g_j`` obtained by
eliminating the ambient variables from ``(t_j - g_j)``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .groebner import Ideal, elimination_ideal, krull_dimension
from .polyring import MonomialOrder, Polynomial, PolynomialRing
from .resolution import resolve


class StructureError(ValueError):
    pass


class PresentedRing:
    def __init__(self, ambient, generators, degrees, combined, combined_ideal, ideal):
        self.ambient = ambient
        self.generators = generators
        self.degrees = degrees
        self.combined = combined
        self.combined_ideal = combined_ideal
        self.ideal = ideal
        self._betti = None

    @property
    def ring(self):
        """The presentation ring K[t_1..t_m]."""
        return self.ideal.ring

    @property
    def nvars(self):
        return self.ring.nvars

    def evaluate(self, f):
        """Image in the ambient ring of a presentation polynomial."""
        return f.compose(self.generators, self.ambient)

    def hilbert_series(self):
        return self.ideal.hilbert_series()

    def betti_table(self):
        if self._betti is None:
            self._betti = free_resolution(self)
        return self._betti


def presentation_ideal(gens, ambient=None, prefix="t"):
    """Present the subalgebra generated by homogeneous ``gens``.

    Generators are ordered by (degree, input position) before the
    presentation variables are assigned.
    """
    gens = [g for g in gens]
    if not gens:
        raise StructureError("need at least one generator")
    ambient = gens[0].ring if ambient is None else ambient
    for g in gens:
        if g.is_zero() or not g.is_homogeneous():
            raise StructureError(f"generator {g} is zero or not homogeneous")
        if g.ring != ambient:
            raise StructureError("generators live in different rings")
    order = sorted(range(len(gens)), key=lambda k: (gens[k].degree(), k))
    gens = [gens[k] for k in order]
    degrees = [g.degree() for g in gens]
    tnames = [f"{prefix}{j + 1}" for j in range(len(gens))]
    n = ambient.nvars
    combined = PolynomialRing(ambient.field, list(ambient.names) + tnames,
                              list(ambient.weights) + degrees, MonomialOrder("block", n))
    embed = list(range(n))
    rels = []
    for j, g in enumerate(gens):
        rels.append(combined.var(n + j) - g.to_ring(combined, embed))
    combined_ideal = Ideal(combined, rels)
    ideal = elimination_ideal(combined_ideal, len(gens))
    return PresentedRing(ambient, gens, degrees, combined, combined_ideal, ideal)


def subalgebra_membership(f, presented):
    """Decide ``f`` in K[g_1..g_m]; returns ``(member, preimage or None)``."""
    n = presented.ambient.nvars
    lifted = f.to_ring(presented.combined, list(range(n)))
    nf = presented.combined_ideal.normal_form(lifted)
    if any(any(m[:n]) for m in nf.coeffs):
        return False, None
    pre = Polynomial(presented.ring, {m[n:]: c for m, c in nf.coeffs.items()})
    if presented.evaluate(pre) != f:
        raise StructureError("membership preimage failed the substitution check")
    return True, pre


def presentation_is_sound(presented):
    """Every basis element of the presentation ideal maps to zero."""
    return all(presented.evaluate(g).is_zero() for g in presented.ideal.groebner_basis())


def free_resolution(presented):
    gens = presented.ideal.groebner_basis()
    return resolve(presented.ring, gens)


@dataclass(frozen=True)
class RingVerdict:
    dimension: int
    depth: int
    projective_dimension: int
    nvars: int

    @property
    def cm_defect(self):
        return self.dimension - self.depth

    @property
    def is_cohen_macaulay(self):
        return self.cm_defect == 0

    def as_dict(self):
        return dict(dimension=self.dimension, depth=self.depth,
                    projective_dimension=self.projective_dimension, nvars=self.nvars,
                    cm_defect=self.cm_defect, is_cohen_macaulay=self.is_cohen_macaulay)


def quotient_verdict(ideal, betti=None):
    """Dimension and depth of ``ring / ideal`` for a homogeneous ideal."""
    if ideal.is_unit():
        raise StructureError("presentation ideal is the unit ideal")
    betti = betti or resolve(ideal.ring, ideal.groebner_basis())
    m = ideal.ring.nvars
    pd = betti.projective_dimension
    depth = m - pd
    dim = krull_dimension(ideal)
    if not (0 <= depth <= dim <= m):
        raise StructureError(f"inconsistent invariants: depth {depth}, dim {dim}, m {m}")
    return RingVerdict(dim, depth, pd, m)


def depth_report(presented, betti=None):
    """Depth from the graded Auslander-Buchsbaum formula, dimension from
    the initial ideal."""
    if presented.ideal.is_unit():
        raise StructureError("presentation ideal is the unit ideal")
    return quotient_verdict(presented.ideal, betti or presented.betti_table())


def euler_check(presented, betti):
    """Alternating Betti sum equals the Hilbert numerator of K[t]/I."""
    num = presented.hilbert_series().numerator
    eul = betti.euler_numerator()
    size = max(len(num), len(eul))
    return [(num[k] if k < len(num) else 0) for k in range(size)] == \
        [(eul[k] if k < len(eul) else 0) for k in range(size)]


def hilbert_consistency(presented, G, D):
    """Compare the presented ring's Hilbert function with the invariant
    dimensions of G through degree D; returns ``(ok, first bad degree)``."""
    from .invariants import invariant_hilbert_function

    mine = presented.hilbert_series().expand(D)
    theirs = invariant_hilbert_function(G, presented.ambient, D)
    for n, (a, b) in enumerate(zip(mine, theirs)):
        if a != b:
            return False, n
    return True, None
