"""Scenario construction and the end-to-end verification pipeline.

A scenario fixes a prime ``p`` and a block count ``d >= 3``.  The ambient
ring is F_p[x1, y1, ..., xd, yd]; G is generated by the d single-block
unipotent matrices and H by the matrix with every block equal to
[[1, 1], [0, 1]].
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass, field

from .arith import MatrixFp, PrimeField
from .groebner import krull_dimension
from .groups import (
    GroupSizeError,
    bireflections,
    closure,
    elementary_abelian_quotient,
    generated_by_bireflections,
    has_nontrivial_character,
    is_abelian,
)
from .invariants import (
    HEURISTIC,
    INTEGRAL,
    GeneratorSet,
    check_invariant,
    closed_form_norm,
    integrality_certificate,
    invariant_hilbert_function,
    minimal_generators,
    norm_polynomial,
)
from .noether import module_presentation
from .polyring import PolynomialRing
from .resolution import has_unit_entries
from .structure import (
    RingVerdict,
    StructureError,
    depth_report,
    euler_check,
    hilbert_consistency,
    presentation_ideal,
    presentation_is_sound,
)

log = logging.getLogger(__name__)

SCHEMA_VERSION = 1

# presentations with more variables are only handled by the module route
RESOLUTION_CAP = 12


class ScenarioError(ValueError):
    pass


@dataclass
class Scenario:
    p: int
    d: int
    ring: PolynomialRing
    G: object
    H: object
    expected: dict

    @property
    def names(self):
        return list(self.ring.names)

    def x(self, i):
        return self.ring.var(f"x{i}")

    def y(self, i):
        return self.ring.var(f"y{i}")


def variable_names(d):
    names = []
    for i in range(1, d + 1):
        names += [f"x{i}", f"y{i}"]
    return names


def block_matrix(p, entries):
    """Block-diagonal matrix whose k-th 2x2 block is [[1, a_k], [0, 1]]."""
    n = 2 * len(entries)
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for k, a in enumerate(entries):
        rows[2 * k][2 * k + 1] = a % p
    return MatrixFp(rows, p)


def _expected(p, d):
    return {
        "G_order": p ** d,
        "H_order": p,
        "dim_T": 2 * d,
        "S_depth": d + 2,
        "S_cm_defect": d - 2,
        "galois_factors": [p] * (d - 1),
    }


def build_example_general(p, d):
    PrimeField(p)
    if d < 3:
        raise ScenarioError(f"d = {d} < 3: the diagonal subgroup then contains "
                            "nonidentity bireflections, so the construction needs d >= 3")
    ring = PolynomialRing(p, variable_names(d))
    g_gens = [block_matrix(p, [int(k == j) for k in range(d)]) for j in range(d)]
    G = closure(g_gens)
    H = closure([block_matrix(p, [1] * d)])
    return Scenario(p, d, ring, G, H, _expected(p, d))


def build_example_main(p):
    """The six-variable example: G from the moves a, b, c and the H generator."""
    PrimeField(p)
    ring = PolynomialRing(p, variable_names(3))
    moves = [block_matrix(p, [1, 0, 0]), block_matrix(p, [0, 1, 0]), block_matrix(p, [0, 0, 1])]
    G = closure(moves)
    H = closure([block_matrix(p, [1, 1, 1])])
    return Scenario(p, 3, ring, G, H, _expected(p, 3))


def build_R_generators(scenario):
    """y_i and x_i^p - x_i y_i^(p-1), in block order."""
    p = scenario.p
    entries = []
    for i in range(1, scenario.d + 1):
        x, y = scenario.x(i), scenario.y(i)
        entries.append((y, 1))
        entries.append((x ** p - x * y ** (p - 1), p))
    return GeneratorSet(entries, p, HEURISTIC)


def default_degree_bound(p, d):
    return max(p, d * (p - 1))


# ---------------------------------------------------------------------------
# report assembly
# ---------------------------------------------------------------------------

@dataclass
class ScenarioReport:
    scenario: dict
    checks: list = field(default_factory=list)
    facts: dict = field(default_factory=dict)
    errors: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)
    skipped: list = field(default_factory=list)

    def check(self, ident, expected, computed):
        match = expected == computed
        self.checks.append({"id": ident, "expected": expected, "computed": computed, "match": match})
        return match

    @property
    def all_match(self):
        return all(c["match"] for c in self.checks) and not self.errors

    def get(self, ident):
        for c in self.checks:
            if c["id"] == ident:
                return c
        raise KeyError(ident)

    def to_dict(self):
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario,
            "all_match": self.all_match,
            "checks": self.checks,
            "facts": self.facts,
            "errors": self.errors,
            "skipped": self.skipped,
            "timings": self.timings,
        }


class _Stage:
    """Context manager that times a stage and records failures in-report."""

    def __init__(self, report, name, code):
        self.report, self.name, self.code = report, name, code

    def __enter__(self):
        self.t0 = time.perf_counter()
        log.info("stage %s", self.name)
        return self

    def __exit__(self, exc_type, exc, tb):
        self.report.timings[self.name] = round(time.perf_counter() - self.t0, 6)
        if exc is None:
            return False
        if isinstance(exc, GroupSizeError):
            return False
        log.exception("stage %s failed", self.name)
        self.report.errors.append({"stage": self.name, "code": self.code,
                                   "type": exc_type.__name__, "message": str(exc)})
        return True


def _group_stage(sc, rep):
    G, H, p, d = sc.G, sc.H, sc.p, sc.d
    with _Stage(rep, "groups", "E_GROUPS"):
        rep.check("G.order", sc.expected["G_order"], G.order())
        rep.check("H.order", sc.expected["H_order"], H.order())
        rep.check("H.subgroup_of_G", True, all(h in G for h in H.elements))
        rep.check("G.abelian", True, is_abelian(G))
        rep.check("G.generated_by_bireflections", True, generated_by_bireflections(G))
        rep.check("H.generated_by_bireflections", False, generated_by_bireflections(H))
        rep.check("H.nonidentity_bireflections", 0, len(bireflections(H)) - 1)
    with _Stage(rep, "galois", "E_GALOIS"):
        q = elementary_abelian_quotient(G, H)
        rep.check("galois.factors", sc.expected["galois_factors"], list(q.invariant_factors))
        rep.check("galois.order", p ** (d - 1), q.order)
    with _Stage(rep, "character", "E_CHARACTER"):
        rep.check("H.nontrivial_character", False, has_nontrivial_character(H))


def _r_stage(sc, rep, D):
    T, G, p, d = sc.ring, sc.G, sc.p, sc.d
    facts = rep.facts.setdefault("R", {})
    with _Stage(rep, "R.generators", "E_R_GENERATORS"):
        gens = build_R_generators(sc)
        facts["generators"] = [str(f) for f in gens.polys]
        facts["degrees"] = gens.degrees
        rep.check("R.generators_invariant", True, all(check_invariant(G, f) for f in gens.polys))
    with _Stage(rep, "R.presentation", "E_R_PRESENTATION"):
        pres = presentation_ideal(gens.polys, T)
        rep.check("R.presentation_ideal_zero", True, pres.ideal.is_zero())
        rep.check("R.presentation_sound", True, presentation_is_sound(pres))
        rep.check("R.dimension", sc.expected["dim_T"], krull_dimension(pres.ideal))
        facts["hilbert_series"] = str(pres.hilbert_series())
    with _Stage(rep, "R.hilbert", "E_R_HILBERT"):
        window = max(D, 2 * p + 4)
        ok, bad = hilbert_consistency(pres, G, window)
        facts["hilbert_window"] = window
        facts["hilbert_function"] = invariant_hilbert_function(G, T, window)
        facts["hilbert_first_mismatch"] = bad
        rep.check("R.hilbert_consistent", True, ok)
    with _Stage(rep, "R.norms", "E_R_NORMS"):
        norms = {}
        identities = []
        for i in range(1, d + 1):
            idx = T.index[f"x{i}"]
            nrm = norm_polynomial(G, T, idx)
            closed = closed_form_norm(T, sc.x(i), sc.y(i), p)
            identities.append(nrm.coeffs == closed and nrm.evaluate(sc.x(i)).is_zero())
            norms[f"x{i}"] = nrm.format()
        facts["norm_polynomials"] = norms
        rep.check("R.norm_identity", [True] * d, identities)
    with _Stage(rep, "R.integrality", "E_R_INTEGRALITY"):
        cert = integrality_certificate(G, T, gens, pres)
        facts["certificate"] = cert.certificate
        facts["certificate_offending"] = cert.offending
        rep.check("R.certificate", INTEGRAL, cert.certificate)


def _s_stage(sc, rep, D, resolution_cap=RESOLUTION_CAP):
    T, H, p, d = sc.ring, sc.H, sc.p, sc.d
    facts = rep.facts.setdefault("S", {})
    pres = mp = betti = None
    with _Stage(rep, "S.generators", "E_S_GENERATORS"):
        gens = minimal_generators(H, T, D)
        facts["generator_count"] = len(gens)
        facts["generators_by_degree"] = {str(k): v for k, v in gens.counts_by_degree().items()}
        facts["generators"] = [str(f) for f in gens.polys]
        rep.check("S.generators_invariant", True, all(check_invariant(H, f) for f in gens.polys))
    with _Stage(rep, "S.presentation", "E_S_PRESENTATION"):
        pres = presentation_ideal(gens.polys, T)
        basis = pres.ideal.groebner_basis()
        facts["presentation_variables"] = pres.nvars
        facts["presentation_weights"] = pres.degrees
        facts["presentation_basis_size"] = len(basis)
        facts["hilbert_series"] = str(pres.hilbert_series())
        rep.check("S.presentation_sound", True, presentation_is_sound(pres))
    with _Stage(rep, "S.integrality", "E_S_INTEGRALITY"):
        cert = integrality_certificate(H, T, gens, pres)
        facts["certificate"] = cert.certificate
        facts["certificate_offending"] = cert.offending
        facts["hilbert_window"] = 2 * D
        rep.check("S.hilbert_consistent", True,
                  not any("hilbert_mismatch_degree" in o for o in cert.offending))
    if pres is None or not any(c["id"] == "S.hilbert_consistent" and c["match"]
                               for c in rep.checks):
        # the generators found do not span T^H: a depth would describe the wrong ring
        rep.skipped.append({"stage": "S.module", "reason": "generators of S incomplete below "
                            f"degree {D}; raise the degree bound"})
        return facts
    with _Stage(rep, "S.module", "E_S_MODULE"):
        theta = build_R_generators(sc).polys
        mp = module_presentation(H, T, theta, pres.hilbert_series(), max(gens.degrees))
        mbetti = mp.resolve()
        rank = sum((-1) ** i * mbetti.total(i) for i in range(mbetti.projective_dimension + 1))
        facts["module"] = {
            "generators": mp.num_generators,
            "generic_rank": rank,
            "generator_degrees": mp.shifts,
            "relations": len(mp.relations),
            "betti": mbetti.to_json(),
            "betti_totals": mbetti.totals(),
            "betti_table": mbetti.render(),
            "projective_dimension": mbetti.projective_dimension,
            "depth": mp.depth,
        }
        rep.check("S.module_rank", p ** (d - 1), rank)
        rep.check("S.module_euler_characteristic", True, mp.euler_check(pres.hilbert_series()))
    if pres.nvars <= resolution_cap:
        with _Stage(rep, "S.resolution", "E_S_RESOLUTION"):
            betti = pres.betti_table()
            facts["betti"] = betti.to_json()
            facts["betti_totals"] = betti.totals()
            facts["betti_table"] = betti.render()
            facts["projective_dimension"] = betti.projective_dimension
            rep.check("S.resolution_minimal", True,
                      not any(has_unit_entries(v) for v in betti.differentials))
            rep.check("S.euler_characteristic", True, euler_check(pres, betti))
    else:
        rep.skipped.append({"stage": "S.resolution",
                            "reason": f"{pres.nvars} presentation variables exceed the "
                                      f"resolution cap {resolution_cap}"})
    with _Stage(rep, "S.depth", "E_S_DEPTH"):
        if betti is not None:
            verdict = depth_report(pres, betti)
            facts["depth_route"] = "presentation"
            if mp is not None:
                rep.check("S.depth_routes_agree", verdict.depth, mp.depth)
        else:
            if mp is None:
                raise StructureError("no route to the depth of S succeeded")
            verdict = RingVerdict(krull_dimension(pres.ideal), mp.depth,
                                  mp.resolve().projective_dimension, mp.ring.nvars)
            facts["depth_route"] = "normalization"
        facts["verdict"] = verdict.as_dict()
        rep.check("S.dimension", sc.expected["dim_T"], verdict.dimension)
        rep.check("S.depth", sc.expected["S_depth"], verdict.depth)
        rep.check("S.cohen_macaulay", False, verdict.is_cohen_macaulay)
        rep.check("S.cm_defect", sc.expected["S_cm_defect"], verdict.cm_defect)
        rep.check("S.auslander_buchsbaum", verdict.nvars,
                  verdict.depth + verdict.projective_dimension)
    return facts


def s_pipeline_is_default(p, d):
    return p == 2 and d == 3


def run_verification(scenario, max_degree=None, stretch=False, resolution_cap=RESOLUTION_CAP):
    """Run every stage and collect expected/computed/match triples."""
    p, d = scenario.p, scenario.d
    D = default_degree_bound(p, d) if max_degree is None else max_degree
    if D < 1:
        raise ScenarioError("max degree must be >= 1")
    rep = ScenarioReport(scenario={"p": p, "d": d, "max_degree": D, "stretch": bool(stretch),
                                   "variables": scenario.names})
    rep.facts["expected"] = dict(scenario.expected)
    t0 = time.perf_counter()
    _group_stage(scenario, rep)
    _r_stage(scenario, rep, D)
    if stretch or s_pipeline_is_default(p, d):
        _s_stage(scenario, rep, D, resolution_cap)
    else:
        rep.skipped.append({"stage": "S", "reason": "opt-in with --stretch for this (p, d)"})
    rep.timings["total"] = round(time.perf_counter() - t0, 6)
    return rep
