"""Command line entry point.

    paperlab example --p P --d D --max-degree N [--stretch] [--resolution-cap M]
                     [--format json|text] [--out PATH] [--figures DIR]
    paperlab compute groebner|depth|presentation --input FILE [--out PATH]

Exit codes: 0 success, 1 verification mismatch, 2 usage/input/output error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .arith import FieldError
from .groebner import Ideal, krull_dimension
from .groups import GroupSizeError
from .polyring import MonomialOrder, PolynomialRing, PolynomialSyntaxError
from .report import emit_report
from .scenario import (
    RESOLUTION_CAP,
    ScenarioError,
    build_example_general,
    default_degree_bound,
    run_verification,
)
from .resolution import resolve
from .structure import StructureError, presentation_ideal, quotient_verdict

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser():
    parser = _Parser(prog="paperlab", description=__doc__.split("\n")[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="log stage progress")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    ex = sub.add_parser("example", help="build and verify a (p, d) scenario")
    ex.add_argument("--p", type=int, required=True)
    ex.add_argument("--d", type=int, default=3)
    ex.add_argument("--max-degree", type=int, default=None,
                    help="degree bound for generators of S (default max(p, d(p-1)))")
    ex.add_argument("--stretch", action="store_true",
                    help="also run the S pipeline when (p, d) != (2, 3)")
    ex.add_argument("--resolution-cap", type=int, default=RESOLUTION_CAP, metavar="M",
                    help="resolve the presentation of S directly only when it has at most "
                         "M variables (default %(default)s); the module route always runs")
    ex.add_argument("--format", choices=("json", "text"), default="json")
    ex.add_argument("--out", default=None)
    ex.add_argument("--figures", default=None, metavar="DIR",
                    help="write PNG figures into DIR")

    cp = sub.add_parser("compute", help="ad-hoc Groebner/depth/presentation query")
    cp.add_argument("what", choices=("groebner", "depth", "presentation"))
    cp.add_argument("--input", required=True)
    cp.add_argument("--out", default=None)
    return parser


def load_input(path):
    """Read ``{p, variables, weights?, polynomials, order?}``."""
    with open(path) as fh:
        doc = json.load(fh)
    missing = [k for k in ("p", "variables", "polynomials") if k not in doc]
    if missing:
        raise ValueError(f"input is missing keys {missing}")
    order = MonomialOrder.parse(doc.get("order", "grevlex"))
    ring = PolynomialRing(doc["p"], doc["variables"], doc.get("weights"), order)
    polys = [ring.parse(s) for s in doc["polynomials"]]
    return ring, polys


def compute(what, ring, polys):
    if what == "groebner":
        ideal = Ideal(ring, polys)
        gb = ideal.groebner_basis()
        return {"p": ring.p, "variables": list(ring.names), "order": ring.order.describe(),
                "basis": [str(g) for g in gb],
                "dimension": krull_dimension(ideal),
                "hilbert_series": str(ideal.hilbert_series()) if all(g.is_homogeneous() for g in gb)
                else None}
    if what == "presentation":
        pres = presentation_ideal(polys, ring)
        return {"p": ring.p, "generators": [str(g) for g in pres.generators],
                "weights": pres.degrees,
                "basis": [str(g) for g in pres.ideal.groebner_basis()],
                "dimension": krull_dimension(pres.ideal),
                "hilbert_series": str(pres.hilbert_series())}
    # depth of ring / (polys); homogeneous input only
    if not all(f.is_homogeneous() for f in polys):
        raise StructureError("depth needs homogeneous generators")
    grev = ring.with_order(MonomialOrder("grevlex"))
    ideal = Ideal(grev, [f.to_ring(grev) for f in polys])
    betti = resolve(grev, ideal.groebner_basis())
    verdict = quotient_verdict(ideal, betti)
    out = {"p": ring.p, "variables": list(ring.names), "weights": list(ring.weights),
           "betti": betti.to_json(), "betti_table": betti.render()}
    out.update(verdict.as_dict())
    return out


def _write(text, path):
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w") as fh:
            fh.write(text)


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        if args.command == "example":
            scenario = build_example_general(args.p, args.d)
            D = args.max_degree if args.max_degree is not None else default_degree_bound(args.p, args.d)
            report = run_verification(scenario, D, args.stretch, args.resolution_cap)
            text = emit_report(report, args.format)
            _write(text, args.out)
            if args.figures:
                from .plotting import write_figures
                write_figures(report.to_dict(), args.figures)
            return EXIT_OK if report.all_match else EXIT_MISMATCH
        ring, polys = load_input(args.input)
        result = compute(args.what, ring, polys)
        _write(json.dumps(result, indent=2) + "\n", args.out)
        return EXIT_OK
    except GroupSizeError as exc:
        print(f"paperlab: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except (FieldError, ScenarioError, PolynomialSyntaxError, StructureError,
            ValueError, KeyError, OSError) as exc:
        print(f"paperlab: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
