"""JSON and text rendering of scenario reports."""

from __future__ import annotations

import json


def report_json(report):
    data = report.to_dict() if hasattr(report, "to_dict") else report
    return json.dumps(data, indent=2) + "\n"


def without_timings(data):
    """Copy of a report dict with the nondeterministic block removed."""
    return {k: v for k, v in data.items() if k != "timings"}


def report_text(report):
    data = report.to_dict() if hasattr(report, "to_dict") else report
    sc = data["scenario"]
    lines = [f"paperlab report (schema {data['schema_version']})",
             f"p = {sc['p']}, d = {sc['d']}, max degree = {sc['max_degree']}, "
             f"stretch = {sc['stretch']}",
             ""]
    lines.append("checks:")
    width = max((len(c["id"]) for c in data["checks"]), default=10)
    for c in data["checks"]:
        flag = "ok  " if c["match"] else "FAIL"
        lines.append(f"  [{flag}] {c['id']:<{width}}  expected {c['expected']!r:<12} "
                     f"computed {c['computed']!r}")
    r = data["facts"].get("R")
    if r:
        lines += ["", "R = T^G:"]
        lines.append("  generators: " + ", ".join(r.get("generators", [])))
        if "hilbert_series" in r:
            lines.append(f"  Hilbert series: {r['hilbert_series']}")
        for var, nrm in r.get("norm_polynomials", {}).items():
            lines.append(f"  norm of {var}: {nrm}")
        if "certificate" in r:
            lines.append(f"  certificate: {r['certificate']}")
    s = data["facts"].get("S")
    if s:
        lines += ["", "S = T^H:"]
        if "generators_by_degree" in s:
            lines.append("  generators by degree: " + ", ".join(
                f"{k}: {v}" for k, v in s["generators_by_degree"].items()))
        if "certificate" in s:
            lines.append(f"  certificate: {s['certificate']}")
        if "hilbert_series" in s:
            lines.append(f"  Hilbert series: {s['hilbert_series']}")
        if "betti_table" in s:
            lines.append("  Betti table:")
            lines += ["    " + row for row in s["betti_table"].splitlines()]
        mod = s.get("module")
        if mod:
            lines.append(f"  as a module over R: {mod['generators']} generators in degrees "
                         f"{mod['generator_degrees']}, {mod['relations']} relations, "
                         f"projective dimension {mod['projective_dimension']}, depth {mod['depth']}")
            lines += ["    " + row for row in mod["betti_table"].splitlines()]
        if "depth_route" in s:
            lines.append(f"  depth route: {s['depth_route']}")
        v = s.get("verdict")
        if v:
            lines.append(f"  dimension {v['dimension']}, depth {v['depth']}, "
                         f"projective dimension {v['projective_dimension']} over "
                         f"{v['nvars']} variables, defect {v['cm_defect']}")
            lines.append("  verdict: " + ("COHEN-MACAULAY" if v["is_cohen_macaulay"]
                                          else "NOT COHEN-MACAULAY"))
    for sk in data.get("skipped", []):
        lines.append(f"\nskipped {sk['stage']}: {sk['reason']}")
    for e in data.get("errors", []):
        lines.append(f"\nERROR {e['code']} in {e['stage']}: {e['type']}: {e['message']}")
    lines.append("")
    lines.append("ALL MATCH" if data["all_match"] else "MISMATCH")
    return "\n".join(lines) + "\n"


def emit_report(report, fmt="json", path=None):
    """Render ``report`` as ``json`` or ``text``; write to ``path`` or
    return the string when ``path`` is None."""
    if fmt == "json":
        text = report_json(report)
    elif fmt == "text":
        text = report_text(report)
    else:
        raise ValueError(f"unknown report format {fmt!r}")
    if path is None:
        return text
    with open(path, "w") as fh:
        fh.write(text)
    return text
