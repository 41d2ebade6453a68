"""Figures written next to the reports (PNG via the Agg backend)."""

from __future__ import annotations

import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def _style(ax):
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    ax.tick_params(labelsize=9)


def hilbert_figure(report, path):
    """Invariant dimensions per degree for R (and S when present)."""
    facts = report["facts"]
    r = facts.get("R", {})
    hf = r.get("hilbert_function")
    if not hf:
        return None
    fig, ax = plt.subplots(figsize=(6, 3.6))
    ax.plot(range(len(hf)), hf, "o-", lw=1.2, ms=4, label="dim $(T_n)^G$")
    ax.set_yscale("log")
    ax.set_xlabel("degree n")
    ax.set_ylabel("dimension")
    sc = report["scenario"]
    ax.set_title(f"invariant Hilbert function, p={sc['p']}, d={sc['d']}", fontsize=10)
    ax.legend(frameon=False, fontsize=9)
    _style(ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def betti_figure(report, path):
    s = report["facts"].get("S", {})
    betti = s.get("betti")
    over = "K[t]"
    if not betti:
        betti = s.get("module", {}).get("betti")
        over = "R"
    if not betti:
        return None
    cells = {}
    for i, row in betti.items():
        for j, b in row.items():
            cells[(int(j) - int(i), int(i))] = b
    rows = sorted({r for r, _ in cells})
    cols = sorted({c for _, c in cells})
    grid = [[cells.get((r, c), 0) for c in cols] for r in rows]
    fig, ax = plt.subplots(figsize=(0.6 * len(cols) + 2, 0.45 * len(rows) + 1.5))
    ax.imshow(grid, cmap="Blues", aspect="auto")
    for a, r in enumerate(rows):
        for b, c in enumerate(cols):
            v = grid[a][b]
            if v:
                ax.text(b, a, str(v), ha="center", va="center", fontsize=8)
    ax.set_xticks(range(len(cols)), [str(c) for c in cols])
    ax.set_yticks(range(len(rows)), [str(r) for r in rows])
    ax.set_xlabel("homological degree i")
    ax.set_ylabel("j - i")
    v = s.get("verdict", {})
    ax.set_title(f"Betti table of S over {over}: depth {v.get('depth')}, dim {v.get('dimension')}",
                 fontsize=10)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
    return path


def write_figures(report, directory):
    """Write all applicable figures into ``directory``; returns paths."""
    os.makedirs(directory, exist_ok=True)
    sc = report["scenario"]
    stem = f"p{sc['p']}_d{sc['d']}"
    out = []
    for fn, name in ((hilbert_figure, "hilbert"), (betti_figure, "betti")):
        path = fn(report, os.path.join(directory, f"{stem}_{name}.png"))
        if path:
            out.append(path)
    return out
