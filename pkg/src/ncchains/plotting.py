"""Matplotlib renderings of Hasse diagrams and check summaries, written to files."""

from __future__ import annotations

from collections import defaultdict
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .letters import letter_key, letter_str, word_str  # noqa: E402
from .poset import LabeledPoset  # noqa: E402
from .report import FAIL, PASS, UNKNOWN, Report  # noqa: E402

STATUS_COLORS = {PASS: "#4c9a2a", FAIL: "#c0392b", UNKNOWN: "#b9a44c"}


def _layers(poset: LabeledPoset) -> dict:
    depth = poset.depth
    layers = defaultdict(list)
    for x in poset.elements:
        layers[depth[x]].append(x)
    for row in layers.values():
        row.sort(key=letter_key)
    return layers


def hasse_diagram(poset: LabeledPoset, path: str | Path, title: str = "", max_elements: int = 400,
                  edge_labels: bool | None = None) -> Path:
    """Draw the covers bottom to top; layers are depths from the minimum."""
    if len(poset) > max_elements:
        raise ValueError(f"poset has {len(poset)} elements; refusing to draw more than {max_elements}")
    layers = _layers(poset)
    pos = {}
    for level, row in layers.items():
        for k, x in enumerate(row):
            pos[x] = (k - (len(row) - 1) / 2, level)
    width = max(len(r) for r in layers.values())
    fig, ax = plt.subplots(figsize=(max(4, 0.9 * width), max(3, 1.2 * len(layers))))
    if edge_labels is None:
        edge_labels = len(poset.covers) <= 60
    for lo, hi, lab in poset.covers:
        (x0, y0), (x1, y1) = pos[lo], pos[hi]
        ax.plot([x0, x1], [y0, y1], color="0.55", lw=0.8, zorder=1)
        if edge_labels:
            ax.text((x0 + x1) / 2, (y0 + y1) / 2, letter_str(lab), fontsize=6, color="0.25",
                    ha="center", va="center", bbox=dict(fc="white", ec="none", pad=0.3))
    xs, ys = zip(*pos.values())
    ax.scatter(xs, ys, s=28, color="#2c5d8a", zorder=2)
    if len(poset) <= 40:
        for x, (px, py) in pos.items():
            text = word_str(x) if isinstance(x, tuple) else letter_str(x)
            ax.annotate(text, (px, py), textcoords="offset points", xytext=(0, 6), fontsize=6, ha="center")
    ax.set_axis_off()
    ax.set_title(title or f"{len(poset)} elements, {len(poset.covers)} covers", fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def check_summary(report: Report, path: str | Path) -> Path:
    """One horizontal bar per check, colored by status."""
    checks = report.checks
    fig, ax = plt.subplots(figsize=(7, max(1.5, 0.28 * len(checks) + 0.8)))
    names = [c.name if len(c.name) <= 70 else c.name[:67] + "..." for c in checks]
    ax.barh(range(len(checks)), [1] * len(checks), color=[STATUS_COLORS[c.status] for c in checks])
    ax.set_yticks(range(len(checks)))
    ax.set_yticklabels(names, fontsize=6)
    ax.invert_yaxis()
    ax.set_xticks([])
    for side in ("top", "right", "bottom"):
        ax.spines[side].set_visible(False)
    counts = {s: sum(c.status == s for c in checks) for s in STATUS_COLORS}
    ax.set_title(f"{report.title}: " + ", ".join(f"{v} {k}" for k, v in counts.items()), fontsize=9)
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path
