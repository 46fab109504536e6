"""Report figures: relation-kind histogram next to a drawing of the ontology graph."""

from __future__ import annotations

import math
from collections import Counter
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .onto.compile import ontology_to_quiver  # noqa: E402
from .onto.model import OntologyDoc  # noqa: E402
from .quiver import Quiver, accepts_categorification  # noqa: E402

CYCLE_COLOR = "#c0392b"
EDGE_COLOR = "#555555"


def circle_layout(q: Quiver) -> dict[str, tuple[float, float]]:
    n = len(q.vertices)
    if n == 1:
        return {q.vertex_ids[0]: (0.0, 0.0)}
    return {
        v: (math.cos(2 * math.pi * i / n + math.pi / 2), math.sin(2 * math.pi * i / n + math.pi / 2))
        for i, v in enumerate(q.vertex_ids)
    }


def draw_quiver(ax, q: Quiver, highlight=()):
    pos = circle_layout(q)
    highlight = set(highlight)
    parallel = Counter()
    for a in q.arrows:
        x0, y0 = pos[a.src]
        x1, y1 = pos[a.tgt]
        k = parallel[a.src, a.tgt]
        parallel[a.src, a.tgt] += 1
        color = CYCLE_COLOR if a.id in highlight else EDGE_COLOR
        if a.src == a.tgt:
            ax.add_patch(plt.Circle((x0 * 1.12, y0 * 1.12), 0.08 + 0.03 * k, fill=False, color=color, lw=1))
            continue
        ax.annotate(
            "",
            xy=(x1, y1),
            xytext=(x0, y0),
            arrowprops=dict(
                arrowstyle="-|>",
                color=color,
                lw=1.6 if a.id in highlight else 0.8,
                shrinkA=8,
                shrinkB=8,
                connectionstyle=f"arc3,rad={0.12 * k}",
            ),
        )
    for v in q.vertices:
        x, y = pos[v.id]
        ax.plot([x], [y], "o", color="#2c3e50", ms=5)
        ha = "left" if x > 0.1 else "right" if x < -0.1 else "center"
        ax.text(x * 1.1, y * 1.15, v.label, ha=ha, va="center", fontsize=7)
    ax.set_xlim(-2.0, 2.0)
    ax.set_ylim(-1.4, 1.4)
    ax.set_aspect("equal")
    ax.axis("off")


def render_report_figure(doc: OntologyDoc, path, dpi: int = 150) -> Path:
    """Write a two-panel PNG/PDF/SVG (format from the suffix) and return its path."""
    q = ontology_to_quiver(doc)
    rep = accepts_categorification(q)
    kinds = Counter(r.kind.label for r in doc.relations)

    fig, (left, right) = plt.subplots(1, 2, figsize=(11, 5), gridspec_kw={"width_ratios": [1, 1.6]})
    names = sorted(kinds)
    left.barh(names, [kinds[k] for k in names], color="#34495e")
    left.invert_yaxis()
    left.set_xlabel("relations")
    left.set_title("relation kinds", fontsize=10)
    if not names:
        left.text(0.5, 0.5, "no relations", ha="center", va="center", transform=left.transAxes)

    draw_quiver(right, q, rep.witness_cycle or ())
    verdict = "categorifiable" if rep.accepted else "not categorifiable"
    acyc = "acyclic" if rep.acyclic else f"cycle of length {len(rep.witness_cycle)}"
    right.set_title(f"{doc.name}: {verdict}, {acyc}", fontsize=10)

    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, dpi=dpi)
    plt.close(fig)
    return path
