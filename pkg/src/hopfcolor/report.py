"""Figure rendering for complexes and survey summaries.

Figures land next to the delimited reports: order complexes are drawn the
way the hand-drawn pictures in the literature are, vertices on a circle
with triangles shaded, and survey runs get verdict/ h-entry summaries.
Layout is a deterministic function of the input, so reruns redraw the same
picture.
"""

from __future__ import annotations

import math
from typing import Optional

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
from matplotlib.patches import Polygon

from .complexes import RelativePair, SimplicialComplex, label_key, render_label


def _positions(vertices) -> dict:
    n = len(vertices)
    pos = {}
    for i, v in enumerate(vertices):
        angle = math.pi / 2 + 2 * math.pi * i / max(n, 1)
        pos[v] = (math.cos(angle), math.sin(angle))
    return pos


def _draw_on(ax, c: SimplicialComplex, pos, edge_color, face_color, lw):
    for f in sorted(c.faces, key=len):
        if len(f) == 3:
            pts = [pos[v] for v in sorted(f, key=label_key)]
            ax.add_patch(Polygon(pts, closed=True, facecolor=face_color, edgecolor="none"))
    for f in c.faces:
        if len(f) == 2:
            (a, b) = sorted(f, key=label_key)
            ax.plot(
                [pos[a][0], pos[b][0]],
                [pos[a][1], pos[b][1]],
                color=edge_color,
                linewidth=lw,
                zorder=2,
            )


def draw_complex(
    c: SimplicialComplex,
    path: str,
    title: Optional[str] = None,
    highlight: Optional[SimplicialComplex] = None,
) -> str:
    """Render the 1- and 2-skeleton to a PNG; optional bold subcomplex."""
    fig, ax = plt.subplots(figsize=(5, 5))
    ax.set_aspect("equal")
    ax.axis("off")
    vertices = c.vertices
    if not vertices:
        ax.text(0.5, 0.5, "(no vertices)", ha="center", va="center")
    pos = _positions(vertices)
    _draw_on(ax, c, pos, edge_color="0.65", face_color="0.88", lw=1.5)
    if highlight is not None and not highlight.is_void:
        _draw_on(ax, highlight, pos, edge_color="black", face_color="0.6", lw=3.0)
    hverts = set(highlight.vertices) if highlight is not None else set()
    for v in vertices:
        x, y = pos[v]
        ax.scatter([x], [y], s=600, facecolor="white",
                   edgecolor="black" if v in hverts or highlight is None else "0.65",
                   linewidth=2 if v in hverts or highlight is None else 1, zorder=3)
        ax.text(x, y, render_label(v), ha="center", va="center", fontsize=8, zorder=4)
    if title:
        ax.set_title(title)
    margin = 1.25
    ax.set_xlim(-margin, margin)
    ax.set_ylim(-margin, margin)
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
    return path


def draw_pair(pair: RelativePair, path: str, title: Optional[str] = None) -> str:
    return draw_complex(pair.total, path, title=title, highlight=pair.sub)


def survey_figures(rows: list[dict], directory: str, tag: str) -> list[str]:
    """Verdict counts and smallest-h-entry histogram for a survey run."""
    import os

    paths = []
    columns = ["theorem1", "relative_cm", "criterion", "h_positive"]
    fig, ax = plt.subplots(figsize=(6, 4))
    true_counts = [sum(1 for r in rows if r[c]) for c in columns]
    false_counts = [sum(1 for r in rows if not r[c]) for c in columns]
    x = range(len(columns))
    ax.bar(x, true_counts, color="0.35", label="true")
    ax.bar(x, false_counts, bottom=true_counts, color="0.8", label="false")
    ax.set_xticks(list(x))
    ax.set_xticklabels(columns, rotation=20)
    ax.set_ylabel("structures")
    ax.set_title(f"survey verdicts: {tag}")
    ax.legend()
    p1 = os.path.join(directory, "survey_verdicts.png")
    fig.savefig(p1, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(p1)

    fig, ax = plt.subplots(figsize=(6, 4))
    mins = [min(r["h_vector"]) for r in rows if r["h_vector"]]
    if mins:
        lo, hi = min(mins), max(mins)
        bins = range(lo, hi + 2)
        ax.hist(mins, bins=[b - 0.5 for b in bins], color="0.45", edgecolor="white")
    ax.set_xlabel("smallest h-vector entry")
    ax.set_ylabel("structures")
    ax.set_title(f"shifted h-vector minima: {tag}")
    p2 = os.path.join(directory, "survey_hmin.png")
    fig.savefig(p2, dpi=150, bbox_inches="tight")
    plt.close(fig)
    paths.append(p2)
    return paths
