"""Deterministic SVG rendering of instances and embeddings.

All styling constants live in one table so identical inputs always produce
byte-identical output. The y axis is flipped at emit time (SVG grows
downward) by negating y coordinates, which keeps every emitted number an
integer.
"""

from __future__ import annotations

from .model import Embedding, EmbeddingInstance

STYLE = {
    "padding": 2,  # viewport margin around the geometry, grid units
    "point_radius": "0.3",
    "polygon_stroke": "#222222",
    "polygon_width": "0.2",
    "edge_stroke": "#2b6cb0",
    "edge_width": "0.12",
    "point_fill": "#222222",
    "anchor_fill": "#c53030",  # the highlighted point, when one is marked
}


def render_svg(
    instance: EmbeddingInstance,
    embedding: Embedding | None = None,
    highlight_point: int | None = None,
) -> str:
    poly = instance.polygon.vertices
    pts = instance.points.points
    all_x = [p.x for p in poly] + [p.x for p in pts]
    all_y = [p.y for p in poly] + [p.y for p in pts]
    pad = STYLE["padding"]
    minx, maxx = min(all_x) - pad, max(all_x) + pad
    miny, maxy = min(all_y) - pad, max(all_y) + pad
    view = f"{minx} {-maxy} {maxx - minx} {maxy - miny}"

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{view}">',
    ]
    outline = "M " + " L ".join(f"{p.x} {-p.y}" for p in poly) + " Z"
    lines.append(
        f'<path d="{outline}" fill="none" stroke="{STYLE["polygon_stroke"]}" '
        f'stroke-width="{STYLE["polygon_width"]}"/>'
    )
    if embedding is not None:
        mapping = embedding.mapping
        for u, v in instance.tree.edges:
            a, b = pts[mapping[u]], pts[mapping[v]]
            lines.append(
                f'<line x1="{a.x}" y1="{-a.y}" x2="{b.x}" y2="{-b.y}" '
                f'stroke="{STYLE["edge_stroke"]}" stroke-width="{STYLE["edge_width"]}"/>'
            )
    for i, p in enumerate(pts):
        fill = STYLE["anchor_fill"] if i == highlight_point else STYLE["point_fill"]
        lines.append(
            f'<circle cx="{p.x}" cy="{-p.y}" r="{STYLE["point_radius"]}" fill="{fill}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
