"""SVG rendering of the affine slice of the positive orthant (n = 3 or 4):
simplex frame, quasi-simple vertices, the regular cone H_delta^ss, and its
facet edges.  Deterministic output: fixed layout, fixed float formatting.
"""
from __future__ import annotations

from fractions import Fraction

from .errors import UnsupportedClassError
from .quiver import EUCLIDEAN
from .regular import compute_tubes, facets_and_cones

_LAYOUT = {
    # asymmetric placements keep the defect-zero slice two-dimensional
    3: [(200.0, 70.0), (70.0, 330.0), (330.0, 310.0)],
    4: [(200.0, 40.0), (40.0, 230.0), (360.0, 230.0), (200.0, 360.0)],
}


def _project(d, corners):
    total = sum(d)
    x = sum(Fraction(v) * Fraction(int(c[0] * 100), 100) for v, c in zip(d, corners))
    y = sum(Fraction(v) * Fraction(int(c[1] * 100), 100) for v, c in zip(d, corners))
    return float(x / total), float(y / total)


def _fmt(x):
    return f"{x:.2f}"


def _boundary_cycle(quasi, facet_sets):
    """Order the quasi-simple roots along the boundary of H_delta^ss, using
    facet membership as adjacency; falls back to the given order."""
    if len(quasi) <= 2:
        return list(quasi)
    adj = {q: set() for q in quasi}
    for gens in facet_sets:
        gens = [g for g in gens if g in adj]
        if len(gens) == 2:
            adj[gens[0]].add(gens[1])
            adj[gens[1]].add(gens[0])
    if any(len(v) != 2 for v in adj.values()):
        return list(quasi)
    cycle = [quasi[0]]
    prev = None
    while len(cycle) < len(quasi):
        nxt = [w for w in adj[cycle[-1]] if w != prev]
        prev = cycle[-1]
        cycle.append(nxt[0])
    return cycle


def render_slice(ctx):
    """SVG 1.1 drawing of the affine slice; requires a Euclidean quiver on 3
    or 4 vertices."""
    if ctx.klass != EUCLIDEAN:
        raise UnsupportedClassError("slice rendering requires a Euclidean quiver")
    if ctx.n not in _LAYOUT:
        raise UnsupportedClassError("slice rendering supports 3 or 4 vertices only")
    corners = _LAYOUT[ctx.n]
    tubes = compute_tubes(ctx)
    data = facets_and_cones(ctx)
    quasi = [b for t in tubes for b in t.quasi_simples]
    facet_sets = [set(data["F"][i].generators) for i in data["R"]]

    lines = ['<?xml version="1.0" encoding="UTF-8"?>',
             '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
             'width="400" height="400" viewBox="0 0 400 400">',
             '<rect width="400" height="400" fill="white"/>']
    # simplex frame
    for i in range(ctx.n):
        for j in range(i + 1, ctx.n):
            xi, yi = corners[i]
            xj, yj = corners[j]
            lines.append(f'<line class="frame" x1="{_fmt(xi)}" y1="{_fmt(yi)}" '
                         f'x2="{_fmt(xj)}" y2="{_fmt(yj)}" stroke="#bbbbbb" '
                         'stroke-width="1" stroke-dasharray="4 3"/>')
    for i in range(ctx.n):
        x, y = corners[i]
        lines.append(f'<text class="vertex-label" x="{_fmt(x)}" y="{_fmt(y - 8)}" '
                     f'font-size="13" text-anchor="middle">{i + 1}</text>')
    # H_delta^ss region through the quasi-simples
    cycle = _boundary_cycle(quasi, facet_sets)
    pts = [_project(q, corners) for q in cycle]
    if pts:
        points = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in pts)
        lines.append(f'<polygon class="h-delta-ss" points="{points}" '
                     'fill="#ffd54d" fill-opacity="0.45" stroke="#c89b00" '
                     'stroke-width="1.2"/>')
    # facet edges
    for gens in facet_sets:
        gen_list = sorted(gens)
        if len(gen_list) == 2:
            (x1, y1), (x2, y2) = (_project(g, corners) for g in gen_list)
            lines.append(f'<line class="facet" x1="{_fmt(x1)}" y1="{_fmt(y1)}" '
                         f'x2="{_fmt(x2)}" y2="{_fmt(y2)}" stroke="#c24f00" '
                         'stroke-width="1.6"/>')
    # quasi-simple vertices and the null root
    for q in quasi:
        x, y = _project(q, corners)
        label = ",".join(str(v) for v in q)
        lines.append(f'<circle class="quasi-simple" cx="{_fmt(x)}" cy="{_fmt(y)}" '
                     'r="4" fill="#1255cc"/>')
        lines.append(f'<text class="quasi-simple-label" x="{_fmt(x + 6)}" '
                     f'y="{_fmt(y - 6)}" font-size="10">({label})</text>')
    dx, dy = _project(ctx.delta, corners)
    lines.append(f'<circle class="null-root" cx="{_fmt(dx)}" cy="{_fmt(dy)}" '
                 'r="4" fill="#c2185b"/>')
    lines.append(f'<text class="null-root-label" x="{_fmt(dx + 6)}" y="{_fmt(dy + 12)}" '
                 'font-size="10">&#948;</text>')
    lines.append("</svg>")
    return "\n".join(lines) + "\n"
