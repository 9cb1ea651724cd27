"""Deterministic SVG projections and CSV tables of chains and star trees.

All geometry stays rational until the very last formatting step, where pixel
coordinates are rounded to two decimals with integer arithmetic.
"""

from __future__ import annotations

import csv
import io
from fractions import Fraction
from typing import List, Sequence, Tuple, Union

from .construct import PolyChain, SegmentSet
from .exactq import format_rational
from .hypercube import nodes

PIXEL_SCALE = 120
MARGIN = Fraction(1, 2)
NODE_RADIUS = 6
STROKE = "#1f4e9c"
STROKE_WIDTH = 2
NODE_FILL = "#d62728"


def _fmt(v: Fraction) -> str:
    n = round(v * 100)
    sign = "-" if n < 0 else ""
    n = abs(n)
    return f"{sign}{n // 100}.{n % 100:02d}"


def check_projection(k: int, proj: Sequence[int]) -> Tuple[int, int]:
    if len(proj) != 2:
        raise ValueError("projection needs exactly two coordinate indices")
    i, j = proj
    if i == j or not (0 <= i < k and 0 <= j < k):
        raise ValueError(f"projection indices must be distinct and in [0, {k}), got {i},{j}")
    return i, j


def to_svg(obj: Union[PolyChain, SegmentSet], proj: Sequence[int] = (0, 1),
           pixel_scale: int = PIXEL_SCALE) -> str:
    """Orthogonal projection onto coordinates ``proj``; cube nodes as circles."""
    k = obj.k
    i, j = check_projection(k, proj)
    if isinstance(obj, PolyChain):
        paths = [list(obj.vertices)]
    else:
        paths = [[s.a, s.b] for s in obj.segments]
    node_pos = list(dict.fromkeys((p[i], p[j]) for p in nodes(k)))
    pts = [(p[i], p[j]) for path in paths for p in path] + node_pos
    xmin = min(x for x, _ in pts) - MARGIN
    xmax = max(x for x, _ in pts) + MARGIN
    ymin = min(y for _, y in pts) - MARGIN
    ymax = max(y for _, y in pts) + MARGIN

    def px(x, y) -> Tuple[str, str]:
        return _fmt((x - xmin) * pixel_scale), _fmt((ymax - y) * pixel_scale)

    width, height = _fmt((xmax - xmin) * pixel_scale), _fmt((ymax - ymin) * pixel_scale)
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        f'<rect x="0" y="0" width="{width}" height="{height}" fill="#ffffff"/>',
        f'<g fill="none" stroke="{STROKE}" stroke-width="{STROKE_WIDTH}" stroke-linejoin="round">',
    ]
    for path in paths:
        coords = " ".join(",".join(px(p[i], p[j])) for p in path)
        lines.append(f'<polyline points="{coords}"/>')
    lines.append("</g>")
    lines.append(f'<g fill="{NODE_FILL}" stroke="none">')
    for x, y in node_pos:
        cx, cy = px(x, y)
        lines.append(f'<circle cx="{cx}" cy="{cy}" r="{NODE_RADIUS}"/>')
    lines.append("</g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def to_csv(obj: Union[PolyChain, SegmentSet]) -> str:
    """One row per chain vertex (or per segment endpoint), rationals in canonical text."""
    k = obj.k
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    coord_cols = [f"x{c + 1}" for c in range(k)]
    if isinstance(obj, PolyChain):
        w.writerow(["index"] + coord_cols)
        for n, v in enumerate(obj.vertices):
            w.writerow([n] + [format_rational(x) for x in v])
    else:
        w.writerow(["segment", "end"] + coord_cols)
        for n, s in enumerate(obj.segments):
            for end, p in (("a", s.a), ("b", s.b)):
                w.writerow([n, end] + [format_rational(x) for x in p])
    return buf.getvalue()
