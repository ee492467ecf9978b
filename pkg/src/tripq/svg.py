"""SVG drawings of partitions: the unit triangle in a 1000 x 1000 viewport, y up.

Lines are emitted as maximal collinear segments with exact endpoints kept in
data attributes; only the drawing coordinates are rounded.
"""
from __future__ import annotations

from fractions import Fraction

from .linalg import Point, format_rational

SIZE = 1000
DIGITS = 12


def _on_open_segment(p: Point, a: Point, b: Point) -> bool:
    cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    if cross != 0 or p == a or p == b:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def partition_segments(cells) -> list:
    """Edges of all cells, cut at every partition vertex they pass through, deduplicated.

    Each segment is a sorted pair of exact points; the list is sorted.
    """
    tris = [c.vertices for c in cells]
    points = sorted({v for tri in tris for v in tri})
    segments = set()
    for tri in tris:
        for i in range(3):
            a, b = tri[i], tri[(i + 1) % 3]
            if a == b:
                continue
            inner = [p for p in points if _on_open_segment(p, a, b)]
            chain = sorted([a, b, *inner])
            for u, v in zip(chain, chain[1:]):
                segments.add((u, v))
    return sorted(segments)


def _line_key(a: Point, b: Point) -> tuple:
    # the line through a and b as a normalized exact triple (p, q, r) with p x + q y = r
    p, q = b.y - a.y, a.x - b.x
    r = p * a.x + q * a.y
    scale = p if p != 0 else q
    return (p / scale, q / scale, r / scale)


def merged_segments(cells) -> list:
    """Maximal drawn lines: collinear pieces that touch are joined."""
    by_line = {}
    for a, b in partition_segments(cells):
        by_line.setdefault(_line_key(a, b), []).append((a, b))
    out = []
    for pieces in by_line.values():
        pieces.sort()
        start, end = pieces[0]
        for a, b in pieces[1:]:
            if a == end:
                end = b
            else:
                out.append((start, end))
                start, end = a, b
        out.append((start, end))
    return sorted(out)


def _coord(value: Fraction, flip: bool) -> str:
    v = SIZE * (1 - value) if flip else SIZE * value
    text = f"{float(v):.{DIGITS}f}".rstrip("0").rstrip(".")
    return text if text not in ("-0", "") else "0"


def render(cells, title: str = "") -> str:
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {SIZE} {SIZE}" width="{SIZE}" height="{SIZE}">',
    ]
    if title:
        lines.append(f"  <title>{title}</title>")
    lines.append('  <g stroke="black" stroke-width="1" fill="none">')
    for a, b in merged_segments(cells):
        lines.append(
            f'    <line x1="{_coord(a.x, False)}" y1="{_coord(a.y, True)}" '
            f'x2="{_coord(b.x, False)}" y2="{_coord(b.y, True)}" '
            f'data-p1="{format_rational(a.x)},{format_rational(a.y)}" '
            f'data-p2="{format_rational(b.x)},{format_rational(b.y)}"/>'
        )
    lines.append("  </g>")
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


__all__ = ["partition_segments", "merged_segments", "render", "SIZE"]
