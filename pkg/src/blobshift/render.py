"""Byte renderers for patterns and move words.

text: the pattern text format (round-trips through the parser).
pbm:  portable bitmap P1, nonzero cells as 1 over the domain bounding box.
svg-paths: a move word as a single polyline, one point per visited height.
"""
from __future__ import annotations

from .errors import UnsupportedFormat
from .paths import MoveWord, integrate
from .patterns import Pattern, format_pattern

PATTERN_FORMATS = ("text", "pbm")


def render_pattern(pattern: Pattern, fmt: str) -> bytes:
    if fmt == "text":
        return format_pattern(pattern).encode()
    if fmt == "pbm":
        return _pbm(pattern)
    raise UnsupportedFormat(f"unknown pattern format {fmt!r}")


def _pbm(pattern: Pattern) -> bytes:
    box = pattern.bounding_box()
    if box is None:
        return b"P1\n0 0\n"
    lo, hi = box
    if pattern.dimension == 1:
        width, height = hi[0] - lo[0] + 1, 1
        rows = [[_bit(pattern, (x,)) for x in range(lo[0], hi[0] + 1)]]
    else:
        width = hi[0] - lo[0] + 1
        height = hi[1] - lo[1] + 1
        rows = [[_bit(pattern, (x, y)) for x in range(lo[0], hi[0] + 1)]
                for y in range(hi[1], lo[1] - 1, -1)]
    body = "\n".join("".join(row) for row in rows)
    return f"P1\n{width} {height}\n{body}\n".encode()


def _bit(pattern: Pattern, cell) -> str:
    symbol = pattern.get(cell)
    if symbol is None or symbol == pattern.alphabet.zero:
        return "0"
    return "1"


def render_moves(word: MoveWord, scale: int = 4) -> bytes:
    """SVG polyline of the walk, one point per height, y drawn downward."""
    heights = integrate(word).heights
    top = max(heights)
    points = " ".join(f"{i * scale},{(top - h) * scale}"
                      for i, h in enumerate(heights))
    width = (len(heights) - 1) * scale
    height = (top - min(heights)) * scale
    return (
        f'<svg xmlns="http://www.w3.org/2000/svg" '
        f'width="{width}" height="{height}" '
        f'viewBox="-1 -1 {width + 2} {height + 2}">\n'
        f'<polyline fill="none" stroke="black" stroke-width="1" '
        f'points="{points}"/>\n</svg>\n').encode()
