"""ASCII and SVG pictures of transversals."""
from __future__ import annotations

from .core import Transversal, YoungDiagram, format_shape
from .errors import InvalidInput

DOT = "●"
EMPTY = "·"

CELL = 24


def render_ascii(T: Transversal) -> str:
    """One line per row (``●`` for the 1, ``·`` for other squares), then a legend."""
    lines = []
    for r, length in enumerate(T.shape.row_lengths, 1):
        c1 = T.cols[r - 1]
        lines.append("".join(DOT if c == c1 else EMPTY for c in range(1, length + 1)))
    lines.append(f"shape={format_shape(T.shape)}")
    return "\n".join(lines) + "\n"


def parse_ascii(text: str) -> Transversal:
    grid = []
    legend = None
    for line in text.splitlines():
        line = line.rstrip()
        if not line:
            continue
        if line.startswith("shape="):
            legend = line[len("shape="):]
            break
        grid.append(line)
    if not grid:
        raise InvalidInput("no grid rows found")
    cols = []
    for r, line in enumerate(grid, 1):
        if set(line) - {DOT, EMPTY} or line.count(DOT) != 1:
            raise InvalidInput(f"row {r}: expected exactly one {DOT} among {EMPTY}")
        cols.append(line.index(DOT) + 1)
    shape = YoungDiagram(tuple(len(line) for line in grid))
    if legend is not None and legend != format_shape(shape):
        raise InvalidInput(f"legend shape={legend} does not match the grid ({format_shape(shape)})")
    return Transversal(shape, tuple(cols))


def render_svg(T: Transversal) -> str:
    n = T.n
    w = h = n * CELL
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{w + 2}" height="{h + 2}" '
        f'viewBox="-1 -1 {w + 2} {h + 2}">'
    ]
    for r, length in enumerate(T.shape.row_lengths):
        for c in range(length):
            out.append(
                f'<rect x="{c * CELL}" y="{r * CELL}" width="{CELL}" height="{CELL}" '
                f'fill="none" stroke="black"/>'
            )
    for r, c in enumerate(T.cols):
        out.append(
            f'<circle cx="{(c - 1) * CELL + CELL // 2}" cy="{r * CELL + CELL // 2}" '
            f'r="{CELL // 4}" fill="black"/>'
        )
    out.append("</svg>")
    return "\n".join(out) + "\n"
