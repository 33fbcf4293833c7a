"""Static ascii and svg renderings of floor plans, height maps and 2D diagrams.

Grids are drawn like ytableau: the top row is the largest y, x grows to the
right, and empty cells at the end of a row are omitted.
"""

from __future__ import annotations

from typing import Any

from .errors import UnsupportedKind
from .floorplan import CompatibleFloorPlan, FloorPlan
from .lattice import HeightMap, YoungDiagram, heights_from_diagram

EMPTY = "(empty)"
CELL = 28


def _cells(obj: Any) -> dict[tuple[int, int], str]:
    if isinstance(obj, FloorPlan):
        return {p: str(h) for p, h in obj.weights().items()}
    if isinstance(obj, HeightMap):
        return {q: str(obj[q]) for q in obj.support()}
    if isinstance(obj, YoungDiagram):
        if obj.n == 2:
            return {b: "#" for b in obj.boxes}
        if obj.n == 3:
            return _cells(heights_from_diagram(obj))
    raise UnsupportedKind(f"cannot render {type(obj).__name__}")


def _ascii_grid(cells: dict[tuple[int, int], str]) -> str:
    if not cells:
        return EMPTY
    width = max(len(v) for v in cells.values())
    top = max(y for _, y in cells)
    lines = []
    for y in range(top, -1, -1):
        row = [x for x, yy in cells if yy == y]
        last = max(row) if row else 0  # an empty row still shows one cell
        lines.append(" ".join(cells.get((x, y), ".").rjust(width) for x in range(last + 1)).rstrip())
    return "\n".join(lines)


def _svg_grid(cells: dict[tuple[int, int], str], x0: int, top: int, fill: str) -> list[str]:
    out = []
    for (x, y), label in sorted(cells.items()):
        px, py = x0 + x * CELL, (top - y) * CELL
        out.append(f'<rect x="{px}" y="{py}" width="{CELL}" height="{CELL}" fill="{fill}" stroke="#333"/>')
        if label != "#":
            out.append(
                f'<text x="{px + CELL // 2}" y="{py + CELL // 2 + 5}" font-size="14" '
                f'text-anchor="middle" font-family="monospace">{label}</text>'
            )
    return out


def _svg(panels: list[dict[tuple[int, int], str]]) -> str:
    body: list[str] = []
    x0 = 0
    top = max((y for cells in panels for _, y in cells), default=0)
    height = (top + 1) * CELL
    colors = ("#9ecae1", "#fdae6b")
    for k, cells in enumerate(panels):
        body += _svg_grid(cells, x0, top, colors[k % 2])
        if cells:
            x0 += (max(x for x, _ in cells) + 2) * CELL
    width = max(x0, CELL)
    head = f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">'
    return "\n".join([head, *body, "</svg>"]) + "\n"


def render(obj: Any, fmt: str = "ascii") -> str:
    if fmt not in ("ascii", "svg"):
        raise ValueError(f"unknown format {fmt!r}")
    if isinstance(obj, CompatibleFloorPlan):
        panels = [_cells(obj.left), _cells(obj.right)]
        if fmt == "svg":
            return _svg(panels)
        return "P:\n" + _ascii_grid(panels[0]) + "\nQ:\n" + _ascii_grid(panels[1]) + "\n"
    cells = _cells(obj)
    if fmt == "svg":
        return _svg([cells])
    return _ascii_grid(cells) + "\n"
