"""JSON text format for instances, traces and campaign records.

Every document is an object with a ``"kind"`` field.  Points are integer
arrays; height maps are ragged rows, bottom row first; plans use parallel
arrays ``P``/``Q``/``h``.
"""

from __future__ import annotations

import json
from typing import Any

from .descent import DescentTrace, Step
from .errors import GerstError, ParseError
from .floorplan import CompatibleFloorPlan, FloorPlan
from .gluing import Component, GluingDatum, MatrixTuple, gluing_from_ideals, matrix_tuple, validate_gluing
from .lattice import (
    AbstractSkewShape,
    HeightMap,
    MonomialIdeal,
    YoungDiagram,
    diagram_from_heights,
    diagram_from_ideal,
    heights_from_diagram,
)
from .towers import Column, CompatibleTower, Tower

KINDS = (
    "gluing",
    "tower",
    "compatible-tower",
    "floor-plan",
    "compatible-floor-plan",
    "height-map",
    "diagram",
    "trace",
    "matrices",
)


def _pts(points) -> list[list[int]]:
    return [list(p) for p in sorted(points)]


def _seq(points) -> list[list[int]]:
    return [list(p) for p in points]


def _heights(d: YoungDiagram) -> dict:
    return {"heights": heights_from_diagram(d).rows()}


def to_dict(obj: Any) -> dict:
    if isinstance(obj, CompatibleFloorPlan):
        return {"kind": "compatible-floor-plan", "P": _seq(obj.P), "Q": _seq(obj.Q), "h": list(obj.h)}
    if isinstance(obj, FloorPlan):
        return {"kind": "floor-plan", "P": _seq(obj.points), "h": list(obj.heights)}
    if isinstance(obj, CompatibleTower):
        return {
            "kind": "compatible-tower",
            "lambda": _heights(obj.lam),
            "mu": _heights(obj.mu),
            "h": list(obj.heights),
            "b": _seq(obj.b),
            "c": _seq(obj.c),
        }
    if isinstance(obj, Tower):
        return {
            "kind": "tower",
            "lambda": _heights(obj.lam),
            "columns": [{"height": c.height, "b": list(c.base)} for c in obj.columns],
        }
    if isinstance(obj, GluingDatum):
        return {
            "kind": "gluing",
            "n": obj.n,
            "lambda": {"boxes": _pts(obj.lam.boxes)},
            "mu": {"boxes": _pts(obj.mu.boxes)},
            "components": [
                {"shape": _pts(c.shape.boxes), "b": list(c.b), "c": list(c.c)} for c in obj.components
            ],
        }
    if isinstance(obj, HeightMap):
        return {"kind": "height-map", "rows": obj.rows()}
    if isinstance(obj, YoungDiagram):
        return {"kind": "diagram", "n": obj.n, "boxes": _pts(obj.boxes)}
    if isinstance(obj, MatrixTuple):
        return {"kind": "matrices", "d": obj.dim, "matrices": obj.dense()}
    if isinstance(obj, DescentTrace):
        return {
            "kind": "trace",
            "start": to_dict(obj.start),
            "steps": [
                {
                    "move": s.move,
                    "detail": s.detail,
                    "before": to_dict(s.before),
                    "after": to_dict(s.after),
                    "deficiency_before": s.deficiency_before,
                    "deficiency_after": s.deficiency_after,
                    "obligations": s.obligations,
                }
                for s in obj.steps
            ],
        }
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj: Any) -> str:
    """Canonical text: one top-level field per line, values compact."""
    d = obj if isinstance(obj, dict) else to_dict(obj)
    body = ",\n".join(f"  {json.dumps(k)}: {json.dumps(v, separators=(', ', ': '))}" for k, v in d.items())
    return "{\n" + body + "\n}\n"


# ---------------------------------------------------------------- parsing


class _Ctx:
    """Field-path tracking so errors can say where they happened."""

    def __init__(self, text: str | None) -> None:
        self.text = text

    def line_of(self, field: str) -> int | None:
        if not self.text:
            return None
        key = '"' + field.split(".")[-1].split("[")[0] + '"'
        for k, line in enumerate(self.text.splitlines(), 1):
            if key in line:
                return k
        return None

    def fail(self, field: str, message: str) -> ParseError:
        return ParseError(message, field, self.line_of(field))


def _get(d: dict, key: str, ctx: _Ctx, path: str = ""):
    if not isinstance(d, dict) or key not in d:
        raise ctx.fail(path + key, "missing field")
    return d[key]


def _int(v, field: str, ctx: _Ctx) -> int:
    if isinstance(v, bool) or not isinstance(v, int):
        raise ctx.fail(field, f"expected an integer, got {v!r}")
    return v


def _point(v, field: str, ctx: _Ctx, n: int | None = None) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise ctx.fail(field, f"expected an integer array, got {v!r}")
    p = tuple(_int(x, f"{field}[{k}]", ctx) for k, x in enumerate(v))
    if n is not None and len(p) != n:
        raise ctx.fail(field, f"expected {n} coordinates, got {len(p)}")
    return p


def _points(v, field: str, ctx: _Ctx, n: int | None = None) -> list[tuple[int, ...]]:
    if not isinstance(v, list):
        raise ctx.fail(field, "expected an array of points")
    return [_point(p, f"{field}[{k}]", ctx, n) for k, p in enumerate(v)]


def _positive(v, field: str, ctx: _Ctx) -> int:
    x = _int(v, field, ctx)
    if x < 1:
        raise ctx.fail(field, f"column heights must be positive integers, got {x}")
    return x


def _positive_heights(v, field: str, ctx: _Ctx) -> tuple[int, ...]:
    if not isinstance(v, list):
        raise ctx.fail(field, "expected an integer array")
    return tuple(_positive(x, f"{field}[{k}]", ctx) for k, x in enumerate(v))


def _plan_points(v, field: str, ctx: _Ctx) -> tuple[tuple[int, int], ...]:
    pts = _points(v, field, ctx, 2)
    for k, p in enumerate(pts):
        if min(p) < 0:
            raise ctx.fail(f"{field}[{k}]", "plan positions must have non-negative coordinates")
    return tuple(pts)


def _diagram(v, field: str, ctx: _Ctx, n: int) -> YoungDiagram:
    if not isinstance(v, dict):
        raise ctx.fail(field, "expected an object with 'boxes', 'ideal' or 'heights'")
    try:
        if "boxes" in v:
            return YoungDiagram(n, frozenset(_points(v["boxes"], f"{field}.boxes", ctx, n)))
        if "ideal" in v:
            gens = _points(v["ideal"], f"{field}.ideal", ctx, n)
            return diagram_from_ideal(MonomialIdeal.generated_by(n, gens))
        if "heights" in v:
            if n != 3:
                raise ctx.fail(field, "height rows describe 3-dimensional diagrams only")
            return diagram_from_heights(_height_map(v["heights"], f"{field}.heights", ctx))
    except GerstError as e:
        if isinstance(e, ParseError):
            raise
        raise ctx.fail(field, str(e)) from e
    raise ctx.fail(field, "expected one of 'boxes', 'ideal' or 'heights'")


def _height_map(rows, field: str, ctx: _Ctx) -> HeightMap:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ctx.fail(field, "expected ragged integer rows")
    vals = [[_int(x, f"{field}[{y}][{x_}]", ctx) for x_, x in enumerate(r)] for y, r in enumerate(rows)]
    try:
        return HeightMap.from_rows(vals)
    except GerstError as e:
        raise ctx.fail(field, str(e)) from e


def from_dict(d: dict, text: str | None = None) -> Any:
    ctx = _Ctx(text)
    if not isinstance(d, dict):
        raise ParseError("document must be a JSON object")
    kind = _get(d, "kind", ctx)
    try:
        return _PARSERS[kind](d, ctx)
    except KeyError:
        if kind not in _PARSERS:
            raise ctx.fail("kind", f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}") from None
        raise
    except (GerstError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(str(e)) from e


def _parse_plan(d, ctx):
    return FloorPlan(_plan_points(_get(d, "P", ctx), "P", ctx), _positive_heights(_get(d, "h", ctx), "h", ctx))


def _parse_cplan(d, ctx):
    P = _plan_points(_get(d, "P", ctx), "P", ctx)
    Q = _plan_points(_get(d, "Q", ctx), "Q", ctx)
    h = _positive_heights(_get(d, "h", ctx), "h", ctx)
    if not len(P) == len(Q) == len(h):
        raise ctx.fail("h", f"P, Q and h have lengths {len(P)}, {len(Q)}, {len(h)}")
    return CompatibleFloorPlan(P, Q, h)


def _parse_tower(d, ctx):
    lam = _diagram(_get(d, "lambda", ctx), "lambda", ctx, 3)
    cols = []
    for k, c in enumerate(_get(d, "columns", ctx)):
        h = _positive(_get(c, "height", ctx, f"columns[{k}]."), f"columns[{k}].height", ctx)
        cols.append(Column(h, _point(_get(c, "b", ctx, f"columns[{k}]."), f"columns[{k}].b", ctx, 3)))
    return Tower(lam, tuple(cols))


def _parse_ctower(d, ctx):
    lam = _diagram(_get(d, "lambda", ctx), "lambda", ctx, 3)
    mu = _diagram(_get(d, "mu", ctx), "mu", ctx, 3)
    h = _positive_heights(_get(d, "h", ctx), "h", ctx)
    b = _points(_get(d, "b", ctx), "b", ctx, 3)
    c = _points(_get(d, "c", ctx), "c", ctx, 3)
    if not len(h) == len(b) == len(c):
        raise ctx.fail("h", "h, b and c must have equal lengths")
    return CompatibleTower(lam, mu, h, tuple(b), tuple(c))


def _parse_gluing(d, ctx):
    n = _int(_get(d, "n", ctx), "n", ctx)
    if n < 1:
        raise ctx.fail("n", "dimension must be positive")
    if "glue" in d:
        # diagrams must come as ideals here: the skew shapes are read off K and L
        lam_spec, mu_spec, glue = _get(d, "lambda", ctx), _get(d, "mu", ctx), d["glue"]
        ideals = []
        for field, spec in (("lambda.ideal", lam_spec), ("mu.ideal", mu_spec)):
            ideals.append(_points(_get(spec, "ideal", ctx, field.split(".")[0] + "."), field, ctx, n))
        for key in ("K", "L"):
            ideals.append(_points(_get(glue, key, ctx, "glue."), f"glue.{key}", ctx, n))
        I, J, K, L = (MonomialIdeal.generated_by(n, g) for g in ideals)
        return gluing_from_ideals(I, J, K, L)
    lam = _diagram(_get(d, "lambda", ctx), "lambda", ctx, n)
    mu = _diagram(_get(d, "mu", ctx), "mu", ctx, n)
    comps = []
    for k, c in enumerate(_get(d, "components", ctx)):
        f = f"components[{k}]"
        shape = _points(_get(c, "shape", ctx, f + "."), f + ".shape", ctx, n)
        try:
            abstract = AbstractSkewShape(n, frozenset(shape))
        except ValueError as e:
            raise ctx.fail(f + ".shape", str(e)) from e
        comps.append(
            Component(
                abstract,
                _point(_get(c, "b", ctx, f + "."), f + ".b", ctx, n),
                _point(_get(c, "c", ctx, f + "."), f + ".c", ctx, n),
            )
        )
    return GluingDatum(n, lam, mu, tuple(comps))


def _parse_heightmap(d, ctx):
    return _height_map(_get(d, "rows", ctx), "rows", ctx)


def _parse_diagram(d, ctx):
    n = _int(_get(d, "n", ctx), "n", ctx)
    return _diagram({"boxes": _get(d, "boxes", ctx)}, "boxes", ctx, n)


def _parse_trace(d, ctx):
    start = _parse_cplan(_get(d, "start", ctx), ctx)
    trace = DescentTrace(start)
    for s in _get(d, "steps", ctx):
        trace.steps.append(
            Step(
                s["move"],
                s["detail"],
                _parse_cplan(s["before"], ctx),
                _parse_cplan(s["after"], ctx),
                s["deficiency_before"],
                s["deficiency_after"],
                s["obligations"],
            )
        )
    return trace


def _parse_matrices(d, ctx):
    mats = _get(d, "matrices", ctx)
    if not isinstance(mats, list):
        raise ctx.fail("matrices", "expected an array of square integer matrices")
    dense = []
    for k, m in enumerate(mats):
        if not isinstance(m, list) or any(not isinstance(row, list) or len(row) != len(m) for row in m):
            raise ctx.fail(f"matrices[{k}]", "expected a square array of rows")
        dense.append([[_int(v, f"matrices[{k}]", ctx) for v in row] for row in m])
    return matrix_tuple(dense)


_PARSERS = {
    "floor-plan": _parse_plan,
    "compatible-floor-plan": _parse_cplan,
    "tower": _parse_tower,
    "compatible-tower": _parse_ctower,
    "gluing": _parse_gluing,
    "height-map": _parse_heightmap,
    "diagram": _parse_diagram,
    "trace": _parse_trace,
    "matrices": _parse_matrices,
}


def loads(text: str) -> Any:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, line=e.lineno) from None
    return from_dict(d, text)


def load(path) -> Any:
    with open(path, encoding="utf-8") as f:
        return loads(f.read())


def dump(obj: Any, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        f.write(dumps(obj))


# ---------------------------------------------------------------- records


def make_record(payload: Any, provenance: dict | None = None, results: dict | None = None) -> dict:
    """An instance record; the payload is validated before results are attached."""
    if isinstance(payload, GluingDatum):
        bad = validate_gluing(payload)
        if bad:
            raise ValueError(f"payload does not validate: {bad[0].message}")
    body = to_dict(payload)
    return {
        "kind": body["kind"],
        "payload": body,
        "provenance": provenance or {},
        "results": results or {},
    }


def record_line(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))
