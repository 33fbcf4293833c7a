"""Command line entry point: ``gerst <verb> --input FILE ...``.

Exit codes: 0 verified/ok, 2 counterexample or anomaly (a witness file is
written and its path printed), 1 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import io
from .campaign import MODES, CampaignConfig, run_campaign
from .descent import certify, minimize
from .errors import AnomalyFound, GerstError, InconsistencyDetected, ObligationFailed, UnsupportedKind
from .floorplan import (
    CompatibleFloorPlan,
    FloorPlan,
    compatible_floor_plan_of,
    floor_plan_of,
    realize,
    realize_compatible,
)
from .gluing import GluingDatum, MatrixTuple, algebra_dimension, build_module, gerstenhaber_check, multiplication_matrices
from .render import render
from .towers import CompatibleTower, Tower, deficiency_of_tower, scaffold

VERBS = ("check", "algebra-dim", "scaffold", "floorplan", "realize", "minimize", "certify", "search", "render")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="gerst", description="Gluing data, towers and floor plans for commuting-matrix algebras.")
    p.add_argument("verb", choices=VERBS)
    p.add_argument("--input", "-i", help="instance file")
    p.add_argument("--output", "-o", help="result file (search: campaign log)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=MODES, default="verify-theorem")
    p.add_argument("--max-r", type=int, default=2)
    p.add_argument("--max-box", type=int, default=3)
    p.add_argument("--max-h", type=int, default=2)
    p.add_argument("--max-n", type=int, default=3, help="cross-check: largest number of variables")
    p.add_argument("--max-boxes", type=int, default=40, help="cross-check: |lam| + |mu| bound")
    p.add_argument("--samples", type=int, help="random instances instead of exhaustive enumeration")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    return p


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _witness_path(args) -> str:
    if args.output:
        return args.output
    # next to the caller, never next to the input
    base = os.path.splitext(os.path.basename(args.input))[0] if args.input else "gerst"
    return base + ".witness.json"


def _as_gluing(obj) -> GluingDatum:
    if isinstance(obj, GluingDatum):
        return obj
    if isinstance(obj, CompatibleFloorPlan):
        obj = realize_compatible(obj)
    if isinstance(obj, CompatibleTower):
        return obj.to_gluing()
    raise UnsupportedKind(f"expected a gluing, compatible tower or compatible floor plan, got {type(obj).__name__}")


def _check(obj, args) -> int:
    g = _as_gluing(obj)
    v = gerstenhaber_check(g)
    rec = io.make_record(g, {"source": args.input}, v.as_dict())
    if v.status == "COUNTEREXAMPLE":
        path = _witness_path(args)
        with open(path, "w", encoding="utf-8") as f:
            f.write(io.record_line(rec) + "\n")
        print(json.dumps(v.as_dict()))
        print(f"witness: {path}")
        return 2
    _emit(json.dumps(v.as_dict()) + "\n", args.output)
    return 0


def _algebra_dim(obj, args) -> int:
    mats = obj if isinstance(obj, MatrixTuple) else multiplication_matrices(build_module(_as_gluing(obj)))
    _emit(json.dumps({"d": mats.dim, "algebra_dim": algebra_dimension(mats)}) + "\n", args.output)
    return 0


def _certify(obj, args) -> int:
    if not isinstance(obj, CompatibleFloorPlan):
        raise UnsupportedKind("certify expects a compatible floor plan")
    trace = certify(obj)
    dfc = deficiency_of_tower(realize_compatible(obj))
    if trace.certified and dfc >= 0:
        _emit(io.dumps(trace), args.output)
        print(f"certified: deficiency {dfc}, {len(trace.steps)} steps", file=sys.stderr)
        return 0
    path = _witness_path(args)
    io.dump(trace, path)
    print(f"witness: {path}")
    return 2


def _transform(obj, args) -> int:
    verb = args.verb
    if verb == "scaffold":
        if not isinstance(obj, (Tower, CompatibleTower)):
            raise UnsupportedKind("scaffold expects a tower or compatible tower")
        out = scaffold(obj)
    elif verb == "floorplan":
        if isinstance(obj, CompatibleTower):
            out = compatible_floor_plan_of(obj)
        elif isinstance(obj, Tower):
            out = floor_plan_of(obj)
        else:
            raise UnsupportedKind("floorplan expects a tower or compatible tower")
    elif verb == "realize":
        if isinstance(obj, CompatibleFloorPlan):
            out = realize_compatible(obj)
        elif isinstance(obj, FloorPlan):
            out = realize(obj)
        else:
            raise UnsupportedKind("realize expects a floor plan or compatible floor plan")
    else:
        if not isinstance(obj, CompatibleFloorPlan):
            raise UnsupportedKind("minimize expects a compatible floor plan")
        out, trace = minimize(obj)
        print(f"minimize: {len(trace.steps)} steps", file=sys.stderr)
    _emit(io.dumps(out), args.output)
    return 0


def _search(args) -> int:
    cfg = CampaignConfig(
        args.mode,
        max_r=args.max_r,
        max_box=args.max_box,
        max_h=args.max_h,
        max_boxes=args.max_boxes,
        max_n=args.max_n,
        seed=args.seed,
        samples=args.samples,
        workers=args.workers,
        output=args.output,
    )
    summary = run_campaign(cfg)
    print(json.dumps(summary.as_dict()))
    if summary.witness:
        print(f"witness: {summary.witness}")
    return summary.exit_code


def run(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.verb == "search":
        return _search(args)
    if not args.input:
        raise UsageError(f"{args.verb} needs --input")
    obj = io.load(args.input)
    if args.verb == "check":
        return _check(obj, args)
    if args.verb == "algebra-dim":
        return _algebra_dim(obj, args)
    if args.verb == "certify":
        return _certify(obj, args)
    if args.verb == "render":
        _emit(render(obj, args.format), args.output)
        return 0
    return _transform(obj, args)


def _breach(e: GerstError, argv: list[str] | None) -> int:
    """Invariant breaches are findings, not usage errors: write what we know and exit 2."""
    args = build_parser().parse_args(argv)
    witness = {"error": type(e).__name__, "message": str(e), "input": args.input}
    if isinstance(e, ObligationFailed) and e.step is not None:
        witness["before"] = io.to_dict(e.step.before)
        witness["after"] = io.to_dict(e.step.after)
        witness["obligations"] = e.step.obligations
    if isinstance(e, AnomalyFound) and e.record is not None:
        witness["record"] = e.record
    path = _witness_path(args)
    _emit(io.dumps(witness), path)
    print(f"gerst: {type(e).__name__}: {e}", file=sys.stderr)
    print(f"witness: {path}")
    return 2


def main(argv: list[str] | None = None) -> int:
    try:
        return run(argv)
    except (ObligationFailed, InconsistencyDetected, AnomalyFound) as e:
        return _breach(e, argv)
    except (GerstError, ValueError, UsageError, OSError) as e:
        print(f"gerst: error: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
