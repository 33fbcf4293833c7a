"""Verification and search campaigns with append-only, resumable JSONL logs.

A campaign is a deterministic list of tasks indexed by a cursor.  Tasks are
pure, so they can be fanned out to a process pool; the parent process is
the only writer and emits records in cursor order.  Re-running with the same
config appends nothing new; a run cut short resumes after the largest
cursor already in the log.
"""

from __future__ import annotations

import itertools
import json
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from functools import lru_cache
from typing import Any, Iterator

from . import io
from .descent import certify
from .errors import AnomalyFound, GerstError, InconsistencyDetected
from .floorplan import CompatibleFloorPlan, realize_compatible
from .generate import (
    Bounds,
    down_sets_of_cube,
    enumerate_compatible_plans,
    point_gluing,
    random_compatible_plan,
    random_gluing,
)
from .gluing import GluingDatum, deficiency, gerstenhaber_check, validate_gluing
from .towers import deficiency_of_tower

MODES = ("verify-theorem", "cross-check", "hunt-n4", "certify-corpus")


@dataclass(frozen=True)
class CampaignConfig:
    mode: str
    max_r: int = 2
    max_box: int = 3
    max_h: int = 2
    max_boxes: int = 40
    max_n: int = 3
    seed: int = 0
    samples: int | None = None  # None: exhaustive where the mode allows it
    workers: int = 1
    output: str | None = None

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}; expected one of {', '.join(MODES)}")
        for name in ("max_r", "max_box", "max_h", "max_boxes", "max_n", "workers"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.samples is not None and self.samples < 0:
            raise ValueError("samples must be non-negative")
        if self.mode == "cross-check" and self.max_n > 4:
            raise ValueError("random gluings exist for n <= 4 only")

    @property
    def bounds(self) -> Bounds:
        return Bounds(self.max_r, self.max_box, self.max_h)

    def key(self) -> dict:
        """The fields that determine the log contents."""
        d = asdict(self)
        del d["workers"], d["output"]
        return d


@dataclass
class Summary:
    mode: str
    tasks: int = 0  # cursors covered by the log
    instances: int = 0  # instance records
    verified: int = 0
    finds: int = 0
    anomalies: int = 0
    min_deficiency: int | None = None
    resumed_from: int = 0
    wall_time: float = 0.0
    log: str | None = None
    witness: str | None = None
    first_anomaly: dict | None = field(default=None, repr=False)

    @property
    def exit_code(self) -> int:
        return 2 if self.finds or self.anomalies else 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d.pop("first_anomaly")
        d["exit_code"] = self.exit_code
        return d


# ---------------------------------------------------------------- tasks


def _plan_tasks(cfg: CampaignConfig) -> Iterator[tuple[int, Any]]:
    if cfg.samples is None:
        for k, cp in enumerate(enumerate_compatible_plans(cfg.bounds)):
            yield k, ("enumerate", io.to_dict(cp))
    else:
        for k in range(cfg.samples):
            yield k, ("random", None)


def _tasks(cfg: CampaignConfig) -> Iterator[tuple[int, Any]]:
    if cfg.mode in ("verify-theorem", "certify-corpus"):
        yield from _plan_tasks(cfg)
    elif cfg.mode == "cross-check":
        for k in range(1000 if cfg.samples is None else cfg.samples):
            yield k, None
    else:
        m = len(_cube_diagrams(cfg.max_box))
        for k in range(m * m):
            yield k, None


@lru_cache(maxsize=4)
def _cube_diagrams(side: int):
    return down_sets_of_cube(4, side)


def _plan_for(cfg: CampaignConfig, k: int, spec) -> tuple[CompatibleFloorPlan, dict]:
    how, payload = spec
    if how == "enumerate":
        return io.from_dict(payload), {"generator": "enumerate", "bounds": asdict(cfg.bounds), "index": k}
    rng = random.Random(f"plan:{cfg.seed}:{k}")
    r = rng.randint(1, cfg.max_r)
    cp = random_compatible_plan(rng, r, cfg.max_box, cfg.max_h)
    return cp, {"generator": "random", "seed": cfg.seed, "index": k, "bounds": asdict(cfg.bounds)}


def _anomaly(kind_payload: Any, provenance: dict, message: str, **results) -> dict:
    return io.make_record(kind_payload, provenance, {"verdict": "ANOMALY", "error": message, **results})


def _verify_plan(cfg: CampaignConfig, k: int, spec, archive: bool) -> list[dict]:
    cp, prov = _plan_for(cfg, k, spec)
    try:
        dfc = deficiency_of_tower(realize_compatible(cp))
        trace = certify(cp)
    except GerstError as e:
        return [_anomaly(cp, prov, f"{type(e).__name__}: {e}")]
    results = {"deficiency": dfc, "certified": trace.certified, "steps": len(trace.steps)}
    if dfc < 0 or not trace.certified:
        results.update(verdict="ANOMALY", error="negative deficiency or uncertified trace")
    else:
        results["verdict"] = "OK"
    if archive:
        results["trace"] = io.to_dict(trace)
    return [io.make_record(cp, prov, results)]


def _cross_check(cfg: CampaignConfig, k: int) -> list[dict]:
    n = 1 + k % cfg.max_n
    seed = cfg.seed + k
    prov = {"generator": "random_gluing", "n": n, "seed": seed, "max_boxes": cfg.max_boxes}
    g = random_gluing(n, seed, max_boxes=cfg.max_boxes)
    return [_gluing_record(g, prov)]


def _gluing_record(g: GluingDatum, prov: dict) -> dict:
    try:
        v = gerstenhaber_check(g)
    except InconsistencyDetected as e:
        return _anomaly(g, prov, str(e), deficiency=deficiency(g))
    results = v.as_dict()
    if not v.exact:
        results.update(verdict="ANOMALY", error="d - dim A differs from the deficiency")
    else:
        results["verdict"] = "FIND" if v.deficiency < 0 else "OK"
    return io.make_record(g, prov, results)


def _hunt(cfg: CampaignConfig, k: int) -> list[dict]:
    diagrams = _cube_diagrams(cfg.max_box)
    i, j = divmod(k, len(diagrams))
    lam, mu = diagrams[i], diagrams[j]
    out = []
    inter = len(lam.boxes & mu.boxes)
    for r in range(1, min(len(lam.maximal()), len(mu.maximal())) + 1):
        # deficiency is cheap; only candidates below zero get the matrix check
        if inter - r >= 0:
            continue
        g = point_gluing(lam, mu, r)
        prov = {"generator": "point_gluing", "cube_side": cfg.max_box, "pair": [i, j], "r": r}
        out.append(_gluing_record(g, prov))
    return out


def run_task(cfg: CampaignConfig, k: int, spec) -> list[dict]:
    if cfg.mode == "verify-theorem":
        recs = _verify_plan(cfg, k, spec, archive=False)
    elif cfg.mode == "certify-corpus":
        recs = _verify_plan(cfg, k, spec, archive=True)
    elif cfg.mode == "cross-check":
        recs = _cross_check(cfg, k)
    else:
        recs = _hunt(cfg, k)
    for rec in recs:
        rec["type"] = "instance"
        rec["cursor"] = k
    return recs


def _run_chunk(cfg: CampaignConfig, chunk: list[tuple[int, Any]]) -> list[tuple[int, list[dict]]]:
    return [(k, run_task(cfg, k, spec)) for k, spec in chunk]


# ---------------------------------------------------------------- replay


def replay(record: dict) -> bool:
    """Recompute a record's results from its payload; True iff they match."""
    obj = io.from_dict(record["payload"])
    res = record["results"]
    if isinstance(obj, GluingDatum):
        if validate_gluing(obj):
            return False
        try:
            v = gerstenhaber_check(obj)
        except InconsistencyDetected:
            return res.get("verdict") == "ANOMALY"
        return all(res[k] == val for k, val in v.as_dict().items())
    if isinstance(obj, CompatibleFloorPlan):
        trace = certify(obj)
        return (
            deficiency_of_tower(realize_compatible(obj)) == res["deficiency"]
            and trace.certified == res["certified"]
            and len(trace.steps) == res["steps"]
        )
    return False


# ---------------------------------------------------------------- log


def read_log(path: str) -> list[dict]:
    """Parsed lines of a log; a torn final line is ignored."""
    out = []
    if not os.path.exists(path):
        return out
    with open(path, encoding="utf-8") as f:
        for line in f:
            line = line.strip()
            if not line:
                continue
            try:
                out.append(json.loads(line))
            except json.JSONDecodeError:
                continue
    return out


def _resume_point(path: str, cfg: CampaignConfig) -> int:
    lines = read_log(path)
    if not lines:
        return 0
    header = lines[0]
    if header.get("type") != "header" or header.get("config") != cfg.key():
        raise ValueError(f"log {path} was written by a different campaign config")
    cursors = [rec["cursor"] for rec in lines if "cursor" in rec]
    return max(cursors) + 1 if cursors else 0


def _summarize(lines: list[dict], summary: Summary) -> None:
    cursors = [rec["cursor"] for rec in lines if "cursor" in rec]
    summary.tasks = max(cursors) + 1 if cursors else 0
    for rec in lines:
        if rec.get("type") != "instance":
            continue
        summary.instances += 1
        res = rec["results"]
        verdict = res.get("verdict")
        if verdict == "ANOMALY":
            summary.anomalies += 1
            if summary.first_anomaly is None:
                summary.first_anomaly = rec
        elif verdict == "FIND":
            summary.finds += 1
        else:
            summary.verified += 1
        dfc = res.get("deficiency")
        if dfc is not None and (summary.min_deficiency is None or dfc < summary.min_deficiency):
            summary.min_deficiency = dfc


def _ends_with_newline(path: str) -> bool:
    with open(path, "rb") as f:
        f.seek(-1, os.SEEK_END)
        return f.read(1) == b"\n"


def _chunks(tasks: Iterator, size: int) -> Iterator[list]:
    chunk = []
    for t in tasks:
        chunk.append(t)
        if len(chunk) == size:
            yield chunk
            chunk = []
    if chunk:
        yield chunk


def run_campaign(cfg: CampaignConfig, strict: bool = False) -> Summary:
    """Run (or resume) a campaign and summarize its whole log.

    With ``strict`` the first anomaly raises AnomalyFound after the log has
    been written.  Finds and anomalies are also copied to a witness file
    next to the log.
    """
    t0 = time.perf_counter()
    path = cfg.output or f"campaign-{cfg.mode}-{cfg.seed}.jsonl"
    start = _resume_point(path, cfg)
    summary = Summary(cfg.mode, resumed_from=start, log=path)
    pending = (t for t in _tasks(cfg) if t[0] >= start)
    # hunt tasks are cheap, so they go out in bigger batches
    size = 256 if cfg.mode == "hunt-n4" else 16
    with open(path, "a", encoding="utf-8") as log:
        if log.tell() and not _ends_with_newline(path):
            log.write("\n")  # seal a torn final line from an interrupted run
        if start == 0 and log.tell() == 0:
            log.write(io.record_line({"type": "header", "config": cfg.key()}) + "\n")
        chunks = _chunks(pending, size)
        if cfg.workers > 1:
            with ProcessPoolExecutor(cfg.workers) as pool:
                results = pool.map(_run_chunk, itertools.repeat(cfg), chunks)
                _write(log, results)
        else:
            _write(log, (_run_chunk(cfg, c) for c in chunks))
    lines = read_log(path)
    _summarize(lines, summary)
    witnesses = [r for r in lines if r.get("type") == "instance" and r["results"].get("verdict") in ("FIND", "ANOMALY")]
    if witnesses:
        summary.witness = os.path.splitext(path)[0] + ".witness.jsonl"
        with open(summary.witness, "w", encoding="utf-8") as f:
            f.writelines(io.record_line(r) + "\n" for r in witnesses)
    summary.wall_time = round(time.perf_counter() - t0, 3)
    if strict and summary.anomalies:
        raise AnomalyFound(f"{summary.anomalies} anomalies; first at cursor {summary.first_anomaly['cursor']}", summary.first_anomaly)
    return summary


def _write(log, results) -> None:
    for chunk in results:
        # one write per chunk; the progress marker lets a resume skip tasks without records
        text = "".join(io.record_line(r) + "\n" for _, recs in chunk for r in recs)
        text += io.record_line({"type": "progress", "cursor": chunk[-1][0]}) + "\n"
        log.write(text)
        log.flush()
