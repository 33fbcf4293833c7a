"""Descent moves on compatible floor plans and the certifier built from them.

Every move maps a compatible floor plan to one whose realization is below
the original in the partial order on compatible towers (diagrams shrink,
columns inject, deficiency does not increase).  Running moves until the
plan is empty therefore certifies that the starting deficiency is at least
the deficiency of the empty tower, which is 0.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import NoOverlap, ObligationFailed, PreconditionFailed
from .floorplan import (
    CompatibleFloorPlan,
    FloorPlan,
    border,
    max_score_table,
    maximal_elements,
    realize,
    realization_ok,
    realize_compatible,
    support,
)
from .towers import CompatibleTower, Order, compare_towers


@dataclass(frozen=True)
class Step:
    move: str  # "resolve_overlap", "shrink" or "peel"
    detail: dict
    before: CompatibleFloorPlan
    after: CompatibleFloorPlan
    deficiency_before: int
    deficiency_after: int
    obligations: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.obligations.values())


@dataclass
class DescentTrace:
    start: CompatibleFloorPlan
    steps: list[Step] = field(default_factory=list)

    @property
    def final(self) -> CompatibleFloorPlan:
        return self.steps[-1].after if self.steps else self.start

    @property
    def start_deficiency(self) -> int:
        return _deficiency(realize_compatible(self.start))

    @property
    def certified(self) -> bool:
        """Chain reaches the empty plan with every obligation met."""
        return len(self.final) == 0 and all(s.ok for s in self.steps)


def _deficiency(t: CompatibleTower) -> int:
    return len(t.lam.boxes & t.mu.boxes) - t.nu_size


def _step(move: str, detail: dict, before: CompatibleFloorPlan, after: CompatibleFloorPlan) -> Step:
    tb, ta = realize_compatible(before), realize_compatible(after)
    inter_b = len(tb.lam.boxes & tb.mu.boxes)
    inter_a = len(ta.lam.boxes & ta.mu.boxes)
    ob = {
        "realization_valid": realization_ok(after.left) and realization_ok(after.right),
        "below_in_order": compare_towers(ta, tb) in (Order.LESS_EQ, Order.EQUAL),
        "deficiency_non_increasing": _deficiency(ta) <= _deficiency(tb),
    }
    if move == "shrink":
        key = "lam_strict" if detail["side"] == "P" else "mu_strict"
        ob[key] = ta.lam.boxes < tb.lam.boxes if detail["side"] == "P" else ta.mu.boxes < tb.mu.boxes
    elif move == "resolve_overlap":
        ob["intersection_drop"] = inter_a <= inter_b - 1
    elif move == "peel":
        ob["lam_strict"] = ta.lam.boxes < tb.lam.boxes
        ob["mu_strict"] = ta.mu.boxes < tb.mu.boxes
    return Step(move, detail, before, after, _deficiency(tb), _deficiency(ta), ob)


def _require(step: Step, trace: DescentTrace | None = None) -> Step:
    if not step.ok:
        failed = sorted(k for k, v in step.obligations.items() if not v)
        raise ObligationFailed(f"{step.move} broke {', '.join(failed)}", step, trace)
    return step


# ---------------------------------------------------------------- shrink


def shrink_blocker(plan: FloorPlan, i: int, axis: int) -> object:
    """None if point i may slide one step toward the axis, else what blocks it.

    For axis 1 the point needs x > 0 and every point in the column just to
    its left must lie strictly lower; axis 2 is the mirror image.
    """
    if axis not in (1, 2):
        raise ValueError("axis must be 1 or 2")
    a, o = (0, 1) if axis == 1 else (1, 0)
    p = plan.points[i]
    if p[a] == 0:
        return "boundary"
    for j, q in enumerate(plan.points):
        if q[a] == p[a] - 1 and q[o] >= p[o]:
            return j
    return None


def _shifted(plan: FloorPlan, i: int, axis: int) -> FloorPlan:
    pts = list(plan.points)
    x, y = pts[i]
    pts[i] = (x - 1, y) if axis == 1 else (x, y - 1)
    return FloorPlan(tuple(pts), plan.heights)


def shrink_step(plan: FloorPlan, i: int, axis: int) -> FloorPlan:
    blocker = shrink_blocker(plan, i, axis)
    if blocker is not None:
        raise PreconditionFailed(f"point {i} cannot move along axis {axis}: blocked by {blocker}", blocker)
    new = _shifted(plan, i, axis)
    if not realize(new).lam.boxes < realize(plan).lam.boxes:
        raise ObligationFailed(f"shrinking point {i} along axis {axis} did not shrink the realization")
    return new


def _shrink_compatible(cp: CompatibleFloorPlan, side: str, i: int, axis: int) -> CompatibleFloorPlan:
    if side == "P":
        return CompatibleFloorPlan(_shifted(cp.left, i, axis).points, cp.Q, cp.h)
    return CompatibleFloorPlan(cp.P, _shifted(cp.right, i, axis).points, cp.h)


# ---------------------------------------------------------------- overlap


def _drop_zeros(P, Q, h) -> CompatibleFloorPlan:
    keep = [k for k in range(len(h)) if h[k] > 0]
    return CompatibleFloorPlan(tuple(P[k] for k in keep), tuple(Q[k] for k in keep), tuple(h[k] for k in keep))


def find_overlap(cp: CompatibleFloorPlan) -> tuple[int, int] | None:
    where = {}
    for j, q in enumerate(cp.Q):
        where.setdefault(q, j)
    for i, p in enumerate(cp.P):
        if p in where:
            return i, where[p]
    return None


def _resolve(cp: CompatibleFloorPlan) -> tuple[CompatibleFloorPlan, dict]:
    hit = find_overlap(cp)
    if hit is None:
        raise NoOverlap("P and Q share no position")
    i, j = hit
    hp = max_score_table(cp.left)[cp.P[i]]
    hq = max_score_table(cp.right)[cp.Q[j]]
    # lower the column on the side whose diagram is not taller at the shared base
    k = j if hp >= hq else i
    h = list(cp.h)
    h[k] -= 1
    return _drop_zeros(cp.P, cp.Q, h), {"p_index": i, "q_index": j, "decremented": k}


def resolve_overlap(cp: CompatibleFloorPlan) -> CompatibleFloorPlan:
    new, detail = _resolve(cp)
    _require(_step("resolve_overlap", detail, cp, new))
    return new


# ---------------------------------------------------------------- peel


def _peel(cp: CompatibleFloorPlan) -> tuple[CompatibleFloorPlan, dict]:
    supp_p = support(cp.left)
    supp_q = support(cp.right)
    if not supp_p <= supp_q:
        raise PreconditionFailed("supp(P) is not contained in supp(Q)", sorted(supp_p - supp_q))
    missing = border(cp.right) - set(cp.Q)
    if missing:
        raise PreconditionFailed("border of (Q, h) is not contained in Q", sorted(missing))
    tops = maximal_elements(supp_q)
    hit = [k for k, q in enumerate(cp.Q) if q in tops]
    h = list(cp.h)
    for k in hit:
        h[k] -= 1
    return _drop_zeros(cp.P, cp.Q, h), {"decremented": hit}


def peel_maximal(cp: CompatibleFloorPlan, against: str = "Q") -> CompatibleFloorPlan:
    """Lower by one every column whose base is a maximal cell of the larger support.

    ``against="Q"`` needs supp(P) inside supp(Q); ``"P"`` is the mirror.
    """
    new, detail = _peel_oriented(cp, against)
    _require(_step("peel", detail, cp, new))
    return new


def _peel_oriented(cp: CompatibleFloorPlan, against: str) -> tuple[CompatibleFloorPlan, dict]:
    if against == "Q":
        new, detail = _peel(cp)
    elif against == "P":
        new, detail = _peel(cp.swapped())
        new = new.swapped()
    else:
        raise ValueError("against must be 'P' or 'Q'")
    detail["against"] = against
    return new, detail


# ---------------------------------------------------------------- drivers


def _next_move(cp: CompatibleFloorPlan) -> tuple[CompatibleFloorPlan, str, dict] | None:
    if find_overlap(cp) is not None:
        new, detail = _resolve(cp)
        return new, "resolve_overlap", detail
    for side, plan in (("P", cp.left), ("Q", cp.right)):
        for i in range(len(plan)):
            for axis in (1, 2):
                if shrink_blocker(plan, i, axis) is None:
                    detail = {"side": side, "index": i, "axis": axis}
                    return _shrink_compatible(cp, side, i, axis), "shrink", detail
    return None


def minimize(cp: CompatibleFloorPlan, trace: DescentTrace | None = None) -> tuple[CompatibleFloorPlan, DescentTrace]:
    """Apply overlap resolutions and shrinks until none applies.

    Afterwards P and Q are disjoint and no point can slide, which forces the
    border of each support into the corresponding point set.
    """
    if trace is None:
        trace = DescentTrace(cp)
    while True:
        move = _next_move(cp)
        if move is None:
            return cp, trace
        new, name, detail = move
        trace.steps.append(_require(_step(name, detail, cp, new), trace))
        cp = new


def certify(cp: CompatibleFloorPlan) -> DescentTrace:
    """Descend from ``cp`` to the empty plan, checking every step.

    Raises ObligationFailed if a step breaks an obligation or the supports of
    a minimized plan are not nested.
    """
    trace = DescentTrace(cp)
    while True:
        cp, trace = minimize(cp, trace)
        if len(cp) == 0:
            return trace
        supp_p, supp_q = support(cp.left), support(cp.right)
        if supp_p <= supp_q:
            against = "Q"
        elif supp_q <= supp_p:
            against = "P"
        else:
            raise ObligationFailed("supports of a minimized plan are not nested", None, trace)
        new, detail = _peel_oriented(cp, against)
        trace.steps.append(_require(_step("peel", detail, cp, new), trace))
        cp = new
