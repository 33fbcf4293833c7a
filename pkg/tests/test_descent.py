import random

import pytest

from gerst.descent import (
    certify,
    find_overlap,
    minimize,
    peel_maximal,
    resolve_overlap,
    shrink_blocker,
    shrink_step,
)
from gerst.errors import NoOverlap, PreconditionFailed
from gerst.floorplan import CompatibleFloorPlan, FloorPlan, border, realize, realize_compatible, support
from gerst.generate import random_compatible_plan
from gerst.towers import Order, compare_towers, deficiency_of_tower


def cfp(P, Q, h):
    return CompatibleFloorPlan(tuple(P), tuple(Q), tuple(h))


def potential(cp):
    return sum(x + y for x, y in cp.P + cp.Q) + sum(cp.h)


def test_shrink_blockers():
    plan = FloorPlan(((1, 1), (0, 2), (0, 0)), (1, 1, 1))
    # (0,2) sits in the column left of (1,1) and is not lower
    assert shrink_blocker(plan, 0, 1) == 1
    assert shrink_blocker(plan, 1, 1) == "boundary"
    assert shrink_blocker(plan, 0, 2) is None
    assert shrink_blocker(plan, 2, 2) == "boundary"
    with pytest.raises(ValueError):
        shrink_blocker(plan, 0, 3)


def test_shrink_step():
    plan = FloorPlan(((1, 1), (0, 2)), (1, 1))
    with pytest.raises(PreconditionFailed) as exc:
        shrink_step(plan, 0, 1)
    assert exc.value.blocking == 1
    new = shrink_step(plan, 0, 2)
    assert new.points == ((1, 0), (0, 2))
    assert realize(new).lam.boxes < realize(plan).lam.boxes


def test_resolve_overlap():
    cp = cfp([(0, 0)], [(0, 0)], [2])
    new = resolve_overlap(cp)
    assert new.h == (1,)
    with pytest.raises(NoOverlap):
        resolve_overlap(cfp([(0, 0)], [(1, 0)], [1]))
    assert find_overlap(cfp([(0, 0), (1, 0)], [(1, 0), (2, 0)], [1, 1])) == (1, 0)


def test_peel_preconditions():
    # supp P = {(0,0),(1,0)} is not inside supp Q = {(0,0),(0,1)}
    with pytest.raises(PreconditionFailed):
        peel_maximal(cfp([(1, 0)], [(0, 1)], [1]))
    # Q's border includes (0,0) which is not a point of Q
    with pytest.raises(PreconditionFailed):
        peel_maximal(cfp([(0, 0)], [(1, 0)], [1]))


def test_peel_step():
    cp = cfp([(0, 0), (1, 0)], [(1, 0), (0, 0)], [1, 2])
    new = peel_maximal(cp, against="Q")
    assert sum(new.h) < sum(cp.h)
    t_new, t_old = realize_compatible(new), realize_compatible(cp)
    assert compare_towers(t_new, t_old) in (Order.LESS_EQ, Order.EQUAL)
    with pytest.raises(ValueError):
        peel_maximal(cp, against="R")


def test_certify_single_column():
    trace = certify(cfp([(0, 0)], [(2, 2)], [3]))
    assert trace.certified
    assert trace.start_deficiency == 0
    moves = [s.move for s in trace.steps]
    assert moves == ["shrink"] * 4 + ["resolve_overlap"] * 3


def test_certify_empty_plan():
    trace = certify(cfp([], [], []))
    assert trace.certified and not trace.steps


def test_minimize_reaches_fixed_point_and_respects_bound():
    rng = random.Random(8)
    for _ in range(200):
        cp = random_compatible_plan(rng, rng.randint(1, 4), 5, 3)
        out, trace = minimize(cp)
        assert len(trace.steps) <= potential(cp)
        assert find_overlap(out) is None
        for plan in (out.left, out.right):
            assert all(shrink_blocker(plan, i, a) is not None for i in range(len(plan)) for a in (1, 2))
            # minimality forces the border into the point set
            assert border(plan) <= set(plan.points)


def test_every_step_descends():
    rng = random.Random(21)
    for _ in range(100):
        cp = random_compatible_plan(rng, rng.randint(1, 4), 5, 3)
        trace = certify(cp)
        assert trace.certified
        prev = deficiency_of_tower(realize_compatible(cp))
        assert prev >= 0
        for s in trace.steps:
            assert s.ok
            assert s.deficiency_after <= s.deficiency_before
            assert compare_towers(realize_compatible(s.after), realize_compatible(s.before)) in (
                Order.LESS_EQ,
                Order.EQUAL,
            )


def test_minimized_supports_are_nested():
    rng = random.Random(33)
    for _ in range(200):
        cp, _ = minimize(random_compatible_plan(rng, rng.randint(1, 4), 5, 3))
        sp, sq = support(cp.left), support(cp.right)
        assert sp <= sq or sq <= sp


def test_plan_order_footnote_equivalence():
    # same h: lam' <= lam and mu' <= mu iff the realized towers compare as <=
    rng = random.Random(17)
    cells = [(x, y) for x in range(3) for y in range(3)]
    hits = 0
    for _ in range(400):
        r = rng.randint(1, 2)
        h = tuple(rng.randint(1, 2) for _ in range(r))
        a = cfp(rng.sample(cells, r), rng.sample(cells, r), h)
        b = cfp(rng.sample(cells, r), rng.sample(cells, r), h)
        ta, tb = realize_compatible(a), realize_compatible(b)
        plan_le = ta.lam.boxes <= tb.lam.boxes and ta.mu.boxes <= tb.mu.boxes
        tower_le = compare_towers(ta, tb) in (Order.LESS_EQ, Order.EQUAL)
        assert plan_le == tower_le
        hits += plan_le
    assert hits > 0
