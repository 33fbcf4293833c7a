import random

import pytest
from oracles import brute_down_sets, brute_plan_classes

from gerst.errors import GenerationFailed
from gerst.generate import (
    Bounds,
    canonical_plan,
    down_sets_of_cube,
    enumerate_compatible_plans,
    random_compatible_plan,
    random_gluing,
    random_scaffolded_tower,
)
from gerst.gluing import deficiency, gerstenhaber_check, validate_gluing
from gerst.towers import is_scaffolded, validate_tower


def as_key(cp):
    return tuple(zip(cp.P, cp.Q, cp.h))


@pytest.mark.parametrize(
    "bounds, expected",
    [
        (Bounds(1, 1, 1), 1),
        # 16 raw placements fall into 3 x 3 translation classes
        (Bounds(1, 2, 1), 9),
        (Bounds(2, 3, 2), 7106),
    ],
)
def test_enumeration_counts(bounds, expected):
    plans = list(enumerate_compatible_plans(bounds))
    assert len(plans) == expected
    assert {as_key(cp) for cp in plans} == brute_plan_classes(bounds.r, bounds.box, bounds.h)


def test_enumerated_plans_are_canonical():
    for cp in enumerate_compatible_plans(Bounds(2, 3, 1)):
        assert canonical_plan(cp) == cp


def test_canonical_plan_translates_and_sorts():
    rng = random.Random(0)
    cp = random_compatible_plan(rng, 3, 5, 2)
    can = canonical_plan(cp)
    assert min(x for x, _ in can.P + can.Q) == 0 and min(y for _, y in can.P + can.Q) == 0
    assert list(zip(can.P, can.Q, can.h)) == sorted(zip(can.P, can.Q, can.h))


def test_bounds_positive():
    with pytest.raises(ValueError):
        Bounds(0, 1, 1)


def test_random_gluing_deterministic():
    assert random_gluing(3, 42) == random_gluing(3, 42)
    assert random_gluing(2, 1) != random_gluing(2, 2)


def test_random_gluing_n3_all_valid():
    for seed in range(500):
        g = random_gluing(3, seed, max_boxes=40)
        assert len(g.lam) + len(g.mu) <= 40
        assert not validate_gluing(g)


def test_random_gluing_bad_n():
    with pytest.raises(ValueError):
        random_gluing(5, 0)


def test_generation_failure():
    with pytest.raises(GenerationFailed):
        random_gluing(3, 0, max_boxes=1, retries=20)


def test_point_components_rediscover_four_variable_example():
    # first hit of a bounded discovery run, frozen
    hits = [s for s in range(1400) if deficiency(random_gluing(4, s, point_components=True, coord=1, max_boxes=16)) < 0]
    assert hits[0] == 1334
    g = random_gluing(4, 1334, point_components=True, coord=1, max_boxes=16)
    v = gerstenhaber_check(g)
    assert (v.d, v.algebra_dim, v.deficiency) == (4, 5, -1)
    # same shape as x1, x2 glued to x3, x4 up to permuting variables
    assert len(g.lam) == len(g.mu) == 3 and len(g.lam.boxes & g.mu.boxes) == 1
    assert all(len(c.shape) == 1 for c in g.components) and len(g.components) == 2


def test_down_sets_of_cube():
    ds = down_sets_of_cube(4, 1)
    assert len(ds) == 168
    assert {d.boxes for d in ds} == {frozenset(s) for s in brute_down_sets(4, 1)}
    assert len(down_sets_of_cube(2, 1)) == 6
    with pytest.raises(ValueError):
        down_sets_of_cube(3, 2)


def test_random_scaffolded_tower():
    rng = random.Random(3)
    for _ in range(30):
        t = random_scaffolded_tower(rng)
        assert not validate_tower(t) and is_scaffolded(t)
