import random

import pytest

from gerst import io
from gerst.errors import InvalidTower, NotScaffolded
from gerst.floorplan import FloorPlan, compatible_floor_plan_of, floor_plan_of, realize, realize_compatible
from gerst.generate import random_compatible_plan, random_scaffolded_tower
from gerst.lattice import order_ideal
from gerst.towers import (
    Column,
    CompatibleTower,
    Order,
    Tower,
    compare_towers,
    deficiency_of_tower,
    heights_inject,
    is_compatible_scaffolded,
    is_scaffolded,
    scaffold,
    validate_compatible,
    validate_tower,
)


def test_scaffolding_pair(fixture_path):
    left = io.load(fixture_path("scaffolding_pair_left.json"))
    right = io.load(fixture_path("scaffolding_pair_right.json"))
    assert (len(left.lam), len(right.lam)) == (11, 7)
    assert not validate_tower(left) and not validate_tower(right)
    assert not is_scaffolded(left)
    assert is_scaffolded(right)
    assert scaffold(left) == right
    with pytest.raises(NotScaffolded):
        floor_plan_of(left)


def test_unsaturated_column_rejected():
    lam = order_ideal([(1, 0, 1)])
    t = Tower(lam, (Column(1, (0, 0, 0)),))
    bad = validate_tower(t)
    assert bad and bad[0].prop == "b"
    with pytest.raises(InvalidTower):
        scaffold(t)


def test_overlapping_columns_rejected():
    lam = order_ideal([(0, 0, 2)])
    t = Tower(lam, (Column(2, (0, 0, 1)), Column(2, (0, 0, 0))))
    assert any(v.prop == "a" for v in validate_tower(t))


def test_column_validation():
    with pytest.raises(ValueError):
        Column(0, (0, 0, 0))


def test_compatible_tower_deficiency_and_gluing():
    cp = random_compatible_plan(random.Random(4), 3, 4, 3)
    t = realize_compatible(cp)
    assert not validate_compatible(t)
    assert is_compatible_scaffolded(t)
    g = t.to_gluing()
    assert deficiency_of_tower(t) == len(g.lam.boxes & g.mu.boxes) - g.nu_size


def test_deficiency_requires_valid_tower():
    lam = order_ideal([(1, 0, 1)])
    t = CompatibleTower(lam, lam, (1,), ((0, 0, 0),), ((1, 0, 1),))
    with pytest.raises(InvalidTower):
        deficiency_of_tower(t)


def test_heights_inject():
    assert heights_inject((2, 1), (1, 3, 2))
    assert not heights_inject((3, 3), (3, 2, 2))
    assert not heights_inject((1, 1), (5,))
    assert heights_inject((), ())


def test_compare_towers_orders():
    big = realize_compatible(random_compatible_plan(random.Random(0), 2, 3, 2))
    empty = realize_compatible(random_compatible_plan(random.Random(0), 0, 3, 2))
    assert compare_towers(big, big) is Order.EQUAL
    assert compare_towers(empty, big) is Order.LESS_EQ
    assert compare_towers(big, empty) is Order.GREATER_EQ


def test_f_after_t_is_identity_small():
    rng = random.Random(11)
    for _ in range(200):
        r = rng.randint(1, 4)
        plan = FloorPlan(tuple(rng.sample([(x, y) for x in range(4) for y in range(4)], r)), tuple(rng.randint(1, 3) for _ in range(r)))
        assert floor_plan_of(realize(plan)) == plan


def test_t_after_f_shrinks():
    rng = random.Random(5)
    for _ in range(100):
        t = random_scaffolded_tower(rng)
        t2 = realize(floor_plan_of(t))
        assert t2.lam.boxes <= t.lam.boxes
        assert t2.heights == t.heights


def test_compatible_floor_plan_round_trip():
    cp = random_compatible_plan(random.Random(9), 3, 4, 2)
    assert compatible_floor_plan_of(realize_compatible(cp)) == cp
