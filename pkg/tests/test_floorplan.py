import random

import pytest
from oracles import brute_max_score, brute_max_score_table

from gerst import io
from gerst.floorplan import (
    CompatibleFloorPlan,
    FloorPlan,
    NortheastPath,
    border,
    max_score_table,
    maximal_elements,
    realization_ok,
    realize,
    score,
    support,
    winning_path,
)
from gerst.lattice import HeightMap
from gerst.towers import is_scaffolded, validate_tower

TABLE_4_5 = [[10, 9, 9, 9, 5, 4], [10, 8, 8, 8], [5, 5, 5, 5], [3, 2], [3]]


def test_realization_plan_table(fixture_path):
    plan = io.load(fixture_path("realization_plan.json"))
    assert max_score_table(plan) == HeightMap.from_rows(TABLE_4_5)


def test_realization_plan_winning_path(fixture_path):
    plan = io.load(fixture_path("realization_plan.json"))
    path = winning_path(plan, (0, 0))
    assert path.vertices == ((0, 0), (0, 1), (1, 1), (2, 1), (3, 1), (3, 2))
    assert score(plan, path) == 10


def test_realization_plan_realization(fixture_path):
    plan = io.load(fixture_path("realization_plan.json"))
    t = realize(plan)
    assert not validate_tower(t) and is_scaffolded(t)
    assert len(t.lam) == 108
    # column over (3,2) has height 5 and reaches the top of the diagram there
    k = plan.points.index((3, 2))
    assert t.columns[k].base == (3, 2, 0)


def test_table_matches_path_oracle_on_random_plans():
    rng = random.Random(2)
    cells = [(x, y) for x in range(4) for y in range(4)]
    for _ in range(150):
        r = rng.randint(1, 4)
        pts = tuple(rng.sample(cells, r))
        hs = tuple(rng.randint(1, 3) for _ in range(r))
        plan = FloorPlan(pts, hs)
        assert max_score_table(plan).values == brute_max_score_table(pts, hs)
        q = rng.choice(cells)
        wp = winning_path(plan, q)
        assert score(plan, wp) == brute_max_score(pts, hs, q)


def test_empty_plan():
    plan = FloorPlan((), ())
    assert max_score_table(plan) == HeightMap({})
    assert len(realize(plan).lam) == 0
    assert winning_path(plan, (2, 3)).vertices == ((2, 3),)


def test_support_border_maximal():
    plan = FloorPlan(((2, 0), (0, 1)), (1, 1))
    supp = support(plan)
    assert supp == {(0, 0), (1, 0), (2, 0), (0, 1)}
    assert border(plan) == {(2, 0), (0, 1), (1, 0)}
    assert maximal_elements(supp) == {(2, 0), (0, 1)}


def test_validation():
    with pytest.raises(ValueError):
        FloorPlan(((0, 0),), (0,))
    with pytest.raises(ValueError):
        FloorPlan(((-1, 0),), (1,))
    with pytest.raises(ValueError):
        FloorPlan(((0, 0),), (1, 2))
    with pytest.raises(ValueError):
        CompatibleFloorPlan(((0, 0),), ((0, 0), (1, 1)), (1,))
    with pytest.raises(ValueError):
        NortheastPath(((0, 0), (1, 1)))


def test_repeated_positions_have_no_realization():
    plan = FloorPlan(((1, 1), (1, 1)), (1, 2))
    with pytest.raises(ValueError):
        realize(plan)
    # the table itself is still defined: weights add up
    assert max_score_table(plan)[(0, 0)] == 3


def test_realization_ok():
    assert realization_ok(FloorPlan(((0, 0), (1, 1)), (2, 2)))
