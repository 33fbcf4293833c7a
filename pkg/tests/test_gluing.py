import pytest
from oracles import brute_algebra_dim, glued_module_oracle

from gerst import io
from gerst.errors import InvalidGluing, NotCommuting, SizeMismatch
from gerst.generate import point_gluing, random_gluing
from gerst.gluing import (
    Component,
    GluingDatum,
    algebra_dimension,
    annihilator_dimension,
    build_module,
    deficiency,
    gerstenhaber_check,
    matrix_tuple,
    module_dimension,
    multiplication_matrices,
    validate_gluing,
)
from gerst.lattice import AbstractSkewShape, YoungDiagram, order_ideal


def unit_matrix(i, j, d=4):
    return [[1 if (r, c) == (i - 1, j - 1) else 0 for c in range(d)] for r in range(d)]


def point(n):
    return AbstractSkewShape(n, frozenset({(0,) * n}))


def test_four_variable_golden(fixture_path):
    g = io.load(fixture_path("four_variable_counterexample.json"))
    assert not validate_gluing(g)
    m = build_module(g)
    assert m.basis == (
        ("L", (1, 0, 0, 0)),
        ("L", (0, 1, 0, 0)),
        ("L", (0, 0, 0, 0)),
        ("M", (0, 0, 0, 0)),
    )
    mats = multiplication_matrices(m)
    assert mats.dense() == [unit_matrix(1, 3), unit_matrix(2, 3), unit_matrix(1, 4), unit_matrix(2, 4)]
    assert algebra_dimension(mats) == 5
    v = gerstenhaber_check(g)
    assert (v.d, v.algebra_dim, v.deficiency, v.status, v.consistent) == (4, 5, -1, "COUNTEREXAMPLE", True)
    assert v.excess == 1


def test_two_variable_pipeline(fixture_path):
    g = io.load(fixture_path("two_variable_gluing.json"))
    assert not validate_gluing(g)
    assert [len(c.shape) for c in g.components] == [3, 3, 1]
    assert [c.shape.sorted() for c in g.components] == [
        [(0, 0), (0, 1), (1, 0)],
        [(0, 0), (1, -1), (1, 0)],
        [(0, 0)],
    ]
    assert [(c.b, c.c) for c in g.components] == [((0, 3), (1, 3)), ((2, 2), (4, 2)), ((4, 0), (6, 0))]
    v = gerstenhaber_check(g)
    assert (v.d, v.algebra_dim, v.deficiency, v.exact) == (33, 24, 9, True)
    assert annihilator_dimension(g) == 24


def test_algebra_dim_of_literal_matrices():
    mats = matrix_tuple([unit_matrix(1, 3), unit_matrix(2, 3), unit_matrix(1, 4), unit_matrix(2, 4)])
    assert algebra_dimension(mats) == 5
    # a single nilpotent Jordan block of size 3 generates k[x]/x^3
    jb = [[0, 0, 0], [1, 0, 0], [0, 1, 0]]
    assert algebra_dimension(matrix_tuple([jb])) == 3
    assert algebra_dimension(matrix_tuple([])) == 0


def test_algebra_dim_rejects_bad_tuples():
    with pytest.raises(NotCommuting):
        algebra_dimension(matrix_tuple([[[0, 1], [0, 0]], [[0, 0], [1, 0]]]))
    with pytest.raises(SizeMismatch):
        matrix_tuple([[[0]], [[0, 0], [0, 0]]])


def test_self_gluing_of_a_point_is_valid():
    # lam = mu = {0} glued along the whole point: the module is k, d = 1
    g = GluingDatum(1, order_ideal([(0,)]), order_ideal([(0,)]), (Component(point(1), (0,), (0,)),))
    assert not validate_gluing(g)
    v = gerstenhaber_check(g)
    assert (v.d, v.algebra_dim, v.deficiency) == (1, 1, 0)


def test_violations_are_reported():
    lam = order_ideal([(2, 0)])
    mu = order_ideal([(1, 1)])
    # (a): placed outside lam
    bad = validate_gluing(GluingDatum(2, lam, mu, (Component(point(2), (0, 1), (1, 1)),)))
    assert {v.prop for v in bad} == {"a"}
    # (b): (0,0) is not upward saturated in lam
    bad = validate_gluing(GluingDatum(2, lam, mu, (Component(point(2), (0, 0), (1, 1)),)))
    assert {v.prop for v in bad} == {"b"}
    assert bad[0].step in ((1, 0), (0, 1))
    # (c) overlap on the mu side
    g = GluingDatum(2, lam, mu, (Component(point(2), (2, 0), (1, 1)), Component(point(2), (1, 0), (1, 1))))
    assert "c" in {v.prop for v in validate_gluing(g)}
    with pytest.raises(InvalidGluing):
        build_module(g)


def test_disconnected_component_rejected():
    shape = AbstractSkewShape(2, frozenset({(0, 0), (1, -1)}))
    lam = order_ideal([(1, 1), (2, 0)])
    g = GluingDatum(2, lam, lam, (Component(shape, (1, 1), (1, 1)),))
    assert any(v.prop == "shape" for v in validate_gluing(g))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_random_gluings_against_module_oracle(n):
    for seed in range(12):
        g = random_gluing(n, seed, max_boxes=24)
        comps = [(c.shape.boxes, c.b, c.c) for c in g.components]
        d, alg = glued_module_oracle(n, g.lam.boxes, g.mu.boxes, comps)
        mats = multiplication_matrices(build_module(g))
        assert mats.dim == d == module_dimension(g)
        assert algebra_dimension(mats) == alg == annihilator_dimension(g)


def test_algebra_dim_against_word_oracle():
    for seed in range(10):
        g = random_gluing(2, seed, max_boxes=14)
        mats = multiplication_matrices(build_module(g))
        assert algebra_dimension(mats) == brute_algebra_dim(mats.dense())


def test_point_gluing_in_four_variables_matches_oracle():
    e = lambda i: tuple(1 if k == i else 0 for k in range(4))
    lam = order_ideal([e(0), e(1)])
    mu = order_ideal([e(2), e(3)])
    g = point_gluing(lam, mu, 2)
    comps = [(c.shape.boxes, c.b, c.c) for c in g.components]
    assert glued_module_oracle(4, lam.boxes, mu.boxes, comps) == (4, 5)
    assert deficiency(g) == -1


def test_commuting_matrices_always():
    for seed in range(30):
        g = random_gluing(3, seed)
        multiplication_matrices(build_module(g))  # raises if the action does not commute


def test_empty_gluing_is_direct_sum():
    lam = order_ideal([(1, 1)])
    mu = order_ideal([(2, 0)])
    g = GluingDatum(2, lam, mu)
    v = gerstenhaber_check(g)
    assert v.d == 7 and v.algebra_dim == len(lam.boxes | mu.boxes) == 5
    assert v.gap == v.deficiency == len(lam.boxes & mu.boxes)


def test_empty_diagram():
    g = GluingDatum(2, YoungDiagram.empty(2), YoungDiagram.empty(2))
    v = gerstenhaber_check(g)
    assert (v.d, v.algebra_dim, v.deficiency) == (0, 0, 0)
