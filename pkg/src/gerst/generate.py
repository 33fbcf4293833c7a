"""Instance generators: exhaustive enumeration and seeded random sampling."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Iterator

from .errors import GenerationFailed
from .floorplan import CompatibleFloorPlan, FloorPlan
from .gluing import Component, GluingDatum, validate_gluing
from .lattice import (
    AbstractSkewShape,
    BoxSet,
    YoungDiagram,
    connected_components,
    normalize,
    order_ideal,
    skew_difference,
)
from .towers import Column, Tower, is_scaffolded, validate_tower


@dataclass(frozen=True)
class Bounds:
    r: int = 2  # number of columns
    box: int = 3  # coordinates lie in range(box)
    h: int = 2  # column heights lie in 1..h

    def __post_init__(self) -> None:
        if min(self.r, self.box, self.h) < 1:
            raise ValueError("bounds must be positive")


def canonical_plan(cp: CompatibleFloorPlan) -> CompatibleFloorPlan:
    """Translate so min x and min y over P and Q are 0, then sort components."""
    if not len(cp):
        return cp
    pts = cp.P + cp.Q
    dx = min(x for x, _ in pts)
    dy = min(y for _, y in pts)
    comps = sorted(
        ((p[0] - dx, p[1] - dy), (q[0] - dx, q[1] - dy), h) for p, q, h in zip(cp.P, cp.Q, cp.h)
    )
    return CompatibleFloorPlan(tuple(c[0] for c in comps), tuple(c[1] for c in comps), tuple(c[2] for c in comps))


def enumerate_compatible_plans(bounds: Bounds) -> Iterator[CompatibleFloorPlan]:
    """Every canonical compatible plan with 1..r columns inside the bounds.

    Positions are distinct within P and within Q (a tower cannot carry two
    columns over one base); P and Q may overlap.
    """
    cells = [(x, y) for x in range(bounds.box) for y in range(bounds.box)]
    comps = sorted(itertools.product(cells, cells, range(1, bounds.h + 1)))
    for r in range(1, bounds.r + 1):
        for combo in itertools.combinations(comps, r):
            P = tuple(c[0] for c in combo)
            Q = tuple(c[1] for c in combo)
            if len(set(P)) < r or len(set(Q)) < r:
                continue
            if min(x for x, _ in P + Q) or min(y for _, y in P + Q):
                continue
            yield CompatibleFloorPlan(P, Q, tuple(c[2] for c in combo))


def random_plan(rng: random.Random, r: int, box: int, hmax: int) -> FloorPlan:
    cells = [(x, y) for x in range(box) for y in range(box)]
    return FloorPlan(tuple(rng.sample(cells, r)), tuple(rng.randint(1, hmax) for _ in range(r)))


def random_compatible_plan(rng: random.Random, r: int, box: int, hmax: int) -> CompatibleFloorPlan:
    cells = [(x, y) for x in range(box) for y in range(box)]
    return CompatibleFloorPlan(
        tuple(rng.sample(cells, r)), tuple(rng.sample(cells, r)), tuple(rng.randint(1, hmax) for _ in range(r))
    )


def random_scaffolded_tower(
    rng: random.Random, r: int = 3, box: int = 4, hmax: int = 3, zmax: int = 3, retries: int = 500
) -> Tower:
    """Columns at random bases and z-offsets, diagram = their order ideal; rejection sampled."""
    cells = [(x, y) for x in range(box) for y in range(box)]
    for _ in range(retries):
        bases = rng.sample(cells, r)
        cols = tuple(Column(rng.randint(1, hmax), (x, y, rng.randint(0, zmax))) for x, y in bases)
        union = [b for c in cols for b in c.boxes()]
        t = Tower(order_ideal(union, 3), cols)
        if not validate_tower(t) and is_scaffolded(t):
            return t
    raise GenerationFailed(f"no valid scaffolded tower after {retries} attempts")


# ---------------------------------------------------------------- gluings


def random_diagram(rng: random.Random, n: int, coord: int, npoints: int, sparse: bool = False) -> YoungDiagram:
    """Order ideal of random points in {0..coord}^n.

    ``sparse`` points have few nonzero coordinates (support size s drawn with
    weight 2^-s), which makes diagrams hugging the axes common.
    """
    if not sparse:
        pts = [tuple(rng.randint(0, coord) for _ in range(n)) for _ in range(npoints)]
        return order_ideal(pts, n)
    sizes = list(range(1, n + 1))
    weights = [2.0**-s for s in sizes]
    pts = []
    for _ in range(npoints):
        axes = rng.sample(range(n), rng.choices(sizes, weights)[0])
        pts.append(tuple(rng.randint(1, coord) if i in axes else 0 for i in range(n)))
    return order_ideal(pts, n)


def random_gluing(
    n: int,
    seed: int,
    max_boxes: int = 40,
    coord: int = 3,
    max_components: int = 3,
    point_components: bool = False,
    retries: int = 500,
) -> GluingDatum:
    """A valid gluing datum with |lam| + |mu| <= max_boxes, determined by (n, seed).

    lam is a random diagram; the glued region is a union of components of a
    random upward saturated region of lam; mu is the order ideal of translated
    copies of those components plus a few extra boxes.  Candidates that
    break a saturation condition are rejected and redrawn.  With
    ``point_components`` single maximal boxes of lam are glued to maximal
    boxes of an independently drawn mu.
    """
    if not 1 <= n <= 4:
        raise ValueError("n must be between 1 and 4")
    rng = random.Random(f"gluing:{n}:{seed}")
    for _ in range(retries):
        lam = random_diagram(rng, n, coord, rng.randint(1, 4), sparse=point_components)
        if len(lam) >= max_boxes:
            continue
        if point_components:
            # glue random maximal boxes of lam to random maximal boxes of an independent mu
            mu = random_diagram(rng, n, coord, rng.randint(1, 4), sparse=True)
            k = rng.randint(1, min(len(lam.maximal()), len(mu.maximal()), max_components))
            origin = AbstractSkewShape(n, frozenset({(0,) * n}))
            pairs = zip(rng.sample(lam.maximal(), k), rng.sample(mu.maximal(), k))
            g = GluingDatum(n, lam, mu, tuple(Component(origin, b, c) for b, c in pairs))
            if len(lam) + len(mu) <= max_boxes and not validate_gluing(g):
                return g
            continue
        inner_seeds = rng.sample(sorted(lam.boxes), rng.randint(0, min(3, len(lam) - 1)))
        inner = order_ideal(inner_seeds, n) if inner_seeds else YoungDiagram.empty(n)
        region = skew_difference(lam, inner)
        comps = connected_components(region)
        if not comps:
            continue
        pieces = [c.boxes for c in rng.sample(comps, rng.randint(1, min(len(comps), max_components)))]
        components = []
        for piece in pieces:
            shape, b = normalize(BoxSet(n, piece))
            low = [min(v[k] for v in shape.boxes) for k in range(n)]
            if rng.random() < 0.5:
                c = tuple(bk + rng.randint(-1, 1) for bk in b)
            else:
                c = tuple(rng.randint(0, coord) for _ in range(n))
            c = tuple(max(ck, -lk) for ck, lk in zip(c, low))
            components.append(Component(shape, b, c))
        extra = [tuple(rng.randint(0, coord) for _ in range(n)) for _ in range(rng.randint(0, 2))]
        if rng.random() < 0.5 and lam.boxes:
            extra.append(rng.choice(sorted(lam.boxes)))
        placed = [p for comp in components for p in comp.in_mu()]
        mu = order_ideal(placed + extra, n)
        if len(lam) + len(mu) > max_boxes:
            continue
        g = GluingDatum(n, lam, mu, tuple(components))
        if not validate_gluing(g):
            return g
    raise GenerationFailed(f"no valid gluing for n={n}, seed={seed} after {retries} attempts")


def down_sets_of_cube(n: int, side: int) -> list[YoungDiagram]:
    """All Young diagrams inside {0..side}^n, by brute force over subsets.

    Only sensible for tiny cubes ((side+1)^n <= 16).
    """
    cube = sorted(itertools.product(range(side + 1), repeat=n))
    if len(cube) > 16:
        raise ValueError("cube too large for exhaustive down-set enumeration")
    out = []
    for mask in range(1 << len(cube)):
        boxes = frozenset(cube[k] for k in range(len(cube)) if mask >> k & 1)
        if all(
            all(p[i] == 0 or p[:i] + (p[i] - 1,) + p[i + 1 :] in boxes for i in range(n)) for p in boxes
        ):
            out.append(YoungDiagram(n, boxes))
    return out


def point_gluing(lam: YoungDiagram, mu: YoungDiagram, r: int) -> GluingDatum:
    """Glue the first r maximal boxes of lam to the first r maximal boxes of mu."""
    n = lam.n
    origin = AbstractSkewShape(n, frozenset({(0,) * n}))
    tops_l, tops_m = lam.maximal(), mu.maximal()
    comps = tuple(Component(origin, b, c) for b, c in zip(tops_l[:r], tops_m[:r]))
    return GluingDatum(n, lam, mu, comps)

