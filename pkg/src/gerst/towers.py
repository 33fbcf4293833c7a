"""Towers: 3D Young diagrams carrying disjoint saturated vertical columns."""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .errors import DimensionMismatch, InvalidTower
from .gluing import Component, GluingDatum, Violation, placement_violations
from .lattice import AbstractSkewShape, Point, YoungDiagram, order_ideal


def column_shape(height: int) -> frozenset[Point]:
    return frozenset((0, 0, z) for z in range(height))


@dataclass(frozen=True)
class Column:
    height: int
    base: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "base", tuple(self.base))
        if self.height < 1:
            raise ValueError(f"column height must be positive, got {self.height}")
        if len(self.base) != 3:
            raise DimensionMismatch(f"column base {self.base} is not in Z^3")

    def boxes(self) -> list[Point]:
        x, y, z = self.base
        return [(x, y, z + k) for k in range(self.height)]


@dataclass(frozen=True)
class Tower:
    lam: YoungDiagram
    columns: tuple[Column, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "columns", tuple(self.columns))
        if self.lam.n != 3:
            raise DimensionMismatch("a tower lives in N^3")

    @property
    def heights(self) -> tuple[int, ...]:
        return tuple(c.height for c in self.columns)

    def column_union(self) -> frozenset[Point]:
        return frozenset(b for c in self.columns for b in c.boxes())


def validate_tower(t: Tower, prefix: tuple[str, str] = ("a", "b")) -> list[Violation]:
    shapes = [column_shape(c.height) for c in t.columns]
    return placement_violations(t.lam, shapes, [c.base for c in t.columns], *prefix)


def is_scaffolded(t: Tower) -> bool:
    return t.lam.boxes == order_ideal(t.column_union(), 3).boxes


def scaffold_tower(t: Tower) -> Tower:
    bad = validate_tower(t)
    if bad:
        raise InvalidTower(bad[0].message, bad)
    return Tower(order_ideal(t.column_union(), 3), t.columns)


@dataclass(frozen=True)
class CompatibleTower:
    lam: YoungDiagram
    mu: YoungDiagram
    heights: tuple[int, ...]
    b: tuple[Point, ...]
    c: tuple[Point, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "heights", tuple(self.heights))
        object.__setattr__(self, "b", tuple(tuple(p) for p in self.b))
        object.__setattr__(self, "c", tuple(tuple(p) for p in self.c))
        if not len(self.heights) == len(self.b) == len(self.c):
            raise ValueError("heights, b and c must have the same length")

    @classmethod
    def from_towers(cls, left: Tower, right: Tower) -> "CompatibleTower":
        if left.heights != right.heights:
            raise InvalidTower("the two towers carry different columns")
        return cls(
            left.lam,
            right.lam,
            left.heights,
            tuple(c.base for c in left.columns),
            tuple(c.base for c in right.columns),
        )

    @property
    def left(self) -> Tower:
        return Tower(self.lam, tuple(Column(h, b) for h, b in zip(self.heights, self.b)))

    @property
    def right(self) -> Tower:
        return Tower(self.mu, tuple(Column(h, c) for h, c in zip(self.heights, self.c)))

    @property
    def nu_size(self) -> int:
        return sum(self.heights)

    def to_gluing(self) -> GluingDatum:
        comps = tuple(
            Component(AbstractSkewShape(3, column_shape(h)), b, c)
            for h, b, c in zip(self.heights, self.b, self.c)
        )
        return GluingDatum(3, self.lam, self.mu, comps)


def validate_compatible(t: CompatibleTower) -> list[Violation]:
    return validate_tower(t.left, ("a", "b")) + validate_tower(t.right, ("c", "d"))


def scaffold(t: Tower | CompatibleTower) -> Tower | CompatibleTower:
    """Replace the diagram(s) by the order ideal of the columns."""
    if isinstance(t, Tower):
        return scaffold_tower(t)
    left, right = scaffold_tower(t.left), scaffold_tower(t.right)
    return CompatibleTower(left.lam, right.lam, t.heights, t.b, t.c)


def is_compatible_scaffolded(t: CompatibleTower) -> bool:
    return is_scaffolded(t.left) and is_scaffolded(t.right)


def deficiency_of_tower(t: CompatibleTower) -> int:
    bad = validate_compatible(t)
    if bad:
        raise InvalidTower(bad[0].message, bad)
    return len(t.lam.boxes & t.mu.boxes) - t.nu_size


def _raw_deficiency(t: CompatibleTower) -> int:
    return len(t.lam.boxes & t.mu.boxes) - t.nu_size


class Order(enum.Enum):
    LESS_EQ = "LESS_EQ"
    GREATER_EQ = "GREATER_EQ"
    EQUAL = "EQUAL"
    INCOMPARABLE = "INCOMPARABLE"


def heights_inject(small: tuple[int, ...], big: tuple[int, ...]) -> bool:
    """Is there an injection sending each column to a column at least as tall?"""
    if len(small) > len(big):
        return False
    s = sorted(small, reverse=True)
    b = sorted(big, reverse=True)
    return all(x <= y for x, y in zip(s, b))


def tower_leq(s: CompatibleTower, t: CompatibleTower) -> bool:
    return (
        s.lam.boxes <= t.lam.boxes
        and s.mu.boxes <= t.mu.boxes
        and heights_inject(s.heights, t.heights)
        and _raw_deficiency(s) <= _raw_deficiency(t)
    )


def compare_towers(s: CompatibleTower, t: CompatibleTower) -> Order:
    le, ge = tower_leq(s, t), tower_leq(t, s)
    if le and ge:
        return Order.EQUAL
    if le:
        return Order.LESS_EQ
    if ge:
        return Order.GREATER_EQ
    return Order.INCOMPARABLE
