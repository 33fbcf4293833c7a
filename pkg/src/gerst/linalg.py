"""Exact integer matrices and rank over Q.

Matrices are stored column-sparse: ``cols[j]`` maps row index -> nonzero
entry.  Everything stays in Python ints; no floating point.
"""

from __future__ import annotations

from math import gcd
from typing import Iterable, Sequence

from .errors import SizeMismatch

Column = dict[int, int]


class SparseMatrix:
    __slots__ = ("size", "cols")

    def __init__(self, size: int, cols: Sequence[Column]) -> None:
        if len(cols) != size:
            raise SizeMismatch(f"expected {size} columns, got {len(cols)}")
        self.size = size
        self.cols = tuple({r: v for r, v in c.items() if v} for c in cols)

    @classmethod
    def from_dense(cls, rows: Sequence[Sequence[int]]) -> "SparseMatrix":
        d = len(rows)
        if any(len(r) != d for r in rows):
            raise SizeMismatch("matrix is not square")
        cols = [{i: int(rows[i][j]) for i in range(d) if rows[i][j]} for j in range(d)]
        return cls(d, cols)

    @classmethod
    def identity(cls, d: int) -> "SparseMatrix":
        return cls(d, [{j: 1} for j in range(d)])

    def to_dense(self) -> list[list[int]]:
        out = [[0] * self.size for _ in range(self.size)]
        for j, c in enumerate(self.cols):
            for i, v in c.items():
                out[i][j] = v
        return out

    def __matmul__(self, other: "SparseMatrix") -> "SparseMatrix":
        if self.size != other.size:
            raise SizeMismatch(f"{self.size} vs {other.size}")
        out = []
        for c in other.cols:
            acc: Column = {}
            for k, v in c.items():
                for i, w in self.cols[k].items():
                    acc[i] = acc.get(i, 0) + w * v
            out.append(acc)
        return SparseMatrix(self.size, out)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SparseMatrix) and self.size == other.size and self.cols == other.cols

    def __hash__(self) -> int:
        return hash((self.size, tuple(tuple(sorted(c.items())) for c in self.cols)))

    def is_partial_map(self) -> bool:
        """0/1 matrix with at most one nonzero entry in every column."""
        return all(len(c) <= 1 and all(v == 1 for v in c.values()) for c in self.cols)

    def vector(self) -> dict[int, int]:
        """Flatten to a sparse vector of length size**2 (column-major)."""
        d = self.size
        return {j * d + i: v for j, c in enumerate(self.cols) for i, v in c.items()}


def _primitive(v: dict[int, int]) -> dict[int, int]:
    g = 0
    for x in v.values():
        g = gcd(g, x)
        if g == 1:
            return v
    if g > 1:
        return {k: x // g for k, x in v.items()}
    return v


class Echelon:
    """Incrementally maintained row-echelon basis over Q with integer rows.

    Elimination is fraction free: ``v <- p*v - v[k]*row`` followed by
    division by the content, so entries stay integral and small.
    """

    def __init__(self) -> None:
        self.pivots: dict[int, dict[int, int]] = {}

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, v: dict[int, int]) -> dict[int, int]:
        v = {k: x for k, x in v.items() if x}
        while v:
            k = min(v)
            row = self.pivots.get(k)
            if row is None:
                return v
            p, a = row[k], v[k]
            g = gcd(p, a)
            p, a = p // g, a // g
            new = {key: p * x for key, x in v.items()}
            for key, x in row.items():
                y = new.get(key, 0) - a * x
                if y:
                    new[key] = y
                else:
                    new.pop(key, None)
            v = _primitive(new)
        return v

    def insert(self, v: dict[int, int]) -> bool:
        """Add ``v`` to the span; return True iff it raised the rank."""
        r = self.reduce(v)
        if not r:
            return False
        self.pivots[min(r)] = r
        return True


def rank(vectors: Iterable[dict[int, int]]) -> int:
    e = Echelon()
    for v in vectors:
        e.insert(v)
    return e.rank
