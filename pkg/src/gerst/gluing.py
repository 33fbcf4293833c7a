"""Glued modules over k[x_1..x_n], their multiplication matrices and algebra dimension.

A gluing datum is the combinatorial form of two monomial quotients S/I and
S/J identified along isomorphic monomial submodules K/I ~ L/J: diagrams
``lam`` and ``mu`` plus connected abstract skew shapes, each placed at
offset ``b`` inside ``lam`` and at offset ``c`` inside ``mu``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, NamedTuple, Sequence

from .errors import DimensionMismatch, InconsistencyDetected, InvalidGluing, NotCommuting, SizeMismatch
from .lattice import (
    AbstractSkewShape,
    MonomialIdeal,
    Point,
    YoungDiagram,
    add,
    connected_components,
    diagram_from_ideal,
    is_connected,
    normalize,
    skew_from_ideals,
    unit,
)
from .linalg import Echelon, SparseMatrix


@dataclass(frozen=True)
class Component:
    shape: AbstractSkewShape
    b: Point
    c: Point

    def __post_init__(self) -> None:
        object.__setattr__(self, "b", tuple(self.b))
        object.__setattr__(self, "c", tuple(self.c))

    def in_lambda(self) -> frozenset[Point]:
        return self.shape.translate(self.b)

    def in_mu(self) -> frozenset[Point]:
        return self.shape.translate(self.c)


@dataclass(frozen=True)
class GluingDatum:
    n: int
    lam: YoungDiagram
    mu: YoungDiagram
    components: tuple[Component, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "components", tuple(self.components))
        if self.lam.n != self.n or self.mu.n != self.n:
            raise DimensionMismatch("diagrams do not live in N^n")
        for comp in self.components:
            if comp.shape.n != self.n or len(comp.b) != self.n or len(comp.c) != self.n:
                raise DimensionMismatch("component does not live in Z^n")

    @property
    def nu_size(self) -> int:
        return sum(len(c.shape) for c in self.components)


class Violation(NamedTuple):
    prop: str  # "shape", "a", "b", "c" or "d"
    index: int  # component index, -1 when not specific to one
    point: Point | None  # the offending box of the abstract shape
    step: Point | None  # the direction w for saturation failures
    message: str


def placement_violations(
    diagram: YoungDiagram,
    shapes: Sequence[frozenset[Point]],
    offsets: Sequence[Point],
    contain: str,
    saturate: str,
) -> list[Violation]:
    """Check that translated shapes are disjoint, inside ``diagram`` and saturated in it.

    Saturation is checked one unit step at a time; since the diagram is
    downward closed that is equivalent to checking every w in N^n.
    """
    out: list[Violation] = []
    n = diagram.n
    owner: dict[Point, int] = {}
    steps = [unit(n, j) for j in range(n)]
    for i, (shape, off) in enumerate(zip(shapes, offsets)):
        placed = {add(v, off): v for v in shape}
        for u, v in sorted(placed.items()):
            if u not in diagram.boxes:
                out.append(Violation(contain, i, v, None, f"box {u} of component {i} is outside the diagram"))
            elif u in owner:
                out.append(
                    Violation(contain, i, v, None, f"box {u} is shared by components {owner[u]} and {i}")
                )
            else:
                owner[u] = i
        for u, v in sorted(placed.items()):
            for w in steps:
                above = add(u, w)
                if above in diagram.boxes and above not in placed:
                    out.append(
                        Violation(
                            saturate,
                            i,
                            v,
                            w,
                            f"box {above} lies in the diagram above component {i} but not in it",
                        )
                    )
    return out


def validate_gluing(g: GluingDatum) -> list[Violation]:
    """Every violated condition, each with a witness.  Empty means valid."""
    out: list[Violation] = []
    for i, comp in enumerate(g.components):
        boxes = comp.shape.boxes
        if not boxes:
            out.append(Violation("shape", i, None, None, f"component {i} is empty"))
        elif not is_connected(g.n, boxes):
            out.append(Violation("shape", i, None, None, f"component {i} is not connected"))
    shapes = [c.shape.boxes for c in g.components]
    out += placement_violations(g.lam, shapes, [c.b for c in g.components], "a", "b")
    out += placement_violations(g.mu, shapes, [c.c for c in g.components], "c", "d")
    return out


def gluing_from_ideals(
    I: MonomialIdeal, J: MonomialIdeal, K: MonomialIdeal, L: MonomialIdeal
) -> GluingDatum:
    """Gluing datum for (I, J, K, L) with the monomial isomorphism K/I -> L/J.

    Components of the two skew shapes are paired by translation class, in
    lex order of their smallest boxes; any pairing of equal classes is a
    valid choice of isomorphism.
    """
    lam = diagram_from_ideal(I)
    mu = diagram_from_ideal(J)
    left = [normalize(c) for c in connected_components(skew_from_ideals(I, K))]
    right = [normalize(c) for c in connected_components(skew_from_ideals(J, L))]
    if len(left) != len(right):
        raise InvalidGluing(f"K/I has {len(left)} components but L/J has {len(right)}")
    unused = list(range(len(right)))
    comps = []
    for shape, b in left:
        for k in unused:
            if right[k][0].boxes == shape.boxes:
                comps.append(Component(shape, b, right[k][1]))
                unused.remove(k)
                break
        else:
            raise InvalidGluing(f"no component of L/J is a translate of {sorted(shape.boxes)}")
    return GluingDatum(I.n, lam, mu, tuple(comps))


# ---------------------------------------------------------------- module


Label = tuple[str, Point]  # ("L", box) or ("M", box)


def _basis_key(label: Label):
    side, box = label
    return (-sum(box), 0 if side == "L" else 1, tuple(-x for x in box))


@dataclass(frozen=True)
class GluedModule:
    """Monomial basis of the glued module and the action of each variable.

    ``action[i][k]`` is the basis index of x_{i+1} times basis element k,
    or -1 when the product is zero.  Basis order: total degree descending,
    lam-side before mu-side, then lex descending.
    """

    n: int
    basis: tuple[Label, ...]
    action: tuple[tuple[int, ...], ...]

    @property
    def dim(self) -> int:
        return len(self.basis)


def build_module(g: GluingDatum) -> GluedModule:
    bad = validate_gluing(g)
    if bad:
        raise InvalidGluing(bad[0].message, bad)
    n = g.n
    glued_mu: dict[Point, Point] = {}
    for comp in g.components:
        for v in comp.shape.boxes:
            glued_mu[add(v, comp.c)] = add(v, comp.b)
    labels = [("L", a) for a in g.lam.boxes] + [("M", a) for a in g.mu.boxes if a not in glued_mu]
    labels.sort(key=_basis_key)
    index = {lab: k for k, lab in enumerate(labels)}

    def target(label: Label, i: int) -> int:
        side, a = label
        up = add(a, unit(n, i))
        if side == "L":
            return index[("L", up)] if up in g.lam.boxes else -1
        if up not in g.mu.boxes:
            return -1
        if up in glued_mu:
            return index[("L", glued_mu[up])]
        return index[("M", up)]

    action = tuple(tuple(target(lab, i) for lab in labels) for i in range(n))
    return GluedModule(n, tuple(labels), action)


@dataclass(frozen=True)
class MatrixTuple:
    dim: int
    matrices: tuple[SparseMatrix, ...]

    def dense(self) -> list[list[list[int]]]:
        return [m.to_dense() for m in self.matrices]


def check_commuting(mats: Sequence[SparseMatrix]) -> None:
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            if mats[i] @ mats[j] != mats[j] @ mats[i]:
                raise NotCommuting(f"A_{i + 1} and A_{j + 1} do not commute")


def multiplication_matrices(m: GluedModule) -> MatrixTuple:
    """Matrices of x_i acting on column coordinate vectors: column k is the image of basis k."""
    d = m.dim
    mats = tuple(SparseMatrix(d, [{t: 1} if t >= 0 else {} for t in act]) for act in m.action)
    check_commuting(mats)
    return MatrixTuple(d, mats)


def matrix_tuple(mats: Iterable[Sequence[Sequence[int]] | SparseMatrix]) -> MatrixTuple:
    sp = tuple(m if isinstance(m, SparseMatrix) else SparseMatrix.from_dense(m) for m in mats)
    sizes = {m.size for m in sp}
    if len(sizes) > 1:
        raise SizeMismatch(f"matrices of different sizes {sorted(sizes)}")
    return MatrixTuple(sizes.pop() if sizes else 0, sp)


def algebra_dimension(t: MatrixTuple) -> int:
    """Dimension over Q of the unital algebra generated by commuting matrices.

    Breadth-first word closure: start from the identity, multiply retained
    words by each generator, keep a product iff it raises the rank.
    """
    for m in t.matrices:
        if m.size != t.dim:
            raise SizeMismatch(f"matrix of size {m.size} in a tuple of size {t.dim}")
    check_commuting(t.matrices)
    if t.dim == 0:
        return 0
    partial = all(m.is_partial_map() for m in t.matrices)
    ident = SparseMatrix.identity(t.dim)
    span = Echelon()
    span.insert(ident.vector())
    queue = deque([ident])
    while queue:
        w = queue.popleft()
        for a in t.matrices:
            prod = a @ w
            if partial and not prod.is_partial_map():
                raise InconsistencyDetected("a word in partial maps is not a partial map")
            if span.insert(prod.vector()):
                queue.append(prod)
    return span.rank


# ---------------------------------------------------------------- Gerstenhaber inequality


def annihilator_dimension(g: GluingDatum) -> int:
    """Colength of Ann(M) = I cap J, i.e. |lam cup mu|."""
    return len(g.lam.boxes | g.mu.boxes)


def deficiency(g: GluingDatum) -> int:
    return len(g.lam.boxes & g.mu.boxes) - g.nu_size


def module_dimension(g: GluingDatum) -> int:
    return len(g.lam) + len(g.mu) - g.nu_size


@dataclass(frozen=True)
class Verdict:
    d: int
    algebra_dim: int
    gap: int  # d - algebra_dim, from the matrices
    deficiency: int  # |lam cap mu| - |nu|, from the diagrams
    consistent: bool  # both sides agree on whether dim A <= d
    exact: bool  # gap == deficiency

    @property
    def status(self) -> str:
        return "COUNTEREXAMPLE" if self.deficiency < 0 else "SATISFIED"

    @property
    def excess(self) -> int:
        """How far dim A exceeds d (0 when the inequality holds)."""
        return max(0, -self.gap)

    def as_dict(self) -> dict:
        return {
            "status": self.status,
            "d": self.d,
            "algebra_dim": self.algebra_dim,
            "gap": self.gap,
            "deficiency": self.deficiency,
            "consistent": self.consistent,
            "exact": self.exact,
        }


def gerstenhaber_check(g: GluingDatum) -> Verdict:
    mats = multiplication_matrices(build_module(g))
    dim_a = algebra_dimension(mats)
    gap = mats.dim - dim_a
    dfc = deficiency(g)
    consistent = (gap >= 0) == (dfc >= 0)
    if not consistent:
        raise InconsistencyDetected(f"d - dim A = {gap} but |lam cap mu| - |nu| = {dfc}")
    return Verdict(mats.dim, dim_a, gap, dfc, consistent, gap == dfc)
