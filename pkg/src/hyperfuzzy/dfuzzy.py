"""Fuzzy sets with hyperbolic membership grades over finite universes.

Every operation is pointwise over the universe's index order and returns a
new set; nothing here mutates its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Optional, Sequence

from .hypnum import (
    ONE,
    ZERO,
    Hyp,
    IncomparableError,
    OrderMode,
    comparable,
    isclose,
    leq,
    max_d,
    min_d,
    modulus_k,
)


class FuzzySetError(ValueError):
    pass


class MembershipRangeError(FuzzySetError):
    def __init__(self, index: int, value: Hyp, component: str):
        self.index = index
        self.value = value
        self.component = component
        super().__init__(f"membership {value} at point {index} is outside [0,1] in its {component} component")


class LengthMismatchError(FuzzySetError):
    pass


class UniverseMismatchError(FuzzySetError):
    pass


class SumGuardError(FuzzySetError):
    """The algebraic sum is only defined where ``f_A + f_B <= 1``."""

    def __init__(self, index: int, value: Hyp):
        self.index = index
        self.value = value
        super().__init__(
            f"algebraic sum undefined: f_A + f_B = {value} exceeds 1 at point {index} "
            "(defined only provided the sum stays <= 1)"
        )


@dataclass(frozen=True)
class Universe:
    """A finite, ordered list of distinct points in real n-space."""

    points: tuple[tuple[float, ...], ...]
    labels: Optional[tuple[str, ...]] = None

    def __init__(self, points: Iterable[Sequence[float]], labels: Optional[Sequence[str]] = None):
        pts = tuple(tuple(float(c) for c in p) for p in points)
        if not pts:
            raise FuzzySetError("universe must contain at least one point")
        dim = len(pts[0])
        if dim < 1:
            raise FuzzySetError("points need at least one coordinate")
        seen = {}
        for i, p in enumerate(pts):
            if len(p) != dim:
                raise FuzzySetError(f"point {i} has dimension {len(p)}, expected {dim}")
            if not all(math.isfinite(c) for c in p):
                raise FuzzySetError(f"point {i} has a non-finite coordinate")
            if p in seen:
                raise FuzzySetError(f"duplicate universe point {p} at indices {seen[p]} and {i}")
            seen[p] = i
        if labels is not None:
            labels = tuple(str(s) for s in labels)
            if len(labels) != len(pts):
                raise LengthMismatchError(f"{len(labels)} labels for {len(pts)} points")
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "labels", labels)

    @classmethod
    def line(cls, coords: Iterable[float]) -> "Universe":
        return cls([(c,) for c in coords])

    @classmethod
    def grid(cls, xs: Sequence[float], ys: Sequence[float]) -> "Universe":
        """Row-major 2D grid, ``xs`` outer."""
        return cls([(x, y) for x in xs for y in ys])

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __len__(self) -> int:
        return len(self.points)

    def label(self, i: int) -> str:
        if self.labels is not None:
            return self.labels[i]
        return "(" + ", ".join(_fmt_coord(c) for c in self.points[i]) + ")"

    @cached_property
    def index(self) -> dict[tuple[float, ...], int]:
        return {p: i for i, p in enumerate(self.points)}


def _fmt_coord(c: float) -> str:
    return format(c, ".12g")


@dataclass(frozen=True)
class OrdinaryFuzzySet:
    universe: Universe
    values: tuple[float, ...]

    def __post_init__(self):
        if len(self.values) != len(self.universe):
            raise LengthMismatchError(f"{len(self.values)} values for {len(self.universe)} points")
        for i, x in enumerate(self.values):
            if not 0.0 <= x <= 1.0:
                raise FuzzySetError(f"membership {x} at point {i} is outside [0,1]")


@dataclass(frozen=True)
class DFuzzySet:
    universe: Universe
    values: tuple[Hyp, ...] = field(repr=False)

    def __post_init__(self):
        values = tuple(self.values)
        if len(values) != len(self.universe):
            raise LengthMismatchError(f"{len(values)} membership values for {len(self.universe)} points")
        for i, h in enumerate(values):
            if not isinstance(h, Hyp):
                raise TypeError(f"membership at point {i} is {type(h).__name__}, expected Hyp")
            if not 0.0 <= h.u <= 1.0:
                raise MembershipRangeError(i, h, "e1")
            if not 0.0 <= h.v <= 1.0:
                raise MembershipRangeError(i, h, "e2")
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, i: int) -> Hyp:
        return self.values[i]

    def __iter__(self):
        return iter(self.values)


def new_set(universe: Universe, values: Iterable[Hyp]) -> DFuzzySet:
    return DFuzzySet(universe, tuple(values))


def constant(universe: Universe, value: Hyp) -> DFuzzySet:
    return DFuzzySet(universe, (value,) * len(universe))


def empty(universe: Universe) -> DFuzzySet:
    return constant(universe, ZERO)


def from_crisp(universe: Universe, member_flags: Sequence[bool]) -> DFuzzySet:
    if len(member_flags) != len(universe):
        raise LengthMismatchError(f"{len(member_flags)} flags for {len(universe)} points")
    return DFuzzySet(universe, tuple(ONE if f else ZERO for f in member_flags))


def decompose(A: DFuzzySet) -> tuple[OrdinaryFuzzySet, OrdinaryFuzzySet]:
    """Split into the ordinary fuzzy sets carried by the e1 and e2 components."""
    return (
        OrdinaryFuzzySet(A.universe, tuple(h.u for h in A.values)),
        OrdinaryFuzzySet(A.universe, tuple(h.v for h in A.values)),
    )


def recompose(first: OrdinaryFuzzySet, second: OrdinaryFuzzySet) -> DFuzzySet:
    _same_universe(first, second)
    return DFuzzySet(first.universe, tuple(Hyp(u, v) for u, v in zip(first.values, second.values)))


def _same_universe(*sets) -> Universe:
    u = sets[0].universe
    for s in sets[1:]:
        if s.universe is not u and s.universe != u:
            raise UniverseMismatchError("operands are defined on different universes")
    return u


def is_empty(A: DFuzzySet) -> bool:
    return all(h.u == 0.0 and h.v == 0.0 for h in A.values)


def equals(A: DFuzzySet, B: DFuzzySet, tol: float = 0.0) -> bool:
    """Pointwise equality; ``tol > 0`` allows for rounding after arithmetic."""
    _same_universe(A, B)
    if tol == 0.0:
        return A.values == B.values
    return all(isclose(a, b, tol) for a, b in zip(A.values, B.values))


@dataclass(frozen=True)
class IncomparableAt:
    """Containment is undecided: the grades at ``index`` are not ordered."""

    index: int

    def __bool__(self) -> bool:
        return False


def is_subset(A: DFuzzySet, B: DFuzzySet):
    """Return ``True``, ``False`` or ``IncomparableAt(i)`` for the first
    point ``i`` where neither grade dominates the other."""
    _same_universe(A, B)
    holds = True
    for i, (a, b) in enumerate(zip(A.values, B.values)):
        if leq(a, b):
            continue
        if not leq(b, a):
            return IncomparableAt(i)
        holds = False
    return holds


def incomparable_points(A: DFuzzySet, B: DFuzzySet) -> list[int]:
    """Indices where the two grades are not ordered, i.e. where lattice
    union/intersection go beyond the comparable case."""
    _same_universe(A, B)
    return [i for i, (a, b) in enumerate(zip(A.values, B.values)) if not comparable(a, b)]


def _trusted(universe: Universe, values: tuple[Hyp, ...]) -> DFuzzySet:
    # values already known to lie in [0,1] (lattice ops, complements)
    s = object.__new__(DFuzzySet)
    object.__setattr__(s, "universe", universe)
    object.__setattr__(s, "values", values)
    return s


def complement(A: DFuzzySet) -> DFuzzySet:
    return _trusted(A.universe, tuple(Hyp(1.0 - h.u, 1.0 - h.v) for h in A.values))


def _pointwise(op, A: DFuzzySet, B: DFuzzySet, mode: OrderMode) -> tuple[Hyp, ...]:
    out = []
    for i, (a, b) in enumerate(zip(A.values, B.values)):
        try:
            out.append(op(a, b, mode))
        except IncomparableError as exc:
            raise IncomparableError(a, b, f"at point {i}") from exc
    return tuple(out)


def union(A: DFuzzySet, B: DFuzzySet, mode: OrderMode = OrderMode.LATTICE) -> DFuzzySet:
    u = _same_universe(A, B)
    return _trusted(u, _pointwise(max_d, A, B, OrderMode.parse(mode)))


def intersection(A: DFuzzySet, B: DFuzzySet, mode: OrderMode = OrderMode.LATTICE) -> DFuzzySet:
    u = _same_universe(A, B)
    return _trusted(u, _pointwise(min_d, A, B, OrderMode.parse(mode)))


def algebraic_sum(A: DFuzzySet, B: DFuzzySet) -> DFuzzySet:
    u = _same_universe(A, B)
    out = []
    for i, (a, b) in enumerate(zip(A.values, B.values)):
        s = a + b
        if not leq(s, ONE):
            raise SumGuardError(i, s)
        out.append(s)
    return DFuzzySet(u, tuple(out))


def algebraic_product(A: DFuzzySet, B: DFuzzySet) -> DFuzzySet:
    u = _same_universe(A, B)
    return DFuzzySet(u, tuple(a * b for a, b in zip(A.values, B.values)))


def absolute_difference(A: DFuzzySet, B: DFuzzySet) -> DFuzzySet:
    u = _same_universe(A, B)
    return DFuzzySet(u, tuple(modulus_k(a - b) for a, b in zip(A.values, B.values)))


def product_universe(X: Universe, Y: Universe) -> Universe:
    """Concatenated coordinates, row-major with ``X`` outer."""
    points = [p + q for p in X.points for q in Y.points]
    labels = None
    if X.labels is not None or Y.labels is not None:
        labels = [f"({X.label(i)}, {Y.label(j)})" for i in range(len(X)) for j in range(len(Y))]
    return Universe(points, labels)


def cartesian_product(A: DFuzzySet, B: DFuzzySet, mode: OrderMode = OrderMode.LATTICE) -> DFuzzySet:
    mode = OrderMode.parse(mode)
    out = []
    for i, a in enumerate(A.values):
        for j, b in enumerate(B.values):
            try:
                out.append(min_d(a, b, mode))
            except IncomparableError as exc:
                raise IncomparableError(a, b, f"at pair ({i}, {j})") from exc
    return _trusted(product_universe(A.universe, B.universe), tuple(out))


def convex_combination(A: DFuzzySet, B: DFuzzySet, L: DFuzzySet) -> DFuzzySet:
    """Pointwise ``f_L * f_A + (1 - f_L) * f_B``."""
    u = _same_universe(A, B, L)
    out = []
    for a, b, lam in zip(A.values, B.values, L.values):
        c = lam * a + (ONE - lam) * b
        # the exact value lies between a and b; rounding may step one ulp outside
        c = max_d(min_d(c, max_d(a, b)), min_d(a, b))
        out.append(c)
    return DFuzzySet(u, tuple(out))
