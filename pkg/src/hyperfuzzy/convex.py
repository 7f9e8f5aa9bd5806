"""Convexity, cores, shadows and separation for fuzzy sets on finite grids.

A finite point set counts as convex when it contains every universe point
lying on the open segment between any two of its members.  All checks are
exhaustive sweeps over point pairs, so they are exact on the sampled
universe and say nothing about points between grid nodes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Optional, Sequence

from .dfuzzy import (
    DFuzzySet,
    FuzzySetError,
    Universe,
    _same_universe,
    intersection,
)
from .hypnum import (
    ONE,
    ZERO,
    Hyp,
    OrderMode,
    isclose,
    leq,
    max_d,
    min_d,
    point_norm,
    sup_d,
)

COLLINEAR_TOL = 1e-9
THEOREM_TOL = 1e-12


class ConvexError(FuzzySetError):
    pass


# -- segment geometry -------------------------------------------------------


def _segment(points, i: int, j: int) -> list[tuple[int, float]]:
    p, q = points[i], points[j]
    d = [b - a for a, b in zip(p, q)]
    # parametrise along the dominant axis so lambda is an exact coordinate ratio
    axis = max(range(len(d)), key=lambda c: abs(d[c]))
    span = d[axis]
    scale = max(1.0, math.sqrt(sum(x * x for x in d)))
    out = []
    for k, r in enumerate(points):
        if k == i or k == j:
            continue
        lam = (r[axis] - p[axis]) / span
        if not 0.0 < lam < 1.0:
            continue
        if all(abs(r[c] - (p[c] + lam * d[c])) <= COLLINEAR_TOL * scale for c in range(len(d))):
            out.append((k, lam))
    out.sort(key=lambda t: t[1])
    return out


@dataclass(frozen=True)
class _Geometry:
    # (i, j, between, between_mask) for i < j with at least one point between
    pairs: tuple[tuple[int, int, tuple[tuple[int, float], ...], int], ...]


@lru_cache(maxsize=256)
def _geometry(universe: Universe) -> _Geometry:
    pts = universe.points
    n = len(pts)
    pairs = []
    for i in range(n):
        for j in range(i + 1, n):
            between = tuple(_segment(pts, i, j))
            if between:
                mask = 0
                for k, _ in between:
                    mask |= 1 << k
                pairs.append((i, j, between, mask))
    return _Geometry(tuple(pairs))


def segment_points(U: Universe, i: int, j: int) -> list[tuple[int, float]]:
    """Universe points strictly between points ``i`` and ``j``.

    Returns ``(index, lam)`` pairs sorted by ``lam``, where the point equals
    ``p_i + lam * (p_j - p_i)``.
    """
    if i == j:
        raise ValueError("segment endpoints must differ")
    return _segment(U.points, i, j)


# -- reports ----------------------------------------------------------------


@dataclass(frozen=True)
class Witness:
    first: int
    second: int
    point: int
    lam: float
    alpha: Optional[Hyp] = None

    def to_dict(self, universe: Universe) -> dict:
        d = {
            "x1": {"index": self.first, "coords": list(universe.points[self.first])},
            "x2": {"index": self.second, "coords": list(universe.points[self.second])},
            "x": {"index": self.point, "coords": list(universe.points[self.point])},
            "lambda": self.lam,
        }
        if self.alpha is not None:
            d["alpha"] = str(self.alpha)
        return d


@dataclass(frozen=True)
class ConvexityReport:
    verdict: bool
    witness: Optional[Witness] = None
    alphas_tested: tuple[Hyp, ...] = field(default=(), repr=False)

    def __bool__(self) -> bool:
        return self.verdict


# -- alpha cuts -------------------------------------------------------------


def _check_alpha(alpha: Hyp) -> None:
    if not (0.0 <= alpha.u <= 1.0 and 0.0 <= alpha.v <= 1.0) or (alpha.u == 0.0 and alpha.v == 0.0):
        raise ConvexError(f"cut level {alpha} must be nonzero with both components in [0,1]")


def alpha_cut(A: DFuzzySet, alpha: Hyp) -> list[int]:
    """Indices whose grade dominates ``alpha``; incomparable grades are left out.

    A zero component in ``alpha`` puts no constraint on that component.
    """
    _check_alpha(alpha)
    return [i for i, h in enumerate(A.values) if leq(alpha, h)]


def _cut_mask(values, au: float, av: float) -> int:
    mask = 0
    for i, (u, v) in enumerate(values):
        if u >= au and v >= av:
            mask |= 1 << i
    return mask


def candidate_alphas(A: DFuzzySet, boundary: bool = False) -> list[Hyp]:
    """Cut levels at which some cut can change.

    By default these are all pairs of attained, strictly positive component
    values.  ``boundary=True`` also adds levels with one zero component,
    which isolate a single component's cuts.
    """
    return [Hyp(a, b) for a, b in _alpha_pairs(A.values, boundary)]


def _alpha_pairs(values, boundary: bool) -> list[tuple[float, float]]:
    us = sorted({u for u, _ in values if u > 0.0})
    vs = sorted({v for _, v in values if v > 0.0})
    if boundary:
        # (0, 0) is not a cut level; it sorts first, so drop it
        return [(a, b) for a in [0.0] + us for b in [0.0] + vs][1:]
    return [(a, b) for a in us for b in vs]


def _mask_witness(geom: _Geometry, mask: int) -> Optional[tuple[int, int, int, float]]:
    for i, j, between, bmask in geom.pairs:
        if (mask >> i) & 1 and (mask >> j) & 1 and bmask & ~mask:
            for k, lam in between:
                if not (mask >> k) & 1:
                    return i, j, k, lam
    return None


def grid_convex_witness(U: Universe, indices: Iterable[int]) -> Optional[Witness]:
    """First segment point missing from the index set, or None if convex."""
    mask = 0
    for i in indices:
        mask |= 1 << i
    w = _mask_witness(_geometry(U), mask)
    return None if w is None else Witness(*w)


def is_grid_convex(U: Universe, indices: Iterable[int]) -> bool:
    return grid_convex_witness(U, indices) is None


def is_convex_by_cuts(A: DFuzzySet) -> ConvexityReport:
    geom = _geometry(A.universe)
    vals = A.values
    pairs = _alpha_pairs(vals, boundary=True)
    for n, (au, av) in enumerate(pairs):
        w = _mask_witness(geom, _cut_mask(vals, au, av))
        if w is not None:
            tested = tuple(Hyp(a, b) for a, b in pairs[: n + 1])
            return ConvexityReport(False, Witness(*w, alpha=tested[-1]), tested)
    return ConvexityReport(True, None, tuple(Hyp(a, b) for a, b in pairs))


def is_convex_pointwise(A: DFuzzySet, mode: OrderMode = OrderMode.LATTICE) -> ConvexityReport:
    mode = OrderMode.parse(mode)
    vals = A.values
    for i, j, between, _ in _geometry(A.universe).pairs:
        if mode is OrderMode.STRICT:
            min_d(vals[i], vals[j], mode)  # raises on incomparable endpoints
        (ui, vi), (uj, vj) = vals[i], vals[j]
        fu, fv = min(ui, uj), min(vi, vj)
        for k, lam in between:
            uk, vk = vals[k]
            if uk < fu or vk < fv:
                return ConvexityReport(False, Witness(i, j, k, lam))
    return ConvexityReport(True)


def is_strongly_convex(A: DFuzzySet) -> ConvexityReport:
    vals = A.values
    for i, j, between, _ in _geometry(A.universe).pairs:
        (ui, vi), (uj, vj) = vals[i], vals[j]
        fu, fv = min(ui, uj), min(vi, vj)
        for k, lam in between:
            uk, vk = vals[k]
            if not (uk > fu and vk > fv):
                return ConvexityReport(False, Witness(i, j, k, lam))
    return ConvexityReport(True)


def is_convex(A: DFuzzySet) -> bool:
    return is_convex_pointwise(A).verdict


# -- boundedness, supremum, core --------------------------------------------


def bounding_radius(A: DFuzzySet) -> list[tuple[Hyp, Hyp]]:
    """``(alpha, R)`` with R the largest point norm inside each cut."""
    norms = [point_norm(p) for p in A.universe.points]
    out = []
    for alpha in candidate_alphas(A):
        cut = alpha_cut(A, alpha)
        out.append((alpha, sup_d(norms[i] for i in cut) if cut else ZERO))
    return out


def essential_supremum(A: DFuzzySet) -> tuple[Hyp, bool]:
    M = sup_d(A.values)
    return M, any(h == M for h in A.values)


def q_set(A: DFuzzySet, epsilon: Hyp) -> list[int]:
    """Points whose grade is within ``epsilon`` of the supremum.

    Can be empty when the two component maxima sit at different points.
    """
    if not (epsilon.u > 0.0 and epsilon.v > 0.0):
        raise ConvexError(f"epsilon must be strictly positive in both components, got {epsilon}")
    M, _ = essential_supremum(A)
    floor = M - epsilon
    return [i for i, h in enumerate(A.values) if leq(floor, h)]


def core(A: DFuzzySet) -> list[int]:
    M, _ = essential_supremum(A)
    return [i for i, h in enumerate(A.values) if h == M]


# -- shadows ----------------------------------------------------------------


def shadow(A: DFuzzySet, axis: int) -> DFuzzySet:
    """Project onto the coordinate hyperplane that drops ``axis``, keeping
    the supremum of each fibre."""
    U = A.universe
    if U.dim < 2:
        raise ConvexError("shadow needs a universe of dimension >= 2")
    if not 0 <= axis < U.dim:
        raise ConvexError(f"axis {axis} out of range for dimension {U.dim}")
    fibres: dict[tuple[float, ...], Hyp] = {}
    for p, h in zip(U.points, A.values):
        key = p[:axis] + p[axis + 1:]
        prev = fibres.get(key)
        fibres[key] = h if prev is None else max_d(prev, h)
    return DFuzzySet(Universe(list(fibres)), tuple(fibres.values()))


@dataclass(frozen=True)
class ShadowComparison:
    verdict: str  # "equal", "differ" or "inconclusive"
    axis: Optional[int] = None


def shadow_witness(A: DFuzzySet, B: DFuzzySet, axes: Optional[Sequence[int]] = None) -> ShadowComparison:
    """Look for a coordinate axis whose shadows tell two convex sets apart.

    When every tested shadow agrees but the sets differ, separating them
    needs a hyperplane that is not axis-aligned, so the answer is
    "inconclusive" rather than "equal".
    """
    U = _same_universe(A, B)
    if A.values == B.values:
        return ShadowComparison("equal")
    axes = range(U.dim) if axes is None else axes
    if U.dim >= 2:
        for axis in axes:
            if shadow(A, axis).values != shadow(B, axis).values:
                return ShadowComparison("differ", axis)
    return ShadowComparison("inconclusive")


# -- separation -------------------------------------------------------------


@dataclass(frozen=True)
class Hyperplane:
    axis: int
    threshold: float

    def side(self, p: Sequence[float]) -> int:
        d = p[self.axis] - self.threshold
        return (d > 0) - (d < 0)


def _side_sup(values, sides, keep) -> Hyp:
    picked = [h for h, s in zip(values, sides) if s in keep]
    return sup_d(picked) if picked else ZERO


def separation_degree(A: DFuzzySet, B: DFuzzySet, H: Hyperplane) -> Hyp:
    """``1 - K`` where K is the tighter of the two two-sided caps.

    Points on H count on both sides.
    """
    U = _same_universe(A, B)
    if not 0 <= H.axis < U.dim:
        raise ConvexError(f"hyperplane axis {H.axis} out of range for dimension {U.dim}")
    sides = [H.side(p) for p in U.points]
    low, high = (-1, 0), (0, 1)
    k_a_low = max_d(_side_sup(B.values, sides, low), _side_sup(A.values, sides, high))
    k_a_high = max_d(_side_sup(A.values, sides, low), _side_sup(B.values, sides, high))
    return ONE - min_d(k_a_low, k_a_high)


def candidate_hyperplanes(U: Universe) -> list[Hyperplane]:
    """Axis-aligned thresholds: outer sentinels plus midpoints between
    consecutive coordinate values, axis by axis."""
    out = []
    for axis in range(U.dim):
        cs = sorted({p[axis] for p in U.points})
        out.append(Hyperplane(axis, cs[0] - 1.0))
        out.extend(Hyperplane(axis, (a + b) / 2) for a, b in zip(cs, cs[1:]))
        out.append(Hyperplane(axis, cs[-1] + 1.0))
    return out


@dataclass(frozen=True)
class SeparationReport:
    best_degree: Hyp
    best_threshold_u: Hyperplane
    best_threshold_v: Hyperplane
    joint_best_degree: Hyp
    joint_hyperplane: Hyperplane
    intersection_max: Hyp

    @property
    def theorem_holds(self) -> bool:
        return isclose(self.best_degree, ONE - self.intersection_max, THEOREM_TOL)


def optimal_separation(A: DFuzzySet, B: DFuzzySet) -> SeparationReport:
    """Sweep every candidate hyperplane.

    Each component of ``best_degree`` may come from a different hyperplane;
    the joint optimum is the single hyperplane with the largest
    ``u + v`` (first one in sweep order on ties).
    """
    U = _same_universe(A, B)
    best_u = best_v = joint = None
    for H in candidate_hyperplanes(U):
        D = separation_degree(A, B, H)
        if best_u is None or D.u > best_u[0]:
            best_u = (D.u, H)
        if best_v is None or D.v > best_v[0]:
            best_v = (D.v, H)
        if joint is None or D.u + D.v > joint[0].u + joint[0].v:
            joint = (D, H)
    M, _ = essential_supremum(intersection(A, B))
    return SeparationReport(
        best_degree=Hyp(best_u[0], best_v[0]),
        best_threshold_u=best_u[1],
        best_threshold_v=best_v[1],
        joint_best_degree=joint[0],
        joint_hyperplane=joint[1],
        intersection_max=M,
    )
