"""Seeded generators, brute-force oracles and the runnable property suites."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, replace
from typing import Callable, Iterator, Optional, Sequence

from . import convex as cv
from . import dfuzzy as df
from . import hypnum as hn
from .dfuzzy import DFuzzySet, Universe
from .hypnum import Hyp, OrderMode

MAX_EXHAUSTIVE_POINTS = 5
MAX_EXHAUSTIVE_LEVELS = 4


class BudgetExceeded(ValueError):
    pass


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    min_points: int = 2
    max_points: int = 8
    dim: int = 1
    step: float = 0.05
    trials: int = 100

    def __post_init__(self):
        if self.dim not in (1, 2):
            raise ValueError("dim must be 1 or 2")
        if not 1 <= self.min_points <= self.max_points:
            raise ValueError("need 1 <= min_points <= max_points")
        n = round(1 / self.step)
        if n < 1 or abs(n * self.step - 1) > 1e-9:
            raise ValueError("step must divide 1 evenly")

    @property
    def levels(self) -> list[float]:
        n = round(1 / self.step)
        return [k / n for k in range(n + 1)]

    def for_trial(self, trial: int) -> "GenConfig":
        return replace(self, seed=self.seed + trial)


class Generator:
    """Deterministic source of grades, sets and universes for one config."""

    def __init__(self, cfg: GenConfig):
        self.cfg = cfg
        self.rng = random.Random(cfg.seed)
        self.levels = cfg.levels

    def level(self) -> float:
        return self.rng.choice(self.levels)

    def hyp(self) -> Hyp:
        return Hyp(self.level(), self.level())

    def size(self) -> int:
        return self.rng.randint(self.cfg.min_points, self.cfg.max_points)

    def universe(self) -> Universe:
        if self.cfg.dim == 1:
            return Universe.line(range(self.size()))
        # keep 2D grids small: the segment table is cubic in the point count
        hi = max(2, min(self.cfg.max_points, 5))
        lo = min(max(2, self.cfg.min_points), hi)
        return Universe.grid(range(self.rng.randint(lo, hi)), range(self.rng.randint(lo, hi)))

    def fuzzy_set(self, universe: Optional[Universe] = None) -> DFuzzySet:
        U = universe or self.universe()
        return df.new_set(U, [self.hyp() for _ in range(len(U))])

    def unimodal(self, n: int, peak: Optional[int] = None) -> list[float]:
        """Rise-then-fall profile (plateaus allowed)."""
        vals = [self.level() for _ in range(n)]
        top = max(vals)
        rest = sorted(vals)
        rest.remove(top)
        peak = self.rng.randrange(n) if peak is None else peak
        self.rng.shuffle(rest)
        left, right = sorted(rest[:peak]), sorted(rest[peak:], reverse=True)
        return left + [top] + right

    def strictly_unimodal(self, n: int, peak: Optional[int] = None) -> list[float]:
        """Strictly rising then strictly falling, all values distinct and > 0."""
        pool = [x for x in self.levels if x > 0]
        if n > len(pool):
            raise ValueError(f"cannot draw {n} distinct positive levels from {len(pool)}")
        vals = self.rng.sample(pool, n)
        top = max(vals)
        vals.remove(top)
        peak = self.rng.randrange(n) if peak is None else peak
        left, right = sorted(vals[:peak]), sorted(vals[peak:], reverse=True)
        return left + [top] + right

    def convex_set(self, universe: Optional[Universe] = None, attained: bool = False) -> DFuzzySet:
        """Each component unimodal along every grid line; 2D sets are the
        meet of an x-profile and a y-profile.

        ``attained=True`` puts both components' peaks on the same point, so
        the supremum is reached.
        """
        U = universe or self.universe()
        if U.dim == 1:
            n = len(U)
            peak = self.rng.randrange(n) if attained else None
            us, vs = self.unimodal(n, peak), self.unimodal(n, peak)
            # universe points may be in any order; profiles follow coordinates
            order = sorted(range(n), key=lambda i: U.points[i][0])
            vals = [None] * n
            for rank, i in enumerate(order):
                vals[i] = Hyp(us[rank], vs[rank])
            A = df.new_set(U, vals)
        else:
            xs = sorted({p[0] for p in U.points})
            ys = sorted({p[1] for p in U.points})
            if len(xs) * len(ys) != len(U):
                raise ValueError("2D convex generation needs a full rectangular grid")
            px = self.rng.randrange(len(xs)) if attained else None
            py = self.rng.randrange(len(ys)) if attained else None
            xu, xv = self.unimodal(len(xs), px), self.unimodal(len(xs), px)
            yu, yv = self.unimodal(len(ys), py), self.unimodal(len(ys), py)
            xi = {x: r for r, x in enumerate(xs)}
            yi = {y: r for r, y in enumerate(ys)}
            vals = [
                Hyp(min(xu[xi[x]], yu[yi[y]]), min(xv[xi[x]], yv[yi[y]]))
                for x, y in U.points
            ]
            A = df.new_set(U, vals)
        if not cv.is_convex_pointwise(A).verdict:
            raise AssertionError(f"generator produced a non-convex set: {A.values}")
        return A

    def strongly_convex_set(self, universe: Optional[Universe] = None) -> DFuzzySet:
        """1D only: strictly unimodal components sharing one peak."""
        U = universe or Universe.line(range(self.size()))
        if U.dim != 1:
            raise ValueError("strongly convex generation is 1D only")
        n = len(U)
        peak = self.rng.randrange(n)
        us, vs = self.strictly_unimodal(n, peak), self.strictly_unimodal(n, peak)
        order = sorted(range(n), key=lambda i: U.points[i][0])
        vals = [None] * n
        for rank, i in enumerate(order):
            vals[i] = Hyp(us[rank], vs[rank])
        A = df.new_set(U, vals)
        if not cv.is_strongly_convex(A).verdict:
            raise AssertionError(f"generator produced a set that is not strongly convex: {A.values}")
        return A


def gen_hyp(cfg: GenConfig) -> Hyp:
    return Generator(cfg).hyp()


def gen_set(cfg: GenConfig) -> DFuzzySet:
    return Generator(cfg).fuzzy_set()


def gen_convex_set(cfg: GenConfig, attained: bool = False) -> DFuzzySet:
    return Generator(cfg).convex_set(attained=attained)


def exhaustive_oracle(
    max_points: int, value_levels: Sequence[float], min_points: int = 1
) -> Iterator[DFuzzySet]:
    """Every assignment of (u, v) level pairs to 1D grids of each size."""
    if max_points > MAX_EXHAUSTIVE_POINTS or len(value_levels) > MAX_EXHAUSTIVE_LEVELS:
        raise BudgetExceeded(
            f"exhaustive enumeration limited to {MAX_EXHAUSTIVE_POINTS} points and "
            f"{MAX_EXHAUSTIVE_LEVELS} levels, got {max_points} and {len(value_levels)}"
        )
    grades = [Hyp(a, b) for a in value_levels for b in value_levels]
    df.new_set(Universe.line(range(len(grades))), grades)  # range check once, then trust
    for n in range(min_points, max_points + 1):
        U = Universe.line(range(n))
        for combo in itertools.product(grades, repeat=n):
            yield df._trusted(U, combo)


def quasi_concave_1d(coords: Sequence[float], values: Sequence[float]) -> bool:
    """Scalar oracle: no point is strictly lower than something on each side."""
    vals = [v for _, v in sorted(zip(coords, values))]
    n = len(vals)
    left = [float("-inf")] * n
    right = [float("-inf")] * n
    for i in range(1, n):
        left[i] = max(left[i - 1], vals[i - 1])
    for i in range(n - 2, -1, -1):
        right[i] = max(right[i + 1], vals[i + 1])
    return all(not (left[i] > vals[i] and right[i] > vals[i]) for i in range(n))


def scalar_convex(A: DFuzzySet) -> bool:
    """Both component sets quasi-concave, for 1D universes."""
    coords = [p[0] for p in A.universe.points]
    return quasi_concave_1d(coords, [h.u for h in A.values]) and quasi_concave_1d(
        coords, [h.v for h in A.values]
    )


# -- property suites --------------------------------------------------------


@dataclass
class SuiteResult:
    name: str
    trials: int = 0
    failures: int = 0
    counterexample: Optional[str] = None

    def fail(self, detail: str) -> None:
        self.failures += 1
        if self.counterexample is None:
            self.counterexample = detail

    @property
    def passed(self) -> bool:
        return self.failures == 0


def _show(*sets: DFuzzySet) -> str:
    return " | ".join("[" + ", ".join(str(h) for h in s.values) + "]" for s in sets)


def _trial_gens(seed: int, trials: int, **cfg) -> Iterator[Generator]:
    base = GenConfig(seed=seed, trials=trials, **cfg)
    for t in range(trials):
        yield Generator(base.for_trial(t))


def suite_ring(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("ring")
    for ident, ok in [
        ("k*k == 1", hn.K * hn.K == hn.ONE),
        ("e1*e1 == e1", hn.E1 * hn.E1 == hn.E1),
        ("e2*e2 == e2", hn.E2 * hn.E2 == hn.E2),
        ("e1+e2 == 1", hn.E1 + hn.E2 == hn.ONE),
        ("e1*e2 == 0", hn.E1 * hn.E2 == hn.ZERO),
    ]:
        res.trials += 1
        if not ok:
            res.fail(ident)
    rng = random.Random(seed)
    for _ in range(trials):
        x = Hyp(rng.uniform(-10, 10), rng.uniform(-10, 10))
        y = Hyp(rng.uniform(-10, 10), rng.uniform(-10, 10))
        res.trials += 1
        if not hn.isclose(hn.standard_product(x, y), x * y, 1e-12 * max(1.0, abs(x.u * y.u), abs(x.v * y.v))):
            res.fail(f"standard product mismatch for {x}, {y}")
    return res


def suite_order(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("order")
    rng = random.Random(seed)
    levels = [k / 4 for k in range(5)]

    def pick():
        return Hyp(rng.choice(levels), rng.choice(levels))

    for _ in range(trials):
        x, y, z = pick(), pick(), pick()
        res.trials += 1
        if not hn.leq(x, x):
            res.fail(f"reflexivity: {x}")
        if hn.leq(x, y) and hn.leq(y, x) and x != y:
            res.fail(f"antisymmetry: {x}, {y}")
        if hn.leq(x, y) and hn.leq(y, z) and not hn.leq(x, z):
            res.fail(f"transitivity: {x}, {y}, {z}")
        if hn.comparable(x, y):
            if hn.max_d(x, y, OrderMode.STRICT) != hn.max_d(x, y) or hn.min_d(x, y, OrderMode.STRICT) != hn.min_d(x, y):
                res.fail(f"strict/lattice disagree on comparable {x}, {y}")
    return res


def suite_demorgan(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("demorgan")
    for g in _trial_gens(seed, trials):
        U = g.universe()
        A, B = g.fuzzy_set(U), g.fuzzy_set(U)
        res.trials += 1
        if not df.equals(df.complement(df.union(A, B)), df.intersection(df.complement(A), df.complement(B))):
            res.fail("1.a on " + _show(A, B))
        if not df.equals(df.complement(df.intersection(A, B)), df.union(df.complement(A), df.complement(B))):
            res.fail("1.b on " + _show(A, B))
    return res


def suite_distributive(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("distributive")
    for g in _trial_gens(seed, trials):
        U = g.universe()
        A, B, C = g.fuzzy_set(U), g.fuzzy_set(U), g.fuzzy_set(U)
        res.trials += 1
        lhs = df.intersection(C, df.union(A, B))
        rhs = df.union(df.intersection(C, A), df.intersection(C, B))
        if not df.equals(lhs, rhs):
            res.fail("2.a on " + _show(A, B, C))
        lhs = df.union(C, df.intersection(A, B))
        rhs = df.intersection(df.union(C, A), df.union(C, B))
        if not df.equals(lhs, rhs):
            res.fail("2.b on " + _show(A, B, C))
    return res


def suite_propositions(seed: int, trials: int) -> SuiteResult:
    """Union is the least upper bound, intersection the greatest lower bound."""
    res = SuiteResult("propositions")
    for g in _trial_gens(seed, trials):
        U = g.universe()
        A, B, E = g.fuzzy_set(U), g.fuzzy_set(U), g.fuzzy_set(U)
        # any D above both A and B, and any F below both
        D = df.union(df.union(A, B), E)
        F = df.intersection(df.intersection(A, B), E)
        res.trials += 1
        AuB, AnB = df.union(A, B), df.intersection(A, B)
        if not (df.is_subset(A, AuB) is True and df.is_subset(B, AuB) is True and df.is_subset(AuB, D) is True):
            res.fail("union bound on " + _show(A, B, E))
        if not (df.is_subset(AnB, A) is True and df.is_subset(AnB, B) is True and df.is_subset(F, AnB) is True):
            res.fail("intersection bound on " + _show(A, B, E))
    return res


def suite_sandwich(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("sandwich")
    for g in _trial_gens(seed, trials):
        U = g.universe()
        A, B, L = g.fuzzy_set(U), g.fuzzy_set(U), g.fuzzy_set(U)
        res.trials += 1
        C = df.convex_combination(A, B, L)
        if df.is_subset(df.intersection(A, B), C) is not True or df.is_subset(C, df.union(A, B)) is not True:
            res.fail(_show(A, B, L))
    return res


def suite_convexity(seed: int, trials: int) -> SuiteResult:
    """Cut-based and pointwise definitions agree (and match the scalar oracle in 1D)."""
    res = SuiteResult("convexity")
    for t, g in enumerate(_trial_gens(seed, trials, max_points=7)):
        if t % 2:
            g = Generator(replace(g.cfg, dim=2, max_points=4))
        A = g.fuzzy_set()
        if t % 4 == 0:
            A = g.convex_set(A.universe)
        res.trials += 1
        cuts = cv.is_convex_by_cuts(A).verdict
        point = cv.is_convex_pointwise(A).verdict
        if cuts != point:
            res.fail(f"cuts={cuts} pointwise={point} on {_show(A)}")
        elif A.universe.dim == 1 and scalar_convex(A) != point:
            res.fail(f"scalar oracle disagrees on {_show(A)}")
    return res


def suite_intersection(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("intersection")
    for t, g in enumerate(_trial_gens(seed, trials)):
        if t % 2:
            g = Generator(replace(g.cfg, dim=2, max_points=4))
        U = g.universe()
        A, B = g.convex_set(U), g.convex_set(U)
        C = df.intersection(A, B)
        res.trials += 1
        if not (cv.is_convex_pointwise(C).verdict and cv.is_convex_by_cuts(C).verdict):
            res.fail(_show(A, B))
    return res


def suite_product(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("product")
    for g in _trial_gens(seed, trials, max_points=5):
        A = g.convex_set(Universe.line(range(g.size())))
        B = g.convex_set(Universe.line(range(g.size())))
        P = df.cartesian_product(A, B)
        res.trials += 1
        if not (cv.is_convex_pointwise(P).verdict and cv.is_convex_by_cuts(P).verdict):
            res.fail("product of " + _show(A, B))
        # cylinder: crisp interval times the whole line
        n = len(A.universe)
        lo = g.rng.randrange(n)
        hi = g.rng.randrange(lo, n)
        block = df.from_crisp(A.universe, [lo <= i <= hi for i in range(n)])
        cyl = df.cartesian_product(block, df.constant(B.universe, hn.ONE))
        if not cv.is_convex_pointwise(cyl).verdict:
            res.fail(f"cylinder over [{lo}, {hi}] of {n} x {len(B.universe)}")
    return res


def suite_strong(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("strong")
    for g in _trial_gens(seed, trials, min_points=3, max_points=10):
        U = Universe.line(range(g.size()))
        A, B = g.strongly_convex_set(U), g.strongly_convex_set(U)
        res.trials += 1
        if not cv.is_strongly_convex(df.intersection(A, B)).verdict:
            res.fail(_show(A, B))
    return res


def suite_core(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("core")
    for t, g in enumerate(_trial_gens(seed, trials)):
        if t % 2:
            g = Generator(replace(g.cfg, dim=2, max_points=4))
        A = g.convex_set(attained=True)
        res.trials += 1
        M, attained = cv.essential_supremum(A)
        c = cv.core(A)
        if not attained or not c or not cv.is_grid_convex(A.universe, c):
            res.fail(f"core {c} of {_show(A)}")
    for g in _trial_gens(seed + 10**6, max(1, (trials * 2) // 5), min_points=2, max_points=10):
        A = g.strongly_convex_set()
        res.trials += 1
        if len(cv.core(A)) != 1:
            res.fail(f"strongly convex core {cv.core(A)} of {_show(A)}")
    return res


def suite_shadow(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("shadow")
    for g in _trial_gens(seed, trials, dim=2, min_points=2, max_points=5):
        A = g.convex_set()
        for axis in (0, 1):
            res.trials += 1
            S = cv.shadow(A, axis)
            if not cv.is_convex_pointwise(S).verdict:
                res.fail(f"axis {axis} shadow of {_show(A)}")
    return res


def suite_separation(seed: int, trials: int) -> SuiteResult:
    res = SuiteResult("separation")
    for g in _trial_gens(seed, trials):
        U = Universe.line(range(g.size()))
        A, B = g.convex_set(U), g.convex_set(U)
        rep = cv.optimal_separation(A, B)
        res.trials += 1
        if not rep.theorem_holds:
            res.fail(f"D={rep.best_degree} M={rep.intersection_max} on {_show(A, B)}")
    return res


def suite_monotone(seed: int, trials: int) -> SuiteResult:
    """Cuts shrink and bounding radii do not grow as the level rises."""
    res = SuiteResult("monotone")
    for g in _trial_gens(seed, trials):
        A = g.fuzzy_set()
        alphas = cv.candidate_alphas(A)
        cuts = {a: set(cv.alpha_cut(A, a)) for a in alphas}
        radii = dict(cv.bounding_radius(A))
        res.trials += 1
        for a in alphas:
            for b in alphas:
                if hn.leq(a, b) and not (cuts[b] <= cuts[a] and hn.leq(radii[b], radii[a])):
                    res.fail(f"levels {a} <= {b} on {_show(A)}")
    return res


SUITES: dict[str, Callable[[int, int], SuiteResult]] = {
    "ring": suite_ring,
    "order": suite_order,
    "demorgan": suite_demorgan,
    "distributive": suite_distributive,
    "propositions": suite_propositions,
    "sandwich": suite_sandwich,
    "convexity": suite_convexity,
    "intersection": suite_intersection,
    "product": suite_product,
    "strong": suite_strong,
    "core": suite_core,
    "shadow": suite_shadow,
    "separation": suite_separation,
    "monotone": suite_monotone,
}


def run_suites(name: str, seed: int, trials: int) -> list[SuiteResult]:
    if name == "all":
        names = list(SUITES)
    elif name in SUITES:
        names = [name]
    else:
        raise KeyError(f"unknown suite {name!r}; choose from all, {', '.join(SUITES)}")
    return [SUITES[n](seed, trials) for n in names]
