"""
Dimension estimates for attractors and their difference sets.

- similarity dimension: root of sum c_i^D = 1 by bisection (scipy)
- box counts: optimal greedy ball covers of interval unions
- fits: least-squares log-log slope (numpy) and Assouad-style exponents
  from localized sup-counts N(V & B(x, r), rho)
- diff_bound_check: compares the K - K exponent with twice the K exponent
- compare_box_assouad: box and Assouad exponents side by side, which agree
  when the cut maps are weakly separated
"""
from bisect import bisect_right
from dataclasses import dataclass
from math import log
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy.optimize import bisect

from attractor_geom import IntervalSet, cover, diff_cover, sample_diff_points, sample_points
from errors import DomainError
from ifs_core import IFS1D, Scalar, to_scalar
from separation import FAIL, PASS, UNDETERMINED, wsd_report, wsp_min_separation

DEFAULT_TOL = 1e-12
DEFAULT_SLACK = 0.05
DEFAULT_SCALE_DEPTHS = (1, 2)
DEFAULT_SCALE_STEPS = (4, 5, 6)
DEFAULT_CENTER_COUNT = 24
DEFAULT_CENTER_DEPTH = 12
DEFAULT_BOX_DEPTH = 12
DEFAULT_BOX_STEPS = tuple(range(4, 11))

BOX = "box"
ASSOUAD_RATIO = "assouad-ratio"
ASSOUAD_SLOPE = "assouad-slope"
METHODS = {"ratio": ASSOUAD_RATIO, "slope": ASSOUAD_SLOPE}


def similarity_dimension_of_ratios(ratios: Sequence[Scalar], tol: float = DEFAULT_TOL) -> float:
    """Root D of sum c_i^D = 1, by bisection on [0, log m / log(1/cmax)]."""
    if tol <= 0:
        raise DomainError(f"tolerance must be positive, got {tol}")
    values = [float(c) for c in ratios]
    if not values or any(not 0 < c < 1 for c in values):
        raise DomainError("ratios must be nonempty and lie in (0,1)")

    def excess(d: float) -> float:
        return sum(c ** d for c in values) - 1.0

    # m * cmax^upper = 1, so excess(upper) <= 0
    upper = log(len(values)) / log(1.0 / max(values))
    if excess(upper) >= 0:
        return upper
    return bisect(excess, 0.0, upper, xtol=tol)


def similarity_dimension(ifs: IFS1D, tol: float = DEFAULT_TOL) -> float:
    """Similarity dimension of the IFS ratios."""
    return similarity_dimension_of_ratios(ifs.ratios, tol)


def _cover_count(intervals: Tuple[Tuple[Scalar, Scalar], ...], eps: Scalar) -> int:
    """Greedy eps-ball count for sorted disjoint intervals, centers in the set."""
    # each ball goes to the rightmost point of X within eps of the first uncovered point
    los = [lo for lo, _ in intervals]
    p = intervals[0][0]
    count = 0
    while True:
        idx = bisect_right(los, p + eps) - 1
        center = min(intervals[idx][1], p + eps)
        count += 1
        reach = center + eps
        k = bisect_right(los, reach) - 1
        if intervals[k][1] > reach:
            p = reach
        elif k + 1 < len(intervals):
            p = intervals[k + 1][0]
        else:
            return count


def box_counts(x: IntervalSet, eps_list: Sequence[Scalar]) -> List[Tuple[Scalar, int]]:
    """Minimal number of closed eps-balls centred in X that cover X, per eps."""
    if not x:
        raise DomainError("box counts need a nonempty set")
    counts = []
    for eps in eps_list:
        if eps <= 0:
            raise DomainError(f"ball radius must be positive, got {eps}")
        counts.append((eps, _cover_count(x.intervals, eps)))
    return counts


@dataclass(frozen=True)
class DimensionFit:
    """A fitted exponent with the samples it came from.

    Box fits store (scale, count) samples; Assouad fits store (r, rho, count).
    """

    kind: str
    samples: Tuple[tuple, ...]
    exponent: float
    residual: float
    intercept: Optional[float] = None

    def recompute_residual(self) -> float:
        if self.kind == BOX:
            return _box_fit(self.samples)[2]
        return _assouad_fit(self.samples, self.kind)[2]


def _box_fit(samples: Sequence[tuple]) -> Tuple[float, float, float]:
    """Slope, intercept and max residual of log N on log(1/scale)."""
    scales = np.array([float(s) for s, _ in samples])
    counts = np.array([float(n) for _, n in samples])
    if len(set(scales.tolist())) < 2:
        raise DomainError("a box fit needs at least two distinct scales")
    x = np.log(1.0 / scales)
    y = np.log(counts)
    slope, intercept = np.polyfit(x, y, 1)
    residual = float(np.max(np.abs(y - (slope * x + intercept))))
    return float(slope), float(intercept), residual


def fit_exponent(samples: Sequence[Tuple[Scalar, int]]) -> DimensionFit:
    """Least-squares slope of log N against log(1/scale)."""
    slope, intercept, residual = _box_fit(samples)
    return DimensionFit(
        kind=BOX,
        samples=tuple((s, int(n)) for s, n in samples),
        exponent=slope,
        residual=residual,
        intercept=intercept,
    )


def _assouad_fit(samples: Sequence[tuple], kind: str) -> Tuple[float, Optional[float], float]:
    """Exponent, intercept (slope fits only) and max residual of the localized counts."""
    if not samples:
        raise DomainError("an Assouad fit needs samples")
    if kind == ASSOUAD_RATIO:
        spans = [log(float(r) / float(rho)) for r, rho, _ in samples]
        logs = [log(n) for _, _, n in samples]
        exponent = max(y / x for x, y in zip(spans, logs))
        residual = max(abs(y - exponent * x) for x, y in zip(spans, logs))
        return exponent, None, residual

    groups: Dict[float, List[tuple]] = {}
    for r, rho, n in samples:
        groups.setdefault(float(r), []).append((float(rho), n))
    best = None
    for r, rows in sorted(groups.items()):
        if len(set(rho for rho, _ in rows)) < 2:
            raise DomainError(f"slope fit needs two inner scales at r={r}")
        x = np.log(np.array([r / rho for rho, _ in rows]))
        y = np.log(np.array([float(n) for _, n in rows]))
        slope, intercept = np.polyfit(x, y, 1)
        residual = float(np.max(np.abs(y - (slope * x + intercept))))
        if best is None or slope > best[0]:
            best = (float(slope), float(intercept), residual)
    return best


def _validate_pairs(scale_pairs: Sequence[Tuple[Scalar, Scalar]]) -> None:
    if not scale_pairs:
        raise DomainError("no scale pairs given")
    for r, rho in scale_pairs:
        if not 0 < rho < r:
            raise DomainError(f"scale pair needs 0 < rho < r, got ({r}, {rho})")


def _localized_fit(
    set_at: Callable[[Scalar], IntervalSet],
    centers: Sequence[Scalar],
    scale_pairs: Sequence[Tuple[Scalar, Scalar]],
    method: str,
) -> DimensionFit:
    """Max count over centers for every (r, rho) pair, then the chosen fit."""
    if method not in METHODS:
        raise DomainError(f"unknown Assouad method {method!r}")
    _validate_pairs(scale_pairs)
    if not centers:
        raise DomainError("no centers given")
    kind = METHODS[method]

    samples = []
    for r, rho in scale_pairs:
        x = set_at(rho)
        counts = [
            _cover_count(local.intervals, rho)
            for local in (x.clip(z - r, z + r) for z in centers)
            if local
        ]
        if not counts:
            raise DomainError(f"no center meets the set at r={r}")
        samples.append((r, rho, max(counts)))

    exponent, intercept, residual = _assouad_fit(samples, kind)
    return DimensionFit(kind=kind, samples=tuple(samples), exponent=exponent, residual=residual, intercept=intercept)


def default_scale_pairs(
    ifs: IFS1D,
    depths: Sequence[int] = DEFAULT_SCALE_DEPTHS,
    steps: Sequence[int] = DEFAULT_SCALE_STEPS,
) -> List[Tuple[Scalar, Scalar]]:
    """Pairs (cmax^j, cmax^(j+m)) over the given depths and steps."""
    return [(ifs.cmax ** j, ifs.cmax ** (j + m)) for j in depths for m in steps]


def default_centers(ifs: IFS1D, count: int = DEFAULT_CENTER_COUNT, seed: int = 0) -> List[Scalar]:
    """Member fixed points plus images of random words, all in K."""
    fixed = [f.translation / (1 - f.slope) for f in ifs.maps]
    return sorted(set(fixed)) + sample_points(ifs, count, DEFAULT_CENTER_DEPTH, seed)


def default_diff_centers(ifs: IFS1D, count: int = DEFAULT_CENTER_COUNT, seed: int = 0) -> List[Scalar]:
    """The origin plus sampled points of K-K."""
    return [to_scalar(0, ifs.mode)] + sample_diff_points(ifs, count, DEFAULT_CENTER_DEPTH, seed)


def assouad_estimate(
    ifs: IFS1D,
    centers: Sequence[Scalar],
    scale_pairs: Sequence[Tuple[Scalar, Scalar]],
    kappa: Optional[Scalar] = None,
    method: str = "ratio",
    budget: Optional[int] = None,
) -> DimensionFit:
    """Exponent of the sup-count N(K & B(x, r), rho) over the given pairs.

    K is represented by its cover at rho * kappa (kappa defaults to cmin).
    """
    kappa = ifs.cmin if kappa is None else kappa
    cache: Dict[Scalar, IntervalSet] = {}

    def set_at(rho: Scalar) -> IntervalSet:
        if rho not in cache:
            cache[rho] = cover(ifs, rho * kappa, budget=budget)
        return cache[rho]

    return _localized_fit(set_at, centers, scale_pairs, method)


def diff_assouad_estimate(
    ifs: IFS1D,
    centers: Sequence[Scalar],
    scale_pairs: Sequence[Tuple[Scalar, Scalar]],
    kappa: Optional[Scalar] = None,
    method: str = "ratio",
    budget: Optional[int] = None,
) -> DimensionFit:
    """Same estimate for K - K, represented by diff_cover at rho * kappa."""
    kappa = ifs.cmin if kappa is None else kappa
    cache: Dict[Scalar, IntervalSet] = {}

    def set_at(rho: Scalar) -> IntervalSet:
        if rho not in cache:
            cache[rho] = diff_cover(ifs, rho * kappa, budget=budget)
        return cache[rho]

    return _localized_fit(set_at, centers, scale_pairs, method)


@dataclass(frozen=True)
class DiffBoundParams:
    scale_pairs: Optional[Tuple[Tuple[Scalar, Scalar], ...]] = None
    center_count: int = DEFAULT_CENTER_COUNT
    seed: int = 0
    slack: float = DEFAULT_SLACK
    method: str = "slope"
    wsd_scales: Optional[Tuple[Scalar, ...]] = None
    budget: Optional[int] = None


@dataclass(frozen=True)
class DiffBoundReport:
    set_fit: DimensionFit
    diff_fit: DimensionFit
    similarity_dimension: float
    slack: float
    bound: float
    wsd_floor: Optional[Scalar]
    verdict: str


def diff_bound_check(ifs: IFS1D, params: Optional[DiffBoundParams] = None) -> DiffBoundReport:
    """Check exponent(K - K) <= 2 * exponent(K) + slack at finite scales."""
    params = params or DiffBoundParams()
    pairs = params.scale_pairs or tuple(default_scale_pairs(ifs))
    wsd_scales = params.wsd_scales or tuple(ifs.cmax ** k for k in (1, 2, 3))

    wsd = [wsd_report(ifs, b, budget=params.budget) for b in wsd_scales]
    gaps = [r.eps_star for r in wsd if r.eps_star is not None]
    floor = min(gaps) if gaps else None

    set_fit = assouad_estimate(
        ifs, default_centers(ifs, params.center_count, params.seed), pairs,
        method=params.method, budget=params.budget,
    )
    diff_fit = diff_assouad_estimate(
        ifs, default_diff_centers(ifs, params.center_count, params.seed), pairs,
        method=params.method, budget=params.budget,
    )
    bound = 2 * set_fit.exponent + params.slack

    if any(r.verdict == UNDETERMINED for r in wsd):
        verdict = UNDETERMINED
    else:
        verdict = PASS if diff_fit.exponent <= bound else FAIL

    return DiffBoundReport(
        set_fit=set_fit,
        diff_fit=diff_fit,
        similarity_dimension=similarity_dimension(ifs),
        slack=params.slack,
        bound=bound,
        wsd_floor=floor,
        verdict=verdict,
    )


def default_box_fit(ifs: IFS1D, budget: Optional[int] = None) -> DimensionFit:
    """Box fit on the cover at cmax^12 with radii cmax^4 .. cmax^10."""
    x = cover(ifs, ifs.cmax ** DEFAULT_BOX_DEPTH, budget=budget)
    return fit_exponent(box_counts(x, [ifs.cmax ** j for j in DEFAULT_BOX_STEPS]))


@dataclass(frozen=True)
class DimensionComparison:
    box_fit: DimensionFit
    assouad_fit: DimensionFit
    gap: float
    slack: float
    wsp_gap: Optional[Scalar]
    verdict: str


def compare_box_assouad(
    ifs: IFS1D,
    slack: float = DEFAULT_SLACK,
    method: str = "slope",
    seed: int = 0,
    budget: Optional[int] = None,
) -> DimensionComparison:
    """Pass iff |assouad - box| <= slack.

    wsp_gap is the unnormalized separation of the cut maps at b = cmax, the
    evidence that the two exponents should coincide.
    """
    box_fit = default_box_fit(ifs, budget)
    assouad_fit = assouad_estimate(
        ifs, default_centers(ifs, seed=seed), default_scale_pairs(ifs), method=method, budget=budget,
    )
    wsp = wsp_min_separation(ifs, ifs.cmax, budget=budget)
    gap = abs(assouad_fit.exponent - box_fit.exponent)
    return DimensionComparison(
        box_fit=box_fit,
        assouad_fit=assouad_fit,
        gap=gap,
        slack=slack,
        wsp_gap=wsp.eps_star,
        verdict=PASS if gap <= slack else FAIL,
    )
