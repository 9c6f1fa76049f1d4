"""
Separation checkers: sup-norm separation of cut maps, separation of
difference classes at test points, and the Hausdorff-distance variant.

Every checker returns a SeparationReport carrying the minimal gap found at
scale b (normalized by b for the difference checkers) and the pair that
attains it. Thresholds are supplied by the caller.
"""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Any, Iterable, List, Optional, Sequence, Tuple

from attractor_geom import (
    DEFAULT_MERGE_DEPTH,
    classify_differences,
    hausdorff,
    point_at,
    refined_cover,
)
from errors import BudgetExceededError, DomainError
from ifs_core import IFS1D, Scalar, Word, check_scale, scale_cut, to_scalar

PASS = "pass"
FAIL = "fail"
UNDETERMINED = "undetermined"
COMPLETE = "complete"

BRUTE_FORCE_LIMIT = 256

CHECKERS = ("wsp", "wsd", "wsd-hausdorff")


@dataclass(frozen=True)
class TestPoints:
    """Points of K used to witness difference-class gaps."""

    __test__ = False

    points: Tuple[Scalar, ...]

    def __post_init__(self):
        if not self.points:
            raise DomainError("test points must be nonempty")


def default_test_points(ifs: IFS1D) -> TestPoints:
    """The hull endpoints."""
    return TestPoints(tuple(ifs.hull))


def points_from_words(ifs: IFS1D, words: Iterable[Word]) -> TestPoints:
    """Coding-map points of the given words."""
    return TestPoints(tuple(point_at(ifs, w).value for w in words))


def net_points(ifs: IFS1D, spacing: Scalar) -> TestPoints:
    """Points of K such that every point of K lies within ``spacing`` of one."""
    if spacing <= 0:
        raise DomainError(f"net spacing must be positive, got {spacing}")
    lo, hi = ifs.hull
    scale = to_scalar(spacing, ifs.mode) / ifs.diameter
    if scale >= 1:
        return TestPoints((lo, hi))
    cut = scale_cut(ifs, scale)
    values = {lo, hi}
    values.update(f.apply(lo) for f in cut.maps)
    return TestPoints(tuple(sorted(values)))


@dataclass(frozen=True)
class SeparationReport:
    checker: str
    b: Scalar
    word_count: int
    class_count: int
    eps_star: Optional[Scalar]
    witness: Optional[Tuple[Any, Any]]
    verdict: str
    threshold: Optional[Scalar] = None
    refinement_error: Optional[Scalar] = None
    undetermined_pairs: int = 0


def _verdict(eps_star: Optional[Scalar], threshold: Optional[Scalar], undetermined: bool) -> str:
    """Undetermined beats a threshold verdict; no threshold means complete."""
    if undetermined:
        return UNDETERMINED
    if threshold is None:
        return COMPLETE
    if eps_star is None or eps_star >= threshold:
        return PASS
    return FAIL


def affine_deviation(slope: Scalar, intercept: Scalar, lo: Scalar, hi: Scalar) -> Scalar:
    """max over [lo, hi] of |slope*x + intercept - x|, attained at an endpoint."""
    return max(abs((slope - 1) * lo + intercept), abs((slope - 1) * hi + intercept))


def wsp_min_separation(
    ifs: IFS1D,
    b: Scalar,
    threshold: Optional[Scalar] = None,
    budget: Optional[int] = None,
) -> SeparationReport:
    """Minimum over distinct cut maps of ||f_a^-1 f_b - id|| on K (not divided by b)."""
    cut = scale_cut(ifs, b, budget=budget)
    distinct = {}
    for word, f in zip(cut.words, cut.maps):
        distinct.setdefault((f.ratio, f.sign, f.translation), word)
    entries = sorted(distinct.items())

    lo, hi = ifs.hull
    best = None
    witness = None
    for key_a, word_a in entries:
        ratio_a, sign_a, t_a = key_a
        slope_a = sign_a * ratio_a
        for key_b, word_b in entries:
            if key_a == key_b:
                continue
            ratio_b, sign_b, t_b = key_b
            h_slope = sign_b * ratio_b / slope_a
            h_intercept = (t_b - t_a) / slope_a
            norm = affine_deviation(h_slope, h_intercept, lo, hi)
            if best is None or norm < best:
                best, witness = norm, (word_a, word_b)

    return SeparationReport(
        checker="wsp",
        b=cut.b,
        word_count=len(cut),
        class_count=len(entries),
        eps_star=best,
        witness=witness,
        verdict=_verdict(best, threshold, False),
        threshold=threshold,
    )


def _linf(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    return max(abs(a - c) for a, c in zip(u, v))


def closest_pair_linf(vectors: Sequence[Sequence[Scalar]]) -> Optional[Tuple[int, int, Scalar]]:
    """Indices (i < j) and sup-norm distance of the closest pair of vectors."""
    n = len(vectors)
    if n < 2:
        return None
    best = None
    pair = None
    if n <= BRUTE_FORCE_LIMIT:
        for i in range(n):
            for j in range(i + 1, n):
                d = _linf(vectors[i], vectors[j])
                if best is None or d < best:
                    best, pair = d, (i, j)
        return pair[0], pair[1], best

    order = sorted(range(n), key=lambda k: (vectors[k][0], k))
    for pos, i in enumerate(order):
        first = vectors[i][0]
        for j in order[pos + 1:]:
            if best is not None and vectors[j][0] - first >= best:
                break
            d = _linf(vectors[i], vectors[j])
            if best is None or d < best:
                best, pair = d, (min(i, j), max(i, j))
    return pair[0], pair[1], best


def wsd_report(
    ifs: IFS1D,
    b: Scalar,
    pts: Optional[TestPoints] = None,
    threshold: Optional[Scalar] = None,
    budget: Optional[int] = None,
    merge_depth: int = DEFAULT_MERGE_DEPTH,
) -> SeparationReport:
    """Minimal normalized test-point gap between distinct difference classes."""
    pts = pts or default_test_points(ifs)
    points = [to_scalar(x, ifs.mode) for x in pts.points]
    found = classify_differences(ifs, b, budget=budget, merge_depth=merge_depth)
    classes = found.classes

    vectors = [tuple(cls.value(x, y) for x in points for y in points) for cls in classes]
    closest = closest_pair_linf(vectors)
    eps_star, witness = None, None
    if closest is not None:
        i, j, gap = closest
        eps_star, witness = gap / found.b, (classes[i], classes[j])

    return SeparationReport(
        checker="wsd",
        b=found.b,
        word_count=found.word_count,
        class_count=len(classes),
        eps_star=eps_star,
        witness=witness,
        verdict=_verdict(eps_star, threshold, bool(found.undetermined)),
        threshold=threshold,
        undetermined_pairs=len(found.undetermined),
    )


def wsd_hausdorff_report(
    ifs: IFS1D,
    b: Scalar,
    depth: int = 0,
    threshold: Optional[Scalar] = None,
    budget: Optional[int] = None,
    merge_depth: int = DEFAULT_MERGE_DEPTH,
) -> SeparationReport:
    """Minimal normalized Hausdorff distance between refined class sets.

    The reported refinement_error bounds, in units of b, how far the refined
    distance can sit from the distance between the true class sets.
    """
    found = classify_differences(ifs, b, budget=budget, merge_depth=merge_depth)
    classes = found.classes
    base = refined_cover(ifs, depth, budget=budget)
    sets = [cls.refined(base) for cls in classes]

    # d_H(A, B) >= |min A - min B|
    order = sorted(range(len(sets)), key=lambda k: (sets[k].lo, k))
    best, pair = None, None
    for pos, i in enumerate(order):
        for j in order[pos + 1:]:
            if best is not None and sets[j].lo - sets[i].lo >= best:
                break
            d = hausdorff(sets[i], sets[j])
            if best is None or d < best:
                best, pair = d, (min(i, j), max(i, j))

    eps_star = best / found.b if best is not None else None
    witness = (classes[pair[0]], classes[pair[1]]) if pair else None
    widest = max((cls.c_plus + cls.c_minus for cls in classes), default=0)
    error = 2 * widest * ifs.cmax ** depth * ifs.diameter / found.b

    return SeparationReport(
        checker="wsd-hausdorff",
        b=found.b,
        word_count=found.word_count,
        class_count=len(classes),
        eps_star=eps_star,
        witness=witness,
        verdict=_verdict(eps_star, threshold, bool(found.undetermined)),
        threshold=threshold,
        refinement_error=error,
        undetermined_pairs=len(found.undetermined),
    )


@dataclass(frozen=True)
class ScanResult:
    checker: str
    reports: Tuple[SeparationReport, ...]
    budget_error: Optional[str] = None

    @property
    def complete(self) -> bool:
        return self.budget_error is None

    def min_eps(self) -> Optional[Scalar]:
        values = [r.eps_star for r in self.reports if r.eps_star is not None]
        return min(values) if values else None


def normalize_checker(name: str) -> str:
    """Canonical checker name; underscores are accepted."""
    name = name.replace("_", "-")
    if name not in CHECKERS:
        raise DomainError(f"unknown checker {name!r}; expected one of {', '.join(CHECKERS)}")
    return name


def run_checker(
    checker: str,
    ifs: IFS1D,
    b: Scalar,
    pts: Optional[TestPoints] = None,
    depth: int = 0,
    threshold: Optional[Scalar] = None,
    budget: Optional[int] = None,
    merge_depth: int = DEFAULT_MERGE_DEPTH,
) -> SeparationReport:
    """Dispatch to the named checker at scale b."""
    checker = normalize_checker(checker)
    if checker == "wsp":
        return wsp_min_separation(ifs, b, threshold=threshold, budget=budget)
    if checker == "wsd":
        return wsd_report(ifs, b, pts, threshold=threshold, budget=budget, merge_depth=merge_depth)
    return wsd_hausdorff_report(
        ifs, b, depth=depth, threshold=threshold, budget=budget, merge_depth=merge_depth
    )


def _check_scale_list(b_list: Sequence[Scalar]) -> None:
    if not b_list:
        raise DomainError("scale list is empty")
    for b in b_list:
        check_scale(b)
    for a, c in zip(b_list, b_list[1:]):
        if not c < a:
            raise DomainError("scale list must be strictly decreasing")


def scan_scales(
    ifs: IFS1D,
    b_list: Sequence[Scalar],
    checker: str = "wsd",
    pts: Optional[TestPoints] = None,
    depth: int = 0,
    threshold: Optional[Scalar] = None,
    budget: Optional[int] = None,
    merge_depth: int = DEFAULT_MERGE_DEPTH,
    max_workers: int = 1,
) -> ScanResult:
    """One report per scale; the first budget error stops the scan."""
    checker = normalize_checker(checker)
    _check_scale_list(b_list)
    options = dict(pts=pts, depth=depth, threshold=threshold, budget=budget, merge_depth=merge_depth)
    reports: List[SeparationReport] = []

    if max_workers <= 1:
        for b in b_list:
            try:
                reports.append(run_checker(checker, ifs, b, **options))
            except BudgetExceededError as exc:
                return ScanResult(checker, tuple(reports), str(exc))
        return ScanResult(checker, tuple(reports))

    with ProcessPoolExecutor(max_workers=max_workers) as executor:
        futures = [executor.submit(run_checker, checker, ifs, b, **options) for b in b_list]
        for future in futures:
            try:
                reports.append(future.result())
            except BudgetExceededError as exc:
                for pending in futures:
                    pending.cancel()
                return ScanResult(checker, tuple(reports), str(exc))
    return ScanResult(checker, tuple(reports))
