"""
Interval-union geometry of an attractor K and its difference set K - K.

Covers are finite unions of closed intervals built from cut-word images of
the hull. Difference classes are the sets f_a(K) - f_b(K), stored as
(c_plus, c_minus, delta_q) with f_a(K) - f_b(K) = c_plus*K - c_minus*K + delta_q.
"""
import random
from bisect import bisect_left, bisect_right
from collections import defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from errors import DomainError, UnsupportedOrientationError
from ifs_core import (
    FLOAT,
    IFS1D,
    Scalar,
    Word,
    check_scale,
    compose,
    scale_cut,
    to_scalar,
)

Interval = Tuple[Scalar, Scalar]

DEFAULT_MERGE_DEPTH = 6
FLOAT_MERGE_RTOL = 1e-12


@dataclass(frozen=True)
class IntervalSet:
    """Sorted, disjoint, merged closed intervals. Build with ``from_intervals``."""

    intervals: Tuple[Interval, ...] = ()

    @classmethod
    def from_intervals(cls, items: Iterable[Interval]) -> "IntervalSet":
        """Sort and merge overlapping or touching intervals into canonical form."""
        ordered = sorted(items)
        merged: List[List[Scalar]] = []
        for lo, hi in ordered:
            if lo > hi:
                raise DomainError(f"interval with lo > hi: [{lo}, {hi}]")
            if merged and lo <= merged[-1][1]:
                if hi > merged[-1][1]:
                    merged[-1][1] = hi
            else:
                merged.append([lo, hi])
        return cls(tuple((lo, hi) for lo, hi in merged))

    @classmethod
    def point(cls, x: Scalar) -> "IntervalSet":
        return cls(((x, x),))

    def __len__(self) -> int:
        return len(self.intervals)

    def __iter__(self):
        return iter(self.intervals)

    def __bool__(self) -> bool:
        return bool(self.intervals)

    @property
    def lo(self) -> Scalar:
        return self.intervals[0][0]

    @property
    def hi(self) -> Scalar:
        return self.intervals[-1][1]

    @property
    def diameter(self) -> Scalar:
        return self.hi - self.lo

    def _los(self) -> List[Scalar]:
        return [lo for lo, _ in self.intervals]

    def distance_to(self, x: Scalar) -> Scalar:
        """Distance from x to the set (0 inside)."""
        if not self.intervals:
            raise DomainError("distance to an empty interval set")
        idx = bisect_right(self._los(), x) - 1
        best = None
        if idx >= 0:
            lo, hi = self.intervals[idx]
            if x <= hi:
                return x - x
            best = x - hi
        if idx + 1 < len(self.intervals):
            gap = self.intervals[idx + 1][0] - x
            best = gap if best is None or gap < best else best
        return best

    def contains_point(self, x: Scalar) -> bool:
        """True when x lies in one of the closed intervals."""
        return bool(self.intervals) and self.distance_to(x) == 0

    def meets(self, lo: Scalar, hi: Scalar) -> bool:
        """Closed intersection test against [lo, hi]."""
        if not self.intervals or hi < lo:
            return False
        idx = bisect_right(self._los(), hi) - 1
        return idx >= 0 and self.intervals[idx][1] >= lo

    def clip(self, lo: Scalar, hi: Scalar) -> "IntervalSet":
        """Intersection with [lo, hi]."""
        kept = []
        for a, b in self.intervals:
            if b < lo or a > hi:
                continue
            kept.append((max(a, lo), min(b, hi)))
        return IntervalSet(tuple(kept))

    def contains(self, other: "IntervalSet") -> bool:
        """Point-set inclusion other <= self."""
        los = self._los()
        for a, b in other.intervals:
            idx = bisect_right(los, a) - 1
            if idx < 0 or self.intervals[idx][1] < b:
                return False
        return True

    def affine(self, scale: Scalar, shift: Scalar) -> "IntervalSet":
        """Image under x -> scale*x + shift."""
        images = []
        for a, b in self.intervals:
            x, y = scale * a + shift, scale * b + shift
            images.append((x, y) if x <= y else (y, x))
        return IntervalSet.from_intervals(images)

    def minkowski_sum(self, other: "IntervalSet") -> "IntervalSet":
        """Pairwise interval sums, merged."""
        return IntervalSet.from_intervals(
            (a + c, b + d) for a, b in self.intervals for c, d in other.intervals
        )

    def minkowski_difference(self, other: "IntervalSet") -> "IntervalSet":
        return self.minkowski_sum(other.affine(-1, 0))


def hausdorff(a: IntervalSet, b: IntervalSet) -> Scalar:
    """Exact Hausdorff distance between two nonempty interval unions."""
    if not a or not b:
        raise DomainError("Hausdorff distance needs nonempty operands")
    return max(_directed_hausdorff(a, b), _directed_hausdorff(b, a))


def _directed_hausdorff(a: IntervalSet, b: IntervalSet) -> Scalar:
    # sup over a of dist(., b) sits at an endpoint of a or at a gap midpoint of b
    candidates = [x for interval in a.intervals for x in interval]
    for (_, left), (right, _) in zip(b.intervals, b.intervals[1:]):
        mid = (left + right) / 2
        if a.contains_point(mid):
            candidates.append(mid)
    return max(b.distance_to(x) for x in candidates)


def hull_set(ifs: IFS1D) -> IntervalSet:
    """The hull of K as a one-interval set."""
    return IntervalSet((ifs.hull,))


def cover(ifs: IFS1D, b: Scalar, budget: Optional[int] = None) -> IntervalSet:
    """Union of f_a(hull) over the scale cut at b."""
    lo, hi = ifs.hull
    cut = scale_cut(ifs, b, budget=budget)
    return IntervalSet.from_intervals(f.image(lo, hi) for f in cut.maps)


def refined_cover(ifs: IFS1D, depth: int, budget: Optional[int] = None) -> IntervalSet:
    """Cover at scale cmax**depth; the hull itself at depth 0."""
    if depth < 0:
        raise DomainError(f"refinement depth must be >= 0, got {depth}")
    if depth == 0:
        return hull_set(ifs)
    return cover(ifs, ifs.cmax ** depth, budget=budget)


@dataclass(frozen=True)
class PointCode:
    word: Word
    value: Scalar
    error_bound: Scalar


def point_at(ifs: IFS1D, word: Word) -> PointCode:
    """f_word(hull lo), a point of K, with |f_word(K)| as its error bound."""
    if not word:
        raise DomainError("point_at needs a nonempty word")
    f = compose(ifs, word)
    return PointCode(word=tuple(word), value=f.apply(ifs.hull[0]), error_bound=f.ratio * ifs.diameter)


def sample_points(ifs: IFS1D, count: int, depth: int, seed: int = 0) -> List[Scalar]:
    """Points of K at the images of the left hull endpoint under random words."""
    rng = random.Random(seed)
    return [
        point_at(ifs, tuple(rng.randint(1, ifs.size) for _ in range(depth))).value
        for _ in range(count)
    ]


def sample_diff_points(ifs: IFS1D, count: int, depth: int, seed: int = 0) -> List[Scalar]:
    """Differences of two independent samples of K, so points of K-K."""
    left = sample_points(ifs, count, depth, seed)
    right = sample_points(ifs, count, depth, seed + 1)
    return [x - y for x, y in zip(left, right)]


@dataclass(frozen=True, order=True)
class DiffClass:
    c_plus: Scalar
    c_minus: Scalar
    delta_q: Scalar

    def value(self, x: Scalar, y: Scalar) -> Scalar:
        return self.c_plus * x - self.c_minus * y + self.delta_q

    def interval(self, hull: Interval) -> Interval:
        lo, hi = hull
        return (self.value(lo, hi), self.value(hi, lo))

    def refined(self, base: IntervalSet) -> IntervalSet:
        """c_plus*base - c_minus*base + delta_q."""
        return base.affine(self.c_plus, self.delta_q).minkowski_sum(base.affine(-self.c_minus, 0))


@dataclass(frozen=True)
class DiffClassSet:
    b: Scalar
    word_count: int
    classes: Tuple[DiffClass, ...]
    # index pairs into classes whose equality could not be decided
    undetermined: Tuple[Tuple[int, int], ...] = ()


def _require_orientation(ifs: IFS1D) -> None:
    if not ifs.orientation_preserving:
        raise UnsupportedOrientationError("difference classes need orientation-preserving maps")


def _reflect(cls: DiffClass, total: Scalar) -> DiffClass:
    # K = total - K gives c1*K - c2*K = c2*K - c1*K + (c1 - c2)*total
    if cls.c_plus >= cls.c_minus:
        return cls
    return DiffClass(cls.c_minus, cls.c_plus, cls.delta_q + (cls.c_plus - cls.c_minus) * total)


def _merge_float_translations(classes: Iterable[DiffClass], tol: float) -> List[DiffClass]:
    groups: Dict[Tuple[Scalar, Scalar], List[Scalar]] = defaultdict(list)
    for cls in classes:
        groups[(cls.c_plus, cls.c_minus)].append(cls.delta_q)
    merged = []
    for (c_plus, c_minus), shifts in groups.items():
        shifts.sort()
        anchor = None
        for q in shifts:
            if anchor is None or q - anchor > tol:
                anchor = q
                merged.append(DiffClass(c_plus, c_minus, q))
    return merged


def classes_distinct(
    ifs: IFS1D,
    first: DiffClass,
    second: DiffClass,
    max_depth: int,
    covers: Optional[Dict[int, IntervalSet]] = None,
) -> bool:
    """True once refined covers certify the two class sets differ."""
    covers = {} if covers is None else covers
    for depth in range(1, max_depth + 1):
        if depth not in covers:
            covers[depth] = refined_cover(ifs, depth)
        base = covers[depth]
        gap = hausdorff(first.refined(base), second.refined(base))
        slack = (first.c_plus + first.c_minus + second.c_plus + second.c_minus) * ifs.cmax ** depth * ifs.diameter
        if gap > slack:
            return True
    return False


def classify_differences(
    ifs: IFS1D,
    b: Scalar,
    budget: Optional[int] = None,
    merge_depth: int = DEFAULT_MERGE_DEPTH,
    resolve: bool = True,
) -> DiffClassSet:
    """Canonical classes of f_a(K) - f_b(K) over the scale cut at b.

    Tuple equality merges first, then reflection when the IFS is symmetric,
    then (with ``resolve``) classes whose hull intervals coincide are checked
    on refined covers; pairs that stay unresolved are listed as undetermined.
    """
    _require_orientation(ifs)
    check_scale(b)
    cut = scale_cut(ifs, b, budget=budget)
    pieces = sorted(set((f.ratio, f.translation) for f in cut.maps))

    raw = set()
    for c_a, q_a in pieces:
        for c_b, q_b in pieces:
            raw.add(DiffClass(c_a, c_b, q_a - q_b))

    if ifs.symmetric:
        total = ifs.hull[0] + ifs.hull[1]
        raw = set(_reflect(cls, total) for cls in raw)

    if ifs.mode == FLOAT:
        classes = sorted(_merge_float_translations(raw, FLOAT_MERGE_RTOL * float(ifs.diameter)))
    else:
        classes = sorted(raw)

    undetermined: List[Tuple[int, int]] = []
    if resolve:
        by_interval: Dict[Interval, List[int]] = defaultdict(list)
        for idx, cls in enumerate(classes):
            by_interval[cls.interval(ifs.hull)].append(idx)
        covers: Dict[int, IntervalSet] = {}
        for members in by_interval.values():
            for pos, i in enumerate(members):
                for j in members[pos + 1:]:
                    if not classes_distinct(ifs, classes[i], classes[j], merge_depth, covers):
                        undetermined.append((i, j))

    return DiffClassSet(
        b=to_scalar(b, ifs.mode),
        word_count=len(cut),
        classes=tuple(classes),
        undetermined=tuple(undetermined),
    )


def diff_classes(ifs: IFS1D, b: Scalar, budget: Optional[int] = None) -> List[DiffClass]:
    """Distinct difference classes at scale b, in sorted order."""
    return list(classify_differences(ifs, b, budget=budget).classes)


def diff_cover(ifs: IFS1D, b: Scalar, budget: Optional[int] = None) -> IntervalSet:
    """Union of class hull intervals, i.e. cover(b) - cover(b)."""
    _require_orientation(ifs)
    pieces = cover(ifs, b, budget=budget)
    return pieces.minkowski_difference(pieces)


def local_class_counts(
    ifs: IFS1D,
    centers: Sequence[Scalar],
    r: Scalar,
    pieces: bool = False,
    depth: int = 0,
    budget: Optional[int] = None,
) -> List[int]:
    """Per center z, how many classes (or K-pieces) meet the closed ball [z-r, z+r]."""
    check_scale(r)
    base = refined_cover(ifs, depth, budget=budget) if depth else None

    if pieces:
        cut = scale_cut(ifs, r, budget=budget)
        if base is None:
            sets = [IntervalSet((f.image(*ifs.hull),)) for f in cut.maps]
        else:
            sets = [base.affine(f.slope, f.translation) for f in cut.maps]
    else:
        found = classify_differences(ifs, r, budget=budget, resolve=False)
        if base is None:
            sets = [IntervalSet((cls.interval(ifs.hull),)) for cls in found.classes]
        else:
            sets = [cls.refined(base) for cls in found.classes]

    # a set meeting [lo, hi] starts in [lo - max_extent, hi]
    order = sorted(range(len(sets)), key=lambda i: sets[i].lo)
    los = [sets[i].lo for i in order]
    max_extent = max((s.diameter for s in sets), default=0)
    counts = []
    for z in centers:
        lo, hi = z - r, z + r
        start = bisect_left(los, lo - max_extent)
        stop = bisect_right(los, hi)
        counts.append(sum(1 for k in order[start:stop] if sets[k].meets(lo, hi)))
    return counts


def local_class_count(
    ifs: IFS1D,
    z: Scalar,
    r: Scalar,
    pieces: bool = False,
    depth: int = 0,
    budget: Optional[int] = None,
) -> int:
    """local_class_counts for a single center."""
    return local_class_counts(ifs, [z], r, pieces=pieces, depth=depth, budget=budget)[0]
