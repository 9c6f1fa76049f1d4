"""Tests for interval-set geometry, covers and difference classes."""
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from attractor_geom import (
    DiffClass,
    IntervalSet,
    classes_distinct,
    classify_differences,
    cover,
    diff_classes,
    diff_cover,
    hausdorff,
    local_class_count,
    local_class_counts,
    point_at,
    refined_cover,
    sample_diff_points,
    sample_points,
)
from cantor import make_asymmetric, make_symmetric
from errors import DomainError, UnsupportedOrientationError
from ifs_core import Similarity1D, make_ifs

F = Fraction


@st.composite
def interval_sets(draw, max_intervals=4, span=24):
    """Small unions of closed intervals with quarter-integer endpoints."""
    count = draw(st.integers(min_value=1, max_value=max_intervals))
    pieces = []
    for _ in range(count):
        lo = draw(st.integers(min_value=0, max_value=span))
        width = draw(st.integers(min_value=0, max_value=6))
        pieces.append((F(lo, 4), F(lo + width, 4)))
    return IntervalSet.from_intervals(pieces)


def halves_ifs():
    return make_ifs([Similarity1D(F(1, 2)), Similarity1D(F(1, 2), 1, F(1, 2))])


def full_interval_three_maps():
    # K = [0, 1] with unequal ratios and no reflection symmetry
    return make_ifs([
        Similarity1D(F(1, 2)),
        Similarity1D(F(1, 4), 1, F(1, 2)),
        Similarity1D(F(1, 4), 1, F(3, 4)),
    ])


def mirrored_three_maps():
    return make_ifs([
        Similarity1D(F(1, 4)),
        Similarity1D(F(1, 8), 1, F(7, 16)),
        Similarity1D(F(1, 4), 1, F(3, 4)),
    ])


def test_from_intervals_merges_overlaps():
    x = IntervalSet.from_intervals([(F(3), F(4)), (F(0), F(1)), (F(1, 2), F(2))])
    assert x.intervals == ((0, 2), (3, 4))
    with pytest.raises(DomainError):
        IntervalSet.from_intervals([(F(1), F(0))])


@given(x=interval_sets(), y=interval_sets())
@settings(max_examples=200, deadline=None)
def test_normalization_is_idempotent(x, y):
    assert IntervalSet.from_intervals(x.intervals) == x
    assert IntervalSet.from_intervals(x.intervals + x.intervals) == x
    merged = IntervalSet.from_intervals(x.intervals + y.intervals)
    assert merged == IntervalSet.from_intervals(y.intervals + x.intervals)
    assert merged.contains(x) and merged.contains(y)


def test_interval_set_queries():
    x = IntervalSet.from_intervals([(F(0), F(1)), (F(2), F(3))])
    assert x.meets(F(1), F(3, 2))
    assert not x.meets(F(5, 4), F(7, 4))
    assert x.contains_point(F(2))
    assert x.distance_to(F(3, 2)) == F(1, 2)
    assert x.clip(F(1, 2), F(5, 2)).intervals == ((F(1, 2), 1), (2, F(5, 2)))
    assert x.contains(IntervalSet.from_intervals([(F(1, 4), F(1, 2)), (F(2), F(3))]))
    assert not x.contains(IntervalSet.from_intervals([(F(1, 2), F(5, 2))]))
    assert x.affine(F(-1), F(0)).intervals == ((-3, -2), (-1, 0))


def test_cover_first_level(middle_third):
    assert cover(middle_third, F(1, 3)).intervals == ((0, F(1, 3)), (F(2, 3), 1))


def test_cover_just_below_one(middle_third):
    assert cover(middle_third, F(99, 100)).intervals == ((0, F(1, 3)), (F(2, 3), 1))


def test_cover_of_overlapping_images_is_one_interval():
    for k in range(1, 6):
        assert cover(halves_ifs(), F(1, 2 ** k)).intervals == ((0, 1),)


@given(k=st.integers(min_value=1, max_value=5), extra=st.integers(min_value=1, max_value=3))
@settings(max_examples=20, deadline=None)
def test_cover_refinement(k, extra):
    ifs = make_asymmetric(F(1, 9), F(1, 3))
    b, finer = F(1, 3 ** k), F(1, 3 ** (k + extra))
    coarse, fine = cover(ifs, b), cover(ifs, finer)
    assert coarse.contains(fine)
    assert hausdorff(coarse, fine) <= b * ifs.diameter


@given(k=st.integers(min_value=1, max_value=4), extra=st.integers(min_value=1, max_value=2))
@settings(max_examples=12, deadline=None)
def test_diff_cover_refinement(k, extra):
    ifs = make_symmetric(F(1, 4))
    b, finer = F(1, 4 ** k), F(1, 4 ** (k + extra))
    coarse, fine = diff_cover(ifs, b), diff_cover(ifs, finer)
    assert coarse.contains(fine)
    assert hausdorff(coarse, fine) <= 2 * b * ifs.diameter


def test_point_at(middle_third):
    for k in (1, 4, 7):
        code = point_at(middle_third, (1,) * k)
        assert (code.value, code.error_bound) == (0, F(1, 3 ** k))
    code = point_at(middle_third, (2,))
    assert (code.value, code.error_bound) == (F(2, 3), F(1, 3))
    code = point_at(middle_third, (2, 2))
    assert (code.value, code.error_bound) == (F(8, 9), F(1, 9))
    with pytest.raises(DomainError):
        point_at(middle_third, ())


def test_sample_points_lie_in_fine_cover(middle_quarter):
    fine = cover(middle_quarter, F(1, 4 ** 8))
    points = sample_points(middle_quarter, 40, depth=12, seed=3)
    assert points == sample_points(middle_quarter, 40, depth=12, seed=3)
    assert all(fine.contains_point(x) for x in points)
    diffs = sample_diff_points(middle_quarter, 40, depth=12, seed=3)
    assert all(diff_cover(middle_quarter, F(1, 4 ** 4)).contains_point(z) for z in diffs)


def test_diff_classes_middle_third(middle_third):
    classes = diff_classes(middle_third, F(1, 3))
    assert classes == [DiffClass(F(1, 3), F(1, 3), dq) for dq in (F(-2, 3), F(0), F(2, 3))]


def test_diff_classes_middle_quarter(middle_quarter):
    classes = diff_classes(middle_quarter, F(1, 4))
    assert [c.delta_q for c in classes] == [F(-3, 4), 0, F(3, 4)]


def test_diff_classes_reject_reversing_maps():
    ifs = make_ifs([
        Similarity1D(F(1, 3)),
        Similarity1D(F(1, 3), -1, F(1, 3)),
        Similarity1D(F(1, 3), 1, F(2, 3)),
    ])
    with pytest.raises(UnsupportedOrientationError):
        diff_classes(ifs, F(1, 3))


def test_reflection_merges_mirrored_classes():
    ifs = mirrored_three_maps()
    assert ifs.symmetric
    found = classify_differences(ifs, F(1, 4))
    assert len(found.classes) == 6
    assert all(c.c_plus >= c.c_minus for c in found.classes)
    assert not found.undetermined


def test_equal_sets_with_different_tuples_are_undetermined():
    ifs = full_interval_three_maps()
    found = classify_differences(ifs, F(1, 4), merge_depth=3)
    assert found.undetermined
    for i, j in found.undetermined:
        first, second = found.classes[i], found.classes[j]
        assert first != second
        assert first.interval(ifs.hull) == second.interval(ifs.hull)


def test_classes_distinct_certifies_separated_classes(middle_third):
    first = DiffClass(F(1, 9), F(1, 9), F(0))
    second = DiffClass(F(1, 9), F(1, 9), F(2, 9))
    assert classes_distinct(middle_third, first, second, max_depth=3)
    assert not classes_distinct(middle_third, first, first, max_depth=3)


def test_diff_cover_examples(middle_third, middle_quarter):
    assert diff_cover(middle_third, F(1, 3)).intervals == ((-1, 1),)
    assert diff_cover(middle_quarter, F(1, 4)).intervals == (
        (-1, F(-1, 2)),
        (F(-1, 4), F(1, 4)),
        (F(1, 2), 1),
    )
    assert diff_cover(middle_third, F(99, 100)).intervals == ((-1, 1),)


def test_hausdorff_examples():
    unit = IntervalSet.from_intervals([(F(0), F(1))])
    assert hausdorff(unit, unit) == 0
    gapped = IntervalSet.from_intervals([(F(0), F(1, 3)), (F(2, 3), F(1))])
    assert hausdorff(gapped, unit) == F(1, 6)
    assert hausdorff(IntervalSet.point(F(0)), IntervalSet.point(F(1))) == 1
    with pytest.raises(DomainError):
        hausdorff(IntervalSet(), unit)


def _grid_hausdorff(a, b, steps=16):
    # farthest distances sampled on a 1/16 grid
    def directed(x, y):
        best = 0
        for lo, hi in x:
            n = int((hi - lo) * steps)
            for k in range(n + 1):
                best = max(best, y.distance_to(lo + F(k, steps)))
        return best

    return max(directed(a, b), directed(b, a))


@given(a=interval_sets(), b=interval_sets())
@settings(max_examples=500, deadline=None)
def test_hausdorff_symmetry_and_identity(a, b):
    assert hausdorff(a, a) == 0
    assert hausdorff(a, b) == hausdorff(b, a)
    assert hausdorff(a, b) >= 0


@given(a=interval_sets(), b=interval_sets(), c=interval_sets())
@settings(max_examples=500, deadline=None)
def test_hausdorff_triangle_inequality(a, b, c):
    assert hausdorff(a, c) <= hausdorff(a, b) + hausdorff(b, c)


@given(a=interval_sets(), b=interval_sets())
@settings(max_examples=100, deadline=None)
def test_hausdorff_matches_grid_oracle(a, b):
    # quarter-integer endpoints put every farthest point on the 1/8 grid
    assert hausdorff(a, b) == _grid_hausdorff(a, b)


def test_local_class_count_examples(middle_third, middle_quarter):
    assert local_class_count(middle_third, F(0), F(1, 3)) == 3
    assert local_class_count(middle_quarter, F(0), F(1, 4)) == 1
    assert local_class_count(middle_third, F(0), F(1, 3), pieces=True) == 1


def test_local_class_count_with_refined_pieces(middle_third):
    # depth-2 covers inside each piece still meet the ball
    assert local_class_count(middle_third, F(0), F(1, 3), pieces=True, depth=2) == 1
    assert refined_cover(middle_third, 0).intervals == ((0, 1),)


@pytest.mark.parametrize("lam, bound", [(F(1, 3), 3), (F(1, 4), 1)])
def test_local_class_count_is_uniform_in_scale(lam, bound, expected):
    ifs = make_symmetric(lam)
    centers = [F(0)] + sample_diff_points(ifs, 99, depth=12, seed=0)
    maxima = [max(local_class_counts(ifs, centers, lam ** k)) for k in range(1, 8)]
    assert maxima == [bound] * 7
    assert all(later <= earlier for earlier, later in zip(maxima, maxima[1:]))
    key = "middle_third" if lam == F(1, 3) else "middle_quarter"
    assert bound == expected["local_class_count_max"][key]
