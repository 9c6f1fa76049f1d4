"""Tests for the separation checkers and multi-scale scans."""
import random
from fractions import Fraction

import pytest

from attractor_geom import cover
from cantor import make_asymmetric, make_symmetric
from errors import DomainError
from separation import (
    BRUTE_FORCE_LIMIT,
    COMPLETE,
    FAIL,
    PASS,
    UNDETERMINED,
    TestPoints,
    affine_deviation,
    closest_pair_linf,
    net_points,
    points_from_words,
    scan_scales,
    wsd_hausdorff_report,
    wsd_report,
    wsp_min_separation,
)
from ifs_core import Similarity1D, make_ifs, scale_cut

F = Fraction


def _irrational_pair():
    return make_asymmetric(0.2, 0.3)


def test_wsp_examples(middle_third, middle_quarter, expected):
    report = wsp_min_separation(middle_third, F(1, 3))
    assert report.eps_star == F(expected["wsp_eps_star"]["middle_third_b_1_3"])
    assert set(report.witness) == {(1,), (2,)}
    assert wsp_min_separation(middle_quarter, F(1, 4)).eps_star == F(expected["wsp_eps_star"]["middle_quarter_b_1_4"])


def test_wsp_excludes_equal_maps():
    # f2 o f2 and f3 are the same map
    ifs = make_ifs([
        Similarity1D(F(1, 2)),
        Similarity1D(F(1, 2), 1, F(1, 2)),
        Similarity1D(F(1, 4), 1, F(3, 4)),
    ])
    report = wsp_min_separation(ifs, F(1, 4))
    assert report.word_count == 7
    assert report.class_count == 6
    assert report.eps_star == F(1, 2)


def test_affine_deviation_matches_dense_grid():
    rng = random.Random(7)
    grid = [k / 2000 for k in range(2001)]
    for _ in range(100):
        slope = rng.uniform(-3.0, 3.0)
        intercept = rng.uniform(-2.0, 2.0)
        dense = max(abs(slope * x + intercept - x) for x in grid)
        assert affine_deviation(slope, intercept, 0.0, 1.0) == pytest.approx(dense, abs=1e-9)


def test_wsd_example(middle_quarter, expected):
    report = wsd_report(middle_quarter, F(1, 4), TestPoints((F(0), F(1))))
    assert report.eps_star == F(expected["wsd_eps_star"]["middle_quarter_b_1_4"])
    assert report.class_count == 3
    assert report.verdict == COMPLETE


@pytest.mark.parametrize("lam", [F(1, 4), F(1, 5)])
def test_symmetric_wsd_floor(lam, expected):
    floor = (1 - lam) * (1 / lam - 3)
    key = "symmetric_1_4" if lam == F(1, 4) else "symmetric_1_5"
    assert floor == F(expected["wsd_floor"][key])
    ifs = make_symmetric(lam)
    for k in range(1, 8):
        report = wsd_report(ifs, lam ** k, threshold=floor)
        assert report.eps_star >= floor
        assert report.verdict == PASS


def test_common_base_wsd_floor(common_base_pair, expected):
    floor = F(expected["wsd_floor"]["common_base_1_5_2_1"])
    for k in range(1, 7):
        report = wsd_report(common_base_pair, F(1, 5 ** k), threshold=floor)
        assert report.eps_star >= floor, k


def test_irrational_pair_drops_below_common_base_floor(common_base_pair):
    irrational = scan_scales(_irrational_pair(), [F(1, 10 ** k) for k in range(1, 5)])
    rational = scan_scales(common_base_pair, [F(1, 5 ** k) for k in range(1, 7)])
    assert irrational.complete and rational.complete
    assert irrational.min_eps() < F(4, 25)
    assert irrational.min_eps() < rational.min_eps()


def test_wsd_threshold_verdicts(middle_quarter):
    assert wsd_report(middle_quarter, F(1, 4), threshold=F(3)).verdict == PASS
    assert wsd_report(middle_quarter, F(1, 4), threshold=F(4)).verdict == FAIL


def test_wsd_reports_undetermined_classes():
    ifs = make_ifs([
        Similarity1D(F(1, 2)),
        Similarity1D(F(1, 4), 1, F(1, 2)),
        Similarity1D(F(1, 4), 1, F(3, 4)),
    ])
    report = wsd_report(ifs, F(1, 4), threshold=F(1, 100), merge_depth=2)
    assert report.verdict == UNDETERMINED
    assert report.undetermined_pairs > 0


def test_wsd_hausdorff_depth_zero(middle_quarter, expected):
    report = wsd_hausdorff_report(middle_quarter, F(1, 4), depth=0)
    assert report.eps_star == F(expected["hausdorff_eps_star"]["middle_quarter_b_1_4_depth_0"])
    assert report.refinement_error == 4


def test_wsd_hausdorff_refinement_error_bounds_depth_change(middle_quarter):
    reports = [wsd_hausdorff_report(middle_quarter, F(1, 16), depth=d) for d in range(4)]
    for coarse, fine in zip(reports, reports[1:]):
        assert abs(coarse.eps_star - fine.eps_star) <= coarse.refinement_error + fine.refinement_error
        assert fine.refinement_error < coarse.refinement_error


@pytest.mark.parametrize("ifs_name, b", [("middle_quarter", F(1, 4)), ("common_base_pair", F(1, 25))])
def test_hausdorff_gap_carries_over_to_a_fine_net(ifs_name, b, request):
    # class values move by at most 2*spacing (normalized) across a net
    ifs = request.getfixturevalue(ifs_name)
    refined = wsd_hausdorff_report(ifs, b, depth=3)
    zeta = refined.eps_star - refined.refinement_error
    if ifs_name == "middle_quarter":
        assert zeta > 0
    if zeta > 0:
        report = wsd_report(ifs, b, net_points(ifs, zeta / 4))
        assert report.eps_star >= zeta / 2


def test_raw_gap_is_fixed_while_the_cut_is(middle_quarter):
    scales = [F(1, 16), F(1, 10), F(3, 16), F(1, 5)]
    cuts = {scale_cut(middle_quarter, b).words for b in scales}
    assert len(cuts) == 1
    reports = [wsd_report(middle_quarter, b) for b in scales]
    assert {r.eps_star * r.b for r in reports} == {F(3, 16)}
    assert len({r.eps_star for r in reports}) == len(scales)


def _brute_closest(vectors):
    best = None
    for i in range(len(vectors)):
        for j in range(i + 1, len(vectors)):
            d = max(abs(a - b) for a, b in zip(vectors[i], vectors[j]))
            best = d if best is None or d < best else best
    return best


@pytest.mark.parametrize("n", [2, 17, BRUTE_FORCE_LIMIT + 1, 400])
def test_closest_pair_matches_brute_force(n):
    rng = random.Random(n)
    vectors = [tuple(F(rng.randint(-500, 500), 7) for _ in range(4)) for _ in range(n)]
    i, j, gap = closest_pair_linf(vectors)
    assert i < j
    assert gap == _brute_closest(vectors)
    assert gap == max(abs(a - b) for a, b in zip(vectors[i], vectors[j]))


def test_closest_pair_needs_two_vectors():
    assert closest_pair_linf([(F(1),)]) is None


def test_net_points_cover_k(middle_third):
    spacing = F(1, 27)
    net = net_points(middle_third, spacing)
    fine = cover(middle_third, F(1, 3 ** 6))
    for lo, hi in fine:
        for x in (lo, hi):
            assert min(abs(x - p) for p in net.points) <= spacing


def test_points_from_words(middle_third):
    pts = points_from_words(middle_third, [(1,), (2, 2)])
    assert pts.points == (0, F(8, 9))
    with pytest.raises(DomainError):
        TestPoints(())


def test_scan_rejects_unordered_scales(middle_third):
    with pytest.raises(DomainError):
        scan_scales(middle_third, [F(1, 9), F(1, 3)])
    with pytest.raises(DomainError):
        scan_scales(middle_third, [F(1, 3)], checker="wsx")


def test_scan_stops_at_budget(middle_third):
    result = scan_scales(middle_third, [F(1, 3), F(1, 27), F(1, 3 ** 10)], budget=100)
    assert not result.complete
    assert len(result.reports) == 2
    assert "100" in result.budget_error


def test_scan_across_processes_matches_serial(middle_quarter):
    scales = [F(1, 4 ** k) for k in range(1, 4)]
    serial = scan_scales(middle_quarter, scales, checker="wsd_hausdorff", depth=1)
    pooled = scan_scales(middle_quarter, scales, checker="wsd-hausdorff", depth=1, max_workers=2)
    assert pooled.reports == serial.reports
