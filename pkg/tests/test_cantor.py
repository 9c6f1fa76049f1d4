"""Tests for Cantor constructors and the sign-uniform rewriting certificates."""
import random
from fractions import Fraction

import pytest

from cantor import (
    BlockCoeffMatrix,
    CoeffVector,
    SymmetricParams,
    closed_form_golden_dim,
    common_base,
    golden_family,
    make_asymmetric,
    make_symmetric,
    min_nonzero_gap,
    params_ifs,
    rewrite_sign_uniform,
    rewrite_two_level,
    theoretical_eps_bound,
)
from errors import DomainError, PreconditionError

F = Fraction


def _maps(ifs):
    return [(f.ratio, f.translation) for f in ifs.maps]


def _sign_uniform(values, total):
    if total > 0:
        return all(v >= 0 for v in values)
    if total < 0:
        return all(v <= 0 for v in values)
    return all(v == 0 for v in values)


def test_make_symmetric():
    assert _maps(make_symmetric(F(1, 3))) == [(F(1, 3), 0), (F(1, 3), F(2, 3))]
    assert _maps(make_symmetric(F(1, 4))) == [(F(1, 4), 0), (F(1, 4), F(3, 4))]
    with pytest.raises(DomainError):
        make_symmetric(F(1, 2))


def test_make_asymmetric():
    assert _maps(make_asymmetric(F(1, 9), F(1, 3))) == [(F(1, 9), 0), (F(1, 3), F(2, 3))]
    with pytest.raises(DomainError):
        make_asymmetric(F(1, 2), F(1, 2))


def test_common_base_eligibility():
    params = common_base(F(1, 5), 2, 1)
    assert (params.c1, params.c2, params.eligible) == (F(1, 25), F(1, 5), True)
    assert not common_base(F(1, 2), 3, 2).eligible
    assert not common_base(F(1, 3), 2, 1).eligible
    relaxed = common_base(F(3, 10), 2, 1, relaxed=True)
    assert relaxed.eligible
    assert not common_base(F(3, 10), 2, 1).eligible
    with pytest.raises(PreconditionError):
        common_base(F(1, 5), 1, 2)
    with pytest.raises(PreconditionError):
        common_base(F(1, 5), 2, 2)


def test_golden_family_and_params_ifs():
    ifs = golden_family(F(1, 5), 1)
    assert ifs.ratios == (F(1, 25), F(1, 5))
    assert _maps(params_ifs(common_base(F(1, 5), 2, 1))) == _maps(ifs)
    assert _maps(params_ifs(SymmetricParams(F(1, 4)))) == _maps(make_symmetric(F(1, 4)))
    assert SymmetricParams(F(1, 4)).wsd_eligible
    assert not SymmetricParams(F(1, 3)).wsd_eligible


def test_rewrite_examples():
    out = rewrite_sign_uniform(CoeffVector((F(1), F(-2)), F(1, 4)))
    assert out.coeffs == (0, 2)
    assert out.borrowed == (1,)
    assert out.value == F(1, 2)

    out = rewrite_sign_uniform(CoeffVector((F(-1), F(1)), F(1, 4)))
    assert out.coeffs == (0, -3)
    assert out.value == F(-3, 4)

    unchanged = CoeffVector((F(2), F(0), F(1)), F(1, 5))
    assert rewrite_sign_uniform(unchanged).coeffs == unchanged.coeffs


def test_rewrite_preconditions():
    with pytest.raises(PreconditionError):
        rewrite_sign_uniform(CoeffVector((F(1), F(-1)), F(1, 3)))
    with pytest.raises(DomainError):
        rewrite_sign_uniform(CoeffVector((F(3),), F(1, 4)))
    with pytest.raises(PreconditionError):
        rewrite_two_level(BlockCoeffMatrix(((F(1),),), F(1, 3), 2, 1))


def test_rewrite_random_vectors():
    rng = random.Random(2024)
    for _ in range(10 ** 4):
        lam = rng.choice([F(1, 4), F(1, 5)])
        coeffs = tuple(F(rng.randint(-2, 2)) for _ in range(rng.randint(1, 12)))
        original = CoeffVector(coeffs, lam)
        out = rewrite_sign_uniform(original)
        assert out.value == original.value
        assert _sign_uniform(out.coeffs, out.value)
        assert not out.settled
        for i, a in enumerate(out.coeffs):
            if i in out.borrowed:
                assert abs(a) >= 1 / lam - 3
            elif a:
                assert abs(a) >= 1


def _random_matrix(rng, c, p1, p2):
    width = rng.randint(1, 3)
    rows = tuple(
        tuple(F(rng.randint(-2, 2)) for _ in range(width))
        for _ in range(rng.randint(1, 4))
    )
    return BlockCoeffMatrix(rows, c, p1, p2)


@pytest.mark.parametrize("c, p1, p2, relaxed", [(F(1, 5), 2, 1, False), (F(3, 10), 2, 1, True)])
def test_rewrite_random_block_matrices(c, p1, p2, relaxed):
    rng = random.Random(17)
    for _ in range(500):
        original = _random_matrix(rng, c, p1, p2)
        out = rewrite_two_level(original, relaxed=relaxed)
        beta, lam = out.outer_base, out.inner_base
        assert out.value == original.value
        assert _sign_uniform([a for row in out.rows for a in row], out.value)
        for i, block in enumerate(out.block_values):
            if i in out.borrowed and i not in out.settled:
                assert abs(block) > 1 / beta - 4
        for i, j in out.inner_borrowed:
            if (i, j) not in out.inner_settled:
                assert abs(out.rows[i][j]) >= 1 / lam - 3


def test_two_level_borrow_on_negative_block():
    # value > 0 with a negative second block forces a block-level borrow
    m = BlockCoeffMatrix(((F(1), F(0)), (F(-1), F(-2))), F(1, 5), 2, 1)
    assert m.value > 0
    out = rewrite_two_level(m)
    assert out.borrowed == (1,)
    assert out.value == m.value
    assert all(a >= 0 for row in out.rows for a in row)


def test_theoretical_eps_bound(expected):
    assert theoretical_eps_bound(SymmetricParams(F(1, 4))) == F(expected["wsd_floor"]["symmetric_1_4"])
    with pytest.raises(PreconditionError):
        theoretical_eps_bound(SymmetricParams(F(1, 3)))
    bound = theoretical_eps_bound(common_base(F(1, 5), 2, 1))
    assert bound == F(expected["wsd_floor"]["common_base_1_5_2_1"])
    with pytest.raises(PreconditionError):
        theoretical_eps_bound(common_base(F(1, 3), 2, 1))


def test_closed_form_golden_dim():
    assert closed_form_golden_dim(F(1, 5), 1) == pytest.approx(0.298994, abs=1e-6)
    assert closed_form_golden_dim(F(1, 5), 2) == pytest.approx(closed_form_golden_dim(F(1, 25), 1))
    with pytest.raises(DomainError):
        closed_form_golden_dim(F(1), 1)


def test_exhaustive_gap_bound():
    lam = F(1, 4)
    gap = min_nonzero_gap(lam, 6)
    assert (1 - lam) * gap >= (1 - lam) * (1 / lam - 3) * lam ** 5
    assert gap == lam ** 5
