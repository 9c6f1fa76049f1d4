"""
Two-map Cantor systems and the sign-uniform rewriting certificates.

A difference of two cut translations of a middle-lambda Cantor set is
(1 - lambda) * sum a_i lambda^i with a_i in {-2, ..., 2}. Rewriting those
coefficients so they all share the sign of the sum (borrowing 1 from the
next coarser index whenever a deeper entry goes negative) shows the sum is
bounded away from zero. The asymmetric family with c1 = c^p1, c2 = c^p2 gets
the same treatment on blocks.
"""
import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import log, sqrt
from typing import List, Optional, Sequence, Tuple, Union

from errors import DomainError, PreconditionError
from ifs_core import IFS1D, Scalar, Similarity1D, make_ifs

ONE_THIRD = Fraction(1, 3)
ONE_QUARTER = Fraction(1, 4)
DIGITS = range(-2, 3)


@dataclass(frozen=True)
class SymmetricParams:
    lam: Fraction

    @property
    def wsd_eligible(self) -> bool:
        return self.lam < ONE_THIRD


@dataclass(frozen=True)
class AsymmetricParams:
    c1: Fraction
    c2: Fraction
    base: Optional[Fraction] = None
    p1: Optional[int] = None
    p2: Optional[int] = None
    eligible: bool = False
    relaxed: bool = False


def make_symmetric(lam: Scalar, mode: Optional[str] = None) -> IFS1D:
    """Middle-lambda Cantor set: x -> lambda*x and x -> lambda*x + 1 - lambda."""
    if not 0 < lam < Fraction(1, 2):
        raise DomainError(f"lambda must lie in (0, 1/2), got {lam}")
    return make_ifs([Similarity1D(lam, 1, 0 * lam), Similarity1D(lam, 1, 1 - lam)], mode=mode)


def make_asymmetric(c1: Scalar, c2: Scalar, mode: Optional[str] = None) -> IFS1D:
    """Two-map Cantor set with f1(x) = c1*x and f2(x) = c2*x + 1 - c2."""
    if not (0 < c1 < 1 and 0 < c2 < 1):
        raise DomainError(f"ratios must lie in (0,1), got {c1}, {c2}")
    if c1 + c2 >= 1:
        raise DomainError(f"ratios {c1} + {c2} >= 1: the two images overlap")
    return make_ifs([Similarity1D(c1, 1, 0 * c1), Similarity1D(c2, 1, 1 - c2)], mode=mode)


def common_base(c: Fraction, p1: int, p2: int, relaxed: bool = False) -> AsymmetricParams:
    """c1 = c^p1, c2 = c^p2 with p1 > p2 >= 1.

    Eligible when c^p2 < 1/4; with ``relaxed`` it is enough that c^p1 < 1/4
    and c^p2 < 1/3.
    """
    c = Fraction(c)
    if not 0 < c < 1:
        raise DomainError(f"base must lie in (0,1), got {c}")
    if not (isinstance(p1, int) and isinstance(p2, int)) or p2 < 1 or p1 <= p2:
        raise PreconditionError(f"exponents need p1 > p2 >= 1, got p1={p1}, p2={p2}")
    c1, c2 = c ** p1, c ** p2
    if relaxed:
        eligible = c1 < ONE_QUARTER and c2 < ONE_THIRD
    else:
        eligible = c2 < ONE_QUARTER
    return AsymmetricParams(c1=c1, c2=c2, base=c, p1=p1, p2=p2, eligible=eligible, relaxed=relaxed)


def golden_family(c: Scalar, p: int, mode: Optional[str] = None) -> IFS1D:
    """Asymmetric system with ratios (c^2p, c^p)."""
    return make_asymmetric(c ** (2 * p), c ** p, mode=mode)


def params_ifs(params: Union[SymmetricParams, AsymmetricParams], mode: Optional[str] = None) -> IFS1D:
    """The IFS described by symmetric or asymmetric parameters."""
    if isinstance(params, SymmetricParams):
        return make_symmetric(params.lam, mode)
    return make_asymmetric(params.c1, params.c2, mode)


@dataclass(frozen=True)
class CoeffVector:
    """sum a_i * base^i; ``borrowed``/``settled`` record how a rewrite produced it."""

    coeffs: Tuple[Fraction, ...]
    base: Fraction
    borrowed: Tuple[int, ...] = ()
    settled: Tuple[int, ...] = ()

    @property
    def value(self) -> Fraction:
        return _digits_value(self.coeffs, self.base)


@dataclass(frozen=True)
class BlockCoeffMatrix:
    rows: Tuple[Tuple[Fraction, ...], ...]
    c: Fraction
    p1: int
    p2: int
    borrowed: Tuple[int, ...] = ()
    settled: Tuple[int, ...] = ()
    inner_borrowed: Tuple[Tuple[int, int], ...] = ()
    inner_settled: Tuple[Tuple[int, int], ...] = ()

    @property
    def outer_base(self) -> Fraction:
        return Fraction(self.c) ** self.p1

    @property
    def inner_base(self) -> Fraction:
        return Fraction(self.c) ** self.p2

    @property
    def block_values(self) -> Tuple[Fraction, ...]:
        return tuple(_digits_value(row, self.inner_base) for row in self.rows)

    @property
    def value(self) -> Fraction:
        return (1 - self.inner_base) * _digits_value(self.block_values, self.outer_base)


def _digits_value(digits: Sequence[Fraction], base: Fraction) -> Fraction:
    total = Fraction(0)
    power = Fraction(1)
    for d in digits:
        total += d * power
        power *= base
    return total


def _check_digits(values: Sequence, where: str) -> None:
    for a in values:
        if Fraction(a).denominator != 1 or not -2 <= a <= 2:
            raise DomainError(f"{where} entries must be integers in -2..2, got {a}")


def _borrow_pass(digits: List[Fraction], base: Fraction) -> List[int]:
    """Deepest index first: a negative entry takes 1/base and owes 1 upward."""
    borrowed = []
    carry = 0
    for i in range(len(digits) - 1, 0, -1):
        v = digits[i] - carry
        if v < 0:
            digits[i] = v + 1 / base
            carry = 1
            borrowed.append(i)
        else:
            digits[i] = v
            carry = 0
    digits[0] -= carry
    return sorted(borrowed)


def _settle(digits: List[Fraction], base: Fraction) -> List[int]:
    """Push negative leading entries down one place; returns the touched indices."""
    # only a non-integer leading entry can end negative after the borrow pass
    touched = []
    i = 0
    while i < len(digits) and digits[i] < 0:
        if i + 1 == len(digits):
            raise PreconditionError("coefficients cannot be made sign-uniform")
        deficit = -digits[i]
        digits[i] = Fraction(0)
        digits[i + 1] -= deficit / base
        touched.extend([i, i + 1])
        i += 1
    return sorted(set(touched))


def _rewrite_digits(digits: Sequence[Fraction], base: Fraction) -> Tuple[List[Fraction], List[int], List[int]]:
    """Borrow then settle in the sign of the value; returns digits, borrowed and settled indices."""
    digits = [Fraction(d) for d in digits]
    value = _digits_value(digits, base)
    if value == 0:
        return [Fraction(0)] * len(digits), [], []
    sign = 1 if value > 0 else -1
    work = [sign * d for d in digits]
    borrowed = _borrow_pass(work, base)
    settled = _settle(work, base)
    return [sign * d for d in work], borrowed, settled


def rewrite_sign_uniform(v: CoeffVector) -> CoeffVector:
    """Rewrite coefficients so every entry carries the sign of the sum.

    Borrowed entries are at least 1/lambda - 3 in absolute value.
    """
    lam = Fraction(v.base)
    if not 0 < lam < ONE_THIRD:
        raise PreconditionError(f"sign-uniform rewriting needs 0 < lambda < 1/3, got {lam}")
    _check_digits(v.coeffs, "coefficient")
    coeffs, borrowed, settled = _rewrite_digits(v.coeffs, lam)
    return CoeffVector(tuple(coeffs), lam, tuple(borrowed), tuple(settled))


def rewrite_two_level(m: BlockCoeffMatrix, relaxed: bool = False) -> BlockCoeffMatrix:
    """Block-level borrow with base c^p1, then per-block rewrite with base c^p2.

    Borrowed blocks are at least 1/c^p1 - 4 in absolute value.
    """
    beta, lam = m.outer_base, m.inner_base
    inner_limit = ONE_THIRD if relaxed else ONE_QUARTER
    if not (beta < ONE_QUARTER and lam < inner_limit):
        raise PreconditionError(
            f"two-level rewriting needs c^p1 < 1/4 and c^p2 < {inner_limit}, got {beta}, {lam}"
        )
    if len(set(len(row) for row in m.rows)) > 1 or not m.rows:
        raise DomainError("block matrix rows must be nonempty and of equal length")
    for row in m.rows:
        _check_digits(row, "block matrix")

    value = m.value
    if value == 0:
        zeros = tuple(tuple(Fraction(0) for _ in row) for row in m.rows)
        return BlockCoeffMatrix(zeros, m.c, m.p1, m.p2)
    sign = 1 if value > 0 else -1
    rows = [[sign * Fraction(a) for a in row] for row in m.rows]

    borrowed = []
    carry = 0
    for i in range(len(rows) - 1, 0, -1):
        rows[i][0] -= carry
        if _digits_value(rows[i], lam) < 0:
            rows[i][0] += 1 / beta
            carry = 1
            borrowed.append(i)
        else:
            carry = 0
    rows[0][0] -= carry

    settled = []
    i = 0
    while i < len(rows) and _digits_value(rows[i], lam) < 0:
        if i + 1 == len(rows):
            raise PreconditionError("blocks cannot be made sign-uniform")
        deficit = -_digits_value(rows[i], lam)
        rows[i][0] += deficit
        rows[i + 1][0] -= deficit / beta
        settled.extend([i, i + 1])
        i += 1

    new_rows = []
    inner_borrowed = []
    inner_settled = []
    for i, row in enumerate(rows):
        digits, row_borrowed, row_settled = _rewrite_digits(row, lam)
        new_rows.append(tuple(sign * d for d in digits))
        inner_borrowed.extend((i, j) for j in row_borrowed)
        inner_settled.extend((i, j) for j in row_settled)

    return BlockCoeffMatrix(
        rows=tuple(new_rows),
        c=m.c,
        p1=m.p1,
        p2=m.p2,
        borrowed=tuple(sorted(borrowed)),
        settled=tuple(sorted(set(settled))),
        inner_borrowed=tuple(inner_borrowed),
        inner_settled=tuple(inner_settled),
    )


def theoretical_eps_bound(params: Union[SymmetricParams, AsymmetricParams]) -> Fraction:
    """Lower bound on the normalized difference-class gap.

    The asymmetric value is the smaller of the ratio-case and the
    translation-case bounds.
    """
    if isinstance(params, SymmetricParams):
        lam = Fraction(params.lam)
        if not 0 < lam < ONE_THIRD:
            raise PreconditionError(f"the symmetric bound needs lambda < 1/3, got {lam}")
        return (1 - lam) * (1 / lam - 3)
    if params.base is None:
        raise PreconditionError("the asymmetric bound needs a common base (c, p1, p2)")
    c = Fraction(params.base)
    lam = c ** params.p2
    if not (c ** params.p1 < lam < ONE_QUARTER):
        raise PreconditionError(f"the asymmetric bound needs c^p1 < c^p2 < 1/4, got c={c}")
    return min(lam * (1 - c), (1 - lam) * (1 / lam - 3))


def closed_form_golden_dim(c: Scalar, p: int) -> float:
    """Dimension of the (c^2p, c^p) system: log(phi) / (p * log(1/c))."""
    if not 0 < c < 1:
        raise DomainError(f"c must lie in (0,1), got {c}")
    if p < 1:
        raise DomainError(f"p must be >= 1, got {p}")
    phi = 2 / (sqrt(5) - 1)
    return log(phi) / (p * log(1 / float(c)))


def min_nonzero_gap(lam: Fraction, length: int) -> Fraction:
    """Smallest nonzero |sum a_i lam^i| over a in {-2..2}^length, by enumeration."""
    lam = Fraction(lam)
    if not 0 < lam < 1 or length < 1:
        raise DomainError("need 0 < lambda < 1 and a positive length")
    # integer numerators over the common denominator q^(length-1)
    p, q = lam.numerator, lam.denominator
    weights = [p ** i * q ** (length - 1 - i) for i in range(length)]
    best = None
    for digits in itertools.product(DIGITS, repeat=length):
        total = abs(sum(a * w for a, w in zip(digits, weights)))
        if total and (best is None or total < best):
            best = total
    return Fraction(best, q ** (length - 1))
