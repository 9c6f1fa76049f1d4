"""
Exact one-dimensional similarity IFSs: maps, words, and scale cuts.

A map is x -> sign * ratio * x + translation. Parameters are either all
``fractions.Fraction`` (exact mode) or all ``float`` (float mode); the mode is
fixed when the IFS is built and every derived value stays in it.

Environment Variables:
    FRACSEP_BUDGET_WORDS: Optional. Default cap on the number of words a scale
        cut may enumerate (default: 2**22).
"""
import os
from collections import deque
from dataclasses import dataclass, replace
from fractions import Fraction
from math import isclose
from typing import Iterable, List, Optional, Sequence, Tuple, Union

from errors import (
    BudgetExceededError,
    DomainError,
    InvalidWordError,
    NotInvariantError,
)

Scalar = Union[Fraction, float]
Word = Tuple[int, ...]

EXACT = "exact"
FLOAT = "float"
MODES = (EXACT, FLOAT)

DEFAULT_WORD_BUDGET = 2 ** 22


def get_word_budget() -> int:
    """FRACSEP_BUDGET_WORDS, or 2**22 when unset."""
    raw = os.environ.get("FRACSEP_BUDGET_WORDS")
    if not raw:
        return DEFAULT_WORD_BUDGET
    try:
        value = int(raw)
    except ValueError:
        raise DomainError(f"FRACSEP_BUDGET_WORDS must be an integer, got {raw!r}")
    if value <= 0:
        raise DomainError("FRACSEP_BUDGET_WORDS must be positive")
    return value


def parse_rational(text: str) -> Fraction:
    """Parse "p/q", an integer or a decimal literal into an exact Fraction."""
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"not a rational literal: {text!r}")


def to_scalar(value, mode: str) -> Scalar:
    """Coerce into the arithmetic of ``mode``."""
    if mode == EXACT:
        if isinstance(value, float):
            return Fraction(value)
        if isinstance(value, str):
            return parse_rational(value)
        return Fraction(value)
    if mode == FLOAT:
        return float(value)
    raise DomainError(f"unknown arithmetic mode {mode!r}")


def format_scalar(value: Scalar) -> str:
    """Rationals as "p/q", floats with 17 significant digits."""
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, int):
        return str(value)
    return format(value, ".17g")


@dataclass(frozen=True)
class Similarity1D:
    ratio: Scalar
    sign: int = 1
    translation: Scalar = 0

    def __post_init__(self):
        if not 0 < self.ratio <= 1:
            raise DomainError(f"similarity ratio must lie in (0,1], got {self.ratio}")
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")

    @property
    def slope(self) -> Scalar:
        return self.sign * self.ratio

    def apply(self, x: Scalar) -> Scalar:
        return self.slope * x + self.translation

    def compose(self, other: "Similarity1D") -> "Similarity1D":
        """self o other."""
        return Similarity1D(
            ratio=self.ratio * other.ratio,
            sign=self.sign * other.sign,
            translation=self.apply(other.translation),
        )

    def image(self, lo: Scalar, hi: Scalar) -> Tuple[Scalar, Scalar]:
        a, b = self.apply(lo), self.apply(hi)
        return (a, b) if a <= b else (b, a)


def identity(mode: str = EXACT) -> Similarity1D:
    """The identity map in the given arithmetic mode."""
    return Similarity1D(to_scalar(1, mode), 1, to_scalar(0, mode))


def parent(word: Word) -> Word:
    """The word with its last index dropped."""
    if not word:
        raise InvalidWordError("the empty word has no parent")
    return word[:-1]


def parse_word(text: str) -> Word:
    """Parse "1,2,2" into a word; the empty string is the empty word."""
    text = text.strip()
    if not text:
        return ()
    try:
        return tuple(int(part) for part in text.split(","))
    except ValueError:
        raise InvalidWordError(f"malformed word {text!r}")


def format_word(word: Word) -> str:
    """Comma-joined letters."""
    return ",".join(str(i) for i in word)


@dataclass(frozen=True)
class IFS1D:
    maps: Tuple[Similarity1D, ...]
    mode: str
    hull: Tuple[Scalar, Scalar]
    cmin: Scalar
    cmax: Scalar
    symmetric: bool = False

    @property
    def size(self) -> int:
        return len(self.maps)

    @property
    def ratios(self) -> Tuple[Scalar, ...]:
        return tuple(f.ratio for f in self.maps)

    @property
    def diameter(self) -> Scalar:
        return self.hull[1] - self.hull[0]

    @property
    def orientation_preserving(self) -> bool:
        return all(f.sign == 1 for f in self.maps)


def _fixed_point(f: Similarity1D) -> Scalar:
    return f.translation / (1 - f.slope)


def _is_reflection_symmetric(maps: Sequence[Similarity1D], lo: Scalar, hi: Scalar, mode: str) -> bool:
    # conjugating by x -> lo + hi - x must permute the maps
    total = lo + hi
    mirrored = sorted(
        (f.ratio, f.sign, total * (1 - f.slope) - f.translation) for f in maps
    )
    original = sorted((f.ratio, f.sign, f.translation) for f in maps)
    if mode == EXACT:
        return mirrored == original
    return all(
        a[0] == b[0] and a[1] == b[1] and isclose(a[2], b[2], rel_tol=1e-12, abs_tol=1e-15)
        for a, b in zip(mirrored, original)
    )


def _detect_mode(maps: Sequence[Similarity1D]) -> str:
    for f in maps:
        if isinstance(f.ratio, float) or isinstance(f.translation, float):
            return FLOAT
    return EXACT


def make_ifs(maps: Iterable[Similarity1D], mode: Optional[str] = None) -> IFS1D:
    """Build an IFS, fixing its arithmetic mode and checking the hull."""
    maps = list(maps)
    if len(maps) < 2:
        raise DomainError("an IFS needs at least two maps")
    mode = mode or _detect_mode(maps)
    if mode not in MODES:
        raise DomainError(f"unknown arithmetic mode {mode!r}")
    maps = [
        Similarity1D(to_scalar(f.ratio, mode), f.sign, to_scalar(f.translation, mode))
        for f in maps
    ]
    for f in maps:
        if not 0 < f.ratio < 1:
            raise DomainError(f"IFS maps must be strict contractions, got ratio {f.ratio}")

    fixed = [_fixed_point(f) for f in maps]
    lo, hi = min(fixed), max(fixed)
    if lo == hi:
        raise NotInvariantError("all maps share one fixed point; the attractor is a point")
    for i, f in enumerate(maps, start=1):
        a, b = f.image(lo, hi)
        if a < lo or b > hi:
            raise NotInvariantError(
                f"map {i} sends [{format_scalar(lo)}, {format_scalar(hi)}] outside itself"
            )

    ratios = [f.ratio for f in maps]
    return IFS1D(
        maps=tuple(maps),
        mode=mode,
        hull=(lo, hi),
        cmin=min(ratios),
        cmax=max(ratios),
        symmetric=_is_reflection_symmetric(maps, lo, hi, mode),
    )


def hull(ifs: IFS1D) -> Tuple[Scalar, Scalar]:
    """Smallest invariant interval; its endpoints are member fixed points."""
    return ifs.hull


def _check_word(ifs: IFS1D, word: Word) -> None:
    for i in word:
        if not isinstance(i, int) or not 1 <= i <= ifs.size:
            raise InvalidWordError(f"index {i!r} outside 1..{ifs.size}")


def _ratio_from_counts(ifs: IFS1D, counts: Sequence[int]) -> Scalar:
    # fixed multiplication order so equal letter counts give equal floats
    ratio = to_scalar(1, ifs.mode)
    for c, n in zip(ifs.ratios, counts):
        if n:
            ratio *= c ** n
    return ratio


def word_ratio(ifs: IFS1D, word: Word) -> Scalar:
    """Product of the ratios along the word."""
    _check_word(ifs, word)
    counts = [0] * ifs.size
    for i in word:
        counts[i - 1] += 1
    return _ratio_from_counts(ifs, counts)


def compose(ifs: IFS1D, word: Word) -> Similarity1D:
    """f_{i1} o ... o f_{ik}; the empty word is the identity."""
    _check_word(ifs, word)
    result = identity(ifs.mode)
    for i in word:
        result = result.compose(ifs.maps[i - 1])
    if ifs.mode == FLOAT and word:
        result = replace(result, ratio=word_ratio(ifs, word))
    return result


@dataclass(frozen=True)
class ScaleCut:
    b: Scalar
    words: Tuple[Word, ...]
    maps: Tuple[Similarity1D, ...]

    @property
    def ratios(self) -> Tuple[Scalar, ...]:
        return tuple(f.ratio for f in self.maps)

    def __len__(self) -> int:
        return len(self.words)


def check_scale(b: Scalar) -> None:
    """Raise DomainError unless 0 < b < 1."""
    if not 0 < b < 1:
        raise DomainError(f"scale b must lie in (0,1), got {b}")


def scale_cut(ifs: IFS1D, b: Scalar, budget: Optional[int] = None) -> ScaleCut:
    """Words alpha with c_alpha <= b < c_parent(alpha), in lexicographic order."""
    check_scale(b)
    b = to_scalar(b, ifs.mode)
    budget = get_word_budget() if budget is None else budget

    emitted: List[Tuple[Word, Similarity1D]] = []
    pending = deque([((), identity(ifs.mode), (0,) * ifs.size)])
    while pending:
        word, f, counts = pending.popleft()
        for i, g in enumerate(ifs.maps, start=1):
            child_counts = counts[: i - 1] + (counts[i - 1] + 1,) + counts[i:]
            ratio = _ratio_from_counts(ifs, child_counts)
            child = Similarity1D(ratio, f.sign * g.sign, f.apply(g.translation))
            if ratio <= b:
                emitted.append((word + (i,), child))
            else:
                pending.append((word + (i,), child, child_counts))
        if len(emitted) + len(pending) > budget:
            raise BudgetExceededError(budget, len(emitted) + len(pending))

    emitted.sort(key=lambda item: item[0])
    return ScaleCut(
        b=b,
        words=tuple(w for w, _ in emitted),
        maps=tuple(f for _, f in emitted),
    )


def kraft_sum(cut: ScaleCut, dimension: float) -> float:
    """Sum of c_alpha^dimension over the cut."""
    return sum(float(c) ** dimension for c in cut.ratios)
