"""Core value types: rankings, profiles, scoring vectors, committees.

All arithmetic is exact (`fractions.Fraction`); nothing in the winner or
power computations ever touches floating point.  Alternatives are indexed
0..m-1 and ties are broken toward the smallest index.  The canonical order
of rankings is lexicographic on their permutation sequences, and profiles
are numbered in mixed radix with player 0 as the most significant digit.
"""

from __future__ import annotations

import itertools
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import ContractViolationError, ParseError, ShapeError, SizeLimitError

#: Largest alternative count accepted by tabulating operations.
MAX_ALTERNATIVES = 6

#: Cap on the rule-mapping table length (m!)^n.
TABLE_CAP = 2**31


@dataclass(frozen=True)
class Ranking:
    """A strict preference order; ``order[0]`` is the best alternative."""

    order: tuple[int, ...]

    def __post_init__(self):
        m = len(self.order)
        if sorted(self.order) != list(range(m)):
            raise ShapeError(f"ranking {self.order} is not a permutation of 0..{m-1}")

    @property
    def m(self) -> int:
        return len(self.order)

    def rank_of(self, alternative: int) -> int:
        """Position of an alternative (0 = best)."""
        return self.order.index(alternative)

    def alternative_at(self, position: int) -> int:
        return self.order[position]


@dataclass(frozen=True)
class Profile:
    """One ranking per player."""

    rankings: tuple[Ranking, ...]

    @property
    def n(self) -> int:
        return len(self.rankings)

    @property
    def m(self) -> int:
        return self.rankings[0].m

    def replace(self, player: int, ranking: Ranking) -> "Profile":
        rankings = list(self.rankings)
        rankings[player] = ranking
        return Profile(tuple(rankings))


@dataclass(frozen=True)
class ScoringVector:
    """Weakly decreasing per-position scores with ``scores[0] != scores[-1]``."""

    scores: tuple[Fraction, ...]

    def __post_init__(self):
        scores = tuple(Fraction(x) for x in self.scores)
        object.__setattr__(self, "scores", scores)
        if len(scores) < 2:
            raise ShapeError("a scoring vector needs at least two entries")
        if any(a < b for a, b in zip(scores, scores[1:])):
            raise ShapeError(f"scoring vector {scores} is not weakly decreasing")
        if scores[0] == scores[-1]:
            raise ShapeError("scoring vector must have scores[0] != scores[-1]")

    @property
    def m(self) -> int:
        return len(self.scores)

    @classmethod
    def one_s_zero(cls, s: Fraction | int | str) -> "ScoringVector":
        """The normalized three-alternative vector (1, s, 0) with 0 <= s <= 1."""
        s = parse_rational(s) if isinstance(s, str) else Fraction(s)
        if not 0 <= s <= 1:
            raise ShapeError(f"scoring parameter must lie in [0, 1], got {s}")
        return cls((Fraction(1), s, Fraction(0)))

    @property
    def mid_score(self) -> Fraction:
        """The parameter s of the normalized form (1, s, 0)."""
        return normalize_scoring_vector(self).scores[1] if self.m == 3 else None


@dataclass(frozen=True)
class ScoringCommittee:
    """n weighted players choosing one of m alternatives by a scoring rule."""

    weights: tuple[Fraction, ...]
    scoring: ScoringVector

    def __post_init__(self):
        weights = tuple(Fraction(w) for w in self.weights)
        object.__setattr__(self, "weights", weights)
        if len(weights) < 2:
            raise ShapeError("a committee needs at least two players")
        if any(w < 0 for w in weights):
            raise ShapeError("weights must be nonnegative")
        if not any(weights):
            raise ShapeError("at least one weight must be positive")

    @property
    def n(self) -> int:
        return len(self.weights)

    @property
    def m(self) -> int:
        return self.scoring.m


@dataclass(frozen=True)
class RuleMapping:
    """The full profile -> winner table of a committee, in canonical order."""

    winners: tuple[int, ...]
    n: int
    m: int

    def __post_init__(self):
        if len(self.winners) != math.factorial(self.m) ** self.n:
            raise ShapeError(
                f"winner table has length {len(self.winners)}, "
                f"expected (m!)^n = {math.factorial(self.m) ** self.n}"
            )
        if any(not 0 <= w < self.m for w in self.winners):
            raise ShapeError("winner table entries must be alternative indices")


@dataclass(frozen=True)
class PowerVector:
    """Per-player generalized Penrose-Banzhaf values as exact rationals."""

    swing_counts: tuple[int, ...]
    denominator: int

    @property
    def values(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self.denominator) for c in self.swing_counts)

    @property
    def n(self) -> int:
        return len(self.swing_counts)

    def decimals(self, places: int = 4) -> tuple[str, ...]:
        """Decimal renderings, rounded half away from zero."""
        return tuple(format_decimal(v, places) for v in self.values)


def enumerate_rankings(m: int, cap: int = MAX_ALTERNATIVES) -> list[Ranking]:
    """All m! strict rankings, lexicographic on their permutation sequences."""
    if m < 1:
        raise ShapeError(f"alternative count must be positive, got {m}")
    if m > cap:
        raise SizeLimitError(f"alternative count {m} exceeds the cap of {cap}")
    return [Ranking(p) for p in itertools.permutations(range(m))]


def check_table_size(n: int, m: int, cap: int = TABLE_CAP) -> int:
    """Validate (m!)^n against the tabulation cap; return the table length."""
    if m > MAX_ALTERNATIVES:
        raise SizeLimitError(
            f"alternative count {m} exceeds the cap of {MAX_ALTERNATIVES}"
        )
    size = math.factorial(m) ** n
    if size > cap:
        raise SizeLimitError(f"profile space of size {size} exceeds the cap of {cap}")
    return size


def profile_index(profile: Profile) -> int:
    """Mixed-radix index of a profile, player 0 most significant."""
    m = profile.m
    base = math.factorial(m)
    lookup = {r.order: i for i, r in enumerate(enumerate_rankings(m))}
    k = 0
    for ranking in profile.rankings:
        k = k * base + lookup[ranking.order]
    return k


def profile_from_index(k: int, n: int, m: int) -> Profile:
    """Inverse of :func:`profile_index`."""
    size = check_table_size(n, m)
    if not 0 <= k < size:
        raise ContractViolationError(f"profile index {k} out of range [0, {size})")
    rankings = enumerate_rankings(m)
    base = math.factorial(m)
    digits = []
    for _ in range(n):
        digits.append(k % base)
        k //= base
    return Profile(tuple(rankings[d] for d in reversed(digits)))


def normalize_scoring_vector(v: ScoringVector) -> ScoringVector:
    """Affine-rescale so the first entry is 1 and the last is 0.

    Scoring winners are invariant under positive affine transformations of
    the score vector, so the normalized vector induces the same rule.
    """
    lo, hi = v.scores[-1], v.scores[0]
    return ScoringVector(tuple((x - lo) / (hi - lo) for x in v.scores))


_DECIMAL_RE = re.compile(r"^[+-]?(\d+)(\.(\d+))?$")
_FRACTION_RE = re.compile(r"^([+-]?\d+)/(\d+)$")


def parse_rational(text: str, max_decimals: int | None = None) -> Fraction:
    """Parse "p/q" or a decimal string into an exact rational."""
    text = text.strip()
    m = _FRACTION_RE.match(text)
    if m:
        num, den = int(m.group(1)), int(m.group(2))
        if den == 0:
            raise ParseError(f"zero denominator in {text!r}")
        return Fraction(num, den)
    m = _DECIMAL_RE.match(text)
    if m:
        frac_digits = m.group(3) or ""
        if max_decimals is not None and len(frac_digits) > max_decimals:
            raise ParseError(
                f"{text!r} has more than {max_decimals} decimal places; "
                "pass an exact fraction p/q instead"
            )
        return Fraction(text)
    raise ParseError(f"cannot parse {text!r} as a rational number")


def parse_weights(text: str) -> tuple[Fraction, ...]:
    """Parse comma-separated weights such as "5,4,3,1" or "1/2,1/3,1/6"."""
    parts = text.split(",")
    if not parts or not text.strip():
        raise ParseError("empty weight list")
    return tuple(parse_rational(p) for p in parts)


def alternative_name(index: int) -> str:
    return chr(ord("A") + index)


def parse_ranking(text: str, m: int) -> Ranking:
    """Parse a ranking string like "B>C>A" (letters) or "1>2>0" (indices)."""
    tokens = [t.strip() for t in text.split(">")]
    order = []
    pos = 0
    for tok in tokens:
        if tok.isdigit():
            idx = int(tok)
        elif len(tok) == 1 and tok.isalpha():
            idx = ord(tok.upper()) - ord("A")
        else:
            raise ParseError(f"bad alternative token {tok!r} in {text!r}", position=pos)
        if not 0 <= idx < m:
            raise ParseError(
                f"alternative {tok!r} out of range for m={m} in {text!r}", position=pos
            )
        order.append(idx)
        pos = text.index(tok, pos) + len(tok)
    if len(order) != m or sorted(order) != list(range(m)):
        raise ParseError(f"ranking {text!r} is not a permutation of {m} alternatives")
    return Ranking(tuple(order))


def parse_profile(text: str, n: int, m: int) -> Profile:
    """Parse per-player rankings separated by ";"."""
    parts = [p for p in text.split(";") if p.strip()]
    if len(parts) != n:
        raise ParseError(f"expected {n} rankings separated by ';', got {len(parts)}")
    return Profile(tuple(parse_ranking(p, m) for p in parts))


def format_decimal(value: Fraction, places: int = 4) -> str:
    """Fixed-point rendering, rounded half away from zero."""
    sign = "-" if value < 0 else ""
    scaled = abs(value) * 10**places
    q, r = divmod(scaled.numerator, scaled.denominator)
    if 2 * r >= scaled.denominator:
        q += 1
    digits = str(q).rjust(places + 1, "0")
    return f"{sign}{digits[:-places]}.{digits[-places:]}" if places else f"{sign}{q}"


def sum_of(values: Sequence[Fraction]) -> Fraction:
    return sum(values, Fraction(0))
