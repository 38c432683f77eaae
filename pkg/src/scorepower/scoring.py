"""Score totals, winner determination, and full rule-mapping tables.

Winners maximize the weighted total score; ties go to the smallest
alternative index.  ``rule_mapping`` tabulates the winner for every profile
in canonical order, which is the representation all equivalence and power
computations consume.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import ShapeError
from .model import (
    Profile,
    RuleMapping,
    ScoringCommittee,
    check_table_size,
    enumerate_rankings,
)


@dataclass(frozen=True)
class ScoreTotals:
    """Per-alternative weighted totals for one profile."""

    totals: tuple[Fraction, ...]

    def winner(self) -> int:
        best = max(self.totals)
        return self.totals.index(best)


def _check(c: ScoringCommittee, p: Profile) -> None:
    if p.n != c.n:
        raise ShapeError(f"profile has {p.n} rankings, committee has {c.n} players")
    if p.m != c.m:
        raise ShapeError(f"profile ranks {p.m} alternatives, committee has {c.m}")


def score_totals(c: ScoringCommittee, p: Profile) -> ScoreTotals:
    """totals[a] = sum_i w_i * score at a's position in player i's ranking."""
    _check(c, p)
    totals = [Fraction(0)] * c.m
    for w, ranking in zip(c.weights, p.rankings):
        if not w:
            continue
        for pos, alt in enumerate(ranking.order):
            totals[alt] += w * c.scoring.scores[pos]
    return ScoreTotals(tuple(totals))


def winner(c: ScoringCommittee, p: Profile) -> int:
    """Winning alternative index under lexicographic tie-breaking."""
    return score_totals(c, p).winner()


def _integer_committee(c: ScoringCommittee) -> tuple[list[int], list[int]]:
    """Clear denominators so the hot loop runs on plain integers."""
    wden = math.lcm(*(w.denominator for w in c.weights))
    sden = math.lcm(*(s.denominator for s in c.scoring.scores))
    weights = [int(w * wden) for w in c.weights]
    scores = [int(s * sden) for s in c.scoring.scores]
    return weights, scores


def rule_mapping(c: ScoringCommittee) -> RuleMapping:
    """Tabulate the winner for all (m!)^n profiles in canonical order."""
    size = check_table_size(c.n, c.m)
    weights, scores = _integer_committee(c)
    rankings = enumerate_rankings(c.m)
    base = len(rankings)
    # per-ranking score row: contribution[r][a] = score at a's position in r
    contrib = []
    for r in rankings:
        row = [0] * c.m
        for pos, alt in enumerate(r.order):
            row[alt] = scores[pos]
        contrib.append(row)
    m = c.m
    table = bytearray(size)
    digits = [0] * c.n
    for k in range(size):
        totals = [0] * m
        for i in range(c.n):
            w = weights[i]
            if not w:
                continue
            row = contrib[digits[i]]
            for a in range(m):
                totals[a] += w * row[a]
        best = 0
        for a in range(1, m):
            if totals[a] > totals[best]:
                best = a
        table[k] = best
        # increment mixed-radix digits, player n-1 least significant
        for i in range(c.n - 1, -1, -1):
            digits[i] += 1
            if digits[i] < base:
                break
            digits[i] = 0
    return RuleMapping(tuple(table), c.n, c.m)
