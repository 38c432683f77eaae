"""Generalized Penrose-Banzhaf power via exhaustive swing counting.

A swing position is a (profile, player, replacement ranking) triple where
changing only that player's ranking changes the committee winner.  A
player's index value is their swing count divided by the count a dictator
would achieve, (m!)^n * (m! - (m-1)!), regardless of whether the committee
actually contains a dictator.
"""

from __future__ import annotations

import math

from .errors import ContractViolationError
from .model import (
    PowerVector,
    Profile,
    Ranking,
    RuleMapping,
    ScoringCommittee,
    check_table_size,
    enumerate_rankings,
    profile_index,
)
from .scoring import rule_mapping


def dictator_swing_count(n: int, m: int) -> int:
    """Swing positions of a dictator: (m!)^n * (m! - (m-1)!)."""
    return math.factorial(m) ** n * (math.factorial(m) - math.factorial(m - 1))


def is_swing(mapping: RuleMapping, p: Profile, player: int, replacement: Ranking) -> bool:
    """True iff replacing one player's ranking changes the winner."""
    if p.rankings[player] == replacement:
        raise ContractViolationError(
            "replacement ranking must differ from the player's current ranking"
        )
    before = mapping.winners[profile_index(p)]
    after = mapping.winners[profile_index(p.replace(player, replacement))]
    return before != after


def _swing_counts_from_mapping(mapping: RuleMapping) -> list[int]:
    """Per-player swing counts by digit replacement in the profile index.

    The profile index is mixed radix with base m! and player 0 most
    significant, so replacing player i's ranking moves the index by a
    multiple of m!^(n-i-1).
    """
    n, m = mapping.n, mapping.m
    base = math.factorial(m)
    size = base**n
    winners = mapping.winners
    counts = [0] * n
    for i in range(n):
        stride = base ** (n - i - 1)
        count = 0
        for k in range(size):
            w = winners[k]
            digit = (k // stride) % base
            lo = k - digit * stride
            for d in range(base):
                if d != digit and winners[lo + d * stride] != w:
                    count += 1
        counts[i] = count
    return counts


def swing_count(c: ScoringCommittee, player: int) -> int:
    """Number of swing positions of one player, over all profiles."""
    return _swing_counts_from_mapping(rule_mapping(c))[player]


def pbi(c: ScoringCommittee, mapping: RuleMapping | None = None) -> PowerVector:
    """The generalized Penrose-Banzhaf index of every player."""
    check_table_size(c.n, c.m)
    if mapping is None:
        mapping = rule_mapping(c)
    counts = _swing_counts_from_mapping(mapping)
    return PowerVector(tuple(counts), dictator_swing_count(c.n, c.m))
