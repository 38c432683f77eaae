"""Committee equivalence, canonical forms, and equivalence-class enumeration.

Two committees are equivalent when their rule mappings agree on every
profile, and structurally equivalent when they agree after relabeling
players.  The canonical form of a mapping is the lexicographically smallest
winners table over all player relabelings, so structural equivalence is a
key comparison.

Class enumeration over the weight simplex (n = m = 3) combines two layers:
the regular denominator-D grid supplies membership counts, and the exact
face enumeration of the score-tie-line arrangement certifies completeness,
catching point- and line-shaped classes whose denominators do not divide D.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import gridsweep
from .errors import SearchBoundError, ShapeError
from .model import RuleMapping, ScoringCommittee, check_table_size, normalize_scoring_vector
from .scoring import rule_mapping


@dataclass(frozen=True)
class CanonicalMapping:
    """Lexicographically smallest winners table over all player relabelings."""

    key: tuple[int, ...]
    n: int
    m: int


def _relabel_indices(n: int, m: int) -> list[np.ndarray]:
    """Profile-index permutation realizing each player relabeling."""
    base = math.factorial(m)
    size = base**n
    ks = np.arange(size)
    digits = np.empty((size, n), dtype=np.int64)
    rem = ks
    for i in range(n - 1, -1, -1):
        digits[:, i] = rem % base
        rem = rem // base
    out = []
    for pi in itertools.permutations(range(n)):
        inv = [0] * n
        for i, j in enumerate(pi):
            inv[j] = i
        d = digits[:, inv]
        sigma = np.zeros(size, dtype=np.int64)
        for i in range(n):
            sigma = sigma * base + d[:, i]
        out.append(sigma)
    return out


def canonical_mapping(mapping: RuleMapping) -> CanonicalMapping:
    """Minimum of the winners table over all n! player relabelings."""
    check_table_size(mapping.n, mapping.m)
    table = np.asarray(mapping.winners, dtype=np.int8)
    best = None
    for sigma in _relabel_indices(mapping.n, mapping.m):
        cand = tuple(int(x) for x in table[sigma])
        if best is None or cand < best:
            best = cand
    return CanonicalMapping(best, mapping.n, mapping.m)


def _check_comparable(c1: ScoringCommittee, c2: ScoringCommittee) -> None:
    if c1.n != c2.n or c1.m != c2.m:
        raise ShapeError(
            f"committees differ in shape: ({c1.n}, {c1.m}) vs ({c2.n}, {c2.m})"
        )
    if normalize_scoring_vector(c1.scoring) != normalize_scoring_vector(c2.scoring):
        raise ShapeError("committees use different normalized scoring vectors")


def equivalent(c1: ScoringCommittee, c2: ScoringCommittee) -> bool:
    """True iff the two committees pick the same winner on every profile."""
    _check_comparable(c1, c2)
    return rule_mapping(c1) == rule_mapping(c2)


def structurally_equivalent(c1: ScoringCommittee, c2: ScoringCommittee) -> bool:
    """True iff some player relabeling makes the two committees equivalent."""
    _check_comparable(c1, c2)
    return canonical_mapping(rule_mapping(c1)) == canonical_mapping(rule_mapping(c2))


# --- class enumeration on the n = m = 3 weight simplex -----------------------


@dataclass(frozen=True)
class WeightGrid:
    """All sorted rational triples with a fixed denominator, summing to 1.

    The default denominator is divisible by 2..10 so that the grid hits the
    center point, boundary midpoints, and other low-denominator loci.
    """

    denominator: int = 2520

    def triples(self) -> np.ndarray:
        return gridsweep.grid_triples(self.denominator)

    @property
    def size(self) -> int:
        return len(self.triples())


@dataclass
class EquivalenceClass:
    """One structural equivalence class of weight triples at a fixed s."""

    key: tuple[int, ...]  # packed canonical winners table
    representative: tuple[Fraction, Fraction, Fraction]
    grid_count: int  # members on the regular grid (0 for off-grid classes)
    minimal_reference: tuple[int, int, int] | None = None


@dataclass
class EquivalenceClassSet:
    s: Fraction
    grid: WeightGrid
    classes: list[EquivalenceClass] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.classes)

    def by_key(self) -> dict[tuple[int, ...], EquivalenceClass]:
        return {c.key: c for c in self.classes}


def _grid_keys(
    triples: np.ndarray, s: Fraction, chunk: int = 100_000
) -> np.ndarray:
    parts = []
    for lo in range(0, len(triples), chunk):
        winners = gridsweep.winners_table(triples[lo : lo + chunk], s)
        parts.append(gridsweep.canonical_keys(winners))
    return np.concatenate(parts)


def canonical_key_of_triples(triples: np.ndarray, s: Fraction) -> np.ndarray:
    """Packed canonical keys of integer weight triples; (K, 6) uint64."""
    return _grid_keys(np.asarray(triples, dtype=np.int64), s)


def enumerate_classes(
    s: Fraction, grid: WeightGrid | None = None, exact: bool = True
) -> EquivalenceClassSet:
    """Group the weight simplex into structural equivalence classes.

    Grid points are grouped by canonical key; the representative of a class
    is its first grid point in canonical grid order.  With ``exact=True``
    (the default) the face points of the tie-line arrangement are added, so
    the class list is provably complete; classes without any grid member
    report a grid count of zero and an exact face point as representative.
    """
    grid = grid or WeightGrid()
    triples = grid.triples()
    keys = _grid_keys(triples, s)
    uniq, inverse, counts = np.unique(
        keys, axis=0, return_inverse=True, return_counts=True
    )
    inverse = inverse.reshape(-1)  # numpy 2.x shape quirk for axis-based unique
    first = np.full(len(uniq), len(triples), dtype=np.int64)
    np.minimum.at(first, inverse, np.arange(len(triples)))
    order = np.argsort(first)
    result = EquivalenceClassSet(s, grid)
    seen = {}
    for u in order:
        rep = triples[first[u]]
        key = tuple(int(x) for x in uniq[u])
        cls = EquivalenceClass(
            key=key,
            representative=tuple(Fraction(int(x), grid.denominator) for x in rep),
            grid_count=int(counts[u]),
        )
        seen[key] = cls
        result.classes.append(cls)
    if exact:
        points = gridsweep.face_points(s)
        ints = gridsweep.integerize(points)
        face_keys = canonical_key_of_triples(ints, s)
        extra = {}
        for point, row in zip(points, face_keys):
            key = tuple(int(x) for x in row)
            if key not in seen and key not in extra:
                extra[key] = EquivalenceClass(
                    key=key, representative=point, grid_count=0
                )
        result.classes.extend(extra[k] for k in sorted(extra))
    return result


def attach_minimal_references(
    class_set: EquivalenceClassSet, max_sum: int = 50
) -> None:
    """Fill in minimal-sum integer reference weights for every class.

    Candidates are enumerated in increasing weight-sum order; among equal
    sums, lexicographically largest first.  Classes whose minimal reference
    exceeds the bound keep ``minimal_reference = None``.
    """
    wanted = {c.key: c for c in class_set.classes if c.minimal_reference is None}
    if not wanted:
        return
    cands = _reference_candidates(max_sum)
    keys = canonical_key_of_triples(cands, class_set.s)
    for row, key_row in zip(cands, keys):
        key = tuple(int(x) for x in key_row)
        cls = wanted.pop(key, None)
        if cls is not None:
            cls.minimal_reference = tuple(int(x) for x in row)
        if not wanted:
            break


def _reference_candidates(max_sum: int) -> np.ndarray:
    rows = []
    for total in range(1, max_sum + 1):
        block = []
        for a in range(total, -1, -1):
            if 3 * a < total:
                break
            for b in range(min(a, total - a), -1, -1):
                c = total - a - b
                if c > b:
                    break
                block.append((a, b, c))
        block.sort(reverse=True)  # lexicographically largest first
        rows.extend(block)
    return np.array(rows, dtype=np.int64)


def minimal_reference_weights(
    c: ScoringCommittee, max_sum: int = 50
) -> tuple[int, int, int]:
    """Smallest-sum integer weights structurally equivalent to the committee.

    Only defined for three players and three alternatives.
    """
    if c.n != 3 or c.m != 3:
        raise ShapeError("minimal reference weights are defined for n = m = 3")
    s = normalize_scoring_vector(c.scoring).scores[1]
    den = math.lcm(*(w.denominator for w in c.weights))
    ints = sorted((int(w * den) for w in c.weights), reverse=True)
    g = math.gcd(*ints)
    target = canonical_key_of_triples([[v // g for v in ints]], s)[0]
    target = tuple(int(x) for x in target)
    cands = _reference_candidates(max_sum)
    keys = canonical_key_of_triples(cands, s)
    for row, key_row in zip(cands, keys):
        if tuple(int(x) for x in key_row) == target:
            return tuple(int(x) for x in row)
    raise SearchBoundError(
        f"no structurally equivalent integer weights with sum <= {max_sum}"
    )


def count_classes(
    s: Fraction, grid: WeightGrid | None = None, exact: bool = True
) -> int:
    """Number of structural equivalence classes at one scoring parameter.

    With ``exact=True`` the count comes from the arrangement faces alone:
    every simplex point lies in some face, so the face points already hit
    every class the grid could hit, and the grid pass is skipped.
    """
    if exact:
        ints = gridsweep.integerize(gridsweep.face_points(s))
        keys = canonical_key_of_triples(ints, s)
        return len(np.unique(keys, axis=0))
    grid = grid or WeightGrid()
    return len(np.unique(_grid_keys(grid.triples(), s), axis=0))


def class_count_sweep(
    s_values: Sequence[Fraction], grid: WeightGrid | None = None, exact: bool = True
) -> list[tuple[Fraction, int]]:
    """Number of equivalence classes for each scoring parameter, in order."""
    return [(s, count_classes(s, grid=grid, exact=exact)) for s in s_values]
