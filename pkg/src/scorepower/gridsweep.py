"""Vectorized three-player, three-alternative engine for weight-grid sweeps.

Weights live on the sorted simplex w1 >= w2 >= w3 >= 0 and are handled as
integer triples (numerators over a common denominator); winner totals are
small exact integers, so float64 matrix products are exact and argmax with
first-occurrence ties implements lexicographic tie-breaking directly.

Besides the regular denominator-D grid, the module enumerates one exact
rational point per face (vertex, edge, cell) of the arrangement of
score-tie lines inside the simplex.  The rule mapping is constant on each
open face, so those points witness *every* equivalence class, including
single points and line segments that a finite grid misses.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

import numpy as np

from .errors import ShapeError

N, M = 3, 3
N_RANKINGS = 6
N_PROFILES = 216
#: Eq-1 denominator for n = m = 3: 6^3 * (6 - 2).
DICTATOR_SWINGS = 864

RANKINGS = list(itertools.permutations(range(M)))
PLAYER_PERMS = list(itertools.permutations(range(N)))

_DIGITS = np.array(
    [(k // 36, (k // 6) % 6, k % 6) for k in range(N_PROFILES)], dtype=np.int64
)


def _profile_perm_indices() -> list[np.ndarray]:
    """sigma[k] such that the mapping of pi-permuted weights is winners[sigma]."""
    out = []
    for pi in PLAYER_PERMS:
        inv = [0] * N
        for i, j in enumerate(pi):
            inv[j] = i
        d = _DIGITS[:, inv]
        out.append(d[:, 0] * 36 + d[:, 1] * 6 + d[:, 2])
    return out


_SIGMAS = _profile_perm_indices()


def _perturbation_indices() -> list[np.ndarray]:
    """A[i][k, r] = profile index of k with player i's ranking replaced by r."""
    out = []
    strides = (36, 6, 1)
    for i in range(N):
        digit = _DIGITS[:, i]
        lo = np.arange(N_PROFILES) - digit * strides[i]
        out.append(lo[:, None] + np.arange(N_RANKINGS)[None, :] * strides[i])
    return out


_PERTURB = _perturbation_indices()

# 216 trits packed big-endian into 6 uint64 words (3^40 < 2^64)
_CHUNK_WIDTHS = (40, 40, 40, 40, 40, 16)
_POW3 = [
    np.array([3 ** (w - 1 - t) for t in range(w)], dtype=np.uint64)
    for w in _CHUNK_WIDTHS
]


def score_matrix(s: Fraction) -> np.ndarray:
    """(216, 3, 3) integer score contributions for scoring vector (q, p, 0)."""
    p, q = s.numerator, s.denominator
    sv = (q, p, 0)
    mat = np.zeros((N_PROFILES, N, M), dtype=np.int64)
    for k in range(N_PROFILES):
        for i in range(N):
            r = RANKINGS[_DIGITS[k, i]]
            for pos in range(M):
                mat[k, i, r[pos]] = sv[pos]
    return mat


def winners_table(weights: np.ndarray, s: Fraction) -> np.ndarray:
    """Winner of every profile for each integer weight triple; (K, 216) int8."""
    mat = score_matrix(s)
    mflat = mat.transpose(1, 0, 2).reshape(N, N_PROFILES * M)
    bound = 3 * int(np.abs(weights).max(initial=0)) * s.denominator
    if bound < 2**53:
        totals = (weights.astype(np.float64) @ mflat).reshape(-1, N_PROFILES, M)
    elif bound < 2**63:
        totals = (weights @ mflat).reshape(-1, N_PROFILES, M)
    else:
        raise ShapeError("weight numerators too large for exact tabulation")
    return totals.argmax(axis=2).astype(np.int8)


def pack_keys(winners: np.ndarray) -> np.ndarray:
    """Serialize each winners row into 6 uint64 words, lexicographic order."""
    out = np.empty((winners.shape[0], len(_CHUNK_WIDTHS)), dtype=np.uint64)
    pos = 0
    for c, width in enumerate(_CHUNK_WIDTHS):
        out[:, c] = winners[:, pos : pos + width].astype(np.uint64) @ _POW3[c]
        pos += width
    return out


def _lex_min_inplace(best: np.ndarray, cand: np.ndarray) -> None:
    take = np.zeros(best.shape[0], dtype=bool)
    decided = np.zeros(best.shape[0], dtype=bool)
    for c in range(best.shape[1]):
        lt = cand[:, c] < best[:, c]
        gt = cand[:, c] > best[:, c]
        take |= lt & ~decided
        decided |= lt | gt
    best[take] = cand[take]


def canonical_keys(winners: np.ndarray) -> np.ndarray:
    """Lexicographically smallest packed table over all player relabelings."""
    best = None
    for sigma in _SIGMAS:
        cand = pack_keys(winners[:, sigma])
        if best is None:
            best = cand
        else:
            _lex_min_inplace(best, cand)
    return best


def swing_counts(winners: np.ndarray) -> np.ndarray:
    """Per-player swing counts for each weight triple; (K, 3) int64."""
    out = np.empty((winners.shape[0], N), dtype=np.int64)
    for i in range(N):
        perturbed = winners[:, _PERTURB[i]]  # (K, 216, 6)
        out[:, i] = (perturbed != winners[:, :, None]).sum(axis=(1, 2))
    return out


def grid_triples(denominator: int) -> np.ndarray:
    """Sorted integer triples summing to the denominator, canonical order.

    Order: w1 descending, then w2 descending, starting from (D, 0, 0).
    """
    if denominator < 1:
        raise ShapeError("grid denominator must be positive")
    rows = []
    for a in range(denominator, -1, -1):
        if 3 * a < denominator:
            break
        for b in range(min(a, denominator - a), -1, -1):
            c = denominator - a - b
            if c > b:
                break
            rows.append((a, b, c))
    return np.array(rows, dtype=np.int64)


# --- exact arrangement faces -------------------------------------------------

# sorted simplex in (x, y) = (w1, w2) coordinates, w3 = 1 - x - y:
# constraints A*x + B*y + C >= 0
_REGION = ((1, -1, 0), (1, 2, -1), (-1, -1, 1))


def tie_lines(s: Fraction) -> list[tuple[int, int, int]]:
    """Distinct normalized score-tie lines restricted to the simplex plane.

    Each player contributes a score difference from {±1, ±s, ±(1-s)} to a
    pairwise comparison of two alternatives, so every boundary between
    regions with different rule mappings lies on one of these lines.
    """
    diffs = {Fraction(1), s, 1 - s}
    diffs |= {-d for d in diffs}
    lines = set(_REGION)
    for d1, d2, d3 in itertools.product(sorted(diffs), repeat=3):
        a_, b_, c_ = d1 - d3, d2 - d3, d3
        if a_ == 0 and b_ == 0:
            continue
        den = math.lcm(a_.denominator, b_.denominator, c_.denominator)
        a, b, c = int(a_ * den), int(b_ * den), int(c_ * den)
        g = math.gcd(math.gcd(abs(a), abs(b)), abs(c))
        a, b, c = a // g, b // g, c // g
        if a < 0 or (a == 0 and b < 0):
            a, b, c = -a, -b, -c
        lines.add((a, b, c))
    return sorted(lines)


def _in_region(x: Fraction, y: Fraction, strict: bool = False) -> bool:
    for a, b, c in _REGION:
        v = a * x + b * y + c
        if v < 0 or (strict and v == 0):
            return False
    return True


def face_points(s: Fraction) -> list[tuple[Fraction, Fraction, Fraction]]:
    """One exact rational weight triple per face of the tie-line arrangement."""
    lines = tie_lines(s)
    verts: set[tuple[Fraction, Fraction]] = set()
    for (a1, b1, c1), (a2, b2, c2) in itertools.combinations(lines, 2):
        det = a1 * b2 - a2 * b1
        if det == 0:
            continue
        x = Fraction(b1 * c2 - b2 * c1, det)
        y = Fraction(a2 * c1 - a1 * c2, det)
        if _in_region(x, y):
            verts.add((x, y))
    points = set(verts)
    on_line = {ln: [] for ln in lines}
    for (x, y) in verts:
        for a, b, c in lines:
            if a * x + b * y + c == 0:
                on_line[(a, b, c)].append((x, y))
    edge_reps = []
    for ln, vs in on_line.items():
        vs.sort()
        for (x1, y1), (x2, y2) in zip(vs, vs[1:]):
            mx, my = (x1 + x2) / 2, (y1 + y2) / 2
            if _in_region(mx, my):
                edge_reps.append((mx, my, ln))
    points.update((x, y) for x, y, _ in edge_reps)
    for x, y, (a, b, c) in edge_reps:
        for sign in (1, -1):
            nx, ny = sign * a, sign * b
            tmin = None
            for a2, b2, c2 in lines:
                if (a2, b2, c2) == (a, b, c):
                    continue
                denom = a2 * nx + b2 * ny
                if denom == 0:
                    continue
                t = -Fraction(a2 * x + b2 * y + c2, denom)
                if t > 0 and (tmin is None or t < tmin):
                    tmin = t
            if tmin is None:
                continue
            cx, cy = x + nx * tmin / 2, y + ny * tmin / 2
            if _in_region(cx, cy, strict=True):
                points.add((cx, cy))
    return [(x, y, 1 - x - y) for (x, y) in sorted(points)]


def integerize(triples: Iterable[tuple[Fraction, Fraction, Fraction]]) -> np.ndarray:
    """Clear denominators and reduce each rational triple to coprime integers."""
    rows = []
    for t in triples:
        den = math.lcm(*(x.denominator for x in t))
        row = [int(x * den) for x in t]
        g = math.gcd(*row)
        if g > 1:
            row = [v // g for v in row]
        rows.append(row)
    return np.array(rows, dtype=np.int64)


# --- power sweep over the full grid ------------------------------------------


@dataclass(frozen=True)
class SweepResult:
    """Swing counts of every sorted grid triple, plus color-scaling extremes."""

    s: Fraction
    denominator: int
    triples: np.ndarray  # (K, 3) int64, canonical grid order
    swings: np.ndarray  # (K, 3) int64, PBI value = swings / 864

    @property
    def max_swings_2(self) -> int:
        return int(self.swings[:, 1].max())

    @property
    def max_swings_3(self) -> int:
        return int(self.swings[:, 2].max())

    @property
    def min_swings_1(self) -> int:
        return int(self.swings[:, 0].min())

    @property
    def max_pbi2(self) -> Fraction:
        return Fraction(self.max_swings_2, DICTATOR_SWINGS)

    @property
    def max_pbi3(self) -> Fraction:
        return Fraction(self.max_swings_3, DICTATOR_SWINGS)

    @property
    def min_pbi1(self) -> Fraction:
        return Fraction(self.min_swings_1, DICTATOR_SWINGS)


_CHUNK = 100_000


def _sweep_chunk(args) -> np.ndarray:
    triples, s = args
    return swing_counts(winners_table(triples, s))


def sweep(s: Fraction, denominator: int, workers: int = 1) -> SweepResult:
    """Penrose-Banzhaf swing counts for every sorted triple on the grid."""
    triples = grid_triples(denominator)
    chunks = [
        (triples[lo : lo + _CHUNK], s) for lo in range(0, len(triples), _CHUNK)
    ]
    if workers > 1 and len(chunks) > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_sweep_chunk, chunks))
    else:
        parts = [_sweep_chunk(chunk) for chunk in chunks]
    swings = np.concatenate(parts) if parts else np.empty((0, N), dtype=np.int64)
    return SweepResult(s, denominator, triples, swings)
