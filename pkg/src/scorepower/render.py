"""Simplex maps: power-to-color transform and triangle rasterization.

Each pixel center is mapped to exact rational barycentric coordinates,
sorted in decreasing order, rounded to the nearest weight triple of the
sweep grid, and colored by the swing counts of that triple.  Because the
color is a function of the *sorted* coordinates, the continuous color
field is invariant under all six relabelings of the corners; the raster
samples that field at pixel centers.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np
from PIL import Image

from .errors import ShapeError
from .gridsweep import DICTATOR_SWINGS, SweepResult, sweep

BACKGROUND = (255, 255, 255)


@dataclass(frozen=True)
class Extremes:
    """Color-scaling extremes of a sweep, as swing counts out of 864."""

    max_swings_2: int
    max_swings_3: int
    min_swings_1: int

    @classmethod
    def of(cls, result: SweepResult) -> "Extremes":
        return cls(result.max_swings_2, result.max_swings_3, result.min_swings_1)


def color_of(
    pbi: Sequence[Fraction], extremes: Extremes
) -> tuple[Fraction, Fraction, Fraction]:
    """(R, G, B) intensities in [0, 1] for a sorted-weight power triple.

    R doubles the third player's relative power and is clamped at 1; B is
    the first player's power rescaled so a dictator maps to exactly 1.
    Degenerate extremes fall back to 0 (or 1 for B when min PBI1 = 1).
    """
    p1, p2, p3 = pbi
    max2 = Fraction(extremes.max_swings_2, DICTATOR_SWINGS)
    max3 = Fraction(extremes.max_swings_3, DICTATOR_SWINGS)
    min1 = Fraction(extremes.min_swings_1, DICTATOR_SWINGS)
    r = min(Fraction(1), 2 * p3 / max3) if max3 else Fraction(0)
    g = p2 / max2 if max2 else Fraction(0)
    b = (p1 - min1) / (1 - min1) if min1 != 1 else Fraction(1)
    return (r, g, b)


def channel_byte(intensity: Fraction) -> int:
    """round(255 * intensity), half away from zero, clamped to [0, 255]."""
    value = max(Fraction(0), min(Fraction(1), intensity)) * 255
    q, rem = divmod(value.numerator, value.denominator)
    return int(q + (1 if 2 * rem >= value.denominator else 0))


def color_bytes(pbi: Sequence[Fraction], extremes: Extremes) -> tuple[int, int, int]:
    return tuple(channel_byte(x) for x in color_of(pbi, extremes))


def _color_table(result: SweepResult) -> np.ndarray:
    """Per-grid-triple RGB bytes, computed with exact integer arithmetic."""
    s1 = result.swings[:, 0]
    s2 = result.swings[:, 1]
    s3 = result.swings[:, 2]
    ext = Extremes.of(result)

    def byte(num: np.ndarray, den: int) -> np.ndarray:
        num = np.clip(num, 0, den)
        return ((510 * num + den) // (2 * den)).astype(np.uint8)

    if ext.max_swings_3:
        red = byte(2 * s3, ext.max_swings_3)
    else:
        red = np.zeros(len(s3), dtype=np.uint8)
    if ext.max_swings_2:
        green = byte(s2, ext.max_swings_2)
    else:
        green = np.zeros(len(s2), dtype=np.uint8)
    if ext.min_swings_1 != DICTATOR_SWINGS:
        blue = byte(s1 - ext.min_swings_1, DICTATOR_SWINGS - ext.min_swings_1)
    else:
        blue = np.full(len(s1), 255, dtype=np.uint8)
    return np.stack([red, green, blue], axis=1)


@dataclass(frozen=True)
class Triangle:
    """Pixel-space triangle geometry with exact rational barycentrics.

    Vertices: corner 1 at the top apex, corners 2 and 3 at the bottom left
    and right.  The left/right margin is symmetric, so the vertical mirror
    x -> width-1-x maps pixel centers to pixel centers exactly.
    """

    width: int
    height: int
    vertices: tuple[tuple[Fraction, Fraction], ...]

    @classmethod
    def for_size(cls, size: int, margin: int = 8) -> "Triangle":
        if size < 64:
            raise ShapeError("image size must be at least 64 pixels")
        side = size - 1 - 2 * margin
        tri_height = round(side * math.sqrt(3) / 2)
        height = tri_height + 2 * margin + 1
        apex = (Fraction(size - 1, 2), Fraction(margin))
        left = (Fraction(margin), Fraction(margin + tri_height))
        right = (Fraction(size - 1 - margin), Fraction(margin + tri_height))
        return cls(size, height, (apex, left, right))

    def barycentric_plane(self) -> tuple[np.ndarray, int]:
        """Integer coefficients: bary_i = (A_i x + B_i y + C_i) / denom."""
        v1, v2, v3 = self.vertices
        planes = []
        for (xa, ya), (xb, yb), (xv, yv) in (
            (v2, v3, v1),
            (v3, v1, v2),
            (v1, v2, v3),
        ):
            # edge plane normalized to 1 at the opposite vertex
            a = yb - ya
            b = xa - xb
            c = xb * ya - xa * yb
            scale = a * xv + b * yv + c
            planes.append((a / scale, b / scale, c / scale))
        den = math.lcm(*(f.denominator for plane in planes for f in plane))
        coeff = np.array(
            [[int(f * den) for f in plane] for plane in planes], dtype=np.int64
        )
        return coeff, den


@dataclass
class SimplexImage:
    width: int
    height: int
    pixels: np.ndarray  # (height, width, 3) uint8

    def save(self, path: str | Path) -> None:
        Image.fromarray(self.pixels, mode="RGB").save(path, format="PNG")


def nearest_grid_triples(
    bary_num: np.ndarray, bary_den: int, denominator: int
) -> np.ndarray:
    """Round exact sorted barycentric numerators to grid triples summing to D.

    Per-coordinate nearest rounding, then the sum is repaired by undoing
    the largest rounding errors; operates on already-sorted coordinates so
    the result depends only on the sorted barycentric triple.
    """
    d = denominator
    t = (2 * d * bary_num + bary_den) // (2 * bary_den)
    err = 2 * bary_den * t - 2 * d * bary_num  # rounding error, scaled
    diff = t.sum(axis=1) - d
    while True:
        over = diff > 0
        if not over.any():
            break
        rows = np.nonzero(over)[0]
        idx = err[rows].argmax(axis=1)
        t[rows, idx] -= 1
        err[rows, idx] -= 2 * bary_den
        diff[rows] -= 1
    while True:
        under = diff < 0
        if not under.any():
            break
        rows = np.nonzero(under)[0]
        idx = err[rows].argmin(axis=1)
        t[rows, idx] += 1
        err[rows, idx] += 2 * bary_den
        diff[rows] += 1
    t = np.sort(t, axis=1)[:, ::-1]
    return t


def color_at(
    result: SweepResult, bary: Sequence[Fraction]
) -> tuple[int, int, int]:
    """RGB bytes of the continuous color field at exact barycentric coordinates.

    Sorts the coordinates before rounding to the sweep grid, so the value is
    invariant under all six relabelings of the corners by construction.
    """
    den = math.lcm(*(b.denominator for b in bary))
    num = np.array([sorted((int(b * den) for b in bary), reverse=True)], dtype=np.int64)
    triple = nearest_grid_triples(num, den, result.denominator)[0]
    row = np.nonzero((result.triples == triple).all(axis=1))[0][0]
    pbi = [Fraction(int(c), DICTATOR_SWINGS) for c in result.swings[row]]
    return color_bytes(pbi, Extremes.of(result))


def render_map(
    result: SweepResult, size: int = 900, enlarge_radius: int = 0
) -> SimplexImage:
    """Rasterize one simplex map from a completed sweep."""
    tri = Triangle.for_size(size)
    coeff, den = tri.barycentric_plane()
    xs = np.arange(tri.width, dtype=np.int64)
    ys = np.arange(tri.height, dtype=np.int64)
    gx, gy = np.meshgrid(xs, ys)
    # bary numerators over den, shape (H*W, 3)
    num = (
        coeff[None, :, 0] * gx.reshape(-1, 1)
        + coeff[None, :, 1] * gy.reshape(-1, 1)
        + coeff[None, :, 2]
    )
    inside = (num >= 0).all(axis=1)
    sorted_num = np.sort(num[inside], axis=1)[:, ::-1]
    triples = nearest_grid_triples(sorted_num, den, result.denominator)
    colors = _color_table(result)
    keys = result.triples[:, 0] * (result.denominator + 1) + result.triples[:, 1]
    order = np.argsort(keys)
    wanted = triples[:, 0] * (result.denominator + 1) + triples[:, 1]
    pos = np.searchsorted(keys[order], wanted)
    pixel_colors = colors[order[pos]]

    flat = np.full((tri.height * tri.width, 3), 255, dtype=np.uint8)
    flat[inside] = pixel_colors
    pixels = flat.reshape(tri.height, tri.width, 3)

    if enlarge_radius > 0:
        pixels = _enlarge_thin_classes(
            pixels, inside.reshape(tri.height, tri.width), triples, enlarge_radius
        )
    return SimplexImage(tri.width, tri.height, pixels)


def _enlarge_thin_classes(
    pixels: np.ndarray, inside: np.ndarray, triples: np.ndarray, radius: int
) -> np.ndarray:
    """Dilate pixels whose triple lies on w1=w2, w2=w3, or w3=0.

    Those loci carry the point- and line-shaped classes that are otherwise
    one pixel wide.  Stamped in a fixed offset order, onto in-triangle
    pixels only, so repeated runs are identical.
    """
    thin_flat = np.zeros(inside.size, dtype=bool)
    thin_flat[inside.reshape(-1)] = (
        (triples[:, 0] == triples[:, 1])
        | (triples[:, 1] == triples[:, 2])
        | (triples[:, 2] == 0)
    )
    thin = thin_flat.reshape(inside.shape)
    out = pixels.copy()
    h, w = inside.shape
    ys, xs = np.nonzero(thin)
    source = pixels[ys, xs]
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            if dx * dx + dy * dy > radius * radius:
                continue
            ty, tx = ys + dy, xs + dx
            ok = (ty >= 0) & (ty < h) & (tx >= 0) & (tx < w)
            ok &= inside[ty % h, tx % w]
            out[ty[ok], tx[ok]] = source[ok]
    return out


def s_label(s: Fraction) -> str:
    return str(s.numerator) if s.denominator == 1 else f"{s.numerator}_{s.denominator}"


def render_series(
    s_values: Sequence[Fraction],
    denominator: int,
    size: int,
    out_dir: str | Path,
    enlarge_radius: int = 0,
    sweep_for=None,
    workers: int = 1,
) -> list[Path]:
    """Render one PNG per scoring parameter plus a CSV manifest of extremes."""
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    sweep_for = sweep_for or (lambda s: sweep(s, denominator, workers=workers))
    paths = []
    manifest = out_dir / "manifest.csv"
    with open(manifest, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(["s", "maxPBI2", "maxPBI3", "minPBI1"])
        for s in s_values:
            result = sweep_for(s)
            image = render_map(result, size=size, enlarge_radius=enlarge_radius)
            path = out_dir / f"s{s_label(s)}.png"
            image.save(path)
            paths.append(path)
            writer.writerow(
                [
                    f"{s.numerator}/{s.denominator}",
                    _frac_str(result.max_pbi2),
                    _frac_str(result.max_pbi3),
                    _frac_str(result.min_pbi1),
                ]
            )
    return paths


def _frac_str(f: Fraction) -> str:
    return f"{f.numerator}/{f.denominator}"
