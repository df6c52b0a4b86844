"""Point and histogram enhancement operations on CIELAB images.

Every operation takes and returns an immutable PlanarImage, touches only the
planes its contract names, and leaves the rest bit-identical. Degenerate
inputs (constant lightness, fully achromatic images) come back unchanged
with a DegenerateInputWarning rather than raising.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import _kernels
from .color import lab_to_srgb, rgb_to_hsv, srgb_to_lab
from .image import ColorEncoding, DegenerateInputWarning, PlanarImage

HISTEQ_BINS = 256
CLAHE_GRID = (8, 8)
CLAHE_CLIP = 0.01
BACKGROUND_HUE_DEG = 246.0  # locus of blue; archetype background target


def stretchlim(img: PlanarImage) -> PlanarImage:
    """Affinely stretch lightness to the full [0, 100] range.

    L' = 100 (L - min L) / (max L - min L); a and b pass through. An image
    already spanning [0, 100] is returned as-is, which also makes the
    operation exactly idempotent.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    lo = float(lum.min())
    hi = float(lum.max())
    if hi == lo:
        warnings.warn("constant lightness; stretch is undefined", DegenerateInputWarning)
        return img
    if lo == 0.0 and hi == 100.0:
        return img
    stretched = 100.0 * (lum - lo) / (hi - lo)
    return img.with_data(np.stack([stretched, a, b], axis=-1))


def negative_lightness(img: PlanarImage) -> PlanarImage:
    """Polarity inversion L' = 100 - L; chroma untouched."""
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    return img.with_data(np.stack([100.0 - lum, a, b], axis=-1))


def vividness_enhance(img: PlanarImage) -> PlanarImage:
    """Replace lightness by vividness, the joint lightness-chroma norm.

    L' = min(100, sqrt(L^2 + a^2 + b^2)). Achromatic pixels are fixed
    points; every chromatic pixel gets strictly lighter before the clip.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    vivid = np.minimum(100.0, np.hypot(lum, np.hypot(a, b)))
    return img.with_data(np.stack([vivid, a, b], axis=-1))


def chroma_sign_flip(img: PlanarImage) -> PlanarImage:
    """Negate both opponent axes: a' = -a, b' = -b. Chroma is preserved."""
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    return img.with_data(np.stack([lum, -a, -b], axis=-1))


def blue_negative(img: PlanarImage) -> PlanarImage:
    """Joint polarity inversion for vividness-lightness images.

    L' = 100 - L, a' = -a, b' = -b in one step; composing it with itself is
    the identity.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    return img.with_data(np.stack([100.0 - lum, -a, -b], axis=-1))


def lsv_enhance(img: PlanarImage) -> PlanarImage:
    """Background attenuation fusing lightness with an HSV separation term.

    From the sRGB input, take L via CIELAB and V, S via HSV; with
    nL = (100 - L)/100 and nVS = |V + S - 1|, the fused score is their mean
    m and the new lightness is L' = 100 (1 - sqrt(m)). The opponent planes
    are carried over from the CIELAB conversion unchanged.
    """
    img.require(ColorEncoding.SRGB)
    lab = srgb_to_lab(img)
    lum, a, b = lab.planes()
    _, s, v = rgb_to_hsv(img).planes()
    n_l = (100.0 - lum) / 100.0
    n_vs = np.abs(v + s - 1.0)
    fused = 0.5 * (n_l + n_vs)
    new_lum = 100.0 * (1.0 - np.sqrt(fused))
    return PlanarImage(np.stack([new_lum, a, b], axis=-1), ColorEncoding.CIELAB)


def hue_shift(
    img: PlanarImage,
    target_hue: float = BACKGROUND_HUE_DEG,
    mask: np.ndarray | None = None,
) -> PlanarImage:
    """Rotate every hue so the dominant hue lands on the target.

    The pivot is the chroma-weighted circular mean hue, atan2 of the summed
    opponent vectors; the mask (when given) restricts which pixels vote for
    the pivot, not which pixels move. Lightness and chroma are untouched.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    if mask is not None:
        mask = np.asarray(mask, dtype=bool)
        if mask.shape != lum.shape:
            raise ValueError(f"mask shape {mask.shape} does not match image {lum.shape}")
        a_vote, b_vote = a[mask], b[mask]
    else:
        a_vote, b_vote = a, b
    if np.hypot(a_vote, b_vote).sum() == 0.0:
        warnings.warn("no chroma to estimate a hue pivot from", DegenerateInputWarning)
        return img
    pivot = np.arctan2(b_vote.sum(), a_vote.sum())
    delta = np.deg2rad(target_hue) - pivot
    cos_d, sin_d = np.cos(delta), np.sin(delta)
    a2 = a * cos_d - b * sin_d
    b2 = a * sin_d + b * cos_d
    return img.with_data(np.stack([lum, a2, b2], axis=-1))


def histeq_lightness(img: PlanarImage, bins: int = HISTEQ_BINS) -> PlanarImage:
    """Global histogram equalization of lightness: L' = 100 cdf(L).

    The CDF is right-closed (fraction of pixels at or below the bin), so a
    constant image maps to 100 everywhere; that degenerate case is the
    documented behavior, not an error.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    idx = np.clip((lum / 100.0 * bins).astype(np.int64), 0, bins - 1)
    hist = np.bincount(idx.ravel(), minlength=bins)
    cdf = np.cumsum(hist) / lum.size
    new_lum = 100.0 * cdf[idx]
    return img.with_data(np.stack([new_lum, a, b], axis=-1))


def clahe_lightness(
    img: PlanarImage,
    grid: tuple[int, int] = CLAHE_GRID,
    clip_limit: float = CLAHE_CLIP,
    bins: int = HISTEQ_BINS,
) -> PlanarImage:
    """Contrast-limited adaptive histogram equalization of lightness.

    Tile histograms over a grid (8x8 by default) are clipped, equalized,
    and blended bilinearly between tile centers. A grid larger than the
    image is shrunk to fit with a warning.
    """
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    rows = min(grid[0], img.height)
    cols = min(grid[1], img.width)
    if rows < 1 or cols < 1:
        raise ValueError("empty image")
    if (rows, cols) != tuple(grid):
        warnings.warn(
            f"grid {grid} larger than image; using ({rows}, {cols})",
            DegenerateInputWarning,
        )
    new_lum = _kernels.clahe(lum, rows, cols, bins, clip_limit, 0.0, 100.0)
    return img.with_data(np.stack([new_lum, a, b], axis=-1))


def cross_spectral_colorize(vis: PlanarImage, nonvis: np.ndarray) -> PlanarImage:
    """Insert a non-visible-band capture as the lightness of a color image.

    The visible image supplies a and b; lightness becomes 100 * nonvis.
    Output is sRGB, clipped to [0, 1].
    """
    vis.require(ColorEncoding.SRGB)
    nonvis = np.asarray(nonvis, dtype=np.float64)
    if nonvis.shape != (vis.height, vis.width):
        raise ValueError(
            f"detail layer shape {nonvis.shape} does not match image "
            f"({vis.height}, {vis.width})"
        )
    lab = srgb_to_lab(vis)
    _, a, b = lab.planes()
    merged = PlanarImage(np.stack([100.0 * nonvis, a, b], axis=-1), ColorEncoding.CIELAB)
    out = lab_to_srgb(merged)
    return out.with_data(np.clip(out.data, 0.0, 1.0))
