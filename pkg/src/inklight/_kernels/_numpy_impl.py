"""Pure-numpy implementations of the hot pixel kernels.

This is the fallback backend: same contracts as the compiled extension in
``_fast.pyx``, chosen at import time by the package `_kernels` init. Keep the
two in lockstep; the test suite cross-checks them whenever both are present.
"""

from __future__ import annotations

import numpy as np

# CIE f(t) breakpoints, delta = 6/29
_DELTA = 6.0 / 29.0
_DELTA3 = _DELTA**3
_FSLOPE = 1.0 / (3.0 * _DELTA**2)
_FOFFSET = 4.0 / 29.0


def srgb_decode(x: np.ndarray) -> np.ndarray:
    """sRGB electro-optical transfer function (encoded -> linear)."""
    x = np.asarray(x, dtype=np.float64)
    return np.where(x <= 0.04045, x / 12.92, ((x + 0.055) / 1.055) ** 2.4)


def srgb_encode(x: np.ndarray) -> np.ndarray:
    """Inverse sRGB transfer function (linear -> encoded).

    Negative inputs stay on the linear branch so out-of-gamut values survive
    the trip without turning into NaN; clipping is a separate pipeline step.
    """
    x = np.asarray(x, dtype=np.float64)
    safe = np.where(x > 0.0031308, x, 1.0)
    return np.where(x <= 0.0031308, 12.92 * x, 1.055 * safe ** (1.0 / 2.4) - 0.055)


def _lab_f(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA3, np.cbrt(t), _FSLOPE * t + _FOFFSET)


def _lab_finv(t: np.ndarray) -> np.ndarray:
    return np.where(t > _DELTA, t**3, (t - _FOFFSET) / _FSLOPE)


def srgb_to_lab(rgb: np.ndarray, matrix: np.ndarray, white: np.ndarray) -> np.ndarray:
    """Full per-pixel chain: sRGB decode -> XYZ (via ``matrix``) -> CIELAB."""
    lin = srgb_decode(rgb)
    xyz = lin @ matrix.T
    f = _lab_f(xyz / white)
    out = np.empty_like(xyz)
    out[..., 0] = 116.0 * f[..., 1] - 16.0
    out[..., 1] = 500.0 * (f[..., 0] - f[..., 1])
    out[..., 2] = 200.0 * (f[..., 1] - f[..., 2])
    return out


def lab_to_srgb(lab: np.ndarray, inv_matrix: np.ndarray, white: np.ndarray) -> np.ndarray:
    """Inverse chain: CIELAB -> XYZ -> linear RGB (via ``inv_matrix``) -> sRGB.

    Out-of-gamut results are not clipped.
    """
    lab = np.asarray(lab, dtype=np.float64)
    fy = (lab[..., 0] + 16.0) / 116.0
    fx = fy + lab[..., 1] / 500.0
    fz = fy - lab[..., 2] / 200.0
    xyz = np.stack([_lab_finv(fx), _lab_finv(fy), _lab_finv(fz)], axis=-1) * white
    lin = xyz @ inv_matrix.T
    return srgb_encode(lin)


def clahe(
    plane: np.ndarray,
    grid_rows: int,
    grid_cols: int,
    nbins: int,
    clip_limit: float,
    lo: float,
    hi: float,
) -> np.ndarray:
    """Contrast-limited adaptive histogram equalization of one plane.

    Tiles are an even integer split of the image (leading tiles absorb the
    remainder); each tile histogram is clipped at
    ``max(clip_limit * area, area / nbins)`` with the excess redistributed
    uniformly, and per-pixel mappings blend up to four tile CDFs bilinearly
    by tile-center distance.
    """
    h, w = plane.shape
    span = hi - lo
    bins = np.clip(((plane - lo) / span * nbins).astype(np.int64), 0, nbins - 1)

    row_edges = _tile_edges(h, grid_rows)
    col_edges = _tile_edges(w, grid_cols)
    row_centers = (row_edges[:-1] + row_edges[1:] - 1) / 2.0
    col_centers = (col_edges[:-1] + col_edges[1:] - 1) / 2.0

    mappings = np.empty((grid_rows, grid_cols, nbins))
    for ti in range(grid_rows):
        for tj in range(grid_cols):
            tile = bins[row_edges[ti] : row_edges[ti + 1], col_edges[tj] : col_edges[tj + 1]]
            area = tile.size
            hist = np.bincount(tile.ravel(), minlength=nbins).astype(np.float64)
            limit = max(clip_limit * area, area / nbins)
            excess = np.maximum(hist - limit, 0.0).sum()
            hist = np.minimum(hist, limit) + excess / nbins
            mappings[ti, tj] = lo + span * np.cumsum(hist) / area

    i0, i1, wy = _blend_axis(np.arange(h, dtype=np.float64), row_centers)
    j0, j1, wx = _blend_axis(np.arange(w, dtype=np.float64), col_centers)

    i0 = i0[:, None]
    i1 = i1[:, None]
    wy = wy[:, None]
    j0 = j0[None, :]
    j1 = j1[None, :]
    wx = wx[None, :]
    out = (1.0 - wy) * ((1.0 - wx) * mappings[i0, j0, bins] + wx * mappings[i0, j1, bins])
    out += wy * ((1.0 - wx) * mappings[i1, j0, bins] + wx * mappings[i1, j1, bins])
    return out


def _tile_edges(size: int, tiles: int) -> np.ndarray:
    """Boundaries of an even integer split of ``size`` into ``tiles`` runs."""
    base, rem = divmod(size, tiles)
    sizes = np.full(tiles, base, dtype=np.int64)
    sizes[:rem] += 1
    return np.concatenate([[0], np.cumsum(sizes)])


def _blend_axis(coords: np.ndarray, centers: np.ndarray):
    """Neighbor tile indices and blend weight along one axis.

    Positions outside the first/last tile center clamp to that tile
    (weight 0 toward the missing neighbor).
    """
    idx = np.searchsorted(centers, coords, side="right") - 1
    i0 = np.clip(idx, 0, len(centers) - 1)
    i1 = np.clip(idx + 1, 0, len(centers) - 1)
    gap = centers[i1] - centers[i0]
    with np.errstate(invalid="ignore", divide="ignore"):
        weight = np.where(gap > 0, (coords - centers[i0]) / np.where(gap > 0, gap, 1.0), 0.0)
    return i0, i1, np.clip(weight, 0.0, 1.0)
