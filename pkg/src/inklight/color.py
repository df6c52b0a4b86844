"""Exact, invertible color-space mathematics.

sRGB and Adobe RGB (1998) transfer functions, the XYZ bridge, CIELAB with a
D65 whitepoint, HSV, CIELAB-derived planes (chroma, hue, vividness), and the
gamut-expansion trick of re-expressing pixel values in Adobe RGB coordinates
while keeping the sRGB tag.

All matrices are derived from the chromaticity coordinates of the primaries,
so forward and inverse conversions are exact matrix inverses of each other
and round trips close to near machine precision.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np

from inklight import _kernels
from inklight.image import ColorEncoding, PlanarImage

# CIE xy chromaticities: (red, green, blue) primaries plus the D65 white.
SRGB_PRIMARIES = ((0.64, 0.33), (0.30, 0.60), (0.15, 0.06))
ADOBE_PRIMARIES = ((0.64, 0.33), (0.21, 0.71), (0.15, 0.06))
D65_XY = (0.3127, 0.3290)

ADOBE_GAMMA = 563.0 / 256.0  # 2.19921875
# Tone curve used for the gamut re-projection only: the nominal gamma-2.2
# curve of the classic sRGB ICC description. Decoding with the piecewise
# IEC 61966-2-1 EOTF instead would shift the gray axis by up to 3e-2 near
# black (the linear toe has no counterpart in the pure-gamma Adobe encode),
# which breaks the fixed-neutral-axis contract of expand_gamut.
SRGB_ICC_GAMMA = 2.2


def _xy_to_xyz(x: float, y: float) -> np.ndarray:
    return np.array([x / y, 1.0, (1.0 - x - y) / y])


def rgb_to_xyz_matrix(primaries, white_xy) -> np.ndarray:
    """Linear RGB -> XYZ matrix for the given primaries and white."""
    cols = np.stack([_xy_to_xyz(x, y) for x, y in primaries], axis=1)
    white = _xy_to_xyz(*white_xy)
    scale = np.linalg.solve(cols, white)
    return cols * scale


D65_WHITE = _xy_to_xyz(*D65_XY)

SRGB_TO_XYZ = rgb_to_xyz_matrix(SRGB_PRIMARIES, D65_XY)
XYZ_TO_SRGB = np.linalg.inv(SRGB_TO_XYZ)
ADOBE_TO_XYZ = rgb_to_xyz_matrix(ADOBE_PRIMARIES, D65_XY)
XYZ_TO_ADOBE = np.linalg.inv(ADOBE_TO_XYZ)
SRGB_TO_ADOBE = XYZ_TO_ADOBE @ SRGB_TO_XYZ

for _m in (SRGB_TO_XYZ, XYZ_TO_SRGB, ADOBE_TO_XYZ, XYZ_TO_ADOBE, SRGB_TO_ADOBE, D65_WHITE):
    _m.flags.writeable = False


def srgb_to_lab(img: PlanarImage) -> PlanarImage:
    """sRGB-encoded values in [0,1] -> CIELAB (D65)."""
    img.require(ColorEncoding.SRGB)
    lab = _kernels.srgb_to_lab(np.ascontiguousarray(img.data), SRGB_TO_XYZ, D65_WHITE)
    return PlanarImage(lab, ColorEncoding.CIELAB)


def lab_to_srgb(img: PlanarImage) -> PlanarImage:
    """CIELAB -> sRGB-encoded. Out-of-gamut results are not clipped here;
    clipping is a distinct pipeline step."""
    img.require(ColorEncoding.CIELAB)
    rgb = _kernels.lab_to_srgb(np.ascontiguousarray(img.data), XYZ_TO_SRGB, D65_WHITE)
    return PlanarImage(rgb, ColorEncoding.SRGB)


def rgb_to_hsv(img: PlanarImage) -> PlanarImage:
    """Encoded RGB -> HSV planes (H in degrees, S and V in [0,1]).

    V = max(R,G,B) and S = (V - min)/V, with S defined as 0 where V = 0.
    """
    img.require(ColorEncoding.SRGB)
    r, g, b = img.planes()
    v = img.data.max(axis=2)
    c = v - img.data.min(axis=2)
    with np.errstate(invalid="ignore", divide="ignore"):
        s = np.where(v > 0.0, c / np.where(v > 0.0, v, 1.0), 0.0)
        cc = np.where(c > 0.0, c, 1.0)
        h = np.select(
            [c == 0.0, v == r, v == g],
            [0.0, (g - b) / cc, (b - r) / cc + 2.0],
            (r - g) / cc + 4.0,
        )
    h = (h * 60.0) % 360.0
    return PlanarImage(np.stack([h, s, v], axis=-1), ColorEncoding.HSV)


def expand_gamut(img: PlanarImage) -> PlanarImage:
    """Re-express sRGB values in Adobe RGB (1998) coordinates, keep the sRGB tag.

    Decode with the sRGB ICC nominal curve (gamma 2.2), apply the
    sRGB->AdobeRGB primary matrix, encode with the Adobe RGB gamma
    (2.19921875), clip to [0,1]. The near-identical gammas leave the neutral
    axis fixed while saturated coordinates contract toward it; presenting the
    result under the narrower sRGB tag then raises apparent chroma (the
    brightness-from-chroma effect) without further numeric manipulation.
    """
    img.require(ColorEncoding.SRGB)
    lin = img.data**SRGB_ICC_GAMMA @ SRGB_TO_ADOBE.T
    encoded = np.clip(lin, 0.0, None) ** (1.0 / ADOBE_GAMMA)
    return PlanarImage(np.clip(encoded, 0.0, 1.0), ColorEncoding.SRGB)


class LabDerived(NamedTuple):
    """Per-pixel planes derived from a CIELAB image."""

    chroma: np.ndarray
    hue: np.ndarray  # degrees in [0, 360); 0 where chroma is 0
    vividness: np.ndarray


def lab_derived(img: PlanarImage) -> LabDerived:
    """Chroma C = hypot(a,b), hue h = atan2(b,a) in [0,360), and vividness,
    the joint lightness-chroma magnitude sqrt(L^2 + a^2 + b^2)."""
    img.require(ColorEncoding.CIELAB)
    lum, a, b = img.planes()
    chroma = np.hypot(a, b)
    hue = np.degrees(np.arctan2(b, a)) % 360.0
    # hypot keeps V == L exact on the neutral axis even for subnormal L,
    # where squaring would underflow to zero.
    vividness = np.hypot(lum, chroma)
    return LabDerived(chroma, hue, vividness)


def clip_to_unit(img: PlanarImage) -> PlanarImage:
    """Clip RGB values to [0,1] (the pipeline's out-of-gamut management)."""
    img.require(ColorEncoding.SRGB)
    return img.with_data(np.clip(img.data, 0.0, 1.0))
