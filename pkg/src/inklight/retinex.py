"""Multi-scale surround-ratio enhancement in RGB and CIELAB domains.

The surround at each scale is a Gaussian blur of the image; the enhancement
signal is the mean over scales of log(pixel) - log(surround). RGB and
CIELAB variants share that core and differ in which planes it runs on and
how the result is renormalized.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .color import lab_derived, lab_to_srgb, srgb_to_lab
from .image import ColorEncoding, PlanarImage

LOG_EPSILON = 1.0 / 65536.0  # floor before log; also the darkest treated level
DEFAULT_SCALES = (15.0, 80.0, 250.0)
DEFAULT_CLIP = 0.025  # fraction saturated per tail
KERNEL_TRUNCATE = 4.0  # kernel radius in standard deviations


@dataclass(frozen=True)
class RetinexParams:
    """Surround scales and tail-clip fraction for the retinex family."""

    scales: tuple[float, ...] = DEFAULT_SCALES
    clip_percent: float = DEFAULT_CLIP

    def __post_init__(self) -> None:
        scales = tuple(float(s) for s in self.scales)
        if not scales:
            raise ValueError("at least one surround scale is required")
        if any(s <= 0.0 for s in scales):
            raise ValueError(f"scales must be strictly positive: {scales}")
        if any(b <= a for a, b in zip(scales, scales[1:])):
            raise ValueError(f"scales must be strictly increasing: {scales}")
        if not 0.0 <= self.clip_percent < 0.5:
            raise ValueError(f"clip_percent must be in [0, 0.5): {self.clip_percent}")
        object.__setattr__(self, "scales", scales)


def gaussian_kernel(sigma: float, truncate: float = KERNEL_TRUNCATE) -> np.ndarray:
    """Unit-sum Gaussian sampled at integer offsets out to truncate*sigma."""
    radius = int(truncate * sigma + 0.5)
    offsets = np.arange(-radius, radius + 1, dtype=np.float64)
    taps = np.exp(-(offsets**2) / (2.0 * sigma * sigma))
    return taps / taps.sum()


def _blur_axis(arr: np.ndarray, sigma: float, axis: int, truncate: float) -> np.ndarray:
    kernel = gaussian_kernel(sigma, truncate)
    radius = (len(kernel) - 1) // 2
    n = arr.shape[axis]
    pad = [(0, 0)] * arr.ndim
    pad[axis] = (radius, radius)
    padded = np.pad(arr, pad, mode="symmetric")
    # Linear convolution by FFT: length must cover padded signal + kernel - 1.
    size = n + 4 * radius + 1
    spec = np.fft.rfft(padded, n=size, axis=axis)
    kspec = np.fft.rfft(kernel, n=size)
    shape = [1] * arr.ndim
    shape[axis] = len(kspec)
    conv = np.fft.irfft(spec * kspec.reshape(shape), n=size, axis=axis)
    sl = [slice(None)] * arr.ndim
    sl[axis] = slice(2 * radius, 2 * radius + n)
    return conv[tuple(sl)]


def gaussian_blur(
    plane: np.ndarray, sigma: float, truncate: float = KERNEL_TRUNCATE
) -> np.ndarray:
    """Separable 2-D Gaussian blur with symmetric boundary extension.

    Runs each axis as an FFT linear convolution; the kernel radius may
    exceed the image size (the extension keeps reflecting).
    """
    plane = np.asarray(plane, dtype=np.float64)
    out = _blur_axis(plane, sigma, 0, truncate)
    return _blur_axis(out, sigma, 1, truncate)


def multiscale_log_ratio(plane: np.ndarray, scales: tuple[float, ...]) -> np.ndarray:
    """Mean over scales of log(pixel / surround), the retinex core signal."""
    plane = np.maximum(np.asarray(plane, dtype=np.float64), LOG_EPSILON)
    if plane.min() == plane.max():
        # A constant plane is its own surround at every scale. Short-circuit
        # to an exact zero signal: the FFT residue (~1e-16) would otherwise
        # be stretched to full range by the downstream balance.
        return np.zeros_like(plane)
    log_plane = np.log(plane)
    acc = np.zeros_like(plane)
    for sigma in scales:
        surround = np.maximum(gaussian_blur(plane, sigma), LOG_EPSILON)
        acc += log_plane - np.log(surround)
    return acc / len(scales)


def simplest_balance(plane: np.ndarray, clip_percent: float) -> np.ndarray:
    """Clip each tail at its quantile and rescale affinely to [0, 1].

    A constant plane has no spread to stretch and comes back as 0.5
    everywhere, the declared degenerate behavior.
    """
    plane = np.asarray(plane, dtype=np.float64)
    lo = float(np.quantile(plane, clip_percent))
    hi = float(np.quantile(plane, 1.0 - clip_percent))
    if hi == lo:
        return np.full_like(plane, 0.5)
    return np.clip((plane - lo) / (hi - lo), 0.0, 1.0)


def msrcr_rgb(img: PlanarImage, params: RetinexParams | None = None) -> PlanarImage:
    """Multi-scale surround enhancement per RGB channel with color balance.

    Each channel independently gets the log-ratio core and then a
    simplest-color-balance rescale (tail clip + affine stretch to [0, 1]).
    """
    img.require(ColorEncoding.SRGB)
    params = params or RetinexParams()
    channels = []
    for c in range(3):
        signal = multiscale_log_ratio(img.data[..., c], params.scales)
        channels.append(simplest_balance(signal, params.clip_percent))
    return PlanarImage(np.stack(channels, axis=-1), ColorEncoding.SRGB)


def _unit_normalize(plane: np.ndarray) -> np.ndarray:
    """Affine map of a plane onto [0, 1]; constant planes pin to 0.5."""
    lo = float(plane.min())
    hi = float(plane.max())
    if hi == lo:
        return np.full_like(plane, 0.5)
    return (plane - lo) / (hi - lo)


def retinex_lab_planes(img: PlanarImage, params: RetinexParams | None = None) -> PlanarImage:
    """Retinex core on vividness-lightness and opponent planes.

    The image goes to CIELAB with vividness substituted for lightness; each
    of the three planes is mapped onto [0, 1] (the log needs positive
    input), run through the multi-scale core with tail clipping, and
    rescaled to [0, 100] / [-128, 127] / [-128, 127]. The result is a
    CIELAB-tagged image whose lightness is the processed vividness.
    """
    img.require(ColorEncoding.SRGB)
    params = params or RetinexParams()
    lab = srgb_to_lab(img)
    _, a, b = lab.planes()
    vivid = lab_derived(lab).vividness

    processed = []
    for plane in (vivid, a, b):
        signal = multiscale_log_ratio(_unit_normalize(plane), params.scales)
        processed.append(simplest_balance(signal, params.clip_percent))
    new_lum = 100.0 * processed[0]
    new_a = 255.0 * processed[1] - 128.0
    new_b = 255.0 * processed[2] - 128.0
    return PlanarImage(np.stack([new_lum, new_a, new_b], axis=-1), ColorEncoding.CIELAB)


def retinex_cielab(img: PlanarImage, params: RetinexParams | None = None) -> PlanarImage:
    """CIELAB-domain retinex: process planes, then back to clipped sRGB."""
    out = lab_to_srgb(retinex_lab_planes(img, params))
    return out.with_data(np.clip(out.data, 0.0, 1.0))
