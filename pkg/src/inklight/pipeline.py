"""The enhancement pipeline: one ordered chain shared by every method.

Order of stages: gamut expansion -> RGB to CIELAB -> method core ->
lightness normalization -> optional polarity negative -> optional opponent
sign flip -> CIELAB to RGB -> clip to [0, 1], tagged sRGB. A method is a
core plus flags for the two optional stages; the catalog below is the one
table the CLI help and the batch runner both read.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Callable

import numpy as np

from . import enhance
from .color import clip_to_unit, expand_gamut, lab_to_srgb, srgb_to_lab
from .image import ColorEncoding, PlanarImage
from .retinex import RetinexParams, msrcr_rgb, retinex_lab_planes


class Method(str, Enum):
    """Catalog method names; the values double as output filename suffixes."""

    ORIGINAL = "original"
    STRETCHLIM = "stretchlim"
    HISTEQ = "histeq"
    ADAPTHISTEQ = "adapthisteq"
    RETINEX = "retinex"
    LSV = "lsv"
    VIVIDNESS = "vividness"
    NEGLSV = "neglsv"
    NEGVIVIDNESS = "negvividness"
    HUESHIFT = "hueshift"
    RETINEX_CIELAB = "retinex_cielab"
    BLUE_NEGATIVE = "blue_negative"
    CROSS_SPECTRAL = "cross_spectral"


#: The standard comparison set, in presentation order.
DEFAULT_METHODS: tuple[Method, ...] = (
    Method.ORIGINAL,
    Method.STRETCHLIM,
    Method.HISTEQ,
    Method.ADAPTHISTEQ,
    Method.RETINEX,
    Method.LSV,
    Method.VIVIDNESS,
    Method.NEGLSV,
    Method.NEGVIVIDNESS,
    Method.HUESHIFT,
)


@dataclass(frozen=True)
class CatalogEntry:
    """How one method plugs into the shared chain."""

    negative: bool
    sign_flip: bool
    blurb: str


CATALOG: dict[Method, CatalogEntry] = {
    Method.ORIGINAL: CatalogEntry(False, False, "gamut expansion and lightness normalization only"),
    Method.STRETCHLIM: CatalogEntry(False, False, "full-range lightness stretch (same output as original)"),
    Method.HISTEQ: CatalogEntry(False, False, "global lightness histogram equalization"),
    Method.ADAPTHISTEQ: CatalogEntry(False, False, "tile-adaptive contrast-limited equalization"),
    Method.RETINEX: CatalogEntry(False, False, "multi-scale surround ratio per RGB channel"),
    Method.LSV: CatalogEntry(False, False, "background attenuation from lightness and HSV separation"),
    Method.VIVIDNESS: CatalogEntry(False, False, "lightness replaced by the lightness-chroma norm"),
    Method.NEGLSV: CatalogEntry(True, True, "lsv, presented as a color negative"),
    Method.NEGVIVIDNESS: CatalogEntry(True, True, "vividness, presented as a color negative"),
    Method.HUESHIFT: CatalogEntry(False, False, "rotate the dominant hue onto the blue background locus"),
    Method.RETINEX_CIELAB: CatalogEntry(False, False, "surround ratio on vividness and opponent planes"),
    Method.BLUE_NEGATIVE: CatalogEntry(False, False, "CIELAB surround ratio with joint polarity inversion"),
    Method.CROSS_SPECTRAL: CatalogEntry(False, False, "non-visible band inserted as lightness"),
}


@dataclass(frozen=True)
class EnhancementRecipe:
    """A method plus every tunable the chain reads.

    Defaults reproduce the standard comparison configuration; the
    preprocessing flags exist so callers can run a bare core.
    """

    method: Method | str
    retinex: RetinexParams = field(default_factory=RetinexParams)
    clahe_grid: tuple[int, int] = enhance.CLAHE_GRID
    clahe_clip: float = enhance.CLAHE_CLIP
    histeq_bins: int = enhance.HISTEQ_BINS
    hue_target: float = enhance.BACKGROUND_HUE_DEG
    hue_mask: np.ndarray | None = None
    nonvis: np.ndarray | None = None
    expand_gamut: bool = True
    normalize_lightness: bool = True

    def resolved_method(self) -> Method:
        try:
            return Method(self.method)
        except ValueError:
            known = ", ".join(m.value for m in Method)
            raise ValueError(f"unknown method {self.method!r}; expected one of: {known}") from None


def _core_to_lab(img: PlanarImage, method: Method, recipe: EnhancementRecipe) -> PlanarImage:
    """Run the method core on the expanded sRGB image, landing in CIELAB."""
    if method in (Method.ORIGINAL, Method.STRETCHLIM):
        return srgb_to_lab(img)
    if method == Method.HISTEQ:
        return enhance.histeq_lightness(srgb_to_lab(img), recipe.histeq_bins)
    if method == Method.ADAPTHISTEQ:
        return enhance.clahe_lightness(srgb_to_lab(img), recipe.clahe_grid, recipe.clahe_clip)
    if method == Method.RETINEX:
        return srgb_to_lab(msrcr_rgb(img, recipe.retinex))
    if method in (Method.LSV, Method.NEGLSV):
        return enhance.lsv_enhance(img)
    if method in (Method.VIVIDNESS, Method.NEGVIVIDNESS):
        return enhance.vividness_enhance(srgb_to_lab(img))
    if method == Method.HUESHIFT:
        return enhance.hue_shift(srgb_to_lab(img), recipe.hue_target, recipe.hue_mask)
    if method == Method.RETINEX_CIELAB:
        return retinex_lab_planes(img, recipe.retinex)
    if method == Method.BLUE_NEGATIVE:
        return enhance.blue_negative(retinex_lab_planes(img, recipe.retinex))
    if method == Method.CROSS_SPECTRAL:
        if recipe.nonvis is None:
            raise ValueError("cross_spectral needs a non-visible detail layer (nonvis)")
        merged = enhance.cross_spectral_colorize(img, recipe.nonvis)
        return srgb_to_lab(merged)
    raise ValueError(f"unhandled method {method}")


def run_pipeline(img: PlanarImage, recipe: EnhancementRecipe) -> PlanarImage:
    """Apply one catalog method through the shared stage order.

    Accepts sRGB or CIELAB input (CIELAB is first rendered to clipped
    sRGB so every core sees the same starting encoding). Output is always
    in [0, 1] and tagged sRGB.
    """
    method = recipe.resolved_method()
    entry = CATALOG[method]

    if img.encoding is ColorEncoding.CIELAB:
        rendered = lab_to_srgb(img)
        img = rendered.with_data(np.clip(rendered.data, 0.0, 1.0))
    img.require(ColorEncoding.SRGB)

    if recipe.expand_gamut:
        img = expand_gamut(img)
    lab = _core_to_lab(img, method, recipe)
    if recipe.normalize_lightness:
        lab = enhance.stretchlim(lab)
    if entry.negative:
        lab = enhance.negative_lightness(lab)
    if entry.sign_flip:
        lab = enhance.chroma_sign_flip(lab)
    return clip_to_unit(lab_to_srgb(lab))


def run_catalog(
    img: PlanarImage,
    methods: tuple[Method, ...] = DEFAULT_METHODS,
    recipe_for: Callable[[Method], EnhancementRecipe] | None = None,
) -> dict[Method, PlanarImage]:
    """Run several methods on one image; recipes default per method."""
    out: dict[Method, PlanarImage] = {}
    for method in methods:
        recipe = recipe_for(method) if recipe_for else EnhancementRecipe(method)
        out[method] = run_pipeline(img, recipe)
    return out
