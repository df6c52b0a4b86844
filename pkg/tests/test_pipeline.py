"""Pipeline composition: stage order, shorthand equivalences, determinism."""

from __future__ import annotations

import numpy as np
import pytest

from inklight import enhance
from inklight.color import expand_gamut, lab_derived, srgb_to_lab
from inklight.image import ColorEncoding, PlanarImage
from inklight.pipeline import (
    CATALOG,
    DEFAULT_METHODS,
    EnhancementRecipe,
    Method,
    run_catalog,
    run_pipeline,
)
from inklight.retinex import RetinexParams

FAST_RETINEX = RetinexParams(scales=(2.0, 6.0))


def sample_image(seed=0, shape=(24, 24)):
    rng = np.random.default_rng(seed)
    base = np.empty(shape + (3,))
    base[...] = (0.70, 0.60, 0.44)
    base += rng.normal(0.0, 0.05, size=base.shape)
    return PlanarImage(np.clip(base, 0.0, 1.0), ColorEncoding.SRGB)


def recipe(method, **kw):
    kw.setdefault("retinex", FAST_RETINEX)
    return EnhancementRecipe(method, **kw)


class TestMethodEnum:
    def test_all_catalog_methods_listed(self):
        assert set(CATALOG) == set(Method)

    def test_default_set_is_ten(self):
        assert len(DEFAULT_METHODS) == 10
        assert [m.value for m in DEFAULT_METHODS] == [
            "original",
            "stretchlim",
            "histeq",
            "adapthisteq",
            "retinex",
            "lsv",
            "vividness",
            "neglsv",
            "negvividness",
            "hueshift",
        ]

    def test_unknown_method_named_in_error(self):
        with pytest.raises(ValueError, match="locallapfilt"):
            run_pipeline(sample_image(), EnhancementRecipe("locallapfilt"))


class TestChain:
    def test_original_equals_stretchlim(self):
        img = sample_image(1)
        a = run_pipeline(img, recipe(Method.ORIGINAL))
        b = run_pipeline(img, recipe(Method.STRETCHLIM))
        assert np.array_equal(a.data, b.data)

    def test_original_is_expand_plus_normalize(self):
        img = sample_image(2)
        got = run_pipeline(img, recipe(Method.ORIGINAL))
        lab = srgb_to_lab(expand_gamut(img))
        want = enhance.stretchlim(lab)
        from inklight.color import clip_to_unit, lab_to_srgb

        want_rgb = clip_to_unit(lab_to_srgb(want))
        assert np.array_equal(got.data, want_rgb.data)

    def test_negvividness_on_neutral_equals_negated_stretch(self):
        gray = np.linspace(0.2, 0.8, 64).reshape(8, 8)
        img = PlanarImage(np.stack([gray] * 3, axis=-1), ColorEncoding.SRGB)
        got = run_pipeline(img, recipe(Method.NEGVIVIDNESS))
        lab = enhance.stretchlim(srgb_to_lab(expand_gamut(img)))
        from inklight.color import clip_to_unit, lab_to_srgb

        want = clip_to_unit(lab_to_srgb(enhance.negative_lightness(lab)))
        # The sign flip is identity on exact neutrals; tiny matrix asymmetry
        # leaves sub-1e-6 opponent residue, hence the tolerance.
        assert np.abs(got.data - want.data).max() < 1e-5

    def test_shorthand_decompositions(self):
        img = sample_image(3)
        vivid = run_pipeline(img, recipe(Method.VIVIDNESS))
        neg = run_pipeline(img, recipe(Method.NEGVIVIDNESS))
        lab = enhance.stretchlim(enhance.vividness_enhance(srgb_to_lab(expand_gamut(img))))
        from inklight.color import clip_to_unit, lab_to_srgb

        assert np.array_equal(vivid.data, clip_to_unit(lab_to_srgb(lab)).data)
        flipped = enhance.chroma_sign_flip(enhance.negative_lightness(lab))
        assert np.array_equal(neg.data, clip_to_unit(lab_to_srgb(flipped)).data)

    def test_every_method_in_unit_range(self):
        img = sample_image(4)
        results = run_catalog(img, DEFAULT_METHODS, recipe_for=lambda m: recipe(m))
        for method, out in results.items():
            assert out.encoding is ColorEncoding.SRGB, method
            assert out.data.min() >= 0.0 and out.data.max() <= 1.0, method

    def test_cielab_input_accepted(self):
        img = sample_image(5)
        lab = srgb_to_lab(img)
        out = run_pipeline(lab, recipe(Method.VIVIDNESS))
        want = run_pipeline(img, recipe(Method.VIVIDNESS))
        assert np.abs(out.data - want.data).max() < 1e-4

    def test_hsv_input_rejected(self):
        img = PlanarImage(np.zeros((4, 4, 3)), ColorEncoding.HSV)
        with pytest.raises(Exception):
            run_pipeline(img, recipe(Method.ORIGINAL))

    def test_cross_spectral_needs_layer(self):
        with pytest.raises(ValueError, match="nonvis"):
            run_pipeline(sample_image(6), recipe(Method.CROSS_SPECTRAL))

    def test_cross_spectral_runs_with_layer(self):
        img = sample_image(7)
        layer = np.linspace(0, 1, img.height * img.width).reshape(img.height, img.width)
        out = run_pipeline(img, recipe(Method.CROSS_SPECTRAL, nonvis=layer))
        assert out.data.min() >= 0.0 and out.data.max() <= 1.0

    def test_preprocess_flags(self):
        img = sample_image(8)
        bare = run_pipeline(
            img, recipe(Method.VIVIDNESS, expand_gamut=False, normalize_lightness=False)
        )
        from inklight.color import clip_to_unit, lab_to_srgb

        want = clip_to_unit(lab_to_srgb(enhance.vividness_enhance(srgb_to_lab(img))))
        assert np.array_equal(bare.data, want.data)


class TestDeterminism:
    def test_bit_identical_reruns(self):
        img = sample_image(9, shape=(33, 41))
        for method in (Method.RETINEX, Method.ADAPTHISTEQ, Method.NEGVIVIDNESS):
            a = run_pipeline(img, recipe(method))
            b = run_pipeline(img, recipe(method))
            assert np.array_equal(a.data, b.data), method


class TestLightnessGeometry:
    """Chroma/lightness movement contracts of the three core moves."""

    def test_stretchlim_moves_lightness_only(self):
        rng = np.random.default_rng(30)
        lab = PlanarImage(
            rng.uniform([20, -40, -40], [80, 40, 40], size=(8, 8, 3)), ColorEncoding.CIELAB
        )
        out = enhance.stretchlim(lab)
        assert np.array_equal(lab_derived(out).chroma, lab_derived(lab).chroma)
        assert not np.array_equal(out.planes()[0], lab.planes()[0])

    def test_expand_gamut_fixes_neutrals_changes_chroma(self):
        g = np.linspace(0.1, 0.9, 16)
        neutral = PlanarImage(np.stack([g, g, g], axis=-1)[None], ColorEncoding.SRGB)
        assert np.abs(expand_gamut(neutral).data - neutral.data).max() < 1e-3

        sat = PlanarImage(np.array([[[0.9, 0.2, 0.1]]]), ColorEncoding.SRGB)
        before = lab_derived(srgb_to_lab(sat)).chroma[0, 0]
        after = lab_derived(srgb_to_lab(expand_gamut(sat))).chroma[0, 0]
        assert abs(after - before) > 1.0

    def test_vividness_fixes_opponents_raises_lightness(self):
        lab = PlanarImage(np.array([[[40.0, 25.0, -15.0]]]), ColorEncoding.CIELAB)
        out = enhance.vividness_enhance(lab)
        assert np.array_equal(out.data[..., 1:], lab.data[..., 1:])
        assert out.planes()[0][0, 0] > 40.0
