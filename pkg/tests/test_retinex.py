"""Surround-ratio enhancement: blur oracle checks, halo structure, ranges."""

from __future__ import annotations

import numpy as np
import pytest

from inklight import retinex
from inklight.color import lab_derived, srgb_to_lab
from inklight.image import ColorEncoding, PlanarImage

from .oracles import convolution_reference as cref


class TestRetinexParams:
    def test_defaults(self):
        p = retinex.RetinexParams()
        assert p.scales == (15.0, 80.0, 250.0)
        assert p.clip_percent == 0.025

    def test_rejects_nonpositive_scale(self):
        with pytest.raises(ValueError):
            retinex.RetinexParams(scales=(0.0, 5.0))
        with pytest.raises(ValueError):
            retinex.RetinexParams(scales=(-3.0,))

    def test_rejects_non_increasing(self):
        with pytest.raises(ValueError):
            retinex.RetinexParams(scales=(15.0, 15.0, 80.0))
        with pytest.raises(ValueError):
            retinex.RetinexParams(scales=(80.0, 15.0))

    def test_rejects_bad_clip(self):
        with pytest.raises(ValueError):
            retinex.RetinexParams(clip_percent=0.5)
        with pytest.raises(ValueError):
            retinex.RetinexParams(clip_percent=-0.01)

    def test_rejects_empty_scales(self):
        with pytest.raises(ValueError):
            retinex.RetinexParams(scales=())


class TestGaussianBlur:
    def test_kernel_unit_sum(self):
        for sigma in (1.0, 15.0, 80.0, 250.0):
            assert abs(retinex.gaussian_kernel(sigma).sum() - 1.0) < 1e-6

    def test_matches_direct_convolution(self):
        rng = np.random.default_rng(20)
        plane = rng.random((9, 31))
        for sigma in (1.5, 4.0, 11.0):
            fast = retinex.gaussian_blur(plane, sigma)
            slow = np.array(cref.blur_2d(plane.tolist(), sigma))
            assert np.abs(fast - slow).max() < 1e-12

    def test_kernel_wider_than_image(self):
        rng = np.random.default_rng(21)
        plane = rng.random((5, 6))
        fast = retinex.gaussian_blur(plane, 9.0)
        slow = np.array(cref.blur_2d(plane.tolist(), 9.0))
        assert np.abs(fast - slow).max() < 1e-12

    def test_constant_is_fixed_point(self):
        plane = np.full((16, 16), 0.37)
        out = retinex.gaussian_blur(plane, 5.0)
        assert np.abs(out - 0.37).max() < 1e-12


class TestMsrcr:
    def srgb(self, data):
        return PlanarImage(np.asarray(data, dtype=np.float64), ColorEncoding.SRGB)

    def test_constant_image_balances_to_mid(self):
        img = self.srgb(np.full((12, 12, 3), 0.6))
        out = retinex.msrcr_rgb(img, retinex.RetinexParams(scales=(3.0,)))
        assert np.allclose(out.data, 0.5, atol=1e-12)

    def test_output_range_and_tag(self):
        rng = np.random.default_rng(22)
        img = self.srgb(rng.random((24, 24, 3)))
        out = retinex.msrcr_rgb(img, retinex.RetinexParams(scales=(2.0, 6.0)))
        assert (out.data >= 0.0).all() and (out.data <= 1.0).all()
        assert out.encoding is ColorEncoding.SRGB

    def test_step_edge_halo_matches_oracle(self):
        # Horizontal step: left plateau 0.25, right plateau 0.75.
        width = 120
        row = [0.25] * (width // 2) + [0.75] * (width // 2)
        plane = np.tile(np.asarray(row), (6, 1))
        sigma = 8.0

        got = retinex.multiscale_log_ratio(plane, (sigma,))[3]
        surround = cref.blur_1d(row, sigma)
        want = np.log(np.maximum(row, retinex.LOG_EPSILON)) - np.log(surround)
        assert np.abs(got - want).max() < 1e-10

        # Mach-band structure on the oracle signal itself: overshoot just
        # right of the edge above the far-field level, undershoot just left
        # of it below the far-field level.
        edge = width // 2
        far_left = want[4]
        far_right = want[-5]
        assert want[edge] > far_right
        assert want[edge - 1] < far_left
        assert want[edge] == max(want)
        assert want[edge - 1] == min(want)


class TestRetinexCielab:
    def srgb(self, data):
        return PlanarImage(np.asarray(data, dtype=np.float64), ColorEncoding.SRGB)

    def two_ink_chart(self):
        """Flat beige ground with two low-contrast ink strokes."""
        img = np.empty((32, 32, 3))
        img[...] = (0.72, 0.62, 0.45)
        img[8:24, 6:10] = (0.45, 0.38, 0.30)  # faded brown ink
        img[8:24, 20:24] = (0.50, 0.46, 0.42)  # carbon-gray ink
        return self.srgb(img)

    def test_plane_ranges(self):
        rng = np.random.default_rng(23)
        img = self.srgb(rng.random((20, 20, 3)))
        planes = retinex.retinex_lab_planes(img, retinex.RetinexParams(scales=(3.0, 9.0)))
        lum, a, b = planes.planes()
        assert lum.min() >= 0.0 and lum.max() <= 100.0
        assert a.min() >= -128.0 and a.max() <= 127.0
        assert b.min() >= -128.0 and b.max() <= 127.0
        assert planes.encoding is ColorEncoding.CIELAB

    def test_tail_clip_saturates_extremes(self):
        rng = np.random.default_rng(24)
        img = self.srgb(rng.random((20, 20, 3)))
        planes = retinex.retinex_lab_planes(img, retinex.RetinexParams(scales=(3.0,)))
        lum = planes.planes()[0]
        assert lum.min() == 0.0 and lum.max() == 100.0

    def test_constant_image_constant_output(self):
        img = self.srgb(np.full((16, 16, 3), 0.4))
        out = retinex.retinex_cielab(img, retinex.RetinexParams(scales=(3.0,)))
        assert np.allclose(out.data, out.data[0, 0], atol=1e-9)

    def test_output_clipped_srgb(self):
        rng = np.random.default_rng(25)
        img = self.srgb(rng.random((16, 16, 3)))
        out = retinex.retinex_cielab(img, retinex.RetinexParams(scales=(2.0, 5.0)))
        assert (out.data >= 0.0).all() and (out.data <= 1.0).all()
        assert out.encoding is ColorEncoding.SRGB

    def test_two_ink_chart_gains_chroma(self):
        img = self.two_ink_chart()
        out = retinex.retinex_cielab(img, retinex.RetinexParams(scales=(4.0, 12.0)))
        chroma_in = lab_derived(srgb_to_lab(img)).chroma.mean()
        chroma_out = lab_derived(srgb_to_lab(out)).chroma.mean()
        assert chroma_out >= chroma_in
