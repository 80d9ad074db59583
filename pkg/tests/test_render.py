"""Renderer determinism, orbit consistency, color classes, overlays."""
import hashlib
import json
from pathlib import Path

import numpy as np
import pytest

import oracles
from zetascape import (ESCAPE_STEPS, QUADRATIC, STEP_PERIOD, ZETA,
                       FamilyKind, IterationParams, MarkerKind, OrbitStatus,
                       Viewport, iterate_orbit, quasi_critical, render_julia,
                       render_overlays, render_parameter_plane, render_portrait)

ADD = FamilyKind.ADDITIVE
MUL = FamilyKind.MULTIPLICATIVE
GOLDEN_DIR = Path(__file__).parent / "golden"


def _is_black(px) -> bool:
    return px[0] == 0 and px[1] == 0 and px[2] == 0


class TestViewport:
    def test_center_pixel(self):
        vp = Viewport(complex(1.0, 2.0), 4.0, 64, 64)
        i, j = vp.to_pixel(complex(1.0, 2.0))
        assert (i, j) == (32, 32)

    def test_roundtrip(self):
        vp = Viewport(complex(-3.0, 7.0), 11.0, 97, 55)
        for (i, j) in [(0, 0), (96, 54), (48, 27), (13, 41)]:
            z = vp.pixel_center(i, j)
            assert vp.to_pixel(z) == (i, j)

    def test_imaginary_axis_up(self):
        vp = Viewport(0.0 + 0.0j, 2.0, 8, 8)
        assert vp.pixel_center(4, 0).imag > vp.pixel_center(4, 7).imag

    def test_grid_matches_scalar(self):
        vp = Viewport(complex(0.3, -1.7), 5.0, 16, 12)
        g = vp.grid()
        for j in (0, 5, 11):
            for i in (0, 7, 15):
                assert g[j, i] == vp.pixel_center(i, j)


class TestDeterminism:
    def test_tiling_and_threads_byte_identical(self):
        vp = Viewport(complex(-2.0, 0.0), 30.0, 64, 64)
        ip = IterationParams(max_iter=50)
        base = render_julia(ZETA, ADD, 0.0, vp, ESCAPE_STEPS, ip)
        for tile_px, workers in [(32, 1), (32, 4), (16, 2), (64, 3)]:
            other = render_julia(ZETA, ADD, 0.0, vp, ESCAPE_STEPS, ip,
                                 tile_px=tile_px, workers=workers)
            assert other.pixels == base.pixels, (tile_px, workers)

    def test_repeat_render_identical(self):
        vp = Viewport(complex(-0.7, 0.0), 3.0, 4, 4)
        a = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS)
        b = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS)
        assert a.pixels == b.pixels

    def test_portrait_tiling(self):
        vp = Viewport(complex(-5.0, 0.0), 40.0, 48, 48)
        a = render_portrait(ZETA, vp)
        b = render_portrait(ZETA, vp, tile_px=16, workers=4)
        assert a.pixels == b.pixels

    def test_supersample_option(self):
        vp = Viewport(complex(-0.7, 0.0), 3.0, 16, 16)
        ip = IterationParams(max_iter=40)
        plain = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip)
        ss = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip,
                                    supersample=2)
        assert len(ss.pixels) == len(plain.pixels)
        assert ss.pixels != plain.pixels  # boundary pixels get averaged
        ss2 = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip,
                                     supersample=2, tile_px=8, workers=3)
        assert ss2.pixels == ss.pixels   # determinism holds when supersampled

    def test_truncated_mode_terms_rise_with_height(self):
        from zetascape.render import _adapt_params
        from zetascape import EvalMode, EvalParams
        ep = EvalParams(mode=EvalMode.TRUNCATED_ETA, terms=64)
        vp = Viewport(complex(0.0, 90.0), 10.0, 32, 32)
        eff = _adapt_params(ep, vp)
        assert eff.terms == 8 * 95  # 8 * ceil(max |Im|)
        low = _adapt_params(ep, Viewport(0j, 4.0, 32, 32))
        assert low.terms == 64


class TestPortrait:
    def test_trivial_zero_pixel_dark(self):
        vp = Viewport(complex(-2.0, 0.0), 0.01, 3, 3)
        img = render_portrait(ZETA, vp)
        px = img.rgba()[1, 1]
        assert px[0] < 30 and px[1] < 30 and px[2] < 30

    def test_derivative_portrait_attracting_region(self):
        # |zeta'| < 1 at -15.339: inside the unit band, not white-band
        vp = Viewport(complex(-15.339, 0.0), 0.01, 3, 3)
        img = render_portrait(ZETA, vp, derivative=True)
        px = img.rgba()[1, 1]
        assert px[0] < 40 and px[2] < 40  # tiny |f| renders dark

    def test_band_at_unit_modulus(self):
        # pixel where |zeta| ~ 1: 1000 on the plateau gives exactly 1
        vp = Viewport(complex(1000.0, 0.0), 0.01, 3, 3)
        img = render_portrait(ZETA, vp)
        assert tuple(img.rgba()[1, 1][:3]) == (255, 255, 255)

    def test_pole_pixel_reserved_color(self):
        vp = Viewport(complex(1.0, 0.0), 1e-14, 3, 3)
        img = render_portrait(ZETA, vp)
        assert tuple(img.rgba()[1, 1][:3]) == (255, 0, 255)

    def test_dirichlet_portrait_renders(self):
        # regression: FunctionId dispatch must reach the L-function kernels
        from zetascape import dirichlet
        img = render_portrait(dirichlet(5, 2), Viewport(0j, 20.0, 8, 8))
        assert len(img.pixels) == 8 * 8 * 4

    def test_dirichlet_julia_renders(self):
        from zetascape import dirichlet
        img = render_julia(dirichlet(4, 2), ADD, 0.0, Viewport(0j, 6.0, 6, 6),
                           ESCAPE_STEPS, IterationParams(max_iter=20))
        assert len(img.pixels) == 6 * 6 * 4

    def test_conjugate_symmetry_of_modulus(self):
        # a viewport centered on the real axis samples conjugate pairs in
        # mirror rows; |f| there is identical, so the brightness mapping
        # (everything except hue) mirrors exactly
        from zetascape.zetafn import zeta_grid
        vp = Viewport(complex(-5.0, 0.0), 20.0, 16, 16)
        g = vp.grid()
        assert np.array_equal(g[3, :], np.conj(g[12, :]))
        f = zeta_grid(g)
        assert np.array_equal(np.abs(f[3, :]), np.abs(f[12, :]))


class TestParameterPlane:
    def test_quadratic_probe_pixels(self):
        vp = Viewport(complex(-0.7, 0.0), 3.0, 64, 64)
        ip = IterationParams(max_iter=80)
        img = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip).rgba()
        for c, want_black in [(0.0 + 0.0j, True), (-1.0 + 0.0j, True), (0.5 + 0.0j, False)]:
            i, j = vp.to_pixel(c)
            assert _is_black(img[j, i]) == want_black, c

    def test_pixel_class_equals_orbit_class(self):
        vp = Viewport(complex(-0.7, 0.0), 3.0, 16, 16)
        ip = IterationParams(max_iter=60)
        img = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip).rgba()
        for j in range(16):
            for i in range(16):
                c = vp.pixel_center(i, j)
                r = iterate_orbit(QUADRATIC, ADD, c, 0.0, ip)
                assert _is_black(img[j, i]) == (r.status is not OrbitStatus.ESCAPED)

    def test_plateau_pixels_bounded(self):
        vp = Viewport(complex(1000.0, 0.0), 4.0, 8, 8)
        img = render_parameter_plane(ZETA, ADD, quasi_critical(ZETA), vp,
                                     ESCAPE_STEPS, IterationParams(max_iter=30)).rgba()
        assert all(_is_black(img[j, i]) for i in range(8) for j in range(8))

    def test_principal_999_bounded(self):
        vp = Viewport(complex(999.0, 0.0), 0.5, 3, 3)
        img = render_parameter_plane(ZETA, ADD, quasi_critical(ZETA), vp,
                                     ESCAPE_STEPS, IterationParams(max_iter=30)).rgba()
        assert _is_black(img[1, 1])

    def test_fig5_step_coloring_correspondence(self):
        # escape/lock step counts at parameter c match the dynamical orbit
        # started on the plateau with that c, across a 16x16 plateau grid
        vp = Viewport(complex(1000.0, 0.0), 20.0, 16, 16)
        ip = IterationParams(max_iter=40)
        from zetascape.dynamics import orbit_batch
        res = orbit_batch(ZETA, ADD, vp.grid(), np.full((16, 16), 1000.0 + 0j), ip)
        for j in range(16):
            for i in range(16):
                c = vp.pixel_center(i, j)
                r = iterate_orbit(ZETA, ADD, c, 1000.0 + 0.0j, ip)
                assert r.steps == int(res["steps"][j, i])
                assert (r.status is OrbitStatus.ESCAPED) == (int(res["status"][j, i]) == 1)


class TestJulia:
    def test_alpha_bounded_and_far_left_escapes(self):
        ip = IterationParams(max_iter=80)
        vp = Viewport(complex(oracles.ALPHA, 0.0), 0.01, 3, 3)
        img = render_julia(ZETA, ADD, 0.0, vp, ESCAPE_STEPS, ip).rgba()
        assert _is_black(img[1, 1])
        r = iterate_orbit(ZETA, ADD, 0.0, oracles.ESCAPE_PROBE_Z0, ip)
        assert r.status is OrbitStatus.ESCAPED
        assert oracles.brute_orbit_escapes(0.0, oracles.ESCAPE_PROBE_Z0)
        vp2 = Viewport(complex(oracles.ESCAPE_PROBE_Z0, 0.0), 0.01, 3, 3)
        img2 = render_julia(ZETA, ADD, 0.0, vp2, ESCAPE_STEPS, ip).rgba()
        assert not _is_black(img2[1, 1])

    def test_quadratic_unit_disk(self):
        ip = IterationParams(max_iter=60)
        vp = Viewport(0j, 4.0, 32, 32)
        img = render_julia(QUADRATIC, ADD, 0.0, vp, ESCAPE_STEPS, ip).rgba()
        for z, want_black in [(0.5 + 0j, True), (0.35 + 0.35j, True),
                              (1.5 + 0j, False), (1.1 + 1.1j, False)]:
            i, j = vp.to_pixel(z)
            assert _is_black(img[j, i]) == want_black, z

    def test_rho613_probe_bounded(self):
        rho = complex(0.5, oracles.RHO_613_T)
        r = iterate_orbit(ZETA, MUL, rho, rho, IterationParams(max_iter=128))
        assert r.status is OrbitStatus.PERIODIC and r.period == 4


class TestStepPeriodScheme:
    def test_period_sets_red_channel(self):
        vp = Viewport(complex(-0.7, 0.0), 3.0, 32, 32)
        ip = IterationParams(max_iter=80)
        img = render_parameter_plane(QUADRATIC, ADD, 0.0, vp, STEP_PERIOD, ip).rgba()
        i, j = vp.to_pixel(0.0 + 0.0j)             # main cardioid: period 1
        assert img[j, i][0] == 32
        i2, j2 = vp.to_pixel(-1.0 + 0.0j)          # period-2 bulb
        assert img[j2, i2][0] == 64


class TestOverlays:
    def test_empty_markers_noop(self):
        vp = Viewport(0j, 4.0, 16, 16)
        img = render_portrait(ZETA, vp)
        out = render_overlays(img, vp, [])
        assert out.pixels == img.pixels

    def test_center_marker_lands_middle(self):
        vp = Viewport(0j, 4.0, 16, 16)
        img = render_portrait(ZETA, vp)
        out = render_overlays(img, vp, [(0j, MarkerKind.PRINCIPAL)]).rgba()
        assert tuple(out[8, 8][:3]) == (255, 220, 0)

    def test_out_of_view_skipped(self):
        vp = Viewport(0j, 4.0, 16, 16)
        img = render_portrait(ZETA, vp)
        out = render_overlays(img, vp, [(100.0 + 0j, MarkerKind.ZERO)])
        assert out.pixels == img.pixels

    def test_distinct_glyphs(self):
        vp = Viewport(0j, 4.0, 32, 32)
        img = render_portrait(ZETA, vp)
        shapes = set()
        for kind in MarkerKind:
            out = render_overlays(img, vp, [(0j, kind)]).rgba()
            diff = np.flatnonzero((out != img.rgba()).any(axis=-1))
            shapes.add(tuple(diff.tolist()))
        assert len(shapes) == len(MarkerKind)


class TestGolden:
    @pytest.mark.parametrize("name,maker", [
        ("julia0_zeta_32", lambda: render_julia(
            ZETA, ADD, 0.0, Viewport(complex(-2.0, 0.0), 30.0, 32, 32),
            ESCAPE_STEPS, IterationParams(max_iter=50))),
        ("portrait_zeta_32", lambda: render_portrait(
            ZETA, Viewport(complex(-5.0, 0.0), 40.0, 32, 32))),
        ("quadratic_period_32", lambda: render_parameter_plane(
            QUADRATIC, ADD, 0.0, Viewport(complex(-0.7, 0.0), 3.0, 32, 32),
            STEP_PERIOD, IterationParams(max_iter=80))),
    ])
    def test_golden_snapshot(self, name, maker):
        """Recorded on first run; guards regressions thereafter."""
        GOLDEN_DIR.mkdir(exist_ok=True)
        path = GOLDEN_DIR / f"{name}.sha256"
        digest = hashlib.sha256(maker().to_png()).hexdigest()
        if not path.exists():
            path.write_text(json.dumps({"sha256": digest}) + "\n")
            pytest.skip(f"golden for {name} recorded on first run")
        want = json.loads(path.read_text())["sha256"]
        assert digest == want, f"golden snapshot {name} changed"
