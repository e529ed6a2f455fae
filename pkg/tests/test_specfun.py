from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from bouncerate import aux_f, aux_g, cos_integral, sin_integral
from bouncerate.specfun import EULER_GAMMA, aux_fg


def si_series(x: float, terms: int = 60) -> float:
    """Power-series oracle: Si(x) = Σ (-1)^k x^{2k+1} / ((2k+1)(2k+1)!)."""
    total, term = 0.0, x
    for k in range(terms):
        total += term / (2 * k + 1)
        term *= -x * x / ((2 * k + 2) * (2 * k + 3))
    return total


def ci_series(x: float, terms: int = 60) -> float:
    """Series oracle: Ci(x) = C + ln x + Σ (-1)^k x^{2k} / (2k (2k)!)."""
    total = EULER_GAMMA + math.log(x)
    term = -x * x / 2.0
    for k in range(1, terms):
        total += term / (2 * k)
        term *= -x * x / ((2 * k + 1) * (2 * k + 2))
    return total


def fourier_oracle(z: complex, kind: str) -> complex:
    re = quad(lambda u: (1.0 / (z + u)).real, 0, np.inf, weight=kind, wvar=1.0, limit=300)[0]
    im = quad(lambda u: (1.0 / (z + u)).imag, 0, np.inf, weight=kind, wvar=1.0, limit=300)[0]
    return re + 1j * im


class TestSinCosIntegrals:
    def test_si_at_zero(self):
        assert sin_integral(0.0) == 0.0

    def test_si_asymptote(self):
        assert abs(sin_integral(1000.0) - math.pi / 2) < 1e-3

    def test_si_series_value(self):
        assert sin_integral(1.0) == pytest.approx(0.946083070367183, abs=1e-12)
        assert sin_integral(1.0) == pytest.approx(si_series(1.0), abs=1e-13)

    def test_ci_small_x_log_law(self):
        x = 1e-6
        assert cos_integral(x) == pytest.approx(EULER_GAMMA + math.log(x), abs=1e-11)

    def test_ci_asymptote(self):
        assert abs(cos_integral(1000.0)) < 1e-3

    def test_ci_series_value(self):
        assert cos_integral(1.0) == pytest.approx(0.337403922900968, abs=1e-12)
        assert cos_integral(1.0) == pytest.approx(ci_series(1.0), abs=1e-13)

    def test_domains(self):
        with pytest.raises(ValueError):
            sin_integral(-1.0)
        with pytest.raises(ValueError):
            cos_integral(0.0)
        with pytest.raises(ValueError):
            cos_integral(-2.0)

    def test_derivatives_by_central_differences(self):
        h = 1e-5
        for x in np.linspace(0.5, 30.0, 12):
            dsi = (sin_integral(x + h) - sin_integral(x - h)) / (2 * h)
            dci = (cos_integral(x + h) - cos_integral(x - h)) / (2 * h)
            assert dsi == pytest.approx(math.sin(x) / x, abs=1e-6)
            assert dci == pytest.approx(math.cos(x) / x, abs=1e-6)


class TestAuxiliaryPair:
    def test_f_small_argument_limit(self):
        # f(z) -> π/2 as z -> 0+ (the full sine integral)
        assert abs(aux_f(1e-8) - math.pi / 2) < 1e-6

    def test_f_large_real_asymptote(self):
        want = 1.0 / 50.0 - 2.0 / 50.0**3
        assert abs(aux_f(50.0) - want) / want < 1e-3

    def test_g_small_argument_log(self):
        z = 1e-6
        got = aux_g(z).real
        assert got == pytest.approx(-math.log(z) - EULER_GAMMA, rel=1e-6)
        assert got == pytest.approx(13.238, abs=1e-3)

    def test_complex_values_against_quadrature(self):
        z = 2.0 + 1.0j
        assert abs(aux_f(z) - fourier_oracle(z, "sin")) < 1e-8
        assert abs(aux_g(z) - fourier_oracle(z, "cos")) < 1e-8

    def test_g_large_real_against_quadrature(self):
        z = 50.0
        assert abs(aux_g(z) - fourier_oracle(z, "cos")) / abs(aux_g(z)) < 1e-3

    def test_random_right_half_plane_oracle(self, rng):
        # 100 random z with Re(z) ∈ [0.01, 100]
        for _ in range(100):
            re = 10 ** rng.uniform(-2, 2)
            im = rng.uniform(-50.0, 50.0)
            z = complex(re, im)
            assert abs(aux_f(z) - fourier_oracle(z, "sin")) < 1e-8
            assert abs(aux_g(z) - fourier_oracle(z, "cos")) < 1e-8

    @settings(max_examples=40, deadline=None)
    @given(
        re=st.floats(min_value=0.01, max_value=100.0),
        im=st.floats(min_value=-100.0, max_value=100.0),
    )
    def test_conjugation_symmetry(self, re, im):
        z = complex(re, im)
        f, g = aux_fg(z)
        fc, gc = aux_fg(np.conj(z))
        assert fc == pytest.approx(np.conj(f), rel=1e-14, abs=1e-300)
        assert gc == pytest.approx(np.conj(g), rel=1e-14, abs=1e-300)

    def test_pure_imaginary_arguments(self):
        # Root-finder output sits exactly on the imaginary axis at zero
        # coupling; the cut limit must match the quadrature oracle.
        for y in (0.5, 4.0, 60.0):
            z = 1j * y
            assert abs(aux_f(z) - fourier_oracle(z, "sin")) < 1e-8
            assert abs(aux_g(z) - fourier_oracle(z, "cos")) < 1e-8

    def test_asymptotic_switchover_is_seamless(self):
        for mag in (39.5, 40.0, 40.5):
            z = mag * np.exp(0.9j)
            assert abs(aux_f(z) - fourier_oracle(z, "sin")) < 1e-9

    def test_domain_errors(self):
        for bad in (0.0, -1.0, -2.0 + 0.0j):
            with pytest.raises(ValueError):
                aux_f(bad)
            with pytest.raises(ValueError):
                aux_g(bad)

    def test_large_imaginary_part_no_overflow(self):
        z = 5.0 + 3000.0j
        f = aux_f(z)
        assert np.isfinite(f.real) and np.isfinite(f.imag)
        # asymptotically f ~ 1/z
        assert abs(f - 1.0 / z) < 1e-6

    def test_vectorized_matches_scalar(self):
        zs = np.array([0.5 + 0.1j, 3.0, 70.0 - 2.0j, 1j * 2.0])
        fv = aux_f(zs)
        for z, f in zip(zs, fv):
            assert f == pytest.approx(aux_f(complex(z)), rel=1e-14)
