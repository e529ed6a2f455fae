from __future__ import annotations

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bouncerate import (
    INFINITE,
    SHARP_WALL,
    KernelDenominator,
    ModelParams,
    QuadratureConfig,
    ValidityWarning,
    kernel_denominator,
    potential,
)


def rational_denominator(omega, p):
    """Term-by-term evaluation of ω²/(1+τ_p ω f_c) + 1 + γω f_c."""
    fc = 1.0 / (1.0 + omega / p.cutoff_w)
    return omega**2 / (1.0 + p.tau_p * omega * fc) + 1.0 + p.gamma * omega * fc


class TestModelParams:
    def test_derived_geometry(self):
        p = ModelParams(12.5, 3.0)
        assert p.s == pytest.approx(3.0)
        assert p.a == pytest.approx(math.sqrt(25.0))
        assert p.x_m == pytest.approx(3.0 * p.a)

    def test_matching_condition_exact(self):
        for sig in (0.01, 0.5, 3.0, 100.0):
            p = ModelParams(7.25, sig)
            lhs = 0.5 * (p.a - p.x_m) ** 2 - p.sigma
            assert lhs == pytest.approx(p.v0, rel=1e-14)

    @settings(max_examples=50, deadline=None)
    @given(sig=st.floats(min_value=1e-6, max_value=1e8))
    def test_s_above_two(self, sig):
        p = ModelParams(12.5, sig)
        assert p.s > 2.0

    def test_s_approaches_two_for_symmetric_well(self):
        assert ModelParams(12.5, 1e-12).s == pytest.approx(2.0, abs=1e-6)

    def test_rejects_degenerate_sigma(self):
        with pytest.raises(ValueError):
            ModelParams(12.5, 0.0)
        with pytest.raises(ValueError):
            ModelParams(12.5, -1.0)

    def test_rejects_bad_couplings(self):
        with pytest.raises(ValueError):
            ModelParams(12.5, 1.0, gamma=-0.1)
        with pytest.raises(ValueError):
            ModelParams(12.5, 1.0, tau_p=-0.1)
        with pytest.raises(ValueError):
            ModelParams(12.5, 1.0, cutoff_w=0.0)
        with pytest.raises(ValueError):
            ModelParams(0.0, 1.0)

    def test_small_cutoff_warns_but_constructs(self):
        with pytest.warns(ValidityWarning):
            p = ModelParams(12.5, 1.0, gamma=10.0, cutoff_w=50.0)
        assert p.cutoff_w == 50.0

    def test_sharp_state(self):
        p = ModelParams(12.5, INFINITE)
        assert p.is_sharp
        assert math.isinf(p.s) and math.isinf(p.x_m)


class TestPotential:
    def test_well_minimum(self):
        assert potential(0.0, ModelParams(12.5, 3.0)) == 0.0

    def test_barrier_top_equals_v0(self):
        p = ModelParams(12.5, 3.0)
        assert potential(p.a, p) == pytest.approx(12.5)

    def test_flat_region_value(self):
        p = ModelParams(12.5, 3.0)
        assert potential(p.x_m, p) == pytest.approx(-37.5)
        assert potential(p.x_m + 5.0, p) == pytest.approx(-37.5)

    @settings(max_examples=40, deadline=None)
    @given(
        sig=st.floats(min_value=0.01, max_value=100.0),
        eps=st.floats(min_value=1e-12, max_value=1e-7),
    )
    def test_continuity_at_junctions(self, sig, eps):
        p = ModelParams(12.5, sig)
        for x0 in (p.a, p.x_m):
            jump = abs(potential(x0 - eps, p) - potential(x0 + eps, p))
            assert jump < 1e-5

    def test_sharp_wall_sentinel(self):
        p = ModelParams(12.5, INFINITE)
        assert potential(p.a - 1e-9, p) == pytest.approx(12.5, rel=1e-6)
        assert potential(p.a, p) == SHARP_WALL
        assert potential(p.a + 3.0, p) == SHARP_WALL

    def test_vectorized(self):
        p = ModelParams(12.5, 3.0)
        xs = np.array([0.0, p.a, p.x_m, p.x_m + 1.0])
        vals = potential(xs, p)
        assert vals.shape == xs.shape
        assert vals[0] == 0.0 and vals[-1] == pytest.approx(-37.5)


class TestKernelDenominator:
    def test_at_zero(self):
        p = ModelParams(12.5, 1.0, gamma=0.2, tau_p=0.1)
        assert kernel_denominator(0.0, p) == pytest.approx(1.0, rel=1e-14)

    def test_bare_case(self):
        p = ModelParams(12.5, 1.0)
        assert kernel_denominator(2.0, p) == pytest.approx(5.0, rel=1e-12)

    def test_against_term_by_term_rational(self):
        p = ModelParams(12.5, 1.0, gamma=0.1, tau_p=0.05, cutoff_w=8000.0)
        got = kernel_denominator(1.0, p)
        assert got == pytest.approx(rational_denominator(1.0, p), rel=1e-13)

    def test_poly_vs_rational_over_wide_range(self, rng):
        for _ in range(5):
            p = ModelParams(
                12.5, 1.0,
                gamma=float(rng.uniform(0, 1)),
                tau_p=float(rng.uniform(0, 1)),
                cutoff_w=float(10 ** rng.uniform(3, 4.5)),
            )
            omegas = np.geomspace(1e-6, 100.0 * p.cutoff_w, 120)
            got = kernel_denominator(omegas, p)
            want = rational_denominator(omegas, p)
            assert np.max(np.abs(got - want) / want) < 1e-12

    def test_positive_for_nonnegative_couplings(self, rng):
        for _ in range(5):
            p = ModelParams(
                12.5, 1.0,
                gamma=float(rng.uniform(0, 50)),
                tau_p=float(rng.uniform(0, 50)),
            )
            omegas = np.geomspace(1e-8, 1e6, 200)
            assert np.all(kernel_denominator(omegas, p) > 0.0)

    def test_negative_frequency_rejected(self):
        with pytest.raises(ValueError):
            kernel_denominator(-1.0, ModelParams(12.5, 1.0))

    def test_clearing_factor_stored_once(self):
        p = ModelParams(12.5, 1.0, gamma=0.3, tau_p=0.2)
        kd = KernelDenominator.from_params(p)
        assert len(kd.poly) == 5 and len(kd.clearing) == 3
        assert kd.evaluate(0.0) == pytest.approx(1.0)


class TestQuadratureConfig:
    def test_defaults(self):
        q = QuadratureConfig()
        assert q.rel_tol == 1e-10 and q.abs_tol == 1e-14
        assert q.tail_mult == 50.0

    def test_validation(self):
        with pytest.raises(ValueError):
            QuadratureConfig(rel_tol=0.0)
        with pytest.raises(ValueError):
            QuadratureConfig(max_depth=0)
        with pytest.raises(ValueError):
            QuadratureConfig(tail_mult=-1.0)
