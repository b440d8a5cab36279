import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forerunners.specfun import bessel_j, bessel_j_seq, faddeeva_w

from oracles import bessel_j_mp, bessel_j_series, faddeeva_erfc

# Frozen from the ascending-series oracle (tests/oracles.py).
J1_AT_1 = 0.4400505857449335
J2_AT_5 = 0.04656511627775222
# Frozen from the erfc oracle: e*erfc(1) and e^4*erfc(2).
W_AT_I = 0.4275835761558070
W_AT_2I = 0.2553956763105057


class TestBesselJ:
    def test_j0_at_zero(self):
        assert bessel_j(0, 0.0) == 1.0

    def test_j1_at_1_vs_series_oracle(self):
        assert bessel_j(1, 1.0) == pytest.approx(J1_AT_1, rel=1e-13)
        assert bessel_j_series(1, 1.0) == pytest.approx(J1_AT_1, rel=1e-14)

    def test_j2_at_5_vs_series_oracle(self):
        assert bessel_j(2, 5.0) == pytest.approx(J2_AT_5, rel=1e-13)
        assert bessel_j_series(2, 5.0) == pytest.approx(J2_AT_5, rel=1e-14)

    @pytest.mark.parametrize("n,x", [(0, 0.37), (3, 2.2), (7, 11.0), (25, 8.5),
                                     (60, 100.0), (2, 1e-3), (12, 0.07)])
    def test_against_series_oracle(self, n, x):
        ref = bessel_j_series(n, x)
        got = bessel_j(n, x)
        assert abs(got - ref) <= max(1e-12 * abs(ref), 1e-14)

    def test_large_argument_series_oracle(self):
        # Ascending series with O(x)-digit intermediates stays affordable to ~500.
        for n in (0, 5, 40):
            ref = bessel_j_series(n, 500.0)
            assert abs(bessel_j(n, 500.0) - ref) <= max(1e-12 * abs(ref), 1e-14)

    @pytest.mark.parametrize("x", [5000.0, 10000.0])
    def test_very_large_argument(self, x):
        for n in (0, 5, 40):
            ref = bessel_j_mp(n, x)
            assert abs(bessel_j(n, x) - ref) <= max(1e-12 * abs(ref), 1e-14)

    def test_near_zero_of_j0(self):
        x0 = 2.404825557695773  # first zero of J0
        assert abs(bessel_j(0, x0) - bessel_j_series(0, x0)) < 1e-14

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            bessel_j(-1, 1.0)
        with pytest.raises(ValueError):
            bessel_j(2, float("nan"))
        with pytest.raises(ValueError):
            bessel_j(2, -1.0)


class TestBesselSeq:
    def test_at_zero(self):
        seq = bessel_j_seq(2, 0.0)
        assert list(seq.values) == [1.0, 0.0, 0.0]

    def test_matches_scalar_at_x1(self):
        seq = bessel_j_seq(10, 1.0)
        for n in range(11):
            ref = bessel_j(n, 1.0)
            assert abs(seq.values[n] - ref) <= max(1e-12 * abs(ref), 1e-16)

    @given(st.integers(0, 60), st.floats(1e-3, 100.0))
    @settings(max_examples=60, deadline=None)
    def test_elementwise_agreement(self, n_max, x):
        seq = bessel_j_seq(n_max, x)
        for n in (0, n_max // 2, n_max):
            ref = bessel_j(n, x)
            assert abs(seq.values[n] - ref) <= max(1e-12 * abs(ref), 1e-15)

    @pytest.mark.parametrize("x", [0.5, 1.0, 3.0, 10.0, 50.0])
    def test_normalization_identity(self, x):
        # J0 + 2*(J2 + J4 + ...) = 1, truncated where terms underflow.
        seq = bessel_j_seq(int(x) + 60, x)
        s = seq.values[0] + 2.0 * seq.values[2::2].sum()
        assert s == pytest.approx(1.0, abs=1e-12)

    @given(st.floats(1e-2, 80.0))
    @settings(max_examples=40, deadline=None)
    def test_magnitude_bound(self, x):
        seq = bessel_j_seq(40, x)
        assert np.all(np.abs(seq.values) <= 1.0 + 1e-14)


class TestFaddeeva:
    def test_at_zero(self):
        assert faddeeva_w(0.0) == 1.0

    def test_at_i(self):
        got = faddeeva_w(1j)
        assert got.real == pytest.approx(W_AT_I, rel=1e-12)
        assert abs(got.imag) < 1e-14
        assert faddeeva_erfc(1j).real == pytest.approx(W_AT_I, rel=1e-14)

    def test_at_2i(self):
        got = faddeeva_w(2j)
        assert got.real == pytest.approx(W_AT_2I, rel=1e-10)
        assert faddeeva_erfc(2j).real == pytest.approx(W_AT_2I, rel=1e-14)

    @pytest.mark.parametrize("z", [0.3 + 0.7j, -2.5 + 0.1j, 4.0 + 4.0j, 7.9 + 0.2j,
                                   12.0 + 1.0j, 100.0 + 5.0j, 900.0 + 100.0j,
                                   1.5 - 0.5j, -6.0 - 2.0j, 0.0 + 50.0j])
    def test_against_erfc_oracle(self, z):
        ref = faddeeva_erfc(z)
        assert abs(faddeeva_w(z) - ref) <= 1e-10 * abs(ref)

    def test_real_axis_identity(self):
        # Re w(x) = exp(-x^2) and |w(x)| <= 1 on the real axis.
        for x in [0.0, 0.2, 0.9, 1.7, 2.5, 3.0]:
            w = faddeeva_w(x)
            assert w.real == pytest.approx(math.exp(-x * x), rel=1e-11)
            assert abs(w) <= 1.0 + 1e-14
        for x in [4.0, 6.0, 20.0, 500.0]:
            w = faddeeva_w(x)
            assert abs(w.real - math.exp(-x * x)) < 1e-13
            assert abs(w) <= 1.0 + 1e-14

    def test_reflection_identity_random(self):
        # w(z) + w(-z) = 2 exp(-z^2) for 1000 random z with |z| <= 50,
        # residual measured relative to the largest term in the identity
        # (the right-hand side alone underflows double precision for |z|>~25).
        rng = np.random.default_rng(42)
        count = 0
        while count < 1000:
            r = 50.0 * math.sqrt(rng.uniform())
            th = rng.uniform(0.0, 2.0 * math.pi)
            z = complex(r * math.cos(th), r * math.sin(th))
            if abs(z.imag * z.imag - z.real * z.real) > 700.0:
                continue  # exp(-z^2) not representable
            target = 2.0 * cmath.exp(-z * z)
            wp, wm = faddeeva_w(z), faddeeva_w(-z)
            scale = max(abs(wp), abs(wm), abs(target))
            assert abs(wp + wm - target) <= 1e-9 * scale
            count += 1

    def test_random_oracle_sweep(self):
        rng = np.random.default_rng(9)
        for _ in range(150):
            r = 10 ** rng.uniform(-2, 3)
            th = rng.uniform(0.0, math.pi)  # upper half incl. axis
            z = complex(r * math.cos(th), r * math.sin(th))
            ref = faddeeva_erfc(z)
            assert abs(faddeeva_w(z) - ref) <= 1e-10 * abs(ref)

    def test_domain_and_range_errors(self):
        with pytest.raises(ValueError):
            faddeeva_w(complex("nan"))
        with pytest.raises(OverflowError):
            faddeeva_w(-40.0j)  # exp(-z^2) = exp(1600) overflows in reflection
