import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from forerunners.dispersion import (
    Dispersion,
    SourceSpec,
    from_dimensionless,
    kappa0,
    scales,
    to_dimensionless,
    traversal_time,
    wavenumber,
)

REL = Dispersion.RELATIVISTIC
NR = Dispersion.NONRELATIVISTIC


class TestWavenumber:
    def test_branch_point(self):
        assert wavenumber(1.0, REL) == 0.0

    def test_below_cutoff(self):
        assert wavenumber(0.5, REL) == pytest.approx(1j * 0.8660254037844386)
        assert wavenumber(0.5, NR) == pytest.approx(1j * 1.0)

    def test_negative_frequency_branch(self):
        # k(-omega) = -k(omega) above cutoff keeps exp(ikx - i omega t) outgoing.
        assert wavenumber(-2.0, REL) == pytest.approx(-math.sqrt(3.0))
        assert wavenumber(2.0, REL) == pytest.approx(math.sqrt(3.0))

    @given(st.floats(-5.0, 5.0))
    @settings(max_examples=100, deadline=None)
    def test_evanescent_branch_is_decaying(self, omega):
        for d in (REL, NR):
            assert wavenumber(omega, d).imag >= 0.0

    def test_nonrelativistic_limit(self):
        # |k_rel - k_nr| / |k_nr| <= 0.01 once 1 - omega <= 1e-4.
        for one_minus in (1e-4, 1e-5, 1e-6):
            omega = 1.0 - one_minus
            k_rel = wavenumber(omega, REL)
            k_nr = wavenumber(omega, NR)
            assert abs(k_rel - k_nr) / abs(k_nr) <= 0.01

    def test_domain(self):
        with pytest.raises(ValueError):
            wavenumber(float("inf"), REL)


class TestKappa0:
    def test_reference_values(self):
        assert kappa0(SourceSpec(0.99), REL) == pytest.approx(0.14106735979665883, rel=1e-14)
        assert kappa0(SourceSpec(0.99), NR) == pytest.approx(0.1414213562373095, rel=1e-14)

    def test_deep_tunneling_limit(self):
        assert kappa0(SourceSpec(1e-12), REL) == pytest.approx(1.0, abs=1e-9)
        assert kappa0(SourceSpec(1e-12), NR) == pytest.approx(math.sqrt(2.0), abs=1e-9)

    @pytest.mark.parametrize("bad", [0.0, 1.0, -0.5, 1.7])
    def test_domain(self, bad):
        with pytest.raises(ValueError):
            kappa0(SourceSpec(bad), REL)

    @given(st.floats(1e-6, 1.0 - 1e-9))
    @settings(max_examples=100, deadline=None)
    def test_unimodular_pole_pair(self, omega0):
        # z+- = omega0 +- i kappa0 lies on the unit circle: omega0^2 + kappa0^2 = 1.
        k0 = kappa0(SourceSpec(omega0), REL)
        assert abs(complex(omega0, k0)) == pytest.approx(1.0, abs=5e-16)


class TestTraversalTime:
    def test_reference_value(self):
        tau = traversal_time(100.0, SourceSpec(0.99), REL)
        assert tau == pytest.approx(100.0 / math.sqrt(1.0 - 0.99**2), rel=1e-14)
        assert tau == pytest.approx(708.8812050083354, rel=1e-13)

    def test_unit_kappa(self):
        assert traversal_time(10.0, SourceSpec(0.5), NR) == pytest.approx(10.0, rel=1e-14)

    @given(st.floats(1e-3, 1e3), st.floats(1e-6, 1.0 - 1e-9))
    @settings(max_examples=100, deadline=None)
    def test_exceeds_front_time_relativistic(self, x, omega0):
        src = SourceSpec(omega0)
        assert traversal_time(x, src, REL) > x
        # tau * kappa0 = x to machine precision
        assert traversal_time(x, src, REL) * kappa0(src, REL) == pytest.approx(x, rel=1e-13)

    def test_scales_report(self):
        rep = scales(2.0, SourceSpec(0.6), REL)
        assert rep.tau * rep.kappa0 == pytest.approx(2.0, rel=1e-14)
        assert rep.penetration_length * rep.kappa0 == pytest.approx(1.0, rel=1e-15)


class TestDimensionalMaps:
    def test_waveguide_identity(self):
        assert to_dimensionless("waveguide", 1.0, 1.0, {"lambda": 1.0, "c": 1.0}) == (1.0, 1.0)

    def test_particle_products(self):
        # m0 c / hbar = 2 with c = 1 -> x = 2X, t = 2T c = ...
        params = {"m0": 2.0, "c": 1.0, "hbar": 1.0}
        assert to_dimensionless("klein_gordon_particle", 3.0, 5.0, params) == (6.0, 10.0)

    @given(
        st.floats(1e-3, 1e3), st.floats(1e-3, 1e3),
        st.floats(1e-2, 1e2), st.floats(1e-2, 1e2), st.floats(1e-2, 1e2),
    )
    @settings(max_examples=60, deadline=None)
    def test_round_trip(self, X, T, m0, c, hbar):
        params = {"m0": m0, "c": c, "hbar": hbar}
        x, t = to_dimensionless("klein_gordon_particle", X, T, params)
        X2, T2 = from_dimensionless("klein_gordon_particle", x, t, params)
        assert X2 == pytest.approx(X, rel=1e-14)
        assert T2 == pytest.approx(T, rel=1e-14)
        wg = {"lambda": m0, "c": c}
        x, t = to_dimensionless("waveguide", X, T, wg)
        X2, T2 = from_dimensionless("waveguide", x, t, wg)
        assert X2 == pytest.approx(X, rel=1e-14)
        assert T2 == pytest.approx(T, rel=1e-14)

    def test_domain(self):
        with pytest.raises(ValueError):
            to_dimensionless("waveguide", 1.0, 1.0, {"lambda": -1.0, "c": 1.0})
        with pytest.raises(ValueError):
            to_dimensionless("nope", 1.0, 1.0, {})
