import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import fock_moment_u, laguerre_halfexp_mp
from wignerbin import (
    GaussianWignerState,
    Method,
    fock_gaussian_ring_density,
    fock_wigner,
    laguerre_scaled,
    pn_quadrature,
    pn_thermal,
    pn_wigner_average,
    sample,
    sample_fock_gaussian_ring,
)
from wignerbin._backend import laguerre_halfexp

# 60-digit-recurrence oracle values, frozen
ORACLE_330_1440 = 2.078695650090972e-07   # e^{-720} L_330(1440)
ORACLE_2000_8000 = 2.339132916611584e-02  # e^{-4000} L_2000(8000)


class TestLaguerreScaled:
    def test_order_zero(self):
        for x in (0.0, 1.0, 123.4, 4000.0):
            assert laguerre_scaled(0, x).value == pytest.approx(np.exp(-x / 2.0), rel=1e-14)

    def test_order_one(self):
        assert laguerre_scaled(1, 2.0).value == pytest.approx(-np.exp(-1.0), rel=1e-14)

    def test_at_zero_argument(self):
        for n in (0, 1, 5, 100, 2000):
            assert laguerre_scaled(n, 0.0).value == pytest.approx(1.0, rel=1e-14)

    def test_double_precision_breakdown_regime(self):
        # n=330 at |alpha|^2 = 360, i.e. x = 1440
        v = laguerre_scaled(330, 1440.0)
        assert np.isfinite(v.value)
        assert v.value == pytest.approx(ORACLE_330_1440, rel=1e-10)

    def test_large_order_large_argument(self):
        v = laguerre_scaled(2000, 8000.0)
        assert v.value == pytest.approx(ORACLE_2000_8000, rel=1e-10)

    def test_against_high_precision_grid(self):
        rng = np.random.default_rng(11)
        for _ in range(12):
            n = int(rng.integers(2, 2001))
            x = float(rng.uniform(0.0, 8000.0))
            got = laguerre_scaled(n, x).value
            want = laguerre_halfexp_mp(n, x)
            assert got == pytest.approx(want, rel=1e-10, abs=1e-280)

    def test_finite_at_extreme_range(self):
        assert np.isfinite(laguerre_scaled(100_000, 100_000.0).value)

    def test_domain_errors(self):
        with pytest.raises(ValueError):
            laguerre_scaled(-1, 1.0)
        with pytest.raises(ValueError):
            laguerre_scaled(3, -0.5)

    def test_array_kernel_matches_scalar(self):
        xs = np.array([0.5, 10.0, 360.0, 1440.0, 5000.0])
        for n in (0, 1, 7, 330):
            got = laguerre_halfexp(n, xs)
            want = [laguerre_scaled(n, x).value for x in xs]
            np.testing.assert_allclose(got, want, rtol=1e-12)

    @settings(max_examples=60, deadline=None)
    @given(
        n=st.integers(min_value=1, max_value=500),
        x=st.floats(min_value=0.0, max_value=2000.0, allow_nan=False),
    )
    def test_three_term_recurrence_residual(self, n, x):
        f_prev = laguerre_scaled(n - 1, x).value
        f_n = laguerre_scaled(n, x).value
        f_next = laguerre_scaled(n + 1, x).value
        resid = (n + 1) * f_next - (2 * n + 1 - x) * f_n + n * f_prev
        scale = max(abs(f_prev), abs(f_n), abs(f_next))
        assert abs(resid) <= 1e-9 * max(scale, 1e-30)


class TestFockWigner:
    def test_order_seven_at_origin(self):
        assert fock_wigner(7, 0j) == pytest.approx(-2.0 / np.pi, rel=1e-14)

    def test_vacuum_gaussian(self):
        assert fock_wigner(0, 1.0 + 0j) == pytest.approx((2.0 / np.pi) * np.exp(-2.0), rel=1e-13)

    def test_radial_sign_changes_n7(self):
        r = np.linspace(1e-4, np.sqrt(8.0), 20_000)
        w = fock_wigner(7, r.astype(complex))
        signs = np.sign(w)
        changes = np.count_nonzero(signs[1:] * signs[:-1] < 0)
        assert changes == 7

    @pytest.mark.parametrize("n", [1, 3, 10, 25, 50])
    def test_radial_sign_structure(self, n):
        r = np.linspace(1e-4, np.sqrt(n + 1.0), 60_000)
        w = fock_wigner(n, r.astype(complex))
        signs = np.sign(w)
        changes = np.count_nonzero(signs[1:] * signs[:-1] < 0)
        assert changes == n


class TestGaussianRing:
    def test_density_peaks_on_ring(self):
        n = 10
        on_ring = fock_gaussian_ring_density(n, complex(np.sqrt(n + 0.5), 0.0))
        off = fock_gaussian_ring_density(n, complex(np.sqrt(n + 1.5), 0.0))
        assert on_ring > off

    def test_density_normalized(self):
        from oracles import disk_quadrature_2d

        total = disk_quadrature_2d(lambda a: fock_gaussian_ring_density(10, a), 8.0)
        assert total == pytest.approx(1.0, abs=1e-9)

    def test_sampled_first_moment(self):
        n = 10
        ens = sample_fock_gaussian_ring(n, 10**6, seed=21)
        u = np.abs(ens.mode(0)) ** 2
        band = 5.0 * 0.5 / np.sqrt(ens.count)  # ring u-std is ~1/2
        assert abs(u.mean() - (n + 0.5)) < band

    def test_sampled_second_moment_vs_exact_wigner(self):
        n = 10
        exact = fock_moment_u(n, 2)  # quadrature of the exact Fock Wigner moment
        assert exact == pytest.approx(n * n + n + 0.5, rel=1e-9)  # sanity vs closed form
        ens = sample_fock_gaussian_ring(n, 10**6, seed=22)
        u = np.abs(ens.mode(0)) ** 2
        stat = 5.0 * np.std(u * u) / np.sqrt(ens.count)
        assert abs(np.mean(u * u) - exact) < stat + exact / n**2


class TestPnQuadrature:
    def test_vacuum_orthonormality(self):
        dist = pn_quadrature(GaussianWignerState.vacuum(), n_max=12)
        assert dist.probs[0] == pytest.approx(1.0, abs=1e-9)
        assert np.max(np.abs(dist.probs[1:])) < 1e-9
        assert not dist.meta["failed_entries"]

    def test_coherent_is_poisson(self):
        from scipy.special import gammaln

        lam = 50.0
        dist = pn_quadrature(GaussianWignerState.coherent(np.sqrt(lam)))
        n = np.arange(dist.n_max + 1)
        pois = np.exp(n * np.log(lam) - lam - gammaln(n + 1.0))
        np.testing.assert_allclose(dist.probs, pois, atol=1e-9)

    def test_thermal_geometric(self):
        dist = pn_quadrature(GaussianWignerState.thermal(10.0), n_max=150)
        want = pn_thermal(10.0, 150)
        np.testing.assert_allclose(dist.probs, want.probs, atol=1e-9)

    def test_completeness(self):
        dist = pn_quadrature(GaussianWignerState.thermal(5.0))
        assert dist.total() == pytest.approx(1.0, abs=1e-6)
        assert dist.method is Method.QUADRATURE


class TestPnWignerAverage:
    def test_vacuum(self, vacuum_ensemble_1m):
        dist = pn_wigner_average(vacuum_ensemble_1m, 10)
        assert abs(dist.probs[0] - 1.0) < 5.0 * dist.stderr[0]

    def test_thermal_matches_analytic(self, thermal10):
        ens = sample(thermal10, 10**6, seed=31)
        dist = pn_wigner_average(ens, 60)
        want = pn_thermal(10.0, 60)
        dev = np.abs(dist.probs - want.probs) / dist.stderr
        assert dev.max() < 5.0

    def test_quadrature_route_agreement(self):
        state = GaussianWignerState.squeezed_coherent(np.sqrt(20.0), 0.6, 0.9)
        ens = sample(state, 10**6, seed=32)
        n_max = 80
        wa = pn_wigner_average(ens, n_max)
        quad = pn_quadrature(state, n_max=n_max)
        dev = np.abs(wa.probs - quad.probs) / wa.stderr
        assert dev.max() < 5.0

    def test_coherent_400_normalization(self):
        # stability regime far beyond the double-precision breakdown
        state = GaussianWignerState.coherent(20.0 + 0j)
        ens = sample(state, 10**6, seed=33)
        dist = pn_wigner_average(ens, 700)
        assert np.all(np.isfinite(dist.probs))
        dev = abs(dist.total() - 1.0) / dist.meta["sum_stderr"]
        assert dev < 5.0
