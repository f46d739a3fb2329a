import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import hermite_log_abs2_mp
from wignerbin import (
    GaussianWignerState,
    SqueezedCoherentParams,
    dB_thermal,
    pn_binned_analytic,
    pn_gaussian_approximation,
    pn_quadrature,
    pn_squeezed_coherent,
    pn_thermal,
    sigma_eff,
    variance_formula,
)
from wignerbin.analytic import hermite_logabs


class TestThermal:
    def test_nbar1_ground(self):
        assert pn_thermal(1.0, 10).probs[0] == pytest.approx(0.5, rel=1e-14)

    def test_nbar10_ground(self):
        assert pn_thermal(10.0, 10).probs[0] == pytest.approx(1.0 / 11.0, rel=1e-14)

    def test_mean_exact(self):
        dist = pn_thermal(10.0)
        assert dist.mean() == pytest.approx(10.0, rel=1e-10)

    def test_default_cutoff_mass(self):
        for nbar in (0.1, 1.0, 10.0):
            assert pn_thermal(nbar).total() == pytest.approx(1.0, abs=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            pn_thermal(0.0)
        with pytest.raises(ValueError):
            pn_thermal(-2.0)


class TestDbThermal:
    @pytest.mark.parametrize("nbar", [0.1, 1.0, 10.0, 100.0])
    def test_matches_direct_sum(self, nbar):
        n_max = int(60 * nbar) + 400
        p = pn_thermal(nbar, n_max).probs
        q = pn_binned_analytic(GaussianWignerState.thermal(nbar), n_max).probs
        direct = -np.log(np.sum(np.sqrt(p * q)))
        assert dB_thermal(nbar) == pytest.approx(direct, abs=1e-10)

    def test_monotone_decrease(self):
        nbars = np.linspace(0.5, 200.0, 400)
        vals = np.array([dB_thermal(nb) for nb in nbars])
        assert np.all(np.diff(vals) < 0)

    def test_large_nbar_quartic_scaling(self):
        # slope of ln D_B vs ln nbar approaches -4
        r = dB_thermal(400.0) / dB_thermal(200.0)
        assert np.log(r) / np.log(2.0) == pytest.approx(-4.0, abs=0.05)


class TestVarianceAndWidth:
    def test_coherent_limit(self):
        p = SqueezedCoherentParams(beta_mag=3.0)
        assert sigma_eff(p) == pytest.approx(0.5)
        assert variance_formula(p) == pytest.approx(9.0)

    def test_pure_amplitude_squeezing(self):
        p = SqueezedCoherentParams(beta_mag=3.0, s=0.7, theta=0.0)
        assert sigma_eff(p) == pytest.approx(np.exp(-0.7) / 2.0)

    def test_phase_squeezed_example(self):
        p = SqueezedCoherentParams(beta_mag=3.0, s=0.4, theta=np.pi)
        assert sigma_eff(p) == pytest.approx(np.exp(0.4) / 2.0, rel=1e-12)
        assert sigma_eff(p) == pytest.approx(0.7459, abs=2e-4)


class TestHermiteRecurrence:
    def test_against_high_precision(self):
        rng = np.random.default_rng(5)
        for _ in range(8):
            n = int(rng.integers(2, 400))
            z = complex(rng.uniform(-30, 30), rng.uniform(-30, 30))
            la = hermite_logabs(z, n)[n]
            want = hermite_log_abs2_mp(z.real, z.imag, n)
            assert 2.0 * la == pytest.approx(want, abs=1e-9)

    def test_odd_orders_vanish_at_zero(self):
        la = hermite_logabs(0.0, 11)
        assert np.all(np.isneginf(la[1::2]))
        assert np.all(np.isfinite(la[0::2]))


class TestSqueezedCoherent:
    def test_poisson_limit(self):
        from scipy.special import gammaln

        lam = 50.0
        p = SqueezedCoherentParams(beta_mag=np.sqrt(lam))
        dist = pn_squeezed_coherent(p, 150)
        n = np.arange(151)
        pois = np.exp(n * np.log(lam) - lam - gammaln(n + 1.0))
        np.testing.assert_allclose(dist.probs, pois, rtol=1e-12)

    def test_squeezed_vacuum_parity(self):
        dist = pn_squeezed_coherent(SqueezedCoherentParams(beta_mag=0.0, s=1.0), 60)
        assert np.all(dist.probs[1::2] == 0.0)
        assert dist.total() == pytest.approx(1.0, abs=1e-8)

    @pytest.mark.parametrize(
        "p",
        [
            SqueezedCoherentParams(np.sqrt(50.0), 0.0, 0.4, 0.0),
            SqueezedCoherentParams(np.sqrt(50.0), 0.0, 0.4, np.pi),
            SqueezedCoherentParams(np.sqrt(20.0), 0.0, 1.5, 0.0),
            SqueezedCoherentParams(np.sqrt(20.0), 0.0, 1.5, np.pi),
            SqueezedCoherentParams(0.0, 0.0, 2.0, 0.0),
            SqueezedCoherentParams(np.sqrt(400.0), 0.0, 1.0, 2.0),
        ],
        ids=["s04t0", "s04tpi", "s15t0", "s15tpi", "sqvac2", "b400"],
    )
    def test_normalization_and_mean(self, p):
        dist = pn_squeezed_coherent(p, tail_tol=1e-9)
        assert dist.total() == pytest.approx(1.0, abs=1e-8)
        assert dist.mean() == pytest.approx(p.mean_occupation, rel=1e-6)

    def test_oracle_agreement_with_quadrature(self):
        # two fully independent routes to P_n
        p = SqueezedCoherentParams(np.sqrt(50.0), 0.0, 0.4, np.pi)
        ana = pn_squeezed_coherent(p, 140)
        quad = pn_quadrature(p.to_state(), n_max=140)
        np.testing.assert_allclose(ana.probs, quad.probs, atol=1e-7)

    def test_oracle_agreement_strong_squeezing(self):
        p = SqueezedCoherentParams(np.sqrt(20.0), 0.0, 1.5, 0.0)
        ana = pn_squeezed_coherent(p, 100)
        quad = pn_quadrature(p.to_state(), n_max=100)
        np.testing.assert_allclose(ana.probs, quad.probs, atol=1e-7)

    def test_gaussian_approximation_at_peak(self):
        p = SqueezedCoherentParams(np.sqrt(50.0), 0.0, 0.4, np.pi)
        dist = pn_squeezed_coherent(p, 120)
        approx = pn_gaussian_approximation(p, 120)
        peak = int(np.argmax(dist.probs))
        assert abs(dist.probs[peak] - approx[peak]) < 0.02 * dist.probs[peak]

    def test_phase_invariance_of_occupation(self):
        # rotating both displacement and squeezing axis together leaves P_n alone
        p0 = SqueezedCoherentParams(np.sqrt(30.0), 0.0, 0.8, 0.5)
        p1 = SqueezedCoherentParams(np.sqrt(30.0), 0.3, 0.8, 0.5 + 0.6)
        d0 = pn_squeezed_coherent(p0, 100)
        d1 = pn_squeezed_coherent(p1, 100)
        np.testing.assert_allclose(d0.probs, d1.probs, rtol=1e-9, atol=1e-12)

    def test_domain(self):
        with pytest.raises(ValueError):
            SqueezedCoherentParams(beta_mag=-1.0)
        with pytest.raises(ValueError):
            SqueezedCoherentParams(beta_mag=1.0, s=-0.1)

    @settings(max_examples=25, deadline=None)
    @given(
        bsq=st.floats(min_value=0.5, max_value=100.0),
        s=st.floats(min_value=0.0, max_value=1.5),
        theta=st.floats(min_value=0.0, max_value=2 * np.pi),
    )
    def test_valid_distribution_property(self, bsq, s, theta):
        p = SqueezedCoherentParams(np.sqrt(bsq), 0.0, s, theta)
        dist = pn_squeezed_coherent(p)
        assert np.all(dist.probs >= 0.0)
        assert dist.total() == pytest.approx(1.0, abs=1e-7)
