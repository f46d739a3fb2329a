import numpy as np
import pytest

from wignerbin import (
    Method,
    NumberDistribution,
    load_distribution_csv,
    pn_thermal,
    save_distribution_csv,
)


class TestValidation:
    def test_stderr_required_for_stochastic(self):
        with pytest.raises(ValueError):
            NumberDistribution(probs=np.array([1.0]), method=Method.BINNED, n_max=0)

    def test_stderr_forbidden_for_deterministic(self):
        with pytest.raises(ValueError):
            NumberDistribution(
                probs=np.array([1.0]), method=Method.ANALYTIC, n_max=0,
                stderr=np.array([0.0]),
            )

    def test_entries_bounded(self):
        with pytest.raises(ValueError):
            NumberDistribution(probs=np.array([1.2]), method=Method.ANALYTIC, n_max=0)
        with pytest.raises(ValueError):
            NumberDistribution(probs=np.array([-0.1, 0.5]), method=Method.QUADRATURE, n_max=1)

    def test_mass_bounded(self):
        with pytest.raises(ValueError):
            NumberDistribution(probs=np.array([0.7, 0.7]), method=Method.ANALYTIC, n_max=1)

    def test_wigner_average_noise_slack(self):
        # small negative excursions within the error bars are fine
        d = NumberDistribution(
            probs=np.array([0.9, -1e-4]), method=Method.WIGNER_AVERAGE, n_max=1,
            stderr=np.array([1e-3, 1e-3]),
        )
        assert d.probs[1] == -1e-4
        with pytest.raises(ValueError):
            NumberDistribution(
                probs=np.array([0.9, -0.5]), method=Method.WIGNER_AVERAGE, n_max=1,
                stderr=np.array([1e-3, 1e-3]),
            )

    def test_length_checked(self):
        with pytest.raises(ValueError):
            NumberDistribution(probs=np.array([0.5, 0.5]), method=Method.ANALYTIC, n_max=5)


class TestCsv:
    def test_round_trip_exact(self, tmp_path):
        dist = pn_thermal(3.7, 40)
        path = tmp_path / "d.csv"
        save_distribution_csv(dist, path)
        back = load_distribution_csv(path)
        assert back.method is Method.ANALYTIC
        assert back.n_max == 40
        np.testing.assert_array_equal(back.probs, dist.probs)
        assert back.stderr is None
        assert back.meta["state"]["nbar"] == 3.7
