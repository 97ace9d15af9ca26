import numpy as np
import pytest

from spdgig.distributions import ChainConfig, make_rng, random_spd
from spdgig.errors import TooFewSamples
from spdgig.maps import MapParams
from spdgig.stats import (
    McConfig,
    TransportConfig,
    _distance_correlation_1d,
    _distance_correlation_nd,
    _energy_test_1d,
    _energy_test_nd,
    density_transport_check,
    direc_campaign,
    distance_correlation,
    energy_distance_test,
    my_property_campaign,
    transport_campaign,
    univariate_eff_check,
)


class TestFastPathsAgreeWithNaive:
    def test_distance_correlation(self):
        rng = np.random.default_rng(20)
        x = rng.gamma(2.0, size=400)
        y = 0.3 * x + rng.normal(size=400)
        fast = _distance_correlation_1d(x, y, 199, np.random.default_rng(5))
        naive = _distance_correlation_nd(x[:, None], y[:, None], 199, np.random.default_rng(5))
        assert fast[0] == pytest.approx(naive[0], abs=1e-10)
        assert fast[1] == naive[1]

    def test_energy_distance(self):
        rng = np.random.default_rng(21)
        a = rng.gamma(2.0, size=300)
        b = rng.gamma(2.5, size=350)
        fast = _energy_test_1d(a, b, 199, np.random.default_rng(6))
        naive = _energy_test_nd(a[:, None], b[:, None], 199, np.random.default_rng(6))
        assert fast[0] == pytest.approx(naive[0], abs=1e-10)
        assert fast[1] == naive[1]


class TestDistanceCorrelation:
    def test_accepts_independent(self):
        rng = np.random.default_rng(22)
        rep = distance_correlation(rng.gamma(2.0, size=2000), rng.gamma(2.0, size=2000), 199, make_rng(23))
        assert rep.p_value > 0.01

    def test_rejects_dependent(self):
        rng = np.random.default_rng(24)
        x = rng.gamma(2.0, size=2000)
        rep = distance_correlation(x, x + rng.normal(scale=0.1, size=2000), 199, make_rng(25))
        assert rep.p_value == pytest.approx(1.0 / 200.0)

    def test_matrix_batches_use_trace_metric(self):
        rng = make_rng(26)
        u = np.stack([random_spd(2, rng) for _ in range(300)])
        v = np.stack([random_spd(2, rng) for _ in range(300)])
        rep = distance_correlation(u, v, 99, make_rng(27))
        assert rep.p_value > 0.01

    def test_guards(self):
        with pytest.raises(TooFewSamples):
            distance_correlation(np.ones(10), np.ones(10), 199, make_rng(0))


class TestEnergyDistance:
    def test_accepts_same_law(self):
        rng = np.random.default_rng(28)
        rep = energy_distance_test(rng.gamma(2.0, size=1500), rng.gamma(2.0, size=1500), 199, make_rng(29))
        assert rep.p_value > 0.01

    def test_rejects_shifted_law(self):
        rng = np.random.default_rng(30)
        rep = energy_distance_test(
            rng.gamma(2.0, size=1500), 0.3 + rng.gamma(2.0, size=1500), 199, make_rng(31)
        )
        assert rep.p_value == pytest.approx(1.0 / 200.0)


class TestDeterministicChecks:
    def test_transport_constancy(self):
        rng = make_rng(32)
        a, b = random_spd(2, rng), random_spd(2, rng)
        pairs = [(random_spd(2, rng), random_spd(2, rng)) for _ in range(100)]
        assert density_transport_check(0.7, a, b, MapParams(2.0, 0.5), pairs) < 1e-9

    def test_transport_inconsistent_map_fails(self):
        rng = make_rng(33)
        a, b = random_spd(2, rng), random_spd(2, rng)
        pairs = [(random_spd(2, rng), random_spd(2, rng)) for _ in range(100)]
        res = density_transport_check(
            0.7, a, b, MapParams(2.0, 0.5), pairs, map_params=MapParams(2.2, 0.5)
        )
        assert res > 1e-2

    def test_eff_constancy_and_control(self):
        grid = np.exp(np.linspace(-2, 2, 30))
        assert univariate_eff_check(0.7, 1.7, 0.6, 1.2, 0.9, grid, grid) < 1e-10
        assert univariate_eff_check(0.7, 1.7, 0.6, 1.2, 0.9, grid, grid, map_alpha=1.9) > 1e-2


class TestCampaigns:
    def test_direc_scalar_small(self):
        report = direc_campaign(McConfig(n_samples=2500, n_perms=199))
        assert report.passed

    def test_direc_mutation_control(self):
        report = direc_campaign(McConfig(n_samples=2500, n_perms=199, mutation=True))
        assert report.passed

    def test_my_scalar_small(self):
        report = my_property_campaign(McConfig(lam=1.0, alpha=1.0, beta=0.0, n_samples=2500, n_perms=199))
        assert report.passed

    def test_direc_matrix_small(self):
        chain = ChainConfig(burn_in=1500, thin=15, step_scale=0.4)
        report = direc_campaign(McConfig(dim=2, n_samples=500, n_perms=199, chain=chain))
        assert report.passed

    def test_my_matrix_small(self):
        chain = ChainConfig(burn_in=1500, thin=15, step_scale=0.4)
        report = my_property_campaign(McConfig(dim=2, lam=1.6, n_samples=500, n_perms=199, chain=chain))
        assert report.passed

    def test_transport_campaign_small(self):
        report = transport_campaign(TransportConfig(dims=(1, 2), pairs=100))
        assert report.passed

    def test_campaign_reproducible(self):
        cfg = McConfig(n_samples=1000, n_perms=99)
        r1 = direc_campaign(cfg)
        r2 = direc_campaign(cfg)
        assert [c.value for c in r1.results] == [c.value for c in r2.results]
