"""Acceptance gate: one test per headline criterion, each printing a single
pass/fail line.  Campaign-backed criteria share module-scoped runs so the
whole gate stays inside its runtime budget."""

import json

import numpy as np
import pytest
import scipy.stats

from spdgig.cli import main
from spdgig.distributions import (
    ChainConfig,
    GigParams,
    MgigParams,
    WishartParams,
    gig_numeric_cdf,
    gig_sample,
    make_rng,
    mgig_mh_sample,
    wishart_sample,
)
from spdgig.maps import maps_campaign
from spdgig.reports import comparable_fields
from spdgig.stats import McConfig, direc_campaign, my_property_campaign, transport_campaign
from spdgig.yangbaxter import appendix_campaign, yb_campaign


def _report_line(number, name, ok):
    print(f"[criterion {number:02d}] {name}: {'PASS' if ok else 'FAIL'}")


@pytest.fixture(scope="module")
def maps_report():
    return maps_campaign()


@pytest.fixture(scope="module")
def yb_report():
    return yb_campaign()


def _check(report, name):
    return next(c for c in report.results if c.name == name)


class TestAcceptance:
    def test_01_involution_suite(self, maps_report):
        checks = [_check(maps_report, "involution_phi"), _check(maps_report, "involution_psi")]
        ok = all(c.passed for c in checks)
        _report_line(1, "involution residuals <= 1e-10 for r in {1,2,3,5,10}", ok)
        assert ok, {c.name: c.value for c in checks}

    def test_02_yang_baxter_suite(self, yb_report):
        ok = yb_report.passed
        _report_line(2, "Yang-Baxter sweep (grid incl. equal-parameter cell, mutation control)", ok)
        assert ok, {c.name: c.value for c in yb_report.results if not c.passed}

    def test_03_appendix_trace(self):
        report = appendix_campaign()
        ok = report.passed
        _report_line(3, "proof-chain trace residuals <= 1e-10 on random triples", ok)
        assert ok, {c.name: c.value for c in report.results if not c.passed}

    def test_04_jacobians(self, maps_report):
        checks = [_check(maps_report, "jacobian_phi_unit"), _check(maps_report, "jacobian_psi_determinant")]
        ok = all(c.passed for c in checks)
        _report_line(4, "FD Jacobians match unit / determinant formulas within 1e-4", ok)
        assert ok, {c.name: c.value for c in checks}

    def test_05_derivative_identities(self, maps_report):
        checks = [_check(maps_report, "derivative_fd"), _check(maps_report, "derivative_algebraic")]
        ok = all(c.passed for c in checks)
        _report_line(5, "derivative identities: FD <= 1e-5, algebraic <= 1e-11", ok)
        assert ok, {c.name: c.value for c in checks}

    def test_06_density_transport(self):
        report = transport_campaign()
        ok = report.passed
        _report_line(6, "density transport constancy + scalar grid check + mutation controls", ok)
        assert ok, {c.name: c.value for c in report.results if not c.passed}

    def test_07_monte_carlo_independence(self):
        reports = [
            direc_campaign(McConfig()),
            direc_campaign(McConfig(mutation=True)),
            my_property_campaign(McConfig(lam=1.0, alpha=1.0, beta=0.0)),
            my_property_campaign(McConfig(lam=1.0, alpha=1.0, beta=0.0, mutation=True)),
        ]
        ok = all(r.passed for r in reports)
        _report_line(7, "Monte Carlo campaigns at N=2e4, B=999 with negative controls", ok)
        assert ok, [
            {c.name: c.value for c in r.results if not c.passed} for r in reports if not r.passed
        ]

    def test_08_samplers(self):
        settings = [
            GigParams(0.5, 1.0, 1.0),
            GigParams(2.0, 1.0, 1.0),
            GigParams(-0.5, 2.0, 2.0),
            GigParams(-3.0, 0.5, 4.0),
            GigParams(1.0, 3.0, 0.2),
            GigParams(-1.5, 4.0, 0.8),
        ]
        ks_stats = []
        for i, p in enumerate(settings):
            draws = gig_sample(p, make_rng(501, i), size=50000)
            ks_stats.append(scipy.stats.kstest(draws, gig_numeric_cdf(p)).statistic)
        gig_ok = max(ks_stats) < 0.015

        chain = mgig_mh_sample(
            MgigParams(1, 2.0, np.array([[1.0]]), np.array([[1.0]])),
            ChainConfig(burn_in=3000, thin=25, step_scale=0.5),
            20000,
            make_rng(502),
        )
        exact = gig_sample(GigParams(2.0, 1.0, 1.0), make_rng(503), size=20000)
        mh_p = scipy.stats.ks_2samp(chain.draws[:, 0, 0], exact).pvalue
        mh_ok = chain.converged and mh_p > 0.01

        w = wishart_sample(WishartParams(2, 3.0, np.eye(2)), make_rng(504), size=20000)
        se = w.std(axis=0).max() / np.sqrt(w.shape[0])
        wishart_ok = bool(np.all(np.abs(w.mean(axis=0) - 3.0 * np.eye(2)) < 3 * se))

        ok = gig_ok and mh_ok and wishart_ok
        _report_line(8, "samplers: GIG KS < 0.015, MH-vs-exact p > 0.01, Wishart mean in 3 se", ok)
        assert ok, {"gig_ks_max": max(ks_stats), "mh_p": mh_p, "wishart_ok": wishart_ok}

    def test_09_cone_candidate(self, maps_report):
        check = _check(maps_report, "cone_candidate_agreement")
        _report_line(9, "quadratic-representation form agrees with the direct map within 1e-9", check.passed)
        assert check.passed, check.value

    def test_10_reproducibility(self, tmp_path):
        dicts = []
        for threads, name in ((1, "a.json"), (4, "b.json")):
            out = tmp_path / name
            main(["verify-yb", "--dim", "2", "--trials", "20", "--seed", "55",
                  "--threads", str(threads), "--out", str(out)])
            dicts.append(comparable_fields(json.loads(out.read_text())))
        rerun = comparable_fields(yb_campaign().to_dict())
        first = comparable_fields(yb_campaign().to_dict())
        ok = dicts[0] == dicts[1] and rerun == first
        _report_line(10, "same seed reproduces identical report fields across reruns and --threads", ok)
        assert ok
