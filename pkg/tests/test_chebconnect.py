"""Connection coefficients onto the first-kind Chebyshev basis, the
criterion report, and the monic minimax floor."""

import math

import numpy as np
import pytest

from hyplab.chebconnect import (
    connection_coeffs,
    connection_nonneg,
    connection_row_checks,
    criterion_report,
    minimax_probe,
)
from hyplab.families import make_family


def cheb_eval(k, x):
    return math.cos(k * math.acos(x))


def test_cheb_connection_is_identity():
    C = connection_coeffs(make_family("cheb1"), 10)
    assert np.allclose(C, np.eye(11), atol=1e-14)


def test_rows_reproduce_values():
    seq = make_family("km", alpha=2.0, beta=5.0)
    C = connection_coeffs(seq, 12)
    from hyplab.core import eval_basis

    for x in (-0.7, 0.2, 0.95):
        vals = eval_basis(seq, 12, x).values
        tvals = np.array([cheb_eval(k, x) for k in range(13)])
        assert np.allclose(C @ tvals, vals, rtol=1e-12, atol=1e-12)


def test_grinspun_two_term_rows():
    # P_n = (1/(2-2c)) T_n + ((1-2c)/(2-2c)) T_{n-2} for n >= 2
    for c1 in (0.3, 0.7):
        C = connection_coeffs(make_family("grinspun", c1=c1), 9)
        lead = 1.0 / (2.0 - 2.0 * c1)
        trail = (1.0 - 2.0 * c1) / (2.0 - 2.0 * c1)
        for n in range(2, 10):
            assert C[n, n] == pytest.approx(lead, rel=1e-12)
            assert C[n, n - 2] == pytest.approx(trail, rel=1e-12, abs=1e-13)
            others = [C[n, k] for k in range(n + 1) if k not in (n, n - 2)]
            assert np.max(np.abs(others)) < 1e-13


def test_row_checks_structure():
    seq = make_family("gencheb", alpha=0.5, beta=1.5)
    checks = connection_row_checks(seq, 25)
    assert checks["sum_to_one"] < 1e-12
    assert checks["leading"] < 1e-11
    assert checks["parity"] == 0.0


def test_nonneg_split():
    ok, worst_ok = connection_nonneg(make_family("grinspun", c1=0.3), 20)
    bad, worst_bad = connection_nonneg(make_family("grinspun", c1=0.7), 20)
    assert ok and worst_ok > -1e-12
    assert not bad and worst_bad < -0.1


def test_nonneg_for_nlp_families():
    for tag, params in (("cheb1", {}), ("cosh", {"a": 1.0}),
                        ("gencheb", {"alpha": 0.5, "beta": 0.5})):
        ok, _ = connection_nonneg(make_family(tag, **params), 25)
        assert ok


class TestCriterionReport:
    def test_full_interval_family(self):
        rep = criterion_report(make_family("cosh", a=1.0), nlp_verified=True,
                               profile_N=200, profile_step=2e-3)
        assert rep.dual_full_interval
        assert rep.predicted
        assert rep.haar_min >= 2.0 - 1e-9
        assert rep.haar_floor_met
        assert rep.consistent

    def test_counterexample_family(self):
        rep = criterion_report(make_family("modkm", alpha=2.0, beta=5.0),
                               nlp_verified=True,
                               profile_N=200, profile_step=2e-3)
        assert not rep.predicted       # no sufficient criterion fires
        assert not rep.haar_floor_met  # h(1) = 1.8 < 2
        assert rep.consistent          # ...which is exactly consistent

    def test_unverified_nlp_blocks_conditional_criteria(self):
        # bounded polynomials alone must not predict the floor when the
        # product formula has negative weights
        seq = make_family("grinspun", c1=0.7)
        rep = criterion_report(seq, nlp_verified=False,
                               profile_N=200, profile_step=2e-3)
        assert rep.uniform_bound
        assert not rep.predicted
        assert rep.haar_min < 2.0
        assert rep.consistent

    def test_lines_render(self):
        rep = criterion_report(make_family("cheb1"), nlp_verified=True,
                               profile_N=100, profile_step=5e-3)
        text = "\n".join(rep.lines())
        assert "min h(n)" in text and "consistent" in text


class TestMinimaxFloor:
    def test_cheb_attains(self):
        seq = make_family("cheb1")
        for n in (1, 4, 9):
            sup, floor = minimax_probe(seq, n)
            assert floor == 2.0 ** (1 - n)
            assert sup == pytest.approx(floor, rel=1e-10)

    @pytest.mark.parametrize("tag,params", [
        ("gencheb", {"alpha": 0.5, "beta": 0.5}),
        ("km", {"alpha": 2.0, "beta": 5.0}),
        ("cosh", {"a": 0.5}),
    ])
    def test_everyone_else_sits_above(self, tag, params):
        seq = make_family(tag, **params)
        for n in (3, 6):
            sup, floor = minimax_probe(seq, n)
            assert sup >= floor * (1.0 - 1e-12)
