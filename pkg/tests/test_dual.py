"""Structure-space estimation: bounded-profile grids, interval recovery,
the degree-2 lower bound, and complex-plane scans."""

import math

import numpy as np
import pytest

from hyplab.dual import (
    DIVERGE_THRESHOLD,
    complex_scan,
    divergence_classify,
    dual_estimate,
    export_complex_csv,
    export_profile_csv,
    max_abs_profile,
    exclusion_bound,
    exclusion_intervals,
)
from hyplab.core import eval_basis, haar
from hyplab.families import beta_for_epsilon, make_family

# moderate settings keep each estimate well under a second; the acceptance
# suite re-runs the same geometry at the pinned N=400
FAST = dict(N=200, grid_step=1e-3, tol=1e-9)


def edges(est):
    return [(round(a, 6), round(b, 6)) for a, b in est.intervals]


def test_cheb_covers_interval():
    est = dual_estimate(make_family("cheb1"), **FAST)
    assert len(est.intervals) == 1
    a, b = est.intervals[0]
    assert a == -1.0 and b == 1.0


def test_cosh_covers_interval():
    est = dual_estimate(make_family("cosh", a=1.0), **FAST)
    assert est.intervals[0] == (-1.0, 1.0)


def test_grinspun_above_half_collapses_to_endpoints():
    est = dual_estimate(make_family("grinspun", c1=0.7), **FAST)
    members = est.members
    assert set(np.round(members, 12)) == {-1.0, 1.0}


def test_grinspun_below_half_keeps_interval():
    est = dual_estimate(make_family("grinspun", c1=0.3), **FAST)
    assert est.intervals[0] == (-1.0, 1.0)


def test_modkm_two_interval_geometry():
    est = dual_estimate(make_family("modkm", alpha=2.0, beta=5.0), **FAST)
    assert len(est.intervals) == 2
    (a1, b1), (a2, b2) = est.intervals
    third = 1.0 / 3.0
    step = FAST["grid_step"]
    assert a1 == -1.0 and b2 == 1.0
    assert abs(b1 + third) <= 2 * step
    assert abs(a2 - third) <= 2 * step


def test_km_8_5_gap_with_zero_member():
    est = dual_estimate(make_family("modkm", alpha=8.0, beta=5.0), **FAST)
    members = est.members
    assert 0.0 in set(members)  # the measure has a point mass at 0
    gap_lo, gap_hi = 0.01, 0.1
    inside = members[(members > gap_lo) & (members < gap_hi)]
    assert inside.size == 0


def test_convex_grid_sees_only_endpoints():
    est = dual_estimate(make_family("convex", eps=0.5, q=0.5), **FAST)
    assert set(np.round(est.members, 12)) == {-1.0, 1.0}


@pytest.mark.parametrize("tag,params,want", [
    ("cheb1", {}, 0.0),
    ("modkm", {"alpha": 2.0, "beta": 5.0}, 1.0 / 3.0),
    ("convex", {"eps": 0.5, "q": 0.5}, math.sqrt(1.0 / 3.0)),
])
def test_exclusion_bound_values(tag, params, want):
    assert exclusion_bound(make_family(tag, **params)) == pytest.approx(
        want, abs=1e-12)


def test_exclusion_bound_excludes_members():
    # no member of the estimate may fall strictly inside (-bound, bound),
    # except the atom location 0 when the measure carries one
    seq = make_family("modkm", alpha=2.0, beta=5.0)
    cut = exclusion_bound(seq)
    est = dual_estimate(seq, **FAST)
    members = np.abs(est.members)
    inner = members[(members > 0) & (members < cut - 1e-9)]
    assert inner.size == 0


@pytest.mark.parametrize("eps,cut", [
    (0.8, 1.0 / 3.0),
    (0.5, math.sqrt(1.0 / 3.0)),
])
def test_exclusion_intervals_cut_values(eps, cut):
    lo, hi = exclusion_intervals(eps)
    assert lo == pytest.approx((-1.0, -cut), abs=1e-12)
    assert hi == pytest.approx((cut, 1.0), abs=1e-12)


@pytest.mark.parametrize("eps", [0.0, 1.0, -0.1, 1.5])
def test_exclusion_intervals_rejects_out_of_range(eps):
    with pytest.raises(ValueError):
        exclusion_intervals(eps)


def test_exclusion_intervals_narrow_to_endpoints():
    # as eps shrinks to 0 the surviving intervals pinch onto the endpoints
    widths = [exclusion_intervals(e)[1][1] - exclusion_intervals(e)[1][0]
              for e in (0.001, 0.1, 0.5, 0.9)]
    assert widths == sorted(widths)
    assert widths[0] < 0.002


@pytest.mark.parametrize("build", [
    lambda eps: make_family("modkm", alpha=2.0, beta=beta_for_epsilon(eps)),
    lambda eps: make_family("convex", eps=eps, q=0.5),
])
def test_exclusion_intervals_match_degree_two_root(build):
    # the interval edge is exactly where the degree-2 polynomial hits -1,
    # for any sequence whose first Haar weight equals 1 + eps
    eps = 0.62
    (_, ncut), (cut, _) = exclusion_intervals(eps)
    seq = build(eps)
    assert haar(seq, 1) == pytest.approx(1.0 + eps, rel=1e-12)
    assert exclusion_bound(seq) == pytest.approx(cut, rel=1e-12)
    for x in (cut, ncut):
        vals = eval_basis(seq, 2, x).values
        assert vals[2] == pytest.approx(-1.0, abs=1e-12)


def test_profile_monotone_in_degree():
    seq = make_family("modkm", alpha=2.0, beta=5.0)
    xs = np.array([0.15, 0.5, 0.9])
    p100 = max_abs_profile(seq, xs, N=100)
    p200 = max_abs_profile(seq, xs, N=200)
    assert np.all(p200 >= p100 - 1e-15)


def test_divergence_classify_three_verdicts():
    seq = make_family("modkm", alpha=2.0, beta=5.0)
    assert divergence_classify(seq, 0.5) == "member_evidence"
    assert divergence_classify(seq, 0.2) == "nonmember_diverged"
    # just outside the support: bounded growth up to small N, undecided
    assert divergence_classify(seq, 1.0 + 1e-9, N=50) in (
        "undecided", "nonmember_diverged")


class TestComplexScan:
    def test_cosh_keeps_the_ellipse(self):
        pts, prof = complex_scan(make_family("cosh", a=1.0), N=150,
                                 step=0.05, relim=(-1.2, 1.2),
                                 imlim=(-1.0, 1.0))
        off_axis = pts[(np.abs(pts.imag) > 0.05) & (prof <= 1.0 + 1e-9)]
        assert off_axis.size > 0
        # all survivors inside the ellipse with semi-axes (1, tanh a)
        t = math.tanh(1.0)
        surv = pts[prof <= 1.0 + 1e-9]
        assert np.all(surv.real**2 + (surv.imag / t) ** 2 <= 1.0 + 1e-6)

    def test_counterexample_confined_to_axis(self):
        pts, prof = complex_scan(make_family("modkm", alpha=2.0, beta=5.0),
                                 N=400, step=0.02, relim=(-1.2, 1.2),
                                 imlim=(-0.5, 0.5))
        surv = pts[prof <= 1.0 + 1e-9]
        assert np.all(np.abs(surv.imag) <= 0.02)


def test_export_profile_csv(tmp_path):
    est = dual_estimate(make_family("modkm", alpha=2.0, beta=5.0), N=200,
                        grid_step=5e-3, tol=1e-9)
    path = tmp_path / "profile.csv"
    export_profile_csv(est, path)
    text = path.read_text()
    lines = text.splitlines()
    assert lines[0].startswith("x,")
    assert len(lines) == est.xs.size + 1
    assert "\r" not in text
    assert "member" in text and "diverged" in text


def test_export_profile_csv_bounded_family(tmp_path):
    # a family with bounded polynomials never earns the 'diverged' label
    est = dual_estimate(make_family("grinspun", c1=0.7), N=100,
                        grid_step=5e-3, tol=1e-9)
    path = tmp_path / "profile.csv"
    export_profile_csv(est, path)
    text = path.read_text()
    assert "above_band" in text and "diverged" not in text


def test_export_complex_csv(tmp_path):
    pts, prof = complex_scan(make_family("cosh", a=1.0), N=60, step=0.2)
    path = tmp_path / "cx.csv"
    export_complex_csv(pts, prof, path)
    lines = path.read_text().splitlines()
    assert len(lines) == pts.size + 1


def test_threshold_freeze_does_not_flip_members():
    # raising the divergence threshold must not change who is a member
    seq = make_family("modkm", alpha=8.0, beta=5.0)
    xs = np.linspace(-1, 1, 101)
    lo = max_abs_profile(seq, xs, N=200, threshold=1e4)
    hi = max_abs_profile(seq, xs, N=200, threshold=1e8)
    assert np.array_equal(lo <= 1.0 + 1e-9, hi <= 1.0 + 1e-9)
