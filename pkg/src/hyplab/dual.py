"""Dual-object estimation: where does sup_n |P_n(x)| stay at 1?

The structure space of the sequence is the set of (real) points where
the whole family is bounded by 1; its complex boundedness analogue
replaces the bound by mere boundedness.  Both are estimated here by
iterating the recurrence and freezing points once they cross a
divergence threshold.

The iteration uses the increment form of the recurrence,

    P_{n+1} = P_{n-1} + (1/a(n)) (x P_n - P_{n-1}),

which is exact at x = +-1 and needs only the reciprocals 1/a(n); those
stay representable as floats long after a(n) itself has dropped below
the resolution of c(n) near 1.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .core import CoeffSequence, CoefficientDomainError

__all__ = [
    "DIVERGE_THRESHOLD",
    "DualEstimate",
    "max_abs_profile",
    "dual_estimate",
    "exclusion_bound",
    "exclusion_intervals",
    "divergence_classify",
    "complex_scan",
    "export_profile_csv",
    "export_complex_csv",
]

DIVERGE_THRESHOLD = 1e6
_COMPRESS_EVERY = 16


def _inv_a_array(seq: CoeffSequence, N: int) -> np.ndarray:
    """1/a(n) for n = 0..N as floats.

    The convex-sequence construction has c(n) so close to 1 that
    1 - c(n) carries no information in double precision (c(n) rounds to
    exactly 1.0 near n = 105 for the default parameters); its spec
    carries the recurrence in exact rational arithmetic, and 1/a(n)
    rounded from the exact value stays a perfectly ordinary float.
    Other sequences with an alpha override are rebuilt through the chain
    c(n) = alpha(n)^2 / a(n-1), which is only viable while a(n) keeps
    clear of machine epsilon.
    """
    spec = getattr(seq, "convex_spec", None)
    if spec is not None:
        inv = np.empty(N + 1)
        inv[0] = 1.0
        for n in range(1, N + 1):
            inv[n] = spec.inv_a(n)
        return inv
    if seq.alpha_override is None:
        return 1.0 / seq.a_array(N)
    inv = np.empty(N + 1)
    inv[0] = 1.0
    a_prev = 1.0
    for n in range(1, N + 1):
        al = seq.alpha_override(n)
        a_cur = 1.0 - al * al / a_prev
        if a_cur <= 1e-13:
            raise CoefficientDomainError(
                f"a({n}) = {a_cur!r} is numerically degenerate for family "
                f"{seq.family_tag!r}; reconstruction from alpha alone only "
                f"reaches degree {n - 1}"
            )
        inv[n] = 1.0 / a_cur
        a_prev = a_cur
    return inv


def _profile(seq: CoeffSequence, zs: np.ndarray, N: int, threshold: float):
    """max_n<=N |P_n(z)| per point, frozen once it exceeds threshold.

    Returns (max_abs, diverged_at) where diverged_at[i] is the degree at
    which the threshold was crossed, or 0 if it never was.  The update
    P_{n+1} = P_{n-1} + (1/a(n)) (z P_n - P_{n-1}) keeps the two points
    z = +-1 exact (the increment vanishes identically there).
    """
    zs = np.asarray(zs)
    shape = zs.shape
    z = zs.ravel()
    inv_a = _inv_a_array(seq, N - 1 if N > 0 else 0)
    out = np.ones(z.size, dtype=float)
    dvg = np.zeros(z.size, dtype=np.int32)
    idx = np.arange(z.size)

    p_prev = np.ones_like(z)
    p_cur = z.copy()
    out = np.maximum(out, np.abs(p_cur))

    pending = False
    for n in range(1, N):
        p_next = p_prev + inv_a[n] * (z * p_cur - p_prev)
        ratio = np.abs(p_next)
        out[idx] = np.maximum(out[idx], ratio)
        over = ratio > threshold
        if np.any(over):
            dvg[idx[over]] = n + 1
            p_next[over] = 0.0  # stop growth; dropped at next compression
            pending = True
        p_prev, p_cur = p_cur, p_next
        if pending and n % _COMPRESS_EVERY == 0:
            keep = dvg[idx] == 0
            idx = idx[keep]
            if idx.size == 0:
                break
            z = z[keep]
            p_prev = p_prev[keep]
            p_cur = p_cur[keep]
            pending = False
    return out.reshape(shape), dvg.reshape(shape)


def max_abs_profile(
    seq: CoeffSequence,
    xs: Sequence[float],
    N: int = 400,
    threshold: float = DIVERGE_THRESHOLD,
) -> np.ndarray:
    """Frozen-at-divergence sup_{n<=N} |P_n(x)| over a set of points."""
    out, _ = _profile(seq, np.asarray(xs, dtype=float), N, threshold)
    return out


@dataclass(frozen=True)
class DualEstimate:
    """Grid classification of the structure space on [xmin, xmax]."""

    N: int
    grid_step: float
    tol: float
    threshold: float
    xs: np.ndarray
    max_abs: np.ndarray
    member_mask: np.ndarray
    intervals: tuple

    @property
    def members(self) -> np.ndarray:
        return self.xs[self.member_mask]


def _merge_intervals(xs: np.ndarray, mask: np.ndarray) -> tuple:
    """Runs of member points as intervals; single-point gaps are bridged."""
    m = mask.copy()
    for i in range(1, len(m) - 1):
        if not m[i] and m[i - 1] and m[i + 1]:
            m[i] = True
    ivs = []
    i = 0
    while i < len(m):
        if m[i]:
            j = i
            while j + 1 < len(m) and m[j + 1]:
                j += 1
            ivs.append((float(xs[i]), float(xs[j])))
            i = j + 1
        else:
            i += 1
    return tuple(ivs)


def dual_estimate(
    seq: CoeffSequence,
    N: int = 400,
    grid_step: float = 2e-4,
    tol: float = 1e-9,
    threshold: float = DIVERGE_THRESHOLD,
    xmin: float = -1.0,
    xmax: float = 1.0,
) -> DualEstimate:
    """Classify an even grid on [xmin, xmax] by boundedness of |P_n|.

    Membership evidence is ``max_abs <= 1 + tol``; the endpoints of the
    base interval are always on the grid.
    """
    npts = int(round((xmax - xmin) / grid_step)) + 1
    xs = np.linspace(xmin, xmax, npts)
    prof = max_abs_profile(seq, xs, N=N, threshold=threshold)
    mask = prof <= 1.0 + tol
    return DualEstimate(
        N=N,
        grid_step=grid_step,
        tol=tol,
        threshold=threshold,
        xs=xs,
        max_abs=prof,
        member_mask=mask,
        intervals=_merge_intervals(xs, mask),
    )


def exclusion_bound(seq: CoeffSequence) -> float:
    """Inner radius below which no structure-space point can lie.

    From degree two alone: |P_2(x)| <= 1 forces x^2 >= 2 c(1) - 1, so
    when h(1) = 1 + eps < 2 the open band (-cut, cut) with
    cut = sqrt((1 - eps)/(1 + eps)) contains no member.  Returns 0 when
    h(1) >= 2 (no constraint).
    """
    return float(np.sqrt(max(0.0, 2.0 * seq.c(1) - 1.0)))


def exclusion_intervals(eps: float) -> tuple:
    """The largest possible structure space when h(1) = 1 + eps.

    Returns the pair of closed intervals [-1, -cut] and [cut, 1] with
    cut = sqrt((1 - eps)/(1 + eps)); the degree-2 member already attains
    P_2(+-cut) = -1, so nothing between them can survive.
    """
    if not 0.0 < eps < 1.0:
        raise ValueError(f"eps must lie in (0, 1), got {eps}")
    cut = float(np.sqrt((1.0 - eps) / (1.0 + eps)))
    return ((-1.0, -cut), (cut, 1.0))


def divergence_classify(
    seq: CoeffSequence,
    x: float,
    N: int = 2000,
    tol: float = 1e-9,
    threshold: float = DIVERGE_THRESHOLD,
) -> str:
    """One-point verdict: 'member_evidence', 'nonmember_diverged', or
    'undecided' (bounded at degree N but above the membership band)."""
    prof, dvg = _profile(seq, np.array([float(x)]), N, threshold)
    if dvg[0] > 0:
        return "nonmember_diverged"
    if prof[0] <= 1.0 + tol:
        return "member_evidence"
    return "undecided"


def complex_scan(
    seq: CoeffSequence,
    N: int = 400,
    step: float = 4e-3,
    tol: float = 1e-9,
    relim: tuple = (-1.5, 1.5),
    imlim: tuple = (-1.5, 1.5),
    threshold: float = DIVERGE_THRESHOLD,
):
    """Scan a complex grid for points with max_{n<=N} |P_n(z)| <= 1+tol.

    Returns ``(points, max_abs)``: surviving grid points and the running
    sup there.  The real axis carries the real structure space; anything
    surviving off the axis witnesses a strictly larger complex object.
    The result over-approximates the true object: a point diverging only
    beyond degree N is still reported.
    """
    res = np.arange(relim[0], relim[1] + 0.5 * step, step)
    ims = np.arange(imlim[0], imlim[1] + 0.5 * step, step)
    Z = (res[None, :] + 1j * ims[:, None]).ravel()
    prof, _ = _profile(seq, Z, N, threshold)
    prof = prof.ravel()
    alive = prof <= 1.0 + tol
    return Z[alive], prof[alive]


def export_profile_csv(est: DualEstimate, path) -> None:
    """Write (x, max_abs_P, classification) rows for a grid estimate."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "max_abs_P", "classification"])
        for x, p, m in zip(est.xs, est.max_abs, est.member_mask):
            label = "member" if m else (
                "diverged" if p > est.threshold else "above_band"
            )
            w.writerow([f"{x:.12g}", f"{p:.12g}", label])


def export_complex_csv(points: np.ndarray, max_abs: np.ndarray, path) -> None:
    """Write surviving complex-scan points as (re, im, max_abs_P)."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["re", "im", "max_abs_P"])
        for z, p in zip(points, max_abs):
            w.writerow([f"{z.real:.12g}", f"{z.imag:.12g}", f"{p:.12g}"])
