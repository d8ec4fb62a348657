"""Reweighted-measure partner identities, verified exactly where possible.

For any symmetric orthogonal polynomial sequence with measure mu, the
partner measure

    dmu*(x) = (1/a(1)) (1 - x^2) dmu(x)

is again a probability measure, and the monic sequences sigma_n (for mu)
and sigma*_n (for mu*) are linked by the kernel identity

    (1 - x^2) sigma*_n(x) = -sigma_{n+2}(x)
                            + (sigma_{n+2}(1) / sigma_n(1)) sigma_n(x).

For the Karlin--McGregor walk coefficients the partner sequence is the
classical walk-polynomial variant with modified initial slope
P~_1(x) = beta x / (beta - 1), whose monic recurrence differs from the
original in the single weight lambda~_1 = (beta-1)/(alpha beta).  The
checks here build both sides in exact rational arithmetic whenever
alpha and beta are rational (every identity residual is then exactly 0)
and in floating point otherwise, and they confirm numerically that the
partner sequence really is orthogonal under mu* — including the
atom-at-zero case alpha > beta, where the partner atom mass is
(alpha-beta)/(alpha-1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Callable, Sequence

import numpy as np

from .families import KMParams, make_family
from . import measures as _measures

__all__ = [
    "TildeSeq",
    "km_monic_lambda",
    "tilde_monic_lambda",
    "monic_rows",
    "kernel_identity_residual",
    "sigma_ratio",
    "mustar_orthogonality",
    "tilde_density",
    "tilde_density_ratio",
    "chebyshev_partner_residual",
]


def _as_exact(value):
    """Fraction for rational input, None for floats (float path)."""
    if isinstance(value, Rational):
        return Fraction(value)
    return None


def km_monic_lambda(alpha, beta, n: int):
    """Monic recurrence weight of the walk polynomials; exact if possible."""
    if n < 1:
        raise ValueError("monic weights start at n = 1")
    a, b = _as_exact(alpha), _as_exact(beta)
    if a is not None and b is not None:
        if n == 1:
            return 1 / a
        if n % 2 == 0:
            return (a - 1) / (a * b)
        return (b - 1) / (a * b)
    if n == 1:
        return 1.0 / alpha
    if n % 2 == 0:
        return (alpha - 1.0) / (alpha * beta)
    return (beta - 1.0) / (alpha * beta)


def tilde_monic_lambda(alpha, beta, n: int):
    """Monic weight of the modified-initial-slope partner sequence."""
    if n == 1:
        a, b = _as_exact(alpha), _as_exact(beta)
        if a is not None and b is not None:
            return (b - 1) / (a * b)
        return (beta - 1.0) / (alpha * beta)
    return km_monic_lambda(alpha, beta, n)


@dataclass(frozen=True)
class TildeSeq:
    """The modified walk-polynomial sequence attached to (alpha, beta).

    Same recurrence coefficients as the walk polynomials from degree 2
    on, but P~_1(x) = beta x / (beta - 1); equivalently, the monic
    weight at n = 1 changes to (beta-1)/(alpha beta).
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha >= 2 and self.beta >= 2):
            raise ValueError("partner sequence needs alpha, beta >= 2")

    @property
    def initial_slope(self):
        b = _as_exact(self.beta)
        if b is not None:
            return b / (b - 1)
        return self.beta / (self.beta - 1.0)

    def lam(self, n: int):
        return tilde_monic_lambda(self.alpha, self.beta, n)

    def sigma(self, n: int) -> list:
        """Ascending monomial coefficients of the monic partner sigma~_n."""
        return monic_rows(self.lam, n)[n]


def monic_rows(lam: Callable[[int], object], nmax: int) -> list[list]:
    """Rows 0..nmax of ascending monomial coefficients of the monic
    sequence with x sigma_n = sigma_{n+1} + lam(n) sigma_{n-1}.

    Arithmetic follows the type returned by ``lam`` (Fractions stay
    exact; floats stay floats).
    """
    rows: list[list] = [[1]]
    if nmax == 0:
        return rows
    rows.append([0, 1])
    for n in range(1, nmax):
        cur, prev = rows[n], rows[n - 1]
        ln = lam(n)
        nxt = [0] * (n + 2)
        for k, coef in enumerate(cur):
            nxt[k + 1] += coef
        for k, coef in enumerate(prev):
            nxt[k] -= ln * coef
        rows.append(nxt)
    return rows


def _poly_sub(p: Sequence, q: Sequence) -> list:
    out = list(p) + [0] * (len(q) - len(p))
    for k, coef in enumerate(q):
        out[k] -= coef
    return out


def _poly_scale(p: Sequence, s) -> list:
    return [s * coef for coef in p]


def _one_minus_x2_times(p: Sequence) -> list:
    out = list(p) + [0, 0]
    for k, coef in enumerate(p):
        out[k + 2] -= coef
    return out


def kernel_identity_residual(alpha, beta, n: int) -> float:
    """Max |coefficient| of (1-x^2) sigma~_n + sigma_{n+2} - r_n sigma_n.

    r_n is (alpha-1)/alpha for n = 0 and (alpha-1)(beta-1)/(alpha beta)
    for n >= 1.  Exactly 0 for rational alpha, beta.
    """
    KMParams(float(alpha), float(beta))  # validate the parameter domain
    a, b = _as_exact(alpha), _as_exact(beta)
    if a is not None and b is not None:
        alpha, beta = a, b
    sig = monic_rows(lambda k: km_monic_lambda(alpha, beta, k), n + 2)
    sig_t = monic_rows(lambda k: tilde_monic_lambda(alpha, beta, k), max(n, 1))
    if n == 0:
        r = (alpha - 1) / alpha
    else:
        r = (alpha - 1) * (beta - 1) / (alpha * beta)
    lhs = _one_minus_x2_times(sig_t[n])
    rhs = _poly_sub(_poly_scale(sig[n], r), sig[n + 2])
    resid = _poly_sub(lhs, rhs)
    return float(max(abs(c) for c in resid))


def sigma_ratio(alpha, beta, n: int):
    """sigma_{n+2}(1) / sigma_n(1), evaluated then checked closed-form.

    Also verifies the one-step form sigma_{n+1}(1)/sigma_n(1) -
    lambda_{n+1} of the same quantity.  Raises AssertionError on any
    mismatch beyond round-off.
    """
    KMParams(float(alpha), float(beta))
    a, b = _as_exact(alpha), _as_exact(beta)
    exact = a is not None and b is not None
    if exact:
        alpha, beta = a, b
    one = Fraction(1) if exact else 1.0  # int/int would divide as float
    vals = [one, one]  # sigma_0(1), sigma_1(1)
    for k in range(1, n + 2):
        vals.append(vals[k] - km_monic_lambda(alpha, beta, k) * vals[k - 1])
    ratio = vals[n + 2] / vals[n]
    one_step = vals[n + 1] / vals[n] - km_monic_lambda(alpha, beta, n + 1)
    if n == 0:
        closed = (alpha - 1) / alpha
    else:
        closed = (alpha - 1) * (beta - 1) / (alpha * beta)
    tol = 0 if exact else 1e-12
    assert abs(ratio - closed) <= tol, (ratio, closed)
    assert abs(one_step - closed) <= tol, (one_step, closed)
    return ratio


def _poly_eval_grid(coeffs: Sequence, x: np.ndarray) -> np.ndarray:
    out = np.zeros_like(x, dtype=float)
    for c in reversed(list(coeffs)):
        out = out * x + float(c)
    return out


def mustar_orthogonality(alpha: float, beta: float, N: int, tol: float = 1e-11) -> float:
    """Max |int sigma~_m sigma~_n dmu*| over 0 <= m < n <= N.

    mu* is (1/a(1)) (1-x^2) dmu with mu the catalogued walk-polynomial
    measure, so the atom-at-zero case alpha > beta exercises the
    discrete part as well.
    """
    km = make_family("km", alpha=alpha, beta=beta)
    spec = _measures.measure_of(km)
    a1 = km.a(1)
    tilde = TildeSeq(alpha, beta)
    rows = [np.array([float(c) for c in row]) for row in
            monic_rows(tilde.lam, N)]
    worst = 0.0
    for m in range(N + 1):
        for n in range(m + 1, N + 1):
            if (m + n) % 2 == 1:
                continue  # odd cross terms vanish by symmetry
            val = _measures.inner_product(
                spec,
                lambda x, rm=rows[m], rn=rows[n]: (
                    _poly_eval_grid(rm, x)
                    * _poly_eval_grid(rn, x)
                    * (1.0 - x * x)
                    / a1
                ),
                tol=tol,
            )
            worst = max(worst, abs(val))
    return worst


def tilde_density(alpha: float, beta: float, x) -> np.ndarray:
    """Closed-form a.c. density of the partner measure (atom excluded).

    On gamma_2 < |x| < gamma_1:
        alpha beta sqrt((gamma_1^2-x^2)(x^2-gamma_2^2))
            / (2 pi (alpha-1) |x|),
    which degenerates to alpha^2 sqrt(gamma_1^2-x^2)/(2 pi (alpha-1))
    when alpha = beta.  For alpha > beta the remaining mass
    (alpha-beta)/(alpha-1) sits in an atom at 0.
    """
    p = KMParams(alpha, beta)
    x = np.asarray(x, dtype=float)
    ax = np.abs(x)
    g1, g2 = p.gamma1, p.gamma2
    out = np.zeros_like(ax)
    if alpha == beta:
        inside = ax < g1
        out[inside] = (
            alpha**2 * np.sqrt(g1**2 - ax[inside] ** 2)
            / (2.0 * math.pi * (alpha - 1.0))
        )
        return out
    inside = (ax > g2) & (ax < g1)
    xi = ax[inside]
    out[inside] = (
        alpha * beta * np.sqrt((g1**2 - xi**2) * (xi**2 - g2**2))
        / (2.0 * math.pi * (alpha - 1.0) * xi)
    )
    return out


def tilde_density_ratio(alpha: float, beta: float, x) -> np.ndarray:
    """tilde-density(x) / [(1/a(1)) (1-x^2) * walk-measure density(x)].

    Equals 1 identically on the interior of the a.c. support; the two
    formulas come from independent sources (the corrected classical
    derivation vs. the catalogue), so this is the printed-formula check.
    """
    km = make_family("km", alpha=alpha, beta=beta)
    spec = _measures.measure_of(km)
    x = np.asarray(x, dtype=float)
    base = spec.density(x) * (1.0 - x * x) / km.a(1)
    return tilde_density(alpha, beta, x) / base


def chebyshev_partner_residual(nmax: int) -> float:
    """Kernel identity for the Chebyshev pair, exact arithmetic.

    For the first-kind sequence the partner measure is the second-kind
    (semicircle-weight) measure, so sigma* must be the monic second-kind
    sequence: weight 1/2 at n=1 then 1/4 for the base, constant 1/4 for
    the partner.  Returns the max coefficient residual of the identity
    with the ratio r_n computed from values at 1 (not from a closed
    form), over all n <= nmax.  Exactly 0.
    """
    lam_t = lambda k: Fraction(1, 2) if k == 1 else Fraction(1, 4)
    lam_u = lambda k: Fraction(1, 4)
    sig = monic_rows(lam_t, nmax + 2)
    sig_star = monic_rows(lam_u, max(nmax, 1))
    vals = [Fraction(1), Fraction(1)]
    for k in range(1, nmax + 2):
        vals.append(vals[k] - lam_t(k) * vals[k - 1])
    worst = Fraction(0)
    for n in range(nmax + 1):
        r = vals[n + 2] / vals[n]
        lhs = _one_minus_x2_times(sig_star[n])
        rhs = _poly_sub(_poly_scale(sig[n], r), sig[n + 2])
        resid = _poly_sub(lhs, rhs)
        worst = max(worst, max(abs(c) for c in resid))
    return float(worst)
