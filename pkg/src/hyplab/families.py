"""Named coefficient families and their closed-form data.

Registry of the concrete sequences the package ships with:

========== ============================= =====================================
tag        parameters                    description
========== ============================= =====================================
cheb1      --                            Chebyshev polynomials of the 1st kind
gencheb    alpha, beta > -1              generalized Chebyshev polynomials
cosh       a > 0                         cosh-modulated Chebyshev polynomials
grinspun   c1 in (0, 1)                  Grinspun perturbation of Chebyshev
km         alpha, beta >= 2              Karlin--McGregor walk polynomials
modkm      alpha, beta >= 2              Karlin--McGregor rescaled to P_n(1)=1
rational25 --                            modkm(2,5) in rational closed form
convex     eps (or s0) in (0,1), q       convex-sequence construction with
                                         discrete dual and exponential Haar
                                         growth
custom     cfunc                         direct coefficient callable
========== ============================= =====================================

Besides the builders, this module carries the closed-form Haar weights of
each named family, the parameter region V for generalized Chebyshev
nonnegative linearization, and the parameter solvers used by the two
``h(1) = 1 + eps`` constructions.
"""

from __future__ import annotations

import math
import re
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np
from scipy.special import eval_chebyu

from .core import CoeffSequence

__all__ = [
    "ConvexSeqSpec",
    "FamilyParameterError",
    "KMParams",
    "UnsupportedFamilyError",
    "beta_for_epsilon",
    "closed_form_haar",
    "geometric_sequence",
    "h1_lt_2_region",
    "haar_term_estimate",
    "in_V",
    "km_special_closed_forms",
    "make_family",
    "parse_family_spec",
    "s0_for_epsilon",
]

FAMILY_TAGS = (
    "cheb1",
    "gencheb",
    "cosh",
    "grinspun",
    "km",
    "modkm",
    "rational25",
    "convex",
    "custom",
)


class FamilyParameterError(ValueError):
    """A family was requested with parameters outside its domain."""


class UnsupportedFamilyError(ValueError):
    """The requested closed-form data does not exist for this family."""


# ---------------------------------------------------------------------------
# parameter containers


@dataclass(frozen=True)
class KMParams:
    """Parameters of a Karlin--McGregor pair, with the induced band edges.

    gamma1 and gamma2 are the outer/inner edges of the support of the
    orthogonalization measure of the walk polynomials:
    gamma1 = (sqrt(alpha-1) + sqrt(beta-1)) / sqrt(alpha beta),
    gamma2 = |sqrt(alpha-1) - sqrt(beta-1)| / sqrt(alpha beta).
    """

    alpha: float
    beta: float

    def __post_init__(self):
        if not (self.alpha >= 2 and self.beta >= 2):
            raise FamilyParameterError(
                f"Karlin--McGregor parameters require alpha, beta >= 2, "
                f"got ({self.alpha}, {self.beta})"
            )

    @property
    def sa(self) -> float:
        return math.sqrt(self.alpha - 1.0)

    @property
    def sb(self) -> float:
        return math.sqrt(self.beta - 1.0)

    @property
    def gamma1(self) -> float:
        return (self.sa + self.sb) / math.sqrt(self.alpha * self.beta)

    @property
    def gamma2(self) -> float:
        return abs(self.sa - self.sb) / math.sqrt(self.alpha * self.beta)

    @property
    def support_cut(self) -> float:
        """gamma2 / gamma1, the inner support edge after rescaling to [-1,1]."""
        return abs(self.sa - self.sb) / (self.sa + self.sb)


def geometric_sequence(s0: float, q: float) -> Callable[[int], float]:
    """The default convex null sequence s_k = s0 * q**k."""
    return lambda k: s0 * q**k


@dataclass(eq=False)
class ConvexSeqSpec:
    """Convex-sequence construction data.

    Given a strictly decreasing convex null sequence (s_k) in (0, 1), the
    recurrence weights are

        lambda_{2k} = 1 - s_k,        lambda_{2k-1} = s_k - s_{k+1},

    and the auxiliary polynomials Q_0 = 1, Q_1 = x / lambda_0,
    x Q_n = lambda_n Q_{n+1} + lambda_{n-1} Q_{n-1}.  The normalized
    sequence P_n = Q_n / Q_n(1) has c(n) = lambda_{n-1} Q_{n-1}(1) / Q_n(1)
    and Haar weights h(n) = Q_n(1)^2.

    Everything is carried in exact rational arithmetic and rounded only on
    output.  The weights satisfy lambda_{2n-1} + lambda_{2n} = lambda_{2n+2}
    identically, so the admissibility of the sequence sits on a boundary: a
    float-rounded lambda chain drifts off it and produces a(n) < 0 once the
    true a(n) falls below machine epsilon (n around 105 for the default
    parameters).  Because every float is a dyadic rational, converting the
    supplied s-values via Fraction is exact and cheap, and a(n), 1/a(n),
    c(n) and h(n) stay correct at any depth.
    """

    s: Callable[[int], float]
    params: dict
    validate: bool = True
    _s_cache: list = field(default_factory=list, repr=False)
    _lam: list = field(default_factory=list, repr=False)
    _q1: list = field(default_factory=list, repr=False)
    _lock: threading.RLock = field(default_factory=threading.RLock, repr=False)

    def _s_at(self, k: int) -> Fraction:
        with self._lock:
            while len(self._s_cache) <= k:
                j = len(self._s_cache)
                val = Fraction(self.s(j))
                if self.validate:
                    if not 0 < val < 1:
                        raise FamilyParameterError(
                            f"convex sequence must stay in (0, 1); s({j}) = "
                            f"{float(val)!r}"
                        )
                    if j >= 1 and not val < self._s_cache[j - 1]:
                        raise FamilyParameterError(
                            f"convex sequence must be strictly decreasing; "
                            f"s({j - 1}) = {float(self._s_cache[j - 1])!r}, "
                            f"s({j}) = {float(val)!r}"
                        )
                self._s_cache.append(val)
                if self.validate and j >= 2:
                    second = self._s_cache[j - 2] - 2 * self._s_cache[j - 1] + val
                    if second < 0:
                        raise FamilyParameterError(
                            f"convex sequence must be convex; second difference "
                            f"at k={j - 2} is {float(second)!r}"
                        )
            return self._s_cache[k]

    def lam_exact(self, n: int) -> Fraction:
        """Recurrence weight lambda_n, n >= 0, as an exact rational."""
        with self._lock:
            while len(self._lam) <= n:
                j = len(self._lam)
                if j % 2 == 0:
                    val = 1 - self._s_at(j // 2)
                else:
                    k = (j + 1) // 2  # lambda_{2k-1} = s_k - s_{k+1}
                    val = self._s_at(k) - self._s_at(k + 1)
                self._lam.append(val)
            return self._lam[n]

    def lam(self, n: int) -> float:
        return float(self.lam_exact(n))

    def q1_exact(self, n: int) -> Fraction:
        """Q_n(1) as an exact rational."""
        with self._lock:
            if not self._q1:
                self._q1 = [Fraction(1)]
            while len(self._q1) <= n:
                j = len(self._q1)
                if j == 1:
                    val = 1 / self.lam_exact(0)
                else:
                    val = (
                        self._q1[j - 1] - self.lam_exact(j - 2) * self._q1[j - 2]
                    ) / self.lam_exact(j - 1)
                if val <= 0:
                    raise FamilyParameterError(
                        f"convex construction broke down: Q_{j}(1) = "
                        f"{float(val)!r} is not positive"
                    )
                self._q1.append(val)
            return self._q1[n]

    def q1(self, n: int) -> float:
        return float(self.q1_exact(n))

    def c_exact(self, n: int) -> Fraction:
        return self.lam_exact(n - 1) * self.q1_exact(n - 1) / self.q1_exact(n)

    def c(self, n: int) -> float:
        """Recurrence coefficient of the normalized sequence."""
        return float(self.c_exact(n))

    def a_exact(self, n: int) -> Fraction:
        if n == 0:
            return Fraction(1)
        return 1 - self.c_exact(n)

    def inv_a(self, n: int) -> float:
        """1/a(n), correctly rounded.

        a(n) itself underflows below float64 resolution of c(n) near 1 (the
        default family hits float c(n) == 1.0 at n = 105) while 1/a(n)
        remains comfortably representable.
        """
        return float(1 / self.a_exact(n))

    def haar(self, n: int) -> float:
        """h(n) = Q_n(1)^2."""
        q = self.q1_exact(n)
        return float(q * q)


# ---------------------------------------------------------------------------
# coefficient functions of the named families


def _gencheb_c(alpha: float, beta: float) -> Callable[[int], float]:
    def cfun(n: int) -> float:
        k, odd = divmod(n + 1, 2)
        if odd == 0:
            return (k + beta) / (2 * k + alpha + beta)
        m = n // 2
        return m / (2 * m + alpha + beta + 1)

    return cfun


def _cosh_c(a: float) -> Callable[[int], float]:
    # cosh(a(n-1)) / (2 cosh(an) cosh(a)), written with negative exponents
    # only so it stays finite for arbitrarily large n.
    two_cosh_a = 2.0 * math.cosh(a)

    def cfun(n: int) -> float:
        num = 1.0 + math.exp(-2.0 * a * (n - 1))
        den = 1.0 + math.exp(-2.0 * a * n)
        return math.exp(-a) * num / (den * two_cosh_a)

    return cfun


def _km_c(alpha: float, beta: float) -> Callable[[int], float]:
    return lambda n: 1.0 / alpha if n % 2 else 1.0 / beta


def _modkm_c(alpha: float, beta: float) -> Callable[[int], float]:
    sa = math.sqrt(alpha - 1.0)
    sb = math.sqrt(beta - 1.0)
    S = sa + sb
    D = (alpha - 2.0) * sb + (beta - 2.0) * sa
    excess = sa * sb - 1.0

    def cfun(n: int) -> float:
        if n % 2:
            m = (n + 1) // 2
            return sb / S * (1.0 - sa * excess / (D * m + S))
        m = n // 2
        return sa / S * (1.0 - sb * excess / (D * m + beta * sa))

    return cfun


def _rational25_c(n: int) -> float:
    if n % 2:
        m = (n + 1) // 2
        return (6 * m + 4) / (9 * m + 9)
    m = n // 2
    return (m + 1) / (3 * m + 5)


# ---------------------------------------------------------------------------
# registry


def make_family(tag: str, *, unchecked: bool = False, **params) -> CoeffSequence:
    """Build a named coefficient sequence.

    ``unchecked=True`` skips the parameter-domain validation (exploration
    outside the proven regions); the coefficient-domain check c(n) in (0,1)
    still applies lazily.
    """
    tag = tag.lower()
    if tag in ("chebyshev", "chebyshev1"):
        tag = "cheb1"

    if tag == "cheb1":
        _reject_params(tag, params)
        return CoeffSequence(
            "cheb1", {}, lambda n: 0.5, "Chebyshev polynomials of the 1st kind"
        )

    if tag == "gencheb":
        alpha, beta = _take(params, tag, "alpha", "beta")
        if not unchecked and not (alpha > -1.0 and beta > -1.0):
            raise FamilyParameterError(
                f"gencheb requires alpha, beta > -1, got ({alpha}, {beta})"
            )
        return CoeffSequence(
            "gencheb",
            {"alpha": alpha, "beta": beta},
            _gencheb_c(alpha, beta),
            f"generalized Chebyshev polynomials, alpha={alpha}, beta={beta}",
        )

    if tag == "cosh":
        (a,) = _take(params, tag, "a")
        if not unchecked and not a > 0.0:
            raise FamilyParameterError(f"cosh family requires a > 0, got {a}")
        return CoeffSequence(
            "cosh", {"a": a}, _cosh_c(a), f"cosh-modulated Chebyshev, a={a}"
        )

    if tag == "grinspun":
        (c1,) = _take(params, tag, "c1")
        if not unchecked and not 0.0 < c1 < 1.0:
            raise FamilyParameterError(f"grinspun requires c1 in (0, 1), got {c1}")
        return CoeffSequence(
            "grinspun",
            {"c1": c1},
            lambda n: c1 if n == 1 else 0.5,
            f"Grinspun perturbation of Chebyshev, c1={c1}",
        )

    if tag in ("km", "modkm"):
        alpha, beta = _take(params, tag, "alpha", "beta")
        if not unchecked:
            KMParams(alpha, beta)  # validates alpha, beta >= 2
        cfun = _km_c(alpha, beta) if tag == "km" else _modkm_c(alpha, beta)
        what = "walk polynomials" if tag == "km" else "rescaled walk polynomials"
        return CoeffSequence(
            tag,
            {"alpha": alpha, "beta": beta},
            cfun,
            f"Karlin--McGregor {what}, alpha={alpha}, beta={beta}",
        )

    if tag == "rational25":
        _reject_params(tag, params)
        return CoeffSequence(
            "rational25",
            {},
            _rational25_c,
            "rational-coefficient family with h(1)=9/5 "
            "(rescaled Karlin--McGregor (2,5))",
        )

    if tag == "convex":
        q = float(params.pop("q", 0.5))
        if "eps" in params and "s0" in params:
            raise FamilyParameterError("convex family takes eps or s0, not both")
        if "eps" in params:
            eps = float(params.pop("eps"))
            if not unchecked and not 0.0 < eps < 1.0:
                raise FamilyParameterError(f"convex requires eps in (0, 1), got {eps}")
            s0 = s0_for_epsilon(eps)
            shown = {"eps": eps, "q": q}
        elif "s0" in params:
            s0 = float(params.pop("s0"))
            shown = {"s0": s0, "q": q}
        else:
            raise FamilyParameterError("convex family needs eps= or s0=")
        _reject_params(tag, params)
        if not unchecked and not 0.0 < q < 1.0:
            raise FamilyParameterError(f"convex requires q in (0, 1), got {q}")
        spec = ConvexSeqSpec(
            geometric_sequence(s0, q), dict(shown), validate=not unchecked
        )
        seq = CoeffSequence(
            "convex",
            dict(shown),
            spec.c,
            f"convex-sequence construction, s_k = {s0:.12g} * {q:.12g}**k",
        )
        seq.convex_spec = spec
        seq.alpha_override = lambda n: spec.lam(n - 1)
        return seq

    if tag == "custom":
        cfunc = params.pop("cfunc", None)
        if cfunc is None:
            raise FamilyParameterError("custom family needs cfunc=")
        _reject_params(tag, params)
        return CoeffSequence("custom", {}, cfunc, "user-supplied coefficients")

    raise UnsupportedFamilyError(
        f"unknown family tag {tag!r}; known: {FAMILY_TAGS}"
    )


def _take(params: dict, tag: str, *names: str) -> tuple:
    try:
        values = tuple(float(params.pop(name)) for name in names)
    except KeyError as missing:
        raise FamilyParameterError(f"{tag} family needs {missing.args[0]}=") from None
    _reject_params(tag, params)
    return values


def _reject_params(tag: str, params: dict) -> None:
    if params:
        raise FamilyParameterError(
            f"unexpected parameter(s) for {tag}: {sorted(params)}"
        )


_SPEC_RE = re.compile(r"^\s*([A-Za-z0-9_]+)\s*(?::(.*))?$")


def parse_family_spec(spec: str, *, unchecked: bool = False) -> CoeffSequence:
    """Parse a ``tag:key=value,key=value`` string into a sequence.

    Values may be decimal (``0.5``, ``-0.8333``, ``1e-3``) or rational
    (``5/9``) literals.
    """
    m = _SPEC_RE.match(spec)
    if m is None:
        raise FamilyParameterError(f"malformed family spec {spec!r}")
    tag, rest = m.group(1), m.group(2)
    params = {}
    if rest is not None and rest.strip():
        for item in rest.split(","):
            if "=" not in item:
                raise FamilyParameterError(
                    f"malformed parameter {item!r} in family spec {spec!r}"
                )
            key, _, raw = item.partition("=")
            key = key.strip()
            raw = raw.strip()
            try:
                params[key] = float(Fraction(raw))
            except (ValueError, ZeroDivisionError):
                raise FamilyParameterError(
                    f"cannot parse value {raw!r} for {key!r} in {spec!r}"
                ) from None
    return make_family(tag, unchecked=unchecked, **params)


# ---------------------------------------------------------------------------
# closed-form Haar weights


def _poch(x: float, k: int) -> float:
    out = 1.0
    for j in range(k):
        out *= x + j
    return out


def closed_form_haar(seq: CoeffSequence, n: int) -> float:
    """Closed-form Haar weight h(n) for the named families.

    Raises :class:`UnsupportedFamilyError` for ``custom`` and ``convex``
    (the latter has no closed form beyond the defining Q_n(1)^2).
    """
    if n < 0:
        raise ValueError(f"h(n) is defined for n >= 0, got n={n}")
    if n == 0:
        return 1.0
    tag = seq.family_tag
    p = seq.params

    if tag == "cheb1":
        return 2.0

    if tag == "gencheb":
        alpha, beta = p["alpha"], p["beta"]
        m, r = divmod(n + 1, 2)
        common = _poch(alpha + beta + 2.0, m - 1) / _poch(beta + 1.0, m)
        if r == 0:  # n = 2m - 1
            return common * (2 * m + alpha + beta) * _poch(alpha + 1.0, m - 1) / math.factorial(m - 1)
        m = n // 2  # n = 2m
        return common * (2 * m + alpha + beta + 1) * _poch(alpha + 1.0, m) / math.factorial(m)

    if tag == "cosh":
        ch = math.cosh(p["a"] * n)
        return 2.0 * ch * ch

    if tag == "grinspun":
        c1 = p["c1"]
        return 1.0 / c1 if n == 1 else 2.0 * (1.0 - c1) / c1

    if tag == "km":
        alpha, beta = p["alpha"], p["beta"]
        m, r = divmod(n + 1, 2)
        if r == 0:  # n = 2m - 1
            return alpha * (alpha - 1.0) ** (m - 1) * (beta - 1.0) ** (m - 1)
        m = n // 2
        return beta * (alpha - 1.0) ** m * (beta - 1.0) ** (m - 1)

    if tag == "modkm":
        alpha, beta = p["alpha"], p["beta"]
        sa = math.sqrt(alpha - 1.0)
        sb = math.sqrt(beta - 1.0)
        slope = (alpha - 2.0) / sa + (beta - 2.0) / sb
        m, r = divmod(n + 1, 2)
        if r == 0:  # n = 2m - 1
            return (slope * (m - 1) + sa + sb) ** 2 / beta
        m = n // 2
        return (slope * m + beta / sb) ** 2 / beta

    if tag == "rational25":
        m, r = divmod(n + 1, 2)
        if r == 0:
            return 1.8 * (0.5 * m + 0.5) ** 2
        m = n // 2
        return 1.8 * (0.5 * m + 5.0 / 6.0) ** 2

    raise UnsupportedFamilyError(f"no closed-form Haar weights for family {tag!r}")


# ---------------------------------------------------------------------------
# generalized Chebyshev region V and the quadratic growth estimate


def in_V(alpha: float, beta: float) -> bool:
    """Membership in the nonnegative-linearization region V.

    V = {(alpha, beta) in (-1, inf)^2 : alpha >= beta and
         a(a+5)(a+3)^2 >= (a^2 - 7a - 24) b^2}  with a = alpha+beta+1,
    b = alpha-beta.
    """
    if not (alpha > -1.0 and beta > -1.0):
        return False
    if alpha < beta:
        return False
    a = alpha + beta + 1.0
    b = alpha - beta
    return a * (a + 5.0) * (a + 3.0) ** 2 >= (a * a - 7.0 * a - 24.0) * b * b


def haar_term_estimate(alpha: float, beta: float) -> float:
    """The quadratic alpha^2 + alpha*beta + 3*alpha + 1.

    Nonnegativity of this expression on V is what makes each factor of the
    generalized Chebyshev Haar products >= 1; it is checked gridwise in the
    test suite.
    """
    return alpha * alpha + alpha * beta + 3.0 * alpha + 1.0


# ---------------------------------------------------------------------------
# parameter solvers for the h(1) = 1 + eps constructions


def beta_for_epsilon(eps: float) -> float:
    """beta with h(1) = 1 + eps for the rescaled Karlin--McGregor family
    at alpha = 2: beta = (2 + 2 sqrt(1 - eps^2)) / eps^2."""
    if not 0.0 < eps < 1.0:
        raise FamilyParameterError(f"eps must be in (0, 1), got {eps}")
    return (2.0 + 2.0 * math.sqrt(1.0 - eps * eps)) / (eps * eps)


def s0_for_epsilon(eps: float) -> float:
    """s0 with h(1) = 1/(1 - s0)^2 = 1 + eps for the convex construction."""
    if not 0.0 < eps < 1.0:
        raise FamilyParameterError(f"eps must be in (0, 1), got {eps}")
    return 1.0 - 1.0 / math.sqrt(1.0 + eps)


def h1_lt_2_region(alpha: float, beta: float) -> bool:
    """Whether the rescaled Karlin--McGregor pair has h(1) < 2.

    Equivalent to alpha < 3*beta - 2*sqrt(2*beta^2 - 2*beta); both
    parameters must be >= 2.
    """
    KMParams(alpha, beta)
    return alpha < 3.0 * beta - 2.0 * math.sqrt(2.0 * beta * beta - 2.0 * beta)


# ---------------------------------------------------------------------------
# alpha = 2 closed forms via Chebyshev-U


def _chebu(k: int, z):
    if k < 0:
        return np.zeros_like(np.asarray(z, dtype=float)) if np.ndim(z) else 0.0
    return eval_chebyu(k, z)


def km_special_closed_forms(beta: float, n: int, x, *, modified: bool = True):
    """Degree-n value of the alpha = 2 Karlin--McGregor closed forms.

    With ``modified=False`` this is the walk polynomial K_n^{(2,beta)}(x);
    with ``modified=True`` it is the rescaled P_n(x) = K_n(gamma1 x)/K_n(gamma1)
    written directly through Chebyshev-U polynomials.
    """
    if beta < 2.0:
        raise FamilyParameterError(f"closed forms require beta >= 2, got {beta}")
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    x = np.asarray(x, dtype=float)
    sb = math.sqrt(beta - 1.0)
    if n == 0:
        return np.ones_like(x)[()] if x.ndim else 1.0
    m, r = divmod(n + 1, 2)
    if modified:
        w = ((2.0 * sb + beta) * x * x - beta) / (2.0 * sb)
        if r == 0:  # n = 2m - 1
            val = x * (sb * _chebu(m - 1, w) - _chebu(m - 2, w)) / (sb * m - (m - 1))
        else:
            m = n // 2
            val = ((beta - 1.0) * _chebu(m, w) - _chebu(m - 2, w)) / ((beta - 2.0) * m + beta)
    else:
        z = (2.0 * x * x - 1.0) * beta / (2.0 * sb)
        scale = (beta - 1.0) ** (-0.5 * m)
        if r == 0:  # n = 2m - 1
            val = scale * x * (sb * _chebu(m - 1, z) - _chebu(m - 2, z))
        else:
            m = n // 2
            scale = (beta - 1.0) ** (-0.5 * m)
            val = scale * ((beta - 1.0) / beta * _chebu(m, z) - _chebu(m - 2, z) / beta)
    return val[()] if np.ndim(val) else float(val)
