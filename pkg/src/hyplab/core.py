"""Three-term recurrences, Haar weights and basis evaluation.

This module is the substrate for the rest of the package.  A symmetric
orthogonal polynomial sequence on [-1, 1] is described by its recurrence
coefficients c(n) in (0, 1) via

    P_0 = 1,    P_1 = x,    x P_n = a(n) P_{n+1} + c(n) P_{n-1},

with a(n) = 1 - c(n), a(0) = 1, and the normalization P_n(1) = 1.  The
induced Haar weights are h(0) = 1 and h(n) = h(n-1) * a(n-1) / c(n); they
coincide with 1 / integral(P_n^2 dmu) for the orthogonalization measure mu.

Three normalizations of the same basis are supported:

* ``"P"``           -- P_n(1) = 1 (the hypergroup normalization),
* ``"orthonormal"`` -- p_n = sqrt(h(n)) P_n, recurrence coefficients
  alpha(n) = sqrt(c(n) * a(n-1)),
* ``"monic"``       -- sigma_n with leading coefficient 1, recurrence
  x sigma_n = sigma_{n+1} + alpha(n)^2 sigma_{n-1}.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

__all__ = [
    "CoeffSequence",
    "CoefficientDomainError",
    "EvalRow",
    "HaarRangeError",
    "HaarWeights",
    "alpha",
    "eval_basis",
    "eval_basis_grid",
    "haar",
    "haar_values",
    "monic_coeffs",
]

#: Haar weights beyond this magnitude raise :class:`HaarRangeError`.
HAAR_MAX = 1e300

_NORMS = ("P", "orthonormal", "monic")


class CoefficientDomainError(ValueError):
    """A recurrence coefficient left the open interval (0, 1)."""


class HaarRangeError(OverflowError):
    """A Haar weight exceeded the floating-point safety range."""


@dataclass(eq=False)
class CoeffSequence:
    """A symmetric orthogonal polynomial sequence, given by n -> c(n).

    Parameters
    ----------
    family_tag : str
        Registry tag (``"gencheb"``, ``"cosh"``, ...) or ``"custom"``.
    params : dict
        Parameter values the coefficient function was built from.
    cfunc : callable
        Maps an integer n >= 1 to c(n); values are validated lazily on
        first access and cached.
    description : str
        Human-readable one-liner.
    """

    family_tag: str
    params: dict
    cfunc: Callable[[int], float]
    description: str = ""
    _c_cache: list = field(default_factory=list, repr=False)
    _haar: "HaarWeights | None" = field(default=None, repr=False)
    _lock: threading.Lock = field(default_factory=threading.Lock, repr=False)
    # Families built from an orthonormal recurrence can supply alpha(n)
    # directly; sqrt(c(n) a(n-1)) loses all precision once c(n) is within
    # machine epsilon of 1, while the alpha themselves stay representable.
    alpha_override: "Callable[[int], float] | None" = field(
        default=None, repr=False
    )

    def c(self, n: int) -> float:
        """Validated recurrence coefficient c(n), n >= 1."""
        if n < 1:
            raise IndexError(f"c(n) is defined for n >= 1, got n={n}")
        if n > len(self._c_cache):
            with self._lock:
                while len(self._c_cache) < n:
                    k = len(self._c_cache) + 1
                    value = float(self.cfunc(k))
                    if not 0.0 < value < 1.0:
                        raise CoefficientDomainError(
                            f"c({k}) = {value!r} lies outside (0, 1) "
                            f"for family {self.family_tag!r}"
                        )
                    self._c_cache.append(value)
        return self._c_cache[n - 1]

    def a(self, n: int) -> float:
        """Complementary coefficient a(n) = 1 - c(n); a(0) = 1."""
        if n == 0:
            return 1.0
        return 1.0 - self.c(n)

    def c_array(self, nmax: int) -> np.ndarray:
        """c(1..nmax) as a float array; index 0 is NaN (c(0) undefined)."""
        self.c(max(nmax, 1))
        out = np.empty(nmax + 1)
        out[0] = np.nan
        out[1:] = self._c_cache[:nmax]
        return out

    def a_array(self, nmax: int) -> np.ndarray:
        """a(0..nmax) with a(0) = 1."""
        out = 1.0 - self.c_array(nmax)
        out[0] = 1.0
        return out


class HaarWeights:
    """Lazily extended table of Haar weights of a coefficient sequence.

    ``values[0] = 1`` and ``values[n] = values[n-1] * a(n-1) / c(n)``.
    Extension past :data:`HAAR_MAX` raises :class:`HaarRangeError` rather
    than silently losing precision.
    """

    def __init__(self, seq: CoeffSequence):
        self.seq = seq
        self._values = [1.0]
        self._lock = threading.Lock()

    def __len__(self) -> int:
        return len(self._values)

    def value(self, n: int) -> float:
        if n < 0:
            raise IndexError(f"h(n) is defined for n >= 0, got n={n}")
        if n >= len(self._values):
            with self._lock:
                while len(self._values) <= n:
                    k = len(self._values)
                    h = self._values[-1] * self.seq.a(k - 1) / self.seq.c(k)
                    if not np.isfinite(h) or h > HAAR_MAX:
                        raise HaarRangeError(
                            f"Haar weight h({k}) exceeds {HAAR_MAX:.1e} for "
                            f"family {self.seq.family_tag!r}"
                        )
                    self._values.append(h)
        return self._values[n]

    def values(self, nmax: int) -> np.ndarray:
        """h(0..nmax) as a float array."""
        self.value(nmax)
        return np.asarray(self._values[: nmax + 1])


def haar(seq: CoeffSequence, n: int) -> float:
    """Haar weight h(n) of the polynomial hypergroup induced by ``seq``."""
    if seq._haar is None:
        seq._haar = HaarWeights(seq)
    return seq._haar.value(n)


def haar_values(seq: CoeffSequence, nmax: int) -> np.ndarray:
    """h(0..nmax) as an array, sharing the cache used by :func:`haar`."""
    if seq._haar is None:
        seq._haar = HaarWeights(seq)
    return seq._haar.values(nmax)


def alpha(seq: CoeffSequence, n: int) -> float:
    """Orthonormal recurrence coefficient alpha(n) = sqrt(c(n) a(n-1)), n >= 1."""
    if n < 1:
        raise IndexError(f"alpha(n) is defined for n >= 1, got n={n}")
    if seq.alpha_override is not None:
        return float(seq.alpha_override(n))
    return float(np.sqrt(seq.c(n) * seq.a(n - 1)))


def alpha_array(seq: CoeffSequence, nmax: int) -> np.ndarray:
    """alpha(1..nmax); index 0 is NaN."""
    out = np.empty(nmax + 1)
    out[0] = np.nan
    if seq.alpha_override is not None:
        out[1:] = [seq.alpha_override(n) for n in range(1, nmax + 1)]
        return out
    c = seq.c_array(nmax)
    a = seq.a_array(nmax)
    out[1:] = np.sqrt(c[1:] * a[:-1])
    return out


@dataclass(frozen=True)
class EvalRow:
    """Values of one basis family at a point: ``values[n]`` is degree n."""

    x: float
    norm: str
    values: np.ndarray


def eval_basis(seq: CoeffSequence, N: int, x: float, norm: str = "P") -> EvalRow:
    """Evaluate degrees 0..N of the basis at a scalar point x.

    ``norm`` selects the normalization: ``"P"`` (value 1 at x=1),
    ``"orthonormal"`` or ``"monic"``.
    """
    if norm not in _NORMS:
        raise ValueError(f"norm must be one of {_NORMS}, got {norm!r}")
    if N < 0:
        raise ValueError(f"N must be >= 0, got {N}")
    x = float(x)
    vals = np.empty(N + 1)
    vals[0] = 1.0
    if N == 0:
        return EvalRow(x, norm, vals)
    if norm == "P":
        vals[1] = x
        for n in range(1, N):
            vals[n + 1] = (x * vals[n] - seq.c(n) * vals[n - 1]) / seq.a(n)
    elif norm == "orthonormal":
        al = alpha_array(seq, max(N, 1))
        vals[1] = x / al[1]
        for n in range(1, N):
            vals[n + 1] = (x * vals[n] - al[n] * vals[n - 1]) / al[n + 1]
    else:  # monic
        vals[1] = x
        for n in range(1, N):
            lam = seq.c(n) * seq.a(n - 1)
            vals[n + 1] = x * vals[n] - lam * vals[n - 1]
    return EvalRow(x, norm, vals)


def eval_basis_grid(
    seq: CoeffSequence, N: int, x: np.ndarray, norm: str = "P"
) -> np.ndarray:
    """Vectorized variant of :func:`eval_basis`.

    Returns an array of shape ``(N+1, len(x))`` whose row n holds the
    degree-n values on the grid.
    """
    if norm not in _NORMS:
        raise ValueError(f"norm must be one of {_NORMS}, got {norm!r}")
    x = np.asarray(x, dtype=float)
    out = np.empty((N + 1, x.size), dtype=float)
    out[0] = 1.0
    if N == 0:
        return out
    if norm == "P":
        c = seq.c_array(max(N, 1))
        a = seq.a_array(max(N, 1))
        out[1] = x
        for n in range(1, N):
            out[n + 1] = (x * out[n] - c[n] * out[n - 1]) / a[n]
    elif norm == "orthonormal":
        al = alpha_array(seq, max(N, 1))
        out[1] = x / al[1]
        for n in range(1, N):
            out[n + 1] = (x * out[n] - al[n] * out[n - 1]) / al[n + 1]
    else:
        c = seq.c_array(max(N, 1))
        a = seq.a_array(max(N, 1))
        out[1] = x
        for n in range(1, N):
            out[n + 1] = x * out[n] - (c[n] * a[n - 1]) * out[n - 1]
    return out


def monic_coeffs(seq: CoeffSequence, n: int) -> np.ndarray:
    """Monomial coefficients (ascending) of the monic polynomial sigma_n.

    The result has length n+1, leading coefficient exactly 1, and exact
    zeros in the parity gaps (sigma_n has the parity of n).
    """
    if n < 0:
        raise ValueError(f"degree must be >= 0, got {n}")
    prev = np.array([1.0])
    if n == 0:
        return prev
    cur = np.array([0.0, 1.0])
    for k in range(1, n):
        lam = seq.c(k) * seq.a(k - 1)
        nxt = np.zeros(k + 2)
        nxt[1:] = cur  # multiply by x
        nxt[: k] -= lam * prev
        prev, cur = cur, nxt
    return cur
