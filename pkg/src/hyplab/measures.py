"""Orthogonalization measures: densities, atoms, quadrature, Jacobi spectra.

Every measure here is symmetric about the origin, so the absolutely
continuous part is described by density pieces on the positive half-axis
only; integrals mirror them with the appropriate parity sign.  Piece
density callables take ``(x, lo, hi)`` where ``lo``/``hi`` are the exact
distances from the node to the piece endpoints, so inverse-square-root
and similar edge singularities stay finite under tanh-sinh refinement.

Status values on :class:`MeasureSpec`:

* ``"full"`` - density (and any atom) known in closed form,
* ``"atoms_unknown"`` - purely discrete measure located numerically
  through truncated Jacobi spectra,
* ``"density_unknown"`` - only a support hint is available.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .core import CoeffSequence, alpha_array, eval_basis_grid, haar_values
from .families import KMParams, UnsupportedFamilyError
from .quadrature import (
    MAX_LEVEL,
    START_LEVEL,
    QuadratureConvergenceError,
    TanhSinhRule,
    default_rule,
)

__all__ = [
    "DensityPiece",
    "MeasureSpec",
    "measure_of",
    "measure_mass",
    "second_moment",
    "inner_product",
    "basis_gram",
    "orthogonality_error",
    "triple_products",
    "jacobi_spectrum",
    "spectrum_atoms",
    "export_density_csv",
]


@dataclass(frozen=True)
class DensityPiece:
    """One smooth density piece on ``0 <= a < b`` (mirrored implicitly)."""

    a: float
    b: float
    fn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


@dataclass
class MeasureSpec:
    family_tag: str
    params: dict
    status: str
    pieces: list[DensityPiece] = field(default_factory=list)
    atoms: list[tuple[float, float]] = field(default_factory=list)
    support_hint: Optional[list[tuple[float, float]]] = None

    @property
    def atom_mass(self) -> float:
        return sum(m for _, m in self.atoms)

    def density(self, x) -> np.ndarray:
        """Pointwise a.c. density (0 outside the pieces; symmetric in x)."""
        x = np.asarray(x, dtype=float)
        t = np.abs(x)
        out = np.zeros_like(t)
        for p in self.pieces:
            mask = (t > p.a) & (t < p.b)
            if np.any(mask):
                tm = t[mask]
                out[mask] = p.fn(tm, tm - p.a, p.b - tm)
        return out


# ---------------------------------------------------------------------------
# family dispatch
# ---------------------------------------------------------------------------


def _cheb1_pieces() -> list[DensityPiece]:
    def fn(x, lo, hi):
        return 1.0 / (np.pi * np.sqrt(hi * (1.0 + x)))

    return [DensityPiece(0.0, 1.0, fn)]


def _gencheb_pieces(a: float, b: float) -> list[DensityPiece]:
    logc = math.lgamma(a + b + 2.0) - math.lgamma(a + 1.0) - math.lgamma(b + 1.0)
    cnorm = math.exp(logc)

    def fn(x, lo, hi):
        # (1 - x^2)^a |x|^(2b+1) on (0, 1): 1 - x^2 = hi * (1 + x), |x| = lo
        return cnorm * (hi * (1.0 + x)) ** a * lo ** (2.0 * b + 1.0)

    return [DensityPiece(0.0, 1.0, fn)]


def _cosh_pieces(a: float) -> list[DensityPiece]:
    gam = 1.0 / math.cosh(a)

    def fn(x, lo, hi):
        return 1.0 / (np.pi * np.sqrt(hi * (gam + x)))

    return [DensityPiece(0.0, gam, fn)]


def _km_spec(seq: CoeffSequence, p: KMParams) -> MeasureSpec:
    al, be = p.alpha, p.beta
    g1, g2 = p.gamma1, p.gamma2
    atoms: list[tuple[float, float]] = []
    if al == be:
        def fn(x, lo, hi):
            one_minus = (1.0 - g1) + hi          # = 1 - x, exact at x -> g1
            return al * np.sqrt(hi * (g1 + x)) / (
                2.0 * np.pi * one_minus * (1.0 + x)
            )

        pieces = [DensityPiece(0.0, g1, fn)]
        support = [(-g1, g1)]
    else:
        def fn(x, lo, hi):
            one_minus = (1.0 - g1) + hi
            rad = lo * (x + g2) * hi * (g1 + x)   # (x^2-g2^2)(g1^2-x^2)
            return be * np.sqrt(rad) / (
                2.0 * np.pi * x * one_minus * (1.0 + x)
            )

        pieces = [DensityPiece(g2, g1, fn)]
        support = [(-g1, -g2), (g2, g1)]
        if al > be:
            atoms.append((0.0, (al - be) / al))
            support = [(-g1, -g2), (0.0, 0.0), (g2, g1)]
    return MeasureSpec(seq.family_tag, dict(seq.params), "full", pieces, atoms, support)


def _modkm_spec(seq: CoeffSequence, p: KMParams) -> MeasureSpec:
    al, be = p.alpha, p.beta
    g1, g2 = p.gamma1, p.gamma2
    cut = p.support_cut
    atoms: list[tuple[float, float]] = []
    if al == be:
        def fn(x, lo, hi):
            dm = (1.0 - g1) + g1 * hi            # = 1 - g1*x, exact at x -> 1
            return al * g1 * g1 * np.sqrt(hi * (1.0 + x)) / (
                2.0 * np.pi * dm * (1.0 + g1 * x)
            )

        pieces = [DensityPiece(0.0, 1.0, fn)]
        support = [(-1.0, 1.0)]
    else:
        def fn(x, lo, hi):
            dm = (1.0 - g1) + g1 * hi
            rad = hi * (1.0 + x) * g1 * lo * (g1 * x + g2)
            return be * g1 * np.sqrt(rad) / (
                2.0 * np.pi * x * dm * (1.0 + g1 * x)
            )

        pieces = [DensityPiece(cut, 1.0, fn)]
        support = [(-1.0, -cut), (cut, 1.0)]
        if al > be:
            atoms.append((0.0, (al - be) / al))
            support = [(-1.0, -cut), (0.0, 0.0), (cut, 1.0)]
    return MeasureSpec(seq.family_tag, dict(seq.params), "full", pieces, atoms, support)


def measure_of(seq: CoeffSequence) -> MeasureSpec:
    """Orthogonalization measure of a named family.

    Raises :class:`UnsupportedFamilyError` for custom sequences, whose
    measure is not determined by the coefficient callable alone.
    """
    tag = seq.family_tag
    if tag == "cheb1":
        return MeasureSpec(tag, {}, "full", _cheb1_pieces(), [], [(-1.0, 1.0)])
    if tag == "gencheb":
        a, b = seq.params["alpha"], seq.params["beta"]
        return MeasureSpec(tag, dict(seq.params), "full",
                           _gencheb_pieces(a, b), [], [(-1.0, 1.0)])
    if tag == "cosh":
        a = seq.params["a"]
        gam = 1.0 / math.cosh(a)
        return MeasureSpec(tag, dict(seq.params), "full",
                           _cosh_pieces(a), [], [(-gam, gam)])
    if tag in ("km", "modkm"):
        p = KMParams(seq.params["alpha"], seq.params["beta"])
        return _km_spec(seq, p) if tag == "km" else _modkm_spec(seq, p)
    if tag == "rational25":
        p = KMParams(2.0, 5.0)
        spec = _modkm_spec(seq, p)
        spec.family_tag = "rational25"
        spec.params = {}
        return spec
    if tag == "grinspun":
        return MeasureSpec(tag, dict(seq.params), "density_unknown",
                           [], [], [(-1.0, 1.0)])
    if tag == "convex":
        return MeasureSpec(tag, dict(seq.params), "atoms_unknown", [], [], None)
    raise UnsupportedFamilyError(
        f"no closed-form measure registered for family {tag!r}"
    )


# ---------------------------------------------------------------------------
# integration drivers
# ---------------------------------------------------------------------------


def _refine_piece(piece, accumulate, tol, max_level, rule):
    """Run accumulate(x, lo, hi, wts) per level until stable; return S."""
    mid = 0.5 * (piece.a + piece.b)
    half = 0.5 * (piece.b - piece.a)
    prev = None
    for level in range(START_LEVEL, max_level + 1):
        u, omu, opu, w = rule.level_nodes(level)
        x = mid + half * u
        lo = half * opu
        hi = half * omu
        contrib = accumulate(x, lo, hi, half * w) * 2.0**-level
        cur = contrib if prev is None else prev * 0.5 + contrib
        if prev is not None:
            delta = np.max(np.abs(cur - prev))
            scale = max(1.0, float(np.max(np.abs(cur))))
            if delta <= tol * scale:
                return cur
        prev = cur
    raise QuadratureConvergenceError(
        f"tanh-sinh did not stabilize to {tol:g} on "
        f"({piece.a:g}, {piece.b:g}) by level {max_level}"
    )


def integrate_positive(
    spec: MeasureSpec,
    row_fn: Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray],
    tol: float = 1e-11,
    max_level: int = MAX_LEVEL,
    rule: Optional[TanhSinhRule] = None,
):
    """Integrate ``row_fn(x, lo, hi) * density`` over the positive-axis a.c.
    part.  ``row_fn`` may return a scalar-per-node vector or a stack of
    rows ``(k, len(x))``; atoms and mirroring are the caller's business.
    """
    rule = rule or default_rule()
    total = None
    for piece in spec.pieces:
        def acc(x, lo, hi, wts, _p=piece):
            rho = _p.fn(x, lo, hi)
            vals = np.atleast_2d(row_fn(x, lo, hi))
            return vals @ (rho * wts)

        part = _refine_piece(piece, acc, tol, max_level, rule)
        total = part if total is None else total + part
    if total is None:
        total = np.zeros(1)
    if not np.all(np.isfinite(total)):
        raise QuadratureConvergenceError("non-finite quadrature result")
    return total if total.size > 1 else float(total[0])


def measure_mass(spec: MeasureSpec, tol: float = 1e-11) -> float:
    """Total mass (a.c. part doubled by symmetry, plus atoms)."""
    if spec.status != "full":
        raise UnsupportedFamilyError(
            f"mass needs a closed-form density (status {spec.status!r})"
        )
    ac = integrate_positive(spec, lambda x, lo, hi: np.ones_like(x), tol=tol)
    return 2.0 * ac + spec.atom_mass


def second_moment(spec: MeasureSpec, tol: float = 1e-11) -> float:
    ac = integrate_positive(spec, lambda x, lo, hi: x * x, tol=tol)
    return 2.0 * ac + sum(m * t * t for t, m in spec.atoms)


def inner_product(
    spec: MeasureSpec,
    f: Callable[[np.ndarray], np.ndarray],
    g: Optional[Callable[[np.ndarray], np.ndarray]] = None,
    tol: float = 1e-11,
) -> float:
    """Integral of f*g (or f alone) against the full measure."""

    def combined(x):
        v = np.asarray(f(x), dtype=float)
        if g is not None:
            v = v * np.asarray(g(x), dtype=float)
        return v

    ac = integrate_positive(
        spec, lambda x, lo, hi: combined(x) + combined(-x), tol=tol
    )
    at = sum(m * float(combined(np.array([t]))[0]) for t, m in spec.atoms)
    return ac + at


def basis_gram(
    seq: CoeffSequence,
    N: int,
    spec: Optional[MeasureSpec] = None,
    tol: float = 1e-11,
) -> np.ndarray:
    """Gram matrix G[m, n] = integral of P_m P_n dmu for m, n <= N."""
    spec = spec or measure_of(seq)
    if spec.status != "full":
        raise UnsupportedFamilyError(
            f"Gram matrix needs a closed-form density (family {spec.family_tag!r})"
        )

    def rows(x, lo, hi):
        B = eval_basis_grid(seq, N, x)
        return np.einsum("in,jn->ijn", B, B).reshape((N + 1) ** 2, x.size)

    pos = np.asarray(integrate_positive(spec, rows, tol=tol))
    pos = pos.reshape(N + 1, N + 1)
    par = (-1.0) ** (np.add.outer(np.arange(N + 1), np.arange(N + 1)))
    G = pos * (1.0 + par)
    for t, m in spec.atoms:
        col = eval_basis_grid(seq, N, np.array([t]))[:, 0]
        G += m * np.outer(col, col)
    return G


def orthogonality_error(
    seq: CoeffSequence,
    N: int = 12,
    spec: Optional[MeasureSpec] = None,
    tol: float = 1e-11,
) -> float:
    """max |G[m,n] - delta_mn / h(n)| over m, n <= N."""
    G = basis_gram(seq, N, spec=spec, tol=tol)
    target = np.diag(1.0 / haar_values(seq, N))
    return float(np.max(np.abs(G - target)))


def triple_products(
    seq: CoeffSequence,
    M: int,
    spec: Optional[MeasureSpec] = None,
    tol: float = 1e-10,
) -> np.ndarray:
    """T[m, n, k] = integral of P_m P_n P_k dmu for m, n <= M, k <= 2M.

    Together with the Haar weights this is the quadrature-side oracle for
    product-linearization coefficients: g(m, n; k) = h(k) * T[m, n, k].
    """
    spec = spec or measure_of(seq)
    if spec.status != "full":
        raise UnsupportedFamilyError(
            f"triple products need a closed-form density (family {spec.family_tag!r})"
        )
    K = 2 * M

    def rows(x, lo, hi):
        B = eval_basis_grid(seq, K, x)
        Bm = B[: M + 1]
        prod = np.einsum("in,jn,kn->ijkn", Bm, Bm, B)
        return prod.reshape((M + 1) * (M + 1) * (K + 1), x.size)

    pos = np.asarray(integrate_positive(spec, rows, tol=tol))
    T = pos.reshape(M + 1, M + 1, K + 1)
    idx = np.add.outer(np.add.outer(np.arange(M + 1), np.arange(M + 1)),
                       np.arange(K + 1))
    T = T * (1.0 + (-1.0) ** idx)
    for t, m in spec.atoms:
        col = eval_basis_grid(seq, K, np.array([t]))[:, 0]
        T += m * np.einsum("i,j,k->ijk", col[: M + 1], col[: M + 1], col)
    return T


def jacobi_spectrum(seq: CoeffSequence, N: int) -> np.ndarray:
    """Eigenvalues of the order-N truncated Jacobi matrix (orthonormal
    basis: zero diagonal, off-diagonal alpha_1..alpha_{N-1})."""
    if N < 1:
        raise ValueError("need N >= 1")
    if N == 1:
        return np.zeros(1)
    off = alpha_array(seq, N - 1)[1:]
    vals = eigh_tridiagonal(np.zeros(N), off, eigvals_only=True)
    return np.sort(vals)


def spectrum_atoms(seq: CoeffSequence, N: int):
    """Truncated-spectrum points with how localized their eigenvectors are.

    Returns ``(eigenvalues, tail)`` sorted by eigenvalue, where tail is
    the modulus of the last eigenvector component (unit vectors).  A
    tail near zero means the truncation boundary is invisible to that
    eigenvector, so the point persists as a genuine atom of the
    infinite operator; boundary-dominated artifacts show tails of
    order 1/sqrt(N).
    """
    if N < 2:
        raise ValueError("need N >= 2")
    off = alpha_array(seq, N - 1)[1:]
    vals, vecs = eigh_tridiagonal(np.zeros(N), off)
    order = np.argsort(vals)
    return vals[order], np.abs(vecs[-1, order])


def export_density_csv(
    spec: MeasureSpec,
    path,
    points_per_piece: int = 400,
) -> None:
    """Write (x, density) samples over the full symmetric support.

    Atoms are not sampled here; callers list them separately.
    """
    xs: list[float] = []
    for piece in spec.pieces:
        inner = np.linspace(piece.a, piece.b, points_per_piece + 2)[1:-1]
        xs.extend(inner.tolist())
        xs.extend((-inner).tolist())
    xs = sorted(set(xs))
    dens = spec.density(np.asarray(xs))
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x", "density"])
        for x, d in zip(xs, dens):
            w.writerow([f"{x:.12g}", f"{d:.12g}"])
