"""Orthogonalization measures: masses, moments, Gram matrices, triple
products, and truncated-matrix spectra."""

import math

import numpy as np
import pytest

from hyplab.core import eval_basis_grid, haar_values
from hyplab.families import UnsupportedFamilyError, make_family
from hyplab.linearization import LinearizationTable
from hyplab.measures import (
    basis_gram,
    inner_product,
    jacobi_spectrum,
    measure_mass,
    measure_of,
    orthogonality_error,
    second_moment,
    spectrum_atoms,
    triple_products,
)

FULL = [
    ("cheb1", {}),
    ("gencheb", {"alpha": 0.5, "beta": 0.5}),
    ("gencheb", {"alpha": -0.25, "beta": -5.0 / 6.0}),
    ("cosh", {"a": 1.0}),
    ("km", {"alpha": 2.0, "beta": 5.0}),
    ("km", {"alpha": 8.0, "beta": 5.0}),
    ("modkm", {"alpha": 2.0, "beta": 5.0}),
    ("modkm", {"alpha": 8.0, "beta": 5.0}),
]


@pytest.mark.parametrize("tag,params", FULL)
def test_probability_mass(tag, params, measure):
    spec = measure(tag, **params)
    assert measure_mass(spec) == pytest.approx(1.0, abs=1e-9)


@pytest.mark.parametrize("tag,params", FULL)
def test_second_moment_is_c1(tag, params, measure, family):
    # x P_0 = a(0) P_1 + 0 and x P_1 = a(1) P_2 + c(1) P_0 force
    # integral(x^2 dmu) = c(1)
    spec = measure(tag, **params)
    seq = family(tag, **params)
    assert second_moment(spec) == pytest.approx(seq.c(1), abs=1e-9)


def test_cheb_density_value(measure):
    spec = measure("cheb1")
    x = np.array([0.1, 0.5])  # piece interiors; endpoints are open
    want = 1.0 / (math.pi * np.sqrt(1.0 - x**2))
    assert np.allclose(spec.density(x), want, rtol=1e-12)


def test_km_8_5_atom(measure):
    spec = measure("km", alpha=8.0, beta=5.0)
    assert len(spec.atoms) == 1
    loc, mass = spec.atoms[0]
    assert loc == 0.0
    assert mass == pytest.approx((8.0 - 5.0) / 8.0, abs=1e-14)


def test_km_balanced_has_no_atom(measure):
    assert measure("km", alpha=5.0, beta=5.0).atoms == []
    assert measure("km", alpha=2.0, beta=5.0).atoms == []


def test_km_support_is_two_bands(measure):
    # unequal parameters leave a spectral gap |x| < gamma2 around 0
    spec = measure("km", alpha=8.0, beta=5.0)
    gamma2 = (math.sqrt(7.0) - 2.0) / math.sqrt(40.0)
    xs = np.linspace(0.0, 1.0, 400)
    dens = spec.density(xs)
    assert np.all(dens[xs < gamma2] == 0.0)
    assert np.any(dens > 0.0)
    # equal parameters close the gap: the band runs through 0
    balanced = measure("km", alpha=5.0, beta=5.0)
    assert balanced.density(np.array([0.01]))[0] > 0.0


@pytest.mark.parametrize("tag,params", FULL)
def test_gram_is_diagonal_with_haar_reciprocals(tag, params, family, measure):
    seq = family(tag, **params)
    G = basis_gram(seq, 8, spec=measure(tag, **params))
    h = haar_values(seq, 8)
    off = G - np.diag(np.diag(G))
    assert np.max(np.abs(off)) < 1e-9
    assert np.allclose(np.diag(G), 1.0 / h, rtol=1e-8)


@pytest.mark.parametrize("tag,params", FULL)
def test_orthogonality_error_small(tag, params, family):
    assert orthogonality_error(family(tag, **params), N=10) < 1e-7


def test_triple_products_match_linearization(family):
    seq = family("modkm", alpha=2.0, beta=5.0)
    M = 6
    T = triple_products(seq, M)
    h = haar_values(seq, 2 * M)
    t = LinearizationTable(seq, N=M)
    for m in range(M + 1):
        for n in range(M + 1):
            row = t.row(m, n)
            for k in range(M + 1):
                g_val = row[k] if k < row.size else 0.0
                assert g_val == pytest.approx(h[k] * T[m, n, k], abs=1e-9)


def test_triple_products_symmetric(family):
    T = triple_products(family("cosh", a=0.5), 5)
    assert T.shape == (6, 6, 11)  # k-axis reaches degree 2M
    assert np.allclose(T, np.transpose(T, (1, 0, 2)), atol=1e-12)
    cube = T[:, :, :6]  # full permutation symmetry on the m,n,k <= M block
    for perm in ((0, 2, 1), (2, 1, 0), (1, 2, 0)):
        assert np.allclose(cube, np.transpose(cube, perm), atol=1e-12)


def test_measure_unavailable_for_custom():
    seq = make_family("custom", cfunc=lambda n: 0.45)
    with pytest.raises(UnsupportedFamilyError):
        measure_of(seq)


def test_grinspun_status_not_full(measure):
    spec = measure("grinspun", c1=0.7)
    assert spec.status != "full"


class TestSpectrum:
    def test_cheb_spectrum_fills_interval(self, family):
        eig = jacobi_spectrum(family("cheb1"), 80)
        assert eig.min() > -1.0 and eig.max() < 1.0
        # the N-by-N truncation's characteristic polynomial is the monic
        # degree-N member, so its eigenvalues are the T_80 zeros
        want = np.sort(np.cos((2.0 * np.arange(1, 81) - 1.0) * np.pi / 160.0))
        assert np.max(np.abs(np.sort(eig) - want)) < 1e-12

    def test_spectrum_symmetric(self, family):
        eig = jacobi_spectrum(family("km", alpha=8.0, beta=5.0), 101)
        assert np.max(np.abs(np.sort(eig) + np.sort(eig)[::-1])) < 1e-12

    def test_km_gap_respected(self, family):
        # spectrum avoids the inner gap (|x| < gamma2) except the atom at 0
        seq = family("km", alpha=8.0, beta=5.0)
        eig = jacobi_spectrum(seq, 151)
        gamma2 = (math.sqrt(7.0) - 2.0) / math.sqrt(40.0)
        interior = np.abs(eig[np.abs(eig) > 1e-10])
        assert interior.min() > gamma2 - 1e-8

    def test_atom_localization(self, family):
        # the km(8,5) atom at 0 shows up as an eigenvalue whose eigenvector
        # has negligible last component
        eig, tails = spectrum_atoms(family("km", alpha=8.0, beta=5.0), 151)
        at_zero = np.argmin(np.abs(eig))
        assert abs(eig[at_zero]) < 1e-12
        assert tails[at_zero] < 1e-6

    def test_convex_spectrum_in_dual_band(self, family):
        seq = family("convex", eps=0.5, q=0.5)
        eig = jacobi_spectrum(seq, 120)
        cut = math.sqrt((1 - 0.5) / (1 + 0.5))
        assert np.min(np.abs(eig)) > cut - 1e-9
        # the measure is discrete with atoms AT +-1, so the truncation pins
        # its extreme eigenvalues there (within float resolution)
        assert np.max(np.abs(eig)) <= 1.0 + 1e-14


def test_inner_product_with_atoms(measure):
    # integral of 1 against km(8,5) includes the 3/8 point mass
    spec = measure("km", alpha=8.0, beta=5.0)
    total = inner_product(spec, lambda x: np.ones_like(x))
    assert total == pytest.approx(1.0, abs=1e-9)
    even = inner_product(spec, lambda x: x**2)
    ac_only = even - 0.375 * 0.0**2
    assert ac_only == pytest.approx(even)  # atom at 0 adds nothing to x^2


def test_gram_matches_direct_quadrature(family, measure):
    # cross-check one entry of the Gram fast path against a scalar integral
    seq = family("gencheb", alpha=0.5, beta=0.5)
    spec = measure("gencheb", alpha=0.5, beta=0.5)
    G = basis_gram(seq, 4, spec=spec)

    def p22(x):
        return eval_basis_grid(seq, 2, x)[2] ** 2

    direct = inner_product(spec, p22)
    assert G[2, 2] == pytest.approx(direct, rel=1e-10)
