import math

import numpy as np
import pytest
import scipy.linalg
from scipy.integrate import quad
from hypothesis import given, settings
from hypothesis import strategies as st

from fhtoeplitz.exceptions import DomainError
from fhtoeplitz.integral_ops import (
    HomogeneousKernel,
    PiecewiseConstantKernel,
    discretize,
    fh_kernel,
    galerkin_window,
    k_alpha_apply_one,
    k_alpha_bounds,
    kernel_norm,
    midpoint_matrix,
    widom_norm,
)
from fhtoeplitz.toeplitz import from_function, spectral_norm

from conftest import rel


def k_alpha(alpha):
    return HomogeneousKernel(1, 1, 2 * alpha - 1)


# -- kernels -------------------------------------------------------------------------


def test_fh_kernel_examples():
    k = fh_kernel(0.25, 0)
    assert k.gamma == -0.5
    assert k.cplus == pytest.approx(1 / math.sqrt(2 * math.pi), rel=1e-14)
    assert k.cminus == pytest.approx(k.cplus, rel=1e-15)
    assert fh_kernel(0.3, 0.3).cplus == 0


@settings(max_examples=30, deadline=None)
@given(st.floats(0.001, 0.499), st.floats(-0.49, 0.5), st.floats(-2, 2))
def test_fh_kernel_exponent(alpha, beta, im):
    g = fh_kernel(complex(alpha, im), beta).gamma
    assert -1 < g.real < 0
    assert g.real == pytest.approx(2 * alpha - 1)


def test_kernel_values():
    k = HomogeneousKernel(2, 3j, -0.5)
    assert k(0.75, 0.5) == pytest.approx(2 * 0.25**-0.5)
    assert k(0.5, 0.75) == pytest.approx(3j * 0.25**-0.5)
    assert np.isnan(k(0.3, 0.3))


def test_kernel_needs_integrable_exponent():
    with pytest.raises(DomainError):
        HomogeneousKernel(1, 1, -1.0)


# -- discretization ------------------------------------------------------------------------


def test_galerkin_entries_are_cell_integrals():
    # compare with 2-D Gauss-Legendre on cells away from the diagonal and the
    # closed form on the diagonal cell
    k = HomogeneousKernel(1.5, -0.5 + 0.2j, -0.3 + 0.4j)
    m = 8
    h = 1 / m
    w = galerkin_window(k, m)
    xg, wg = np.polynomial.legendre.leggauss(30)
    for d in (2, 3, 7, -2, -5):
        x = (xg + 1) / 2 * h + (d if d > 0 else 0) * h
        y = (xg + 1) / 2 * h + (-d if d < 0 else 0) * h
        val = (wg[:, None] * wg[None, :] * k(x[:, None], y[None, :])).sum() * (h / 2) ** 2 / h
        assert rel(w[d], val) < 1e-10
    g = k.gamma
    diag = (k.cplus + k.cminus) * h ** (g + 1) / ((g + 1) * (g + 2))
    assert rel(w[0], diag) < 1e-14


def test_second_difference_branches_agree():
    # d = 15 uses direct differences, d = 16 the series; both against mpmath-free exact rational case
    k = HomogeneousKernel(1, 1, 1.0)  # (x-y)^1: cell integral of |x - y| is exactly d h^2 for d >= 1
    w = galerkin_window(k, 64)
    h = 1 / 64
    for d in (1, 2, 15, 16, 40, 63):
        assert w[d] == pytest.approx(d * h**2, rel=1e-12)


def test_unknown_scheme():
    with pytest.raises(ValueError):
        galerkin_window(k_alpha(0.3), 8, scheme="simpson")


def test_exact_scheme_beats_midpoint():
    k = k_alpha(0.1)
    ref = kernel_norm(k, 11).extrapolated
    err_exact = abs(kernel_norm(k, 9).estimate - ref)
    err_mid = abs(spectral_norm(discretize(k, 2**9, "midpoint")) - ref)
    assert err_exact < err_mid / 10


# -- norms ---------------------------------------------------------------------------------


def test_constant_kernel_norm():
    assert kernel_norm(HomogeneousKernel(1, 1, 0), 8).estimate == pytest.approx(1.0, abs=1e-8)


def test_volterra_norm():
    kn = kernel_norm(HomogeneousKernel(1, 0, 0), 11)
    assert kn.extrapolated == pytest.approx(2 / math.pi, rel=1e-10)
    assert kn.order == pytest.approx(2.0, abs=1e-3)
    assert kn.error_indicator < 1e-6


def test_kernel_norms_match_dense_oracle(goldens):
    for name in ("volterra", "fh_0.25_0", "fh_0.3_0.2", "fh_0.4_0.5", "k_alpha_0.1", "k_alpha_0.3"):
        g = goldens["knorm"][name]
        kernel = {
            "volterra": HomogeneousKernel(1, 0, 0),
            "fh_0.25_0": fh_kernel(0.25, 0),
            "fh_0.3_0.2": fh_kernel(0.3, 0.2),
            "fh_0.4_0.5": fh_kernel(0.4, 0.5),
            "k_alpha_0.1": k_alpha(0.1),
            "k_alpha_0.3": k_alpha(0.3),
        }[name]
        kn = kernel_norm(kernel, 11)
        assert rel(kn.estimate, g["dense"][-1]) < 1e-10, name
        assert rel(kn.extrapolated, g["extrapolated"]) < 1e-9, name


def test_fh_kernel_norm_within_unit_constant_bounds():
    # the bounds are stated for unit constants; C+ = C- scales them
    k = fh_kernel(0.25, 0)
    kn = kernel_norm(k, 11).extrapolated / k.cplus.real
    lo, hi = k_alpha_bounds(0.25)
    assert lo <= kn <= hi


def test_homogeneity():
    k = HomogeneousKernel(0.7, 0.3 - 0.1j, -0.4)
    a = kernel_norm(k, 8)
    b = kernel_norm(k.scaled(2), 8)
    assert b.estimate == pytest.approx(2 * a.estimate, rel=1e-12)
    c = kernel_norm(k.scaled(1j), 8)
    assert c.estimate == pytest.approx(a.estimate, rel=1e-12)


def test_level_must_be_at_least_three():
    with pytest.raises(ValueError):
        kernel_norm(k_alpha(0.3), 2)


@pytest.mark.parametrize("alpha", [0.49, 0.499])
def test_limit_near_one_half(alpha):
    kn = kernel_norm(k_alpha(alpha), 11)
    assert abs(kn.extrapolated - 1) <= 1 / alpha - 2 + kn.error_indicator


def test_power_window_approaches_kernel(goldens):
    # n^{-1/2} ||T_n|| for a_{+-k} = k^{-1/2} tends to the norm of |x - y|^{-1/2}
    target = kernel_norm(k_alpha(0.25), 11).extrapolated

    def coeffs(k):
        k = np.abs(k)
        return np.where(k == 0, 1.0, np.maximum(k, 1) ** -0.5)

    gaps = [abs(spectral_norm(from_function(n, coeffs)) / n**0.5 - target) for n in (2**j for j in range(8, 15))]
    assert all(b < a for a, b in zip(gaps, gaps[1:]))
    assert np.allclose(gaps, goldens["lemma_discrepancy"], rtol=1e-6)


# -- Widom lift ------------------------------------------------------------------------------


def test_widom_examples():
    assert widom_norm(np.array([[-3.0 + 4j]])) == pytest.approx(5.0)
    for n in (1, 4, 9):
        assert widom_norm(PiecewiseConstantKernel(np.eye(n))) == pytest.approx(1 / n)


def test_widom_random_matrices():
    rng = np.random.default_rng(50)
    for _ in range(50):
        n = int(rng.integers(2, 65))
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        assert rel(n * widom_norm(A), np.linalg.norm(A, 2)) <= 1e-10


@pytest.mark.parametrize("m", [8, 16, 40, 64])
def test_widom_midpoint_exactness(m):
    rng = np.random.default_rng(m)
    A = rng.standard_normal((8, 8)) + 1j * rng.standard_normal((8, 8))
    pc = PiecewiseConstantKernel(A)
    M = midpoint_matrix(pc, m)
    assert rel(scipy.linalg.svdvals(M)[0], widom_norm(pc)) < 1e-10


def test_piecewise_kernel_lookup():
    A = np.arange(9.0).reshape(3, 3)
    pc = PiecewiseConstantKernel(A)
    assert pc(0.0, 0.0) == 0
    assert pc(0.5, 0.9) == 5
    assert pc(1.0, 1.0) == 8
    with pytest.raises(ValueError):
        PiecewiseConstantKernel(np.ones((2, 3)))


# -- closed-form bounds -------------------------------------------------------------------------


def test_bounds_at_one_quarter():
    lo, hi = k_alpha_bounds(0.25)
    assert lo == pytest.approx(2 * math.sqrt(1 + math.pi / 4), rel=1e-14)
    assert lo == pytest.approx(2.672376, abs=1e-6)
    assert hi == 4.0


def test_bounds_small_alpha():
    for alpha in (1e-3, 1e-5):
        lo, hi = k_alpha_bounds(alpha)
        assert alpha * hi == pytest.approx(1.0)
        assert alpha * lo == pytest.approx(1.0, abs=5 * alpha)


@settings(max_examples=60, deadline=None)
@given(st.floats(1e-6, 0.499999))
def test_bounds_ordered(alpha):
    lo, hi = k_alpha_bounds(alpha)
    assert 0 < lo <= hi


@pytest.mark.parametrize("alpha", [0, 0.5, -0.1, 0.7])
def test_bounds_domain(alpha):
    with pytest.raises(DomainError):
        k_alpha_bounds(alpha)


def test_apply_one_examples():
    assert k_alpha_apply_one(0.25, 0.5) == pytest.approx(2 * math.sqrt(2), rel=1e-15)
    assert k_alpha_apply_one(0.3, 0.0) == pytest.approx(1 / 0.6)
    with pytest.raises(DomainError):
        k_alpha_apply_one(0.3, 1.5)
    with pytest.raises(DomainError):
        k_alpha_apply_one(0.5, 0.5)


@settings(max_examples=60, deadline=None)
@given(st.floats(0.01, 0.49), st.integers(0, 2**30))
def test_apply_one_symmetric(alpha, k):
    x = k / 2**30  # 1 - x is exact
    assert k_alpha_apply_one(alpha, x) == pytest.approx(k_alpha_apply_one(alpha, 1 - x), rel=1e-13)


def test_apply_one_by_quadrature():
    for alpha, x in [(0.1, 0.3), (0.25, 0.5), (0.4, 0.9)]:
        g = 2 * alpha - 1
        left = quad(lambda y: 1.0, 0, x, weight="alg", wvar=(0, g))[0]
        right = quad(lambda y: 1.0, x, 1, weight="alg", wvar=(g, 0))[0]
        assert k_alpha_apply_one(alpha, x) == pytest.approx(left + right, rel=1e-12)


def _cell_averages(alpha, m):
    edges = np.arange(m + 1) / m
    F = lambda t: (t ** (2 * alpha + 1) - (1 - t) ** (2 * alpha + 1)) / (2 * alpha * (2 * alpha + 1))
    return (F(edges[1:]) - F(edges[:-1])) * m


@pytest.mark.parametrize("alpha", [0.1, 0.2, 0.3, 0.45])
def test_discrete_operator_on_constant_function(alpha):
    m = 2**12
    out = discretize(k_alpha(alpha), m).matvec(np.ones(m)).real
    assert np.max(np.abs(out - _cell_averages(alpha, m))) < 1e-3
    # pointwise at the cell midpoints the error shrinks with the level
    errs = []
    for level in (8, 10, 12):
        mm = 2**level
        x = (np.arange(mm) + 0.5) / mm
        y = discretize(k_alpha(alpha), mm).matvec(np.ones(mm)).real
        errs.append(np.max(np.abs(y - k_alpha_apply_one(alpha, x))))
    assert errs[0] > errs[1] > errs[2]
