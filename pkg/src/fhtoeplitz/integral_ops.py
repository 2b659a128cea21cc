"""Integral operators on L^2(0, 1) that govern the growth of ``||T_n||``.

The limit operators have homogeneous kernels

    k(x, y) = C+ (x - y)^gamma   for x > y,
              C- (y - x)^gamma   for x < y,

with ``Re(gamma) > -1``.  Their norms are computed from a Galerkin matrix on
``m`` equal cells, which is Toeplitz because the kernel depends on ``x - y``
only, so the norm iteration reuses the FFT machinery of :mod:`.toeplitz`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np
import scipy.linalg
import scipy.special

from .exceptions import DomainError
from .symbols import asymptotic_constants
from .toeplitz import CoeffWindow, ToeplitzOperator, spectral_norm

__all__ = [
    "HomogeneousKernel",
    "PiecewiseConstantKernel",
    "KernelNorm",
    "fh_kernel",
    "galerkin_window",
    "discretize",
    "midpoint_matrix",
    "kernel_norm",
    "widom_norm",
    "k_alpha_bounds",
    "k_alpha_apply_one",
]


@dataclass(frozen=True)
class HomogeneousKernel:
    cplus: complex
    cminus: complex
    gamma: complex

    def __post_init__(self):
        for name in ("cplus", "cminus", "gamma"):
            object.__setattr__(self, name, complex(getattr(self, name)))
        if not self.gamma.real > -1:
            raise DomainError(f"need Re(gamma) > -1, got {self.gamma}")

    def __call__(self, x, y):
        d = np.asarray(x, dtype=float) - np.asarray(y, dtype=float)
        ad = np.abs(d)
        with np.errstate(divide="ignore", invalid="ignore"):
            p = np.exp(self.gamma * np.log(np.where(ad > 0, ad, 1.0)))
        return np.where(d > 0, self.cplus * p, np.where(d < 0, self.cminus * p, np.nan))

    def scaled(self, c: complex) -> "HomogeneousKernel":
        return HomogeneousKernel(c * self.cplus, c * self.cminus, self.gamma)


@dataclass(frozen=True, eq=False)
class PiecewiseConstantKernel:
    """Kernel ``g_n(x, y) = A[floor(n x), floor(n y)]`` of an ``n x n`` matrix."""

    matrix: np.ndarray

    def __post_init__(self):
        A = np.asarray(self.matrix)
        if A.ndim != 2 or A.shape[0] != A.shape[1]:
            raise ValueError("matrix must be square")
        object.__setattr__(self, "matrix", A)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]

    def __call__(self, x, y):
        n = self.n
        i = np.minimum((np.asarray(x) * n).astype(int), n - 1)
        j = np.minimum((np.asarray(y) * n).astype(int), n - 1)
        return self.matrix[i, j]


class KernelNorm(NamedTuple):
    estimate: float
    error_indicator: float
    extrapolated: float
    order: float


def fh_kernel(alpha: complex, beta: complex) -> HomogeneousKernel:
    """Limit kernel of a pure Fisher-Hartwig singularity: ``gamma = 2 alpha - 1``."""
    cplus, cminus = asymptotic_constants(alpha, beta)
    return HomogeneousKernel(cplus, cminus, 2 * complex(alpha) - 1)


def _second_difference(d: np.ndarray, p: complex) -> np.ndarray:
    """``(d+1)^p - 2 d^p + (d-1)^p`` for integers ``d >= 1``, cancellation-free for large ``d``."""
    d = np.asarray(d, dtype=float)
    out = np.empty(d.shape, dtype=complex)
    small = d < 16
    ds = d[small]
    pw = lambda u: np.where(u > 0, np.exp(p * np.log(np.where(u > 0, u, 1.0))), 0.0)
    out[small] = pw(ds + 1) - 2 * pw(ds) + pw(ds - 1)
    # (1+x)^p + (1-x)^p - 2 = 2 sum_{j>=1} binom(p, 2j) x^{2j},  x = 1/d
    dl = d[~small]
    x2 = 1.0 / dl**2
    term = np.ones_like(dl, dtype=complex)
    acc = np.zeros_like(dl, dtype=complex)
    coef = 1.0 + 0j
    for j in range(1, 10):
        coef = coef * (p - 2 * j + 2) * (p - 2 * j + 1) / ((2 * j) * (2 * j - 1))
        term = term * x2
        acc = acc + coef * term
    out[~small] = 2 * acc * np.exp(p * np.log(dl))
    return out


def galerkin_window(kernel: HomogeneousKernel, m: int, scheme: str = "exact") -> CoeffWindow:
    """Toeplitz window of the ``m x m`` cell discretization of ``kernel``.

    Entry ``(i, j)`` is ``(1/h) * integral over cell_i x cell_j`` of the
    kernel, ``h = 1/m``, which makes the matrix norm equal to the norm of the
    operator compressed to piecewise constants.

    ``scheme="exact"`` integrates every cell in closed form.
    ``scheme="midpoint"`` integrates exactly only cells within one cell-width
    of the diagonal and uses ``h * k(midpoints)`` elsewhere.
    """
    g = kernel.gamma
    h = 1.0 / m
    c = h ** (g + 1) / ((g + 1) * (g + 2))
    d = np.arange(1, m)
    if scheme == "exact":
        off = c * _second_difference(d, g + 2)
    elif scheme == "midpoint":
        off = h * np.exp(g * np.log(d * h))
        near = d <= 1
        off[near] = c * _second_difference(d[near], g + 2)
    else:
        raise ValueError(f"unknown scheme {scheme!r}")
    diag = (kernel.cplus + kernel.cminus) * c
    vals = np.concatenate([kernel.cminus * off[::-1], [diag], kernel.cplus * off])
    return CoeffWindow(vals)


def discretize(kernel: HomogeneousKernel, m: int, scheme: str = "exact") -> ToeplitzOperator:
    return ToeplitzOperator(galerkin_window(kernel, m, scheme))


def midpoint_matrix(func: Callable, m: int) -> np.ndarray:
    """``h * func(x_i, y_j)`` at cell midpoints; exact for kernels constant on the cells."""
    x = (np.arange(m) + 0.5) / m
    return func(x[:, None], x[None, :]) / m


@lru_cache(maxsize=256)
def _level_norm(kernel: HomogeneousKernel, level: int, scheme: str, tol: float) -> float:
    return spectral_norm(discretize(kernel, 2**level, scheme), tol=tol, max_iter=20000)


def kernel_norm(
    kernel: HomogeneousKernel, level: int = 11, *, scheme: str = "exact", tol: float = 1e-12
) -> KernelNorm:
    """Operator norm of ``kernel`` on L^2(0, 1) from a ``2**level`` cell discretization.

    Returns ``(estimate, error_indicator, extrapolated, order)``:
    ``estimate`` is the norm at ``level``, ``error_indicator`` its change from
    ``level - 1``, and ``extrapolated`` a Richardson value that uses the
    convergence order observed over the last three levels (``order``).  When
    the observed order is not usable (increments change sign or the order
    falls outside ``[0.25, 4]``) first order is assumed.
    """
    if level < 3:
        raise ValueError("level must be >= 3")
    s2, s1, s0 = (_level_norm(kernel, lv, scheme, tol) for lv in (level - 2, level - 1, level))
    d_prev, d_last = s1 - s2, s0 - s1
    order = 1.0
    if d_prev != 0 and d_last != 0 and np.sign(d_prev) == np.sign(d_last):
        observed = math.log2(abs(d_prev) / abs(d_last))
        if 0.25 <= observed <= 4:
            order = observed
    extrap = s0 + d_last / (2**order - 1)
    return KernelNorm(s0, abs(d_last), extrap, order)


def widom_norm(pc) -> float:
    """``||A_n|| / n``, the L^2(0, 1) norm of the piecewise-constant kernel of ``A_n``."""
    A = pc.matrix if isinstance(pc, PiecewiseConstantKernel) else np.asarray(pc)
    return float(scipy.linalg.svdvals(A)[0]) / A.shape[0]


def _check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0 < alpha < 0.5:
        raise DomainError(f"need 0 < alpha < 1/2, got {alpha}")
    return alpha


def k_alpha_bounds(alpha: float) -> tuple[float, float]:
    """Two-sided bounds on the norm of the kernel ``|x - y|^{2 alpha - 1}``.

    The lower bound is ``||K 1||``, the upper bound the L^1 norm ``1/alpha``
    of the truncated convolution kernel.
    """
    alpha = _check_alpha(alpha)
    lg = scipy.special.gammaln
    beta_term = math.exp(2 * lg(2 * alpha + 1) - lg(4 * alpha + 2))
    lower = math.sqrt(2 / (4 * alpha + 1) + 2 * beta_term) / (2 * alpha)
    return lower, 1 / alpha


def k_alpha_apply_one(alpha: float, x):
    """``(K_alpha 1)(x) = (x^{2 alpha} + (1-x)^{2 alpha}) / (2 alpha)``."""
    alpha = _check_alpha(alpha)
    x = np.asarray(x, dtype=float)
    if np.any((x < 0) | (x > 1)):
        raise DomainError("x must lie in [0, 1]")
    out = (x ** (2 * alpha) + (1 - x) ** (2 * alpha)) / (2 * alpha)
    return out[()] if out.ndim == 0 else out
