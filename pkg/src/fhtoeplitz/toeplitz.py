"""Implicit Toeplitz matrices ``T_n = (a_{j-k})`` with FFT matvecs and norm estimation."""

from __future__ import annotations

import os
import warnings
from dataclasses import dataclass
from typing import Callable

import numpy as np
import scipy.fft
import scipy.linalg
from scipy.sparse.linalg import LinearOperator

from .exceptions import ConvergenceWarning, DivisibilityError
from .symbols import FHSymbol, symbol_coeffs

__all__ = [
    "CoeffWindow",
    "ToeplitzOperator",
    "NormEstimate",
    "from_symbol",
    "from_function",
    "matvec",
    "spectral_norm",
    "triangle_bound",
    "block_rearrange",
    "fft_workers",
]

THREADS_ENV = "FHTOEPLITZ_THREADS"


def fft_workers() -> int:
    """Worker count for FFTs and grid studies, read from ``FHTOEPLITZ_THREADS``."""
    try:
        return max(1, int(os.environ.get(THREADS_ENV, "1")))
    except ValueError:
        return 1


@dataclass(frozen=True, eq=False)
class CoeffWindow:
    """Coefficients ``a_k`` for ``k = -(n-1), ..., n-1`` stored left to right."""

    values: np.ndarray

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=complex).copy()
        if vals.ndim != 1 or len(vals) % 2 == 0:
            raise ValueError("a window needs 2n-1 entries")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, n: int, coeffs: dict[int, complex]) -> "CoeffWindow":
        vals = np.zeros(2 * n - 1, dtype=complex)
        for k, v in coeffs.items():
            if abs(k) < n:
                vals[k + n - 1] = v
        return cls(vals)

    @classmethod
    def from_function(cls, n: int, func: Callable[[np.ndarray], np.ndarray]) -> "CoeffWindow":
        """Window with ``a_k = func(k)``; ``func`` receives the integer array of offsets."""
        k = np.arange(-(n - 1), n)
        return cls(np.asarray(func(k), dtype=complex) * np.ones(len(k)))

    @property
    def n(self) -> int:
        return (len(self.values) + 1) // 2

    def __getitem__(self, k: int) -> complex:
        if abs(k) >= self.n:
            raise IndexError(k)
        return complex(self.values[k + self.n - 1])

    @property
    def column(self) -> np.ndarray:
        """First column ``a_0, a_1, ..., a_{n-1}``."""
        return self.values[self.n - 1 :]

    @property
    def row(self) -> np.ndarray:
        """First row ``a_0, a_{-1}, ..., a_{-(n-1)}``."""
        return self.values[: self.n][::-1]

    def is_hermitian(self, rtol: float = 0.0) -> bool:
        rev = np.conj(self.values[::-1])
        return bool(np.allclose(self.values, rev, rtol=rtol, atol=rtol * np.max(np.abs(self.values), initial=0)))

    def adjoint(self) -> "CoeffWindow":
        return CoeffWindow(np.conj(self.values[::-1]))

    def to_dense(self) -> np.ndarray:
        return scipy.linalg.toeplitz(self.column, self.row)


class ToeplitzOperator:
    """Matrix-free ``T_n`` via circulant embedding.

    The circulant has the smallest FFT-friendly length ``>= 2n-1``.  Instances
    are immutable after construction; the cached transforms are read-only.
    """

    def __init__(self, window: CoeffWindow):
        if not isinstance(window, CoeffWindow):
            window = CoeffWindow(window)
        self.window = window
        n = window.n
        self.n = n
        self.shape = (n, n)
        self.size = scipy.fft.next_fast_len(2 * n - 1)
        self._fwd = self._transform(window)
        self._adj = self._transform(window.adjoint())

    def _transform(self, window: CoeffWindow) -> np.ndarray:
        n, L = self.n, self.size
        circ = np.zeros(L, dtype=complex)
        circ[:n] = window.column
        if n > 1:
            circ[L - n + 1 :] = window.values[: n - 1]
        out = scipy.fft.fft(circ, workers=fft_workers())
        out.setflags(write=False)
        return out

    def _apply(self, spectrum: np.ndarray, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape[0] != self.n:
            raise ValueError(f"vector length {v.shape[0]} does not match n={self.n}")
        w = fft_workers()
        if v.ndim == 1:
            out = scipy.fft.ifft(spectrum * scipy.fft.fft(v, self.size, workers=w), workers=w)
        else:
            vf = scipy.fft.fft(v, self.size, axis=0, workers=w)
            out = scipy.fft.ifft(spectrum[:, None] * vf, axis=0, workers=w)
        return out[: self.n]

    def matvec(self, v: np.ndarray) -> np.ndarray:
        """``T_n v`` for a vector or an ``(n, k)`` block."""
        return self._apply(self._fwd, v)

    def rmatvec(self, v: np.ndarray) -> np.ndarray:
        """``T_n^* v``."""
        return self._apply(self._adj, v)

    def to_dense(self) -> np.ndarray:
        return self.window.to_dense()

    def aslinearoperator(self) -> LinearOperator:
        return LinearOperator(self.shape, matvec=self.matvec, rmatvec=self.rmatvec, dtype=complex)

    def __matmul__(self, v):
        return self.matvec(v)


def from_symbol(symbol: FHSymbol, n: int, trunc: int | None = None) -> ToeplitzOperator:
    """``T_n(a)`` for a Fisher-Hartwig symbol ``a``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vals, _ = symbol_coeffs(symbol, n - 1, trunc)
    return ToeplitzOperator(CoeffWindow(vals))


def from_function(n: int, func: Callable[[np.ndarray], np.ndarray]) -> ToeplitzOperator:
    return ToeplitzOperator(CoeffWindow.from_function(n, func))


def matvec(op: ToeplitzOperator, v: np.ndarray) -> np.ndarray:
    return op.matvec(v)


@dataclass(frozen=True)
class NormEstimate:
    value: float
    converged: bool
    iterations: int
    residual: float


def _orthogonalize(x: np.ndarray, basis: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Classical Gram-Schmidt applied twice; returns the remainder and the coefficients."""
    coef = np.zeros(len(basis), dtype=complex)
    if len(basis) == 0:
        return x, coef
    for _ in range(2):
        c = basis.conj() @ x
        x = x - basis.T @ c
        coef += c
    return x, coef


def _random_unit(rng, n: int) -> np.ndarray:
    v = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return v / np.linalg.norm(v)


def _golub_kahan(op, n, tol, max_iter, seed, krylov_dim, keep):
    """Thick-restarted Golub-Kahan bidiagonalization for the top singular value.

    The projected matrix ``B = U^H A V`` is accumulated from the Gram-Schmidt
    coefficients, so after a restart it carries the coupling column of the
    kept Ritz vectors.  The residual of the top Ritz triplet is
    ``beta * |x_last|`` where ``beta`` is the norm of the newest right vector.
    """
    rng = np.random.default_rng(seed)
    mdim = max(1, min(krylov_dim, n))
    keep = max(1, min(keep, mdim - 1)) if mdim > 1 else 0
    U = np.zeros((mdim, n), dtype=complex)
    V = np.zeros((mdim + 1, n), dtype=complex)
    B = np.zeros((mdim, mdim), dtype=complex)
    V[0] = _random_unit(rng, n)
    start = 0
    iterations = 0
    sigma, resid = 0.0, np.inf
    while True:
        for j in range(start, mdim):
            p, coef = _orthogonalize(op.matvec(V[j]), U[:j])
            alpha = np.linalg.norm(p)
            scale = max(sigma, np.max(np.abs(B[: j + 1, : j + 1]), initial=0.0), alpha)
            if scale == 0.0:
                return NormEstimate(0.0, True, iterations + 1, 0.0)
            if alpha <= 1e-14 * scale:
                # A v_j lies in span(U): continue with an arbitrary orthogonal direction
                alpha = 0.0
                p, _ = _orthogonalize(_random_unit(rng, n), U[:j])
                p /= np.linalg.norm(p)
            else:
                p /= alpha
            U[j] = p
            B[:j, j] = coef
            B[j, j] = alpha
            r, _ = _orthogonalize(op.rmatvec(U[j]), V[: j + 1])
            beta = np.linalg.norm(r)
            iterations += 1

            X, s, Yh = np.linalg.svd(B[: j + 1, : j + 1])
            sigma = float(s[0])
            resid = float(beta * abs(X[j, 0]))
            exhausted = j + 1 == n or beta <= 1e-14 * max(sigma, alpha)
            # a gap-based r^2/gap test is not used: early Ritz values
            # underestimate sigma_2, which overstates the gap
            if resid <= tol * sigma or exhausted:
                return NormEstimate(sigma, True, iterations, 0.0 if exhausted else resid)
            if iterations >= max_iter:
                return NormEstimate(sigma, False, iterations, resid)
            V[j + 1] = r / beta
        # thick restart: keep the leading Ritz pairs and the newest right vector
        Y = Yh.conj().T
        Vk = Y[:, :keep].T @ V[:mdim]
        Uk = X[:, :keep].T @ U[:mdim]
        vnext = V[mdim].copy()
        U[:] = 0
        V[:] = 0
        B[:] = 0
        U[:keep], V[:keep], V[keep] = Uk, Vk, vnext
        B[:keep, :keep] = np.diag(s[:keep])
        start = keep


def spectral_norm(
    op: ToeplitzOperator,
    tol: float = 1e-8,
    max_iter: int = 5000,
    *,
    seed: int = 0,
    method: str = "lanczos",
    krylov_dim: int = 48,
    keep: int = 12,
    full_output: bool = False,
):
    """Largest singular value of ``T_n``.

    Parameters
    ----------
    op : ToeplitzOperator
    tol : float
        Relative accuracy target.  The iteration stops when the residual
        ``r`` of the top Ritz triplet satisfies ``r <= tol * sigma``.
    max_iter : int
        Total Golub-Kahan steps over all restarts.
    seed : int
        Seed of the random complex start vector.
    method : {"lanczos", "dense"}
        ``"lanczos"`` uses Golub-Kahan bidiagonalization with full
        reorthogonalization, thick-restarted every ``krylov_dim`` steps with
        ``keep`` Ritz vectors retained; it only touches the matrix through
        ``matvec``/``rmatvec``.  ``"dense"`` forms
        the matrix and calls LAPACK.
    full_output : bool
        Return a :class:`NormEstimate` instead of a float.

    A :class:`~fhtoeplitz.exceptions.ConvergenceWarning` is issued when
    ``max_iter`` runs out; the best estimate is still returned.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not isinstance(op, ToeplitzOperator):
        op = ToeplitzOperator(op)
    if method == "dense":
        s = scipy.linalg.svdvals(op.to_dense())
        est = NormEstimate(float(s[0]), True, 0, 0.0)
    elif method == "lanczos":
        est = _golub_kahan(op, op.n, tol, max_iter, seed, krylov_dim, keep)
        if not est.converged:
            warnings.warn(
                f"norm iteration stopped after {est.iterations} steps "
                f"(residual {est.residual:.3e})",
                ConvergenceWarning,
                stacklevel=2,
            )
    else:
        raise ValueError(f"unknown method {method!r}")
    return est if full_output else est.value


def triangle_bound(window: CoeffWindow) -> float:
    """``sum_k |a_k|``, an upper bound for ``||T_n||``."""
    if isinstance(window, ToeplitzOperator):
        window = window.window
    return float(np.sum(np.abs(window.values)))


def block_rearrange(window: CoeffWindow, Q: int) -> tuple[np.ndarray, np.ndarray]:
    """Group rows and columns of ``T_{mQ}`` by residue mod ``Q``.

    Returns ``(P, perm)`` with ``P = T[perm][:, perm]``.  ``P`` is the block
    Toeplitz matrix ``(A_{j-k})_{j,k=0}^{Q-1}`` whose ``m x m`` blocks are
    ``A_k = (a_{k+(u-v)Q})``.
    """
    if isinstance(window, ToeplitzOperator):
        window = window.window
    n = window.n
    if Q < 1 or n % Q:
        raise DivisibilityError(f"Q={Q} does not divide n={n}")
    perm = np.arange(n).reshape(n // Q, Q).T.ravel()
    dense = window.to_dense()
    return dense[np.ix_(perm, perm)], perm
