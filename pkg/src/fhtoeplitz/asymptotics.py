"""Leading-order predictions of ``||T_n||`` and studies that test them.

Every prediction has the form ``||T_n|| ~ constant * n**exponent``, where the
constant is an integral-operator norm times the modulus of the smooth part at
the dominant singularity.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np
import scipy.special

from .exceptions import DomainError
from .integral_ops import HomogeneousKernel, fh_kernel, k_alpha_bounds, kernel_norm
from .symbols import FHFactor, FHSymbol, SmoothPart, eval_symbol
from .toeplitz import CoeffWindow, ToeplitzOperator, fft_workers, from_symbol, spectral_norm

__all__ = [
    "SingularityReport",
    "Prediction",
    "StudyRow",
    "StudyResult",
    "VanishingRow",
    "VanishingResult",
    "ProfileRow",
    "predict_single",
    "predict_powerlike",
    "predict_multi",
    "convergence_study",
    "vanishing_factor_study",
    "constant_profile",
    "verdict",
]

DEFAULT_LEVEL = 11

# Source of coefficients for a study: a symbol, or a function of the offset array k.
CoeffSource = Union[FHSymbol, Callable[[np.ndarray], np.ndarray]]


@dataclass(frozen=True)
class SingularityReport:
    index: int
    re_alpha: float
    knorm: float
    b_mod: float
    dominant: bool


@dataclass(frozen=True)
class Prediction:
    """``||T_n|| ~ constant * n**exponent``.

    ``status`` is ``"proven"`` when a theorem covers the symbol,
    ``"conjectural"`` when it rests on the open multi-singularity case with
    incommensurate angles, and ``"unchecked"`` when commensurability was not
    examined.
    """

    constant: float
    exponent: float
    per_singularity: tuple[SingularityReport, ...] = ()
    status: str = "proven"

    def __call__(self, n):
        return self.constant * np.asarray(n, dtype=float) ** self.exponent

    @property
    def proven(self) -> bool:
        return self.status == "proven"


def _knorm(kernel: HomogeneousKernel, level: int) -> float:
    return float(kernel_norm(kernel, level).extrapolated)


def predict_powerlike(cplus: complex, cminus: complex, gamma: complex, *, level: int = DEFAULT_LEVEL) -> Prediction:
    """Prediction for coefficients ``a_{+-n} = C+- n^gamma (1 + o(1))``."""
    if cplus == 0 and cminus == 0:
        raise DomainError("at least one of C+ and C- must be nonzero")
    kernel = HomogeneousKernel(cplus, cminus, gamma)
    return Prediction(_knorm(kernel, level), kernel.gamma.real + 1)


def predict_single(alpha: complex, beta: complex, b_mod_at_t0: float = 1.0, *, level: int = DEFAULT_LEVEL) -> Prediction:
    """Prediction for one singularity times a smooth part with ``|b(t0)| = b_mod_at_t0``."""
    if not b_mod_at_t0 > 0:
        raise DomainError("|b(t0)| must be positive")
    knorm = _knorm(fh_kernel(alpha, beta), level)
    report = SingularityReport(0, complex(alpha).real, knorm, float(b_mod_at_t0), True)
    return Prediction(knorm * b_mod_at_t0, 2 * complex(alpha).real, (report,))


def _local_smooth_value(symbol: FHSymbol, r: int) -> complex:
    # b_r(t_r): the full symbol at t_r with the r-th factor removed
    return complex(eval_symbol(symbol.without(r), symbol.factors[r].theta0))


def predict_multi(symbol: FHSymbol, rational_check: bool = True, *, level: int = DEFAULT_LEVEL) -> Prediction:
    """Prediction for a symbol with one or more singularities.

    Only singularities with maximal ``Re(alpha)`` contribute; the constant is
    the largest ``||K_r|| |b_r(t_r)|`` among them.  With a single dominant
    singularity the result is always proven.  With ties it is proven when all
    factor angles are rational fractions of a turn (``FHFactor.turns`` set),
    and conjectural otherwise.
    """
    if not symbol.factors:
        raise DomainError("symbol has no singularities")
    re_alpha = [f.alpha.real for f in symbol.factors]
    top = max(re_alpha)
    reports = []
    for r, f in enumerate(symbol.factors):
        b_mod = abs(_local_smooth_value(symbol, r))
        if b_mod == 0:
            raise DomainError(f"smooth part vanishes at singularity {r}")
        dominant = re_alpha[r] == top
        knorm = _knorm(fh_kernel(f.alpha, f.beta), level) if dominant else math.nan
        reports.append(SingularityReport(r, re_alpha[r], knorm, b_mod, dominant))
    dom = [rep for rep in reports if rep.dominant]
    constant = max(rep.knorm * rep.b_mod for rep in dom)
    if len(dom) == 1:
        status = "proven"
    elif not rational_check:
        status = "unchecked"
    elif all(f.turns is not None for f in symbol.factors):
        status = "proven"
    else:
        status = "conjectural"
    return Prediction(constant, 2 * top, tuple(reports), status)


# ---------------------------------------------------------------------------
# studies


@dataclass(frozen=True)
class StudyRow:
    n: int
    computed_norm: float
    predicted: float
    ratio: float
    converged: bool = True


@dataclass(frozen=True)
class StudyResult:
    rows: tuple[StudyRow, ...]
    passed: bool
    prediction: Prediction

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def ratios(self) -> np.ndarray:
        return np.array([r.ratio for r in self.rows])


def verdict(deviations: Sequence[float], tol: float, window: int = 3) -> bool:
    """``|ratio - 1|`` nonincreasing over the last ``window`` points and the last below ``tol``."""
    dev = list(deviations)
    tail = dev[-window:]
    monotone = all(b <= a for a, b in zip(tail, tail[1:]))
    return bool(monotone and dev[-1] < tol)


def _check_grid(n_grid: Sequence[int]) -> list[int]:
    grid = [int(n) for n in n_grid]
    if not grid or any(n < 1 for n in grid) or any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("n_grid must be a strictly increasing list of positive integers")
    return grid


def _operator(source: CoeffSource, n: int) -> ToeplitzOperator:
    if isinstance(source, FHSymbol):
        return from_symbol(source, n)
    return ToeplitzOperator(CoeffWindow.from_function(n, source))


def _grid_norms(source, grid, norm_tol, seed, workers):
    def one(n):
        est = spectral_norm(_operator(source, n), tol=norm_tol, seed=seed, full_output=True)
        return est.value, est.converged

    workers = workers or fft_workers()
    if workers <= 1:
        return [one(n) for n in grid]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(one, grid))


def convergence_study(
    source: CoeffSource,
    n_grid: Sequence[int],
    tol: float,
    *,
    prediction: Prediction | None = None,
    norm_tol: float = 1e-8,
    seed: int = 0,
    level: int = DEFAULT_LEVEL,
    workers: int | None = None,
) -> StudyResult:
    """Compare ``||T_n||`` with ``prediction(n)`` along ``n_grid``.

    ``source`` is an :class:`FHSymbol` or a function of the offset array
    ``k``.  Without an explicit ``prediction`` the symbol's
    :func:`predict_multi` is used.  The verdict passes when ``|ratio - 1|``
    is nonincreasing over the last three grid points and the final value is
    below ``tol``.
    """
    grid = _check_grid(n_grid)
    if prediction is None:
        if not isinstance(source, FHSymbol):
            raise ValueError("a prediction is required for coefficient functions")
        prediction = predict_multi(source, level=level)
    norms = _grid_norms(source, grid, norm_tol, seed, workers)
    rows = []
    for n, (value, ok) in zip(grid, norms):
        pred = float(prediction(n))
        if not pred > 0:
            raise DomainError("predicted norm must be positive")
        rows.append(StudyRow(n, value, pred, value / pred, ok))
    passed = verdict([abs(r.ratio - 1) for r in rows], tol)
    return StudyResult(tuple(rows), passed, prediction)


@dataclass(frozen=True)
class VanishingRow:
    n: int
    computed_norm: float
    normalized: float
    converged: bool = True


@dataclass(frozen=True)
class VanishingResult:
    rows: tuple[VanishingRow, ...]
    passed: bool
    decrease_factor: float
    strictly_decreasing: bool

    @property
    def verdict(self) -> str:
        return "PASS" if self.passed else "FAIL"

    @property
    def normalized(self) -> np.ndarray:
        return np.array([r.normalized for r in self.rows])


def vanishing_factor_study(
    alpha: complex,
    beta: complex,
    c: SmoothPart,
    n_grid: Sequence[int],
    *,
    theta0: float = 0.0,
    min_factor: float = 1.2,
    norm_tol: float = 1e-5,
    seed: int = 0,
    workers: int | None = None,
) -> VanishingResult:
    """Tabulate ``||T_n(sigma c)|| / n^{2 Re alpha}`` for ``c`` vanishing at ``t0``.

    Passes when the first entry exceeds the last by at least ``min_factor``;
    an identically zero table passes trivially.  The top of the spectrum is
    clustered here, so the default ``norm_tol`` is loose; only the decrease
    matters.
    """
    if abs(complex(c(theta0))) >= 1e-12:
        raise DomainError(f"c must vanish at t0, |c(t0)| = {abs(complex(c(theta0))):.3e}")
    grid = _check_grid(n_grid)
    symbol = FHSymbol((FHFactor(theta0, alpha, beta),), c)
    p = 2 * complex(alpha).real
    norms = _grid_norms(symbol, grid, norm_tol, seed, workers)
    rows = tuple(VanishingRow(n, v, v / n**p, ok) for n, (v, ok) in zip(grid, norms))
    vals = [r.normalized for r in rows]
    if vals[0] == 0 and vals[-1] == 0:
        factor, passed = math.inf, True
    else:
        factor = vals[0] / vals[-1] if vals[-1] > 0 else math.inf
        passed = factor >= min_factor
    strict = all(b < a for a, b in zip(vals, vals[1:]))
    return VanishingResult(rows, passed, factor, strict)


@dataclass(frozen=True)
class ProfileRow:
    alpha: float
    knorm: float
    full_constant: float
    small_alpha_ref: float
    large_alpha_ref: float
    lower_full_constant: float


def constant_profile(alpha_grid: Sequence[float], *, level: int = DEFAULT_LEVEL) -> list[ProfileRow]:
    """Growth constant of ``|t - t0|^{-2 alpha} b`` per unit ``|b(t0)|`` along ``alpha_grid``.

    The full constant is ``Gamma(1 - 2 alpha) sin(pi alpha) / pi * ||K_alpha||``
    with ``K_alpha`` the kernel ``|x - y|^{2 alpha - 1}``.  Reference values
    are ``1`` (small alpha) and ``1 / (2 pi (1/2 - alpha))`` (alpha near 1/2).
    """
    rows = []
    for alpha in alpha_grid:
        alpha = float(alpha)
        lower, _ = k_alpha_bounds(alpha)
        knorm = _knorm(HomogeneousKernel(1.0, 1.0, 2 * alpha - 1), level)
        pref = scipy.special.gamma(1 - 2 * alpha) * math.sin(math.pi * alpha) / math.pi
        rows.append(
            ProfileRow(alpha, knorm, pref * knorm, 1.0, 1 / (2 * math.pi * (0.5 - alpha)), pref * lower)
        )
    return rows
