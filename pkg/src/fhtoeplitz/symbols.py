"""Fisher-Hartwig symbols and their Fourier coefficients.

A Fisher-Hartwig factor with singularity at ``t0 = exp(i*theta0)`` is

    |t - t0|**(-2*alpha) * exp(i*beta*arg(-t/t0)),   arg in (-pi, pi],

with ``0 < Re(alpha) < 1/2`` and ``-1/2 < Re(beta) <= 1/2``.  A symbol is a
product of such factors with distinct singular points, multiplied by a smooth
part ``b`` given as a trigonometric polynomial.

Coefficients follow the convention ``a_k = (1/2pi) int a(e^{i theta}) e^{-ik theta}``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

import numpy as np
import scipy.signal
import scipy.special

from .exceptions import DomainError, GammaPoleError, SingularPointError, TruncationError

__all__ = [
    "FHFactor",
    "SmoothPart",
    "FHSymbol",
    "gamma_complex",
    "loggamma_complex",
    "log_gamma_ratio",
    "pure_fh_coeff",
    "fh_coeff_at",
    "asymptotic_constants",
    "symbol_coeff",
    "symbol_coeffs",
    "eval_symbol",
    "default_trunc",
]

# |n| above which the sine/log-gamma form replaces the raw gamma quotient
RAW_FORM_MAX_N = 30


def _wrap_angle(theta):
    """Map angles into (-pi, pi]."""
    theta = np.asarray(theta, dtype=float)
    inside = (theta > -np.pi) & (theta <= np.pi)
    w = np.mod(theta + np.pi, 2 * np.pi) - np.pi
    w = np.where(w == -np.pi, np.pi, w)
    return np.where(inside, theta, w)


def _check_alpha_beta(alpha: complex, beta: complex) -> None:
    if not 0.0 < alpha.real < 0.5:
        raise DomainError(f"need 0 < Re(alpha) < 1/2, got alpha={alpha}")
    if not -0.5 < beta.real <= 0.5:
        raise DomainError(f"need -1/2 < Re(beta) <= 1/2, got beta={beta}")


@dataclass(frozen=True)
class FHFactor:
    """One Fisher-Hartwig singularity.

    ``theta0`` is the angle of the singular point.  ``turns`` optionally holds
    the same angle as an exact fraction of a full turn (``theta0 = 2*pi*turns``);
    it is what the commensurability test in :func:`~fhtoeplitz.asymptotics.predict_multi`
    looks at.
    """

    theta0: float
    alpha: complex
    beta: complex = 0.0
    turns: Fraction | None = None

    def __post_init__(self):
        alpha, beta = complex(self.alpha), complex(self.beta)
        _check_alpha_beta(alpha, beta)
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        turns = self.turns
        if turns is not None:
            turns = Fraction(turns)
            turns -= math.floor(turns + Fraction(1, 2))  # into [-1/2, 1/2)
            if turns == Fraction(-1, 2):
                turns = Fraction(1, 2)
            theta0 = 2 * math.pi * float(turns)
        else:
            theta0 = float(_wrap_angle(self.theta0))
            if theta0 == 0.0:
                turns = Fraction(0)
        object.__setattr__(self, "turns", turns)
        object.__setattr__(self, "theta0", theta0)

    @classmethod
    def at_turns(cls, turns, alpha: complex, beta: complex = 0.0) -> "FHFactor":
        """Factor at ``exp(2*pi*i*turns)`` with ``turns`` kept as an exact fraction."""
        turns = Fraction(turns)
        return cls(2 * math.pi * float(turns), alpha, beta, turns)

    @property
    def t0(self) -> complex:
        return complex(np.exp(1j * self.theta0))

    def phase(self, n):
        """``t0**(-n)``, exact-angle reduction when ``turns`` is rational."""
        n = np.asarray(n)
        if self.turns is not None:
            p, q = self.turns.numerator, self.turns.denominator
            r = np.mod(n.astype(np.int64) * p, q)
            return np.exp(-2j * np.pi * r / q)
        return np.exp(-1j * n * self.theta0)


@dataclass(frozen=True)
class SmoothPart:
    """Trigonometric polynomial ``b(e^{i theta}) = sum_k b_k e^{ik theta}``."""

    coeffs: Mapping[int, complex] = field(default_factory=lambda: {0: 1.0})

    def __post_init__(self):
        clean = {int(k): complex(v) for k, v in dict(self.coeffs).items() if v != 0}
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def one(cls) -> "SmoothPart":
        return cls({0: 1.0})

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[int, complex]]) -> "SmoothPart":
        acc: dict[int, complex] = {}
        for k, v in pairs:
            acc[int(k)] = acc.get(int(k), 0) + complex(v)
        return cls(acc)

    @property
    def bandwidth(self) -> int:
        return max((abs(k) for k in self.coeffs), default=0)

    def dense(self) -> tuple[np.ndarray, int]:
        """Coefficients as an array over ``k = -m..m`` with ``m`` the bandwidth."""
        m = self.bandwidth
        out = np.zeros(2 * m + 1, dtype=complex)
        for k, v in self.coeffs.items():
            out[k + m] = v
        return out, m

    def __call__(self, theta):
        theta = np.asarray(theta, dtype=float)
        val = np.zeros(theta.shape, dtype=complex)
        for k, v in self.coeffs.items():
            val = val + v * np.exp(1j * k * theta)
        return val

    def __mul__(self, scalar) -> "SmoothPart":
        return SmoothPart({k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__


@dataclass(frozen=True)
class FHSymbol:
    """Product of Fisher-Hartwig factors times a smooth part."""

    factors: tuple[FHFactor, ...] = ()
    smooth: SmoothPart = field(default_factory=SmoothPart.one)

    def __post_init__(self):
        factors = tuple(self.factors)
        object.__setattr__(self, "factors", factors)
        for i, f in enumerate(factors):
            for g in factors[:i]:
                same = (
                    f.turns == g.turns
                    if f.turns is not None and g.turns is not None
                    else f.theta0 == g.theta0
                )
                if same:
                    raise DomainError(f"factor angles must be distinct, got {f.theta0} twice")

    @classmethod
    def single(cls, alpha, beta=0.0, theta0=0.0, smooth=None) -> "FHSymbol":
        return cls((FHFactor(theta0, alpha, beta),), smooth or SmoothPart.one())

    def without(self, r: int) -> "FHSymbol":
        """The symbol with the ``r``-th factor removed."""
        return FHSymbol(self.factors[:r] + self.factors[r + 1 :], self.smooth)

    def __call__(self, theta):
        return eval_symbol(self, theta)


# ---------------------------------------------------------------------------
# special functions


def _is_pole(z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    return (z.imag == 0) & (z.real <= 0) & (z.real == np.round(z.real))


def gamma_complex(z):
    """Gamma function for complex arguments.

    Raises :class:`GammaPoleError` at nonpositive integers.
    """
    if np.any(_is_pole(z)):
        raise GammaPoleError(f"Gamma has a pole at {z}")
    out = scipy.special.gamma(np.asarray(z, dtype=complex))
    return out[()] if out.ndim == 0 else out


def loggamma_complex(z):
    """Principal branch of log Gamma for complex arguments."""
    if np.any(_is_pole(z)):
        raise GammaPoleError(f"log Gamma has a pole at {z}")
    out = scipy.special.loggamma(np.asarray(z, dtype=complex))
    return out[()] if out.ndim == 0 else out


# ---------------------------------------------------------------------------
# coefficients of the pure singularity at t0 = 1


def _raw_form(alpha: complex, beta: complex, n: np.ndarray) -> np.ndarray:
    d1 = -alpha + beta + 1 - n
    d2 = -alpha - beta + 1 + n
    bad = (_is_pole(d1) | _is_pole(d2)) & ~(((n > 0) & (alpha == beta)) | ((n < 0) & (alpha == -beta)))
    if np.any(bad):
        raise GammaPoleError(f"unexpected pole in sigma_n for alpha={alpha}, beta={beta}")
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    rg = scipy.special.rgamma
    return sign * scipy.special.gamma(1 - 2 * alpha) * rg(d1) * rg(d2)


_BERNOULLI = scipy.special.bernoulli(26)


def _bernoulli_poly(k: int, x):
    return sum(math.comb(k, j) * _BERNOULLI[j] * x ** (k - j) for j in range(k + 1))


def log_gamma_ratio(x, a, b, terms: int = 12):
    """``log Gamma(x + a) - log Gamma(x + b)`` for real ``x >= 30`` and moderate ``a, b``.

    Uses the large-``x`` expansion in Bernoulli polynomials, which avoids the
    cancellation of subtracting two log-gammas of size ``x log x``.
    """
    x = np.asarray(x, dtype=float)
    if np.any(x < 30):
        raise DomainError("log_gamma_ratio needs x >= 30")
    out = (a - b) * np.log(x)
    xp = np.ones_like(x)
    for k in range(1, terms + 1):
        xp = xp / x
        c = (_bernoulli_poly(k + 1, a) - _bernoulli_poly(k + 1, b)) / (k * (k + 1))
        out = out + (-1) ** (k + 1) * c * xp
    return out


def _sine_form(alpha: complex, beta: complex, n: np.ndarray) -> np.ndarray:
    """Rewritten form, valid for ``n != 0``."""
    m = np.abs(n).astype(float)
    z = np.where(n >= 0, alpha - beta, alpha + beta)
    w = np.where(n >= 0, 1 - alpha - beta, 1 - alpha + beta)
    big = m >= 30
    lr = np.empty(m.shape, dtype=complex)
    lr[big] = log_gamma_ratio(m[big], 1 + z[big], w[big])
    lg = scipy.special.loggamma
    lr[~big] = lg(m[~big] + 1 + z[~big]) - lg(m[~big] + w[~big])
    ratio = np.exp(lr)
    return scipy.special.gamma(1 - 2 * alpha) * np.sin(np.pi * z) / (np.pi * (m + z)) * ratio


def pure_fh_coeff(alpha: complex, beta: complex, n, *, form: str = "auto"):
    """Fourier coefficients ``sigma_n`` of ``|t-1|^{-2 alpha} phi_{beta,1}(t)``.

    Parameters
    ----------
    alpha, beta : complex
        Singularity exponents inside the admissible strips.
    n : int or array of int
    form : {"auto", "raw", "sine"}
        ``"raw"`` is the gamma quotient, ``"sine"`` the rewritten form with a
        log-gamma ratio (``n != 0`` only).  ``"auto"`` uses the raw form for
        ``|n| <= 30`` and the sine form beyond.

    When ``alpha == beta`` exactly, ``sigma_n = 0`` for ``n > 0``; when
    ``alpha == -beta`` exactly, ``sigma_n = 0`` for ``n < 0``.
    """
    alpha, beta = complex(alpha), complex(beta)
    _check_alpha_beta(alpha, beta)
    n_arr = np.asarray(n, dtype=np.int64)
    flat = n_arr.reshape(-1)
    out = np.empty(flat.shape, dtype=complex)
    if form == "raw":
        out[:] = _raw_form(alpha, beta, flat)
    elif form == "sine":
        if np.any(flat == 0):
            raise DomainError("sine form is undefined at n = 0")
        out[:] = _sine_form(alpha, beta, flat)
    elif form == "auto":
        small = np.abs(flat) <= RAW_FORM_MAX_N
        out[small] = _raw_form(alpha, beta, flat[small])
        out[~small] = _sine_form(alpha, beta, flat[~small])
    else:
        raise ValueError(f"unknown form {form!r}")
    if alpha == beta:
        out[flat > 0] = 0
    if alpha == -beta:
        out[flat < 0] = 0
    out = out.reshape(n_arr.shape)
    return out[()] if out.ndim == 0 else out


def fh_coeff_at(factor: FHFactor, n):
    """Coefficients of a single factor: ``t0**(-n) * sigma_n``."""
    out = factor.phase(n) * pure_fh_coeff(factor.alpha, factor.beta, n)
    return out[()] if np.ndim(out) == 0 else out


def asymptotic_constants(alpha: complex, beta: complex) -> tuple[complex, complex]:
    """Leading constants ``(C+, C-)`` with ``sigma_{+-n} ~ C+- n^{2 alpha - 1}``."""
    alpha, beta = complex(alpha), complex(beta)
    _check_alpha_beta(alpha, beta)
    g = complex(gamma_complex(1 - 2 * alpha))
    cplus = g * complex(np.sin(np.pi * (alpha - beta))) / np.pi
    cminus = g * complex(np.sin(np.pi * (alpha + beta))) / np.pi
    return cplus, cminus


# ---------------------------------------------------------------------------
# coefficients of a full symbol


def default_trunc(kmax: int, symbol: FHSymbol) -> int:
    """Truncation used when none is given: 16 windows wide, at least 4096."""
    return max(16 * kmax, 4096) + symbol.smooth.bandwidth


def _tail_estimate(seq: np.ndarray, g: np.ndarray, L: int, kmax: int, delta: float) -> float:
    # Omitted terms of sum_j s_j g_{k-j} beyond |j| = L oscillate with
    # ratio of modulus one; an Abel-summation bound is 2*|first term|/delta.
    ks = np.arange(-kmax, kmax + 1)
    right = np.abs(seq[-1]) * np.abs(g[np.clip(ks - L, -L, L) + L])
    left = np.abs(seq[0]) * np.abs(g[np.clip(ks + L, -L, L) + L])
    return float(2.0 / delta * np.max(right + left))


def symbol_coeffs(symbol: FHSymbol, kmax: int, trunc: int | None = None) -> tuple[np.ndarray, float]:
    """Coefficients ``a_k`` for ``k = -kmax..kmax`` and a tail-error estimate.

    Factor-factor products are truncated convolutions over ``|j| <= trunc``;
    the final convolution with the smooth part is exact.  The second return
    value estimates the largest coefficient error caused by truncation (zero
    for fewer than two factors).
    """
    kmax = int(kmax)
    if kmax < 0:
        raise ValueError("kmax must be nonnegative")
    bvals, bw = symbol.smooth.dense()
    factors = symbol.factors
    if trunc is None:
        trunc = default_trunc(kmax, symbol)
    if trunc < kmax + bw:
        raise TruncationError(f"trunc={trunc} cannot resolve |k|={kmax} with smooth bandwidth {bw}")

    if not factors:
        out = np.zeros(2 * kmax + 1, dtype=complex)
        for k, v in symbol.smooth.coeffs.items():
            if abs(k) <= kmax:
                out[k + kmax] = v
        return out, 0.0

    L = kmax + bw if len(factors) == 1 else int(trunc)
    idx = np.arange(-L, L + 1)
    seq = fh_coeff_at(factors[0], idx)
    tail = 0.0
    for r, f in enumerate(factors[1:], start=1):
        g = fh_coeff_at(f, idx)
        delta = min(abs(1 - np.exp(1j * (f.theta0 - e.theta0))) for e in factors[:r])
        tail += _tail_estimate(seq, g, L, kmax + bw, delta) + tail * float(np.sum(np.abs(g)))
        full = scipy.signal.fftconvolve(seq, g)
        seq = full[L : L + 2 * L + 1]
    # exact convolution with the smooth part
    full = np.convolve(seq, bvals)
    centre = L + bw
    out = full[centre - kmax : centre + kmax + 1]
    return out, tail * float(np.sum(np.abs(bvals)))


def symbol_coeff(symbol: FHSymbol, n: int, trunc: int | None = None, *, return_tail: bool = False):
    """Single Fourier coefficient ``a_n`` of ``symbol``; see :func:`symbol_coeffs`."""
    n = int(n)
    if trunc is not None and trunc < abs(n) + symbol.smooth.bandwidth:
        raise TruncationError(f"trunc={trunc} cannot resolve n={n}")
    vals, tail = symbol_coeffs(symbol, abs(n), trunc)
    val = complex(vals[n + abs(n)])
    return (val, tail) if return_tail else val


def eval_symbol(symbol: FHSymbol, theta):
    """Pointwise value ``a(e^{i theta})``; undefined at the singular points."""
    theta = np.asarray(theta, dtype=float)
    val = symbol.smooth(theta).astype(complex)
    for f in symbol.factors:
        phi = _wrap_angle(theta - f.theta0)
        if np.any(phi == 0):
            raise SingularPointError(f"symbol is singular at theta={f.theta0}")
        dist = 2 * np.abs(np.sin(phi / 2))
        arg = np.where(phi <= 0, phi + np.pi, phi - np.pi)
        val = val * np.exp(-2 * f.alpha * np.log(dist)) * np.exp(1j * f.beta * arg)
    return val[()] if val.ndim == 0 else val
