"""Acceptance criteria, one check per criterion.

Run with pytest (a summary line per criterion is printed at the end of the
session) or directly::

    python tests/test_acceptance.py
"""

import json
import math
import pathlib
import sys
from fractions import Fraction
from functools import lru_cache

import numpy as np
import pytest
import scipy.linalg

from fhtoeplitz.asymptotics import (
    convergence_study,
    predict_single,
    vanishing_factor_study,
    verdict,
)
from fhtoeplitz.integral_ops import HomogeneousKernel, k_alpha_bounds, kernel_norm, widom_norm
from fhtoeplitz.symbols import FHFactor, FHSymbol, SmoothPart, eval_symbol
from fhtoeplitz.toeplitz import block_rearrange, from_function, from_symbol, spectral_norm, triangle_bound

GOLDENS = json.loads(pathlib.Path(__file__).with_name("goldens.json").read_text())
GRID = [2**k for k in range(8, 15)]
PAIRS = [(0.25, 0.0), (0.3, 0.2), (0.4, 0.5)]
SMOOTH = SmoothPart({-1: 1, 0: 2, 1: 1})

RESULTS: dict[int, tuple[bool, str]] = {}


def report(number: int, ok: bool, detail: str) -> bool:
    RESULTS[number] = (bool(ok), detail)
    return bool(ok)


def line(number: int) -> str:
    ok, detail = RESULTS[number]
    return f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"


def summary_lines() -> list[str]:
    return [line(n) for n in sorted(RESULTS)]


@lru_cache(maxsize=None)
def study(kind: str, key):
    if kind == "pure":
        a, b = key
        return convergence_study(FHSymbol.single(a, b), GRID, 1.0, prediction=predict_single(a, b))
    if kind == "smooth":
        a, b = key
        return convergence_study(FHSymbol.single(a, b, smooth=SMOOTH), GRID, 1.0, prediction=predict_single(a, b, 4.0))
    if kind == "multi":
        return convergence_study(multi_symbol(), GRID, 1.0)
    raise KeyError(kind)


def multi_symbol():
    return FHSymbol((FHFactor.at_turns(0, 0.25), FHFactor.at_turns(Fraction(1, 2), 0.25)))


def pair_key(a, b):
    return f"{a},{b}"


def _study_verdicts(kind):
    lines, ok = [], True
    for a, b in PAIRS:
        res = study(kind, (a, b))
        tol = GOLDENS[kind][pair_key(a, b)]["tol"]
        dev = [abs(r.ratio - 1) for r in res.rows]
        good = verdict(dev, tol) and all(r.converged for r in res.rows)
        ok &= good
        lines.append(f"({a},{b}) final |ratio-1|={dev[-1]:.2e} tol={tol:.1e}")
    return ok, "; ".join(lines)


# -- criteria ------------------------------------------------------------------------------------


def criterion_1():
    rng = np.random.default_rng(20240601)
    worst = 0.0
    for _ in range(50):
        n = int(rng.integers(2, 65))
        A = rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))
        ref = scipy.linalg.svdvals(A)[0]
        worst = max(worst, abs(n * widom_norm(A) - ref) / ref)
    return report(1, worst <= 1e-10, f"Widom lift, 50 random matrices, max rel err {worst:.1e}")


def criterion_2():
    ok, detail = _study_verdicts("pure")
    return report(2, ok, "pure singularity law: " + detail)


def criterion_3():
    assert abs(eval_symbol(FHSymbol(smooth=SMOOTH), 0.0)) == 4.0
    ok, detail = _study_verdicts("smooth")
    return report(3, ok, "smooth part b=2+t+1/t, constant 4||K||: " + detail)


def criterion_4():
    worst = 0.0
    for a, b in PAIRS:
        base = FHSymbol.single(a, b)
        rot = FHSymbol((FHFactor.at_turns(Fraction(1, 3), a, b),))
        for n in (64, 256, 1024):
            x = spectral_norm(from_symbol(base, n))
            y = spectral_norm(from_symbol(rot, n))
            worst = max(worst, abs(x - y) / x)
    return report(4, worst <= 1e-8, f"rotation to t0=exp(2 pi i/3), max rel diff {worst:.1e}")


def criterion_5():
    ok, worst_margin = True, math.inf
    for alpha in np.round(np.arange(0.05, 0.451, 0.05), 2):
        kn = kernel_norm(HomogeneousKernel(1, 1, 2 * alpha - 1), 11)
        lo, hi = k_alpha_bounds(alpha)
        inside = lo - kn.error_indicator <= kn.extrapolated <= hi + kn.error_indicator
        ok &= inside
        worst_margin = min(worst_margin, (kn.extrapolated - lo) / lo, (hi - kn.extrapolated) / hi)
    return report(5, ok, f"sandwich for alpha=0.05..0.45, smallest relative margin {worst_margin:.2e}")


def criterion_6():
    small = kernel_norm(HomogeneousKernel(1, 1, 2 * 0.02 - 1), 11)
    large = kernel_norm(HomogeneousKernel(1, 1, 2 * 0.49 - 1), 11)
    a = 0.02 * small.extrapolated
    gap = abs(large.extrapolated - 1)
    env = 1 / 0.49 - 2 + large.error_indicator
    ok = 0.90 <= a <= 1.02 and gap <= env
    return report(6, ok, f"alpha*||K||={a:.4f} at 0.02; |1-||K|||={gap:.4f} <= {env:.4f} at 0.49")


def criterion_7():
    est = kernel_norm(HomogeneousKernel(1, 1, 0), 8).estimate
    return report(7, abs(est - 1) <= 1e-8, f"constant kernel at level 8: |est-1|={abs(est - 1):.1e}")


def _power_window(gamma):
    def coeffs(k):
        k = np.abs(k)
        return np.where(k == 0, 1.0, np.maximum(k, 1) ** gamma)

    return coeffs


EL1_GROWTH = {-1.5: lambda n: 1.0, -1.0: lambda n: math.log(n), -0.5: lambda n: math.sqrt(n)}


def criterion_8():
    grid = [2**k for k in range(6, 14)]
    parts, ok = [], True
    triangle_ok = True
    for gamma, f in EL1_GROWTH.items():
        ops = [from_function(n, _power_window(gamma)) for n in grid]
        norms = [spectral_norm(op) for op in ops]
        C = norms[0] / f(grid[0])
        worst = max(x / (C * f(n)) for n, x in zip(grid, norms))
        good = worst <= 1.0
        ok &= good
        parts.append(f"gamma={gamma}: max ||T_n||/(C f(n))={worst:.4f}")
        triangle_ok &= all(x <= triangle_bound(op.window) for x, op in zip(norms, ops))
    # triangle bound on every study instance computed for the other criteria
    for kind, keys in (("pure", PAIRS), ("smooth", PAIRS), ("multi", [None])):
        for key in keys:
            res = study(kind, key)
            sym = multi_symbol() if kind == "multi" else FHSymbol.single(*key, smooth=SMOOTH if kind == "smooth" else None)
            for r in res.rows:
                triangle_ok &= r.computed_norm <= triangle_bound(from_symbol(sym, r.n).window)
    parts.append(f"triangle bound {'holds' if triangle_ok else 'violated'}")
    return report(8, ok and triangle_ok, "growth regimes, C fitted at n=64: " + "; ".join(parts))


def criterion_9():
    res = study("multi", None)
    g = GOLDENS["multi"]
    dev = [abs(r.ratio - 1) for r in res.rows]
    law = verdict(dev, g["tol"]) and res.prediction.status == "proven"
    worst = 0.0
    for n in range(2, 129, 2):
        w = from_symbol(multi_symbol(), n).window
        P, _ = block_rearrange(w, 2)
        a, b = scipy.linalg.svdvals(w.to_dense())[0], scipy.linalg.svdvals(P)[0]
        worst = max(worst, abs(a - b) / a)
    ok = law and worst <= 1e-10
    return report(
        9, ok,
        f"two singularities at 1 and -1: final |ratio-1|={dev[-1]:.2e} tol={g['tol']:.1e}, "
        f"status {res.prediction.status}; block rearrangement max rel diff {worst:.1e}",
    )


def criterion_10():
    res = vanishing_factor_study(0.25, 0, SmoothPart({1: 1, 0: -1}), [2**k for k in range(8, 14)])
    ok = res.strictly_decreasing and res.decrease_factor >= 1.2
    return report(10, ok, f"c(t)=t-1: strictly decreasing={res.strictly_decreasing}, factor {res.decrease_factor:.3f}")


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5,
            criterion_6, criterion_7, criterion_8, criterion_9, criterion_10]


@pytest.mark.parametrize("check", CRITERIA, ids=[f"criterion_{i}" for i in range(1, 11)])
def test_acceptance(check):
    ok = check()
    n = int(check.__name__.split("_")[1])
    assert ok, RESULTS[n][1]


if __name__ == "__main__":
    for i, check in enumerate(CRITERIA, start=1):
        check()
        print(line(i), flush=True)
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
