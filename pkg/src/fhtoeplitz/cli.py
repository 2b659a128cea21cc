"""Command-line front end.

Examples::

    fhtoeplitz --command norm --n 100
    fhtoeplitz --command bounds --factor 0,0.25,0,0,0
    fhtoeplitz --command study --factor 0,0.25,0,0,0 --grid 256,512,1024,2048 --tol 0.01
    fhtoeplitz --command predict --factor 0,0.25,0,0,0 --factor 1/2,0.25,0,0,0 --format json

Factor angles are fractions of a full turn.  Integers and ``p/q`` are exact
and count as rational for the commensurability check; decimal input such as
``0.3`` is read as a float and is not certified rational.

Exit codes: 0 success, 2 invalid configuration, 3 norm iteration did not
converge, 4 conjectural prediction requested without ``--experimental``.
Every failure also writes one JSON line to stderr.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import numpy as np

from . import asymptotics, integral_ops, symbols, toeplitz
from .exceptions import ConvergenceWarning, ExperimentalOnlyError

COMMANDS = ("coeffs", "norm", "knorm", "bounds", "predict", "study", "vanish", "profile")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NONCONVERGED = 3
EXIT_EXPERIMENTAL = 4


class ConfigError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    factors: list[symbols.FHFactor] = field(default_factory=list)
    smooth: symbols.SmoothPart = field(default_factory=symbols.SmoothPart.one)
    kernel: integral_ops.HomogeneousKernel | None = None
    n: int | None = None
    grid: list[int] = field(default_factory=list)
    alphas: list[float] = field(default_factory=list)
    tol: float | None = None
    level: int = asymptotics.DEFAULT_LEVEL
    seed: int = 0
    fmt: str = "csv"
    experimental: bool = False

    @property
    def symbol(self) -> symbols.FHSymbol:
        return symbols.FHSymbol(tuple(self.factors), self.smooth)


# ---------------------------------------------------------------------------
# parsing


def _floats(text: str, count: int, what: str) -> list[str]:
    parts = [p.strip() for p in text.split(",")]
    if len(parts) != count:
        raise ConfigError(f"{what} needs {count} comma-separated fields, got {text!r}")
    return parts


def parse_factor(text: str) -> symbols.FHFactor:
    turn, are, aim, bre, bim = _floats(text, 5, "--factor")
    try:
        alpha = complex(float(are), float(aim))
        beta = complex(float(bre), float(bim))
        if "." in turn or "e" in turn.lower():
            return symbols.FHFactor(2 * math.pi * float(turn), alpha, beta)
        return symbols.FHFactor.at_turns(Fraction(turn), alpha, beta)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad --factor {text!r}: {exc}") from exc


def parse_smooth(items: Sequence[str]) -> symbols.SmoothPart:
    if not items:
        return symbols.SmoothPart.one()
    pairs = []
    for text in items:
        k, re, im = _floats(text, 3, "--smooth")
        try:
            pairs.append((int(k), complex(float(re), float(im))))
        except ValueError as exc:
            raise ConfigError(f"bad --smooth {text!r}: {exc}") from exc
    return symbols.SmoothPart.from_pairs(pairs)


def parse_kernel(text: str) -> integral_ops.HomogeneousKernel:
    vals = _floats(text, 6, "--kernel")
    try:
        x = [float(v) for v in vals]
        return integral_ops.HomogeneousKernel(complex(x[0], x[1]), complex(x[2], x[3]), complex(x[4], x[5]))
    except ValueError as exc:
        raise ConfigError(f"bad --kernel {text!r}: {exc}") from exc


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(v) for v in text.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError(f"bad {what} {text!r}") from exc


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fhtoeplitz", description="Toeplitz norms for Fisher-Hartwig symbols")
    p.add_argument("--command", required=True, choices=COMMANDS)
    p.add_argument("--factor", action="append", default=[], metavar="TURNS,AR,AI,BR,BI",
                   help="singularity at angle 2*pi*TURNS with alpha=AR+i*AI, beta=BR+i*BI (repeatable)")
    p.add_argument("--smooth", action="append", default=[], metavar="K,RE,IM",
                   help="smooth-part coefficient b_K (repeatable; default b = 1)")
    p.add_argument("--kernel", metavar="CPR,CPI,CMR,CMI,GR,GI",
                   help="homogeneous kernel for knorm/predict instead of a factor")
    p.add_argument("--n", type=int)
    p.add_argument("--grid", help="strictly increasing n1,n2,...")
    p.add_argument("--alphas", help="alpha values for bounds/profile, comma-separated")
    p.add_argument("--tol", type=float,
                   help="norm tolerance (norm, knorm) or verdict tolerance (study)")
    p.add_argument("--level", type=int, default=asymptotics.DEFAULT_LEVEL)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--experimental", action="store_true")
    p.add_argument("--out")
    return p


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(args.command)
    try:
        cfg.factors = [parse_factor(f) for f in args.factor]
        cfg.smooth = parse_smooth(args.smooth)
        cfg.symbol  # distinct-angle check
        cfg.kernel = parse_kernel(args.kernel) if args.kernel else None
        if args.alphas:
            cfg.alphas = [float(a) for a in args.alphas.split(",") if a.strip()]
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    cfg.n = args.n
    if cfg.n is not None and cfg.n < 1:
        raise ConfigError("--n must be positive")
    if args.grid:
        cfg.grid = _int_list(args.grid, "--grid")
        if not cfg.grid or cfg.grid[0] < 1 or any(b <= a for a, b in zip(cfg.grid, cfg.grid[1:])):
            raise ConfigError("--grid must be strictly increasing positive integers")
    if args.tol is not None and not args.tol > 0:
        raise ConfigError("--tol must be positive")
    cfg.tol = args.tol
    if args.level < 3:
        raise ConfigError("--level must be >= 3")
    cfg.level, cfg.seed, cfg.fmt, cfg.experimental = args.level, args.seed, args.fmt, args.experimental
    return cfg


# ---------------------------------------------------------------------------
# output


def fmt_number(x) -> str:
    """12 significant digits; integral values keep a trailing ``.0``."""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, int):
        return str(x)
    s = f"{float(x):.12g}"
    if s.lstrip("-").isdigit():
        s += ".0"
    return s


def _json_value(x):
    if isinstance(x, (bool, int, str)) or x is None:
        return x
    x = float(x)
    if not math.isfinite(x):
        return str(x)
    return float(f"{x:.12g}")


@dataclass
class Output:
    columns: list[str]
    rows: list[list]
    header: bool = True
    meta: dict = field(default_factory=dict)
    converged: bool = True
    experimental_only: bool = False

    def csv(self) -> str:
        lines = []
        if self.header:
            lines.append(",".join(self.columns))
        for row in self.rows:
            lines.append(",".join(v if isinstance(v, str) else fmt_number(v) for v in row))
        if self.meta:
            lines.append("# " + ",".join(f"{k}={v if isinstance(v, str) else fmt_number(v)}"
                                         for k, v in self.meta.items()))
        return "\n".join(lines) + "\n"

    def json(self) -> str:
        doc = {
            "rows": [dict(zip(self.columns, map(_json_value, row))) for row in self.rows],
            **{k: _json_value(v) for k, v in self.meta.items()},
        }
        return json.dumps(doc) + "\n"


def _need_symbol(cfg: RunConfig, single=False) -> symbols.FHSymbol:
    if single and len(cfg.factors) != 1:
        raise ConfigError(f"{cfg.command} needs exactly one --factor")
    return cfg.symbol


def _need(value, flag):
    if value is None or value == []:
        raise ConfigError(f"missing {flag}")
    return value


def _alphas(cfg: RunConfig) -> list[float]:
    if cfg.alphas:
        return cfg.alphas
    if cfg.factors:
        return [f.alpha.real for f in cfg.factors]
    raise ConfigError("missing --alphas or --factor")


def run_coeffs(cfg: RunConfig) -> Output:
    n = _need(cfg.n, "--n")
    vals, tail = symbols.symbol_coeffs(cfg.symbol, n - 1)
    rows = [[k, v.real, v.imag] for k, v in zip(range(-(n - 1), n), vals)]
    return Output(["k", "re", "im"], rows, meta={"tail_estimate": tail})


def run_norm(cfg: RunConfig) -> Output:
    n = _need(cfg.n, "--n")
    op = toeplitz.from_symbol(cfg.symbol, n)
    est = toeplitz.spectral_norm(op, tol=cfg.tol or 1e-8, seed=cfg.seed, full_output=True)
    return Output(["norm"], [[est.value]], header=False, converged=est.converged)


def run_knorm(cfg: RunConfig) -> Output:
    kernels = [cfg.kernel] if cfg.kernel else [integral_ops.fh_kernel(f.alpha, f.beta) for f in cfg.factors]
    if not kernels:
        raise ConfigError("missing --kernel or --factor")
    rows = []
    for k in kernels:
        kn = integral_ops.kernel_norm(k, cfg.level, tol=cfg.tol or 1e-12)
        rows.append([kn.estimate, kn.error_indicator, kn.extrapolated, kn.order])
    return Output(["estimate", "error_indicator", "extrapolated", "order"], rows, header=False)


def run_bounds(cfg: RunConfig) -> Output:
    rows = [list(integral_ops.k_alpha_bounds(a)) for a in _alphas(cfg)]
    return Output(["lower", "upper"], rows, header=False)


def _prediction(cfg: RunConfig) -> asymptotics.Prediction:
    if cfg.kernel is not None:
        k = cfg.kernel
        return asymptotics.predict_powerlike(k.cplus, k.cminus, k.gamma, level=cfg.level)
    symbol = _need_symbol(cfg)
    if not symbol.factors:
        raise ConfigError("missing --factor")
    return asymptotics.predict_multi(symbol, level=cfg.level)


def run_predict(cfg: RunConfig) -> Output:
    pred = _prediction(cfg)
    rows = [[r.index, r.re_alpha, r.knorm, r.b_mod, r.dominant] for r in pred.per_singularity]
    meta = {"constant": pred.constant, "exponent": pred.exponent, "status": pred.status}
    return Output(["index", "re_alpha", "knorm", "b_mod", "dominant"], rows, meta=meta,
                  experimental_only=pred.status == "conjectural")


def run_study(cfg: RunConfig) -> Output:
    grid = _need(cfg.grid, "--grid")
    pred = _prediction(cfg)
    if cfg.kernel is not None:
        source = lambda j: _powerlike_coeffs(cfg.kernel, j)
    else:
        source = cfg.symbol
    conjectural = pred.status == "conjectural"
    res = asymptotics.convergence_study(source, grid, cfg.tol or 1e-2, prediction=pred, seed=cfg.seed,
                                        level=cfg.level)
    rows = [[r.n, r.computed_norm, r.predicted, r.ratio, abs(r.ratio - 1), r.converged] for r in res.rows]
    meta = {"constant": pred.constant, "exponent": pred.exponent, "status": pred.status,
            "verdict": "NONE" if conjectural else res.verdict}
    return Output(["n", "computed_norm", "predicted", "ratio", "deviation", "converged"], rows, meta=meta,
                  converged=all(r.converged for r in res.rows), experimental_only=conjectural)


def _powerlike_coeffs(kernel, k):
    # a_{+-j} = C+- j^gamma for j >= 1, a_0 = 1
    k = np.asarray(k)
    mag = np.exp(kernel.gamma * np.log(np.maximum(np.abs(k), 1)))
    return np.where(k > 0, kernel.cplus * mag, np.where(k < 0, kernel.cminus * mag, 1.0))


def run_vanish(cfg: RunConfig) -> Output:
    grid = _need(cfg.grid, "--grid")
    _need_symbol(cfg, single=True)
    f = cfg.factors[0]
    res = asymptotics.vanishing_factor_study(f.alpha, f.beta, cfg.smooth, grid, theta0=f.theta0,
                                             seed=cfg.seed, norm_tol=cfg.tol or 1e-5)
    rows = [[r.n, r.computed_norm, r.normalized, r.converged] for r in res.rows]
    meta = {"decrease_factor": res.decrease_factor, "strictly_decreasing": res.strictly_decreasing,
            "verdict": res.verdict}
    return Output(["n", "computed_norm", "normalized", "converged"], rows, meta=meta,
                  converged=all(r.converged for r in res.rows))


def run_profile(cfg: RunConfig) -> Output:
    table = asymptotics.constant_profile(_alphas(cfg), level=cfg.level)
    cols = ["alpha", "knorm", "full_constant", "small_alpha_ref", "large_alpha_ref", "lower_full_constant"]
    rows = [[getattr(r, c) for c in cols] for r in table]
    ok = all(r.full_constant >= r.lower_full_constant for r in table)
    return Output(cols, rows, meta={"verdict": "PASS" if ok else "FAIL"})


DISPATCH = {
    "coeffs": run_coeffs,
    "norm": run_norm,
    "knorm": run_knorm,
    "bounds": run_bounds,
    "predict": run_predict,
    "study": run_study,
    "vanish": run_vanish,
    "profile": run_profile,
}


def _diagnose(code: int, kind: str, message: str) -> None:
    print(json.dumps({"exit": code, "error": kind, "message": message}), file=sys.stderr)


def run(cfg: RunConfig, stream=None) -> int:
    """Execute ``cfg``, write the table to ``stream`` and return the exit code."""
    stream = stream or sys.stdout
    if cfg.command in ("predict", "study"):
        # refuse before any heavy computation
        if cfg.kernel is None and cfg.factors and not cfg.experimental:
            probe = cfg.symbol
            reals = [f.alpha.real for f in probe.factors]
            tied = [f for f in probe.factors if f.alpha.real == max(reals)]
            if len(tied) > 1 and any(f.turns is None for f in probe.factors):
                _diagnose(EXIT_EXPERIMENTAL, ExperimentalOnlyError.__name__,
                          "incommensurate singularities: the prediction is conjectural, pass --experimental")
                return EXIT_EXPERIMENTAL
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", ConvergenceWarning)
            out = DISPATCH[cfg.command](cfg)
    except ValueError as exc:
        _diagnose(EXIT_CONFIG, type(exc).__name__, str(exc))
        return EXIT_CONFIG
    stream.write(out.json() if cfg.fmt == "json" else out.csv())
    if not out.converged:
        _diagnose(EXIT_NONCONVERGED, "ConvergenceWarning", "norm iteration reached max_iter")
        return EXIT_NONCONVERGED
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = config_from_args(args)
    except ConfigError as exc:
        _diagnose(EXIT_CONFIG, "ConfigError", str(exc))
        return EXIT_CONFIG
    if args.out:
        with open(args.out, "w") as fh:
            return run(cfg, fh)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
