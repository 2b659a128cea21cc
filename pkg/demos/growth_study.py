"""Power-law growth of ||T_n|| for a symbol with one singularity.

The predicted law is ||K|| |b(t0)| n^{2 Re alpha}.  The ratio of computed to
predicted norm should approach one.
"""
from fhtoeplitz import FHSymbol, SmoothPart, convergence_study, predict_single

smooth = SmoothPart({-1: 1, 0: 2, 1: 1})  # b(t) = 2 + t + 1/t, b(1) = 4
sym = FHSymbol.single(0.3, 0.2, smooth=smooth)
pred = predict_single(0.3, 0.2, 4.0, level=10)
print(f"prediction: {pred.constant:.6f} * n^{pred.exponent:.2f}")

grid = [2**k for k in range(8, 14)]
res = convergence_study(sym, grid, 1e-3, prediction=pred)
for r in res.rows:
    print(f"n={r.n:5d}  norm={r.computed_norm:12.6f}  ratio={r.ratio:.6f}")
print("verdict:", res.verdict)
