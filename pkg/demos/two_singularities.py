"""Two singularities of equal strength at t = 1 and t = -1.

Only the singularities with the largest Re alpha matter, and each is weighted
by the rest of the symbol evaluated at its location.  A block rearrangement
with Q = 2 separates the two points and leaves the norm unchanged.
"""
from fractions import Fraction

import scipy.linalg

from fhtoeplitz import FHFactor, FHSymbol, block_rearrange, convergence_study, from_symbol, predict_multi

sym = FHSymbol((FHFactor.at_turns(0, 0.25), FHFactor.at_turns(Fraction(1, 2), 0.25)))
pred = predict_multi(sym, level=10)
for rep in pred.per_singularity:
    print(rep)
print("status:", pred.status)

res = convergence_study(sym, [2**k for k in range(8, 13)], 1e-3, prediction=pred)
print([round(r.ratio, 6) for r in res.rows], res.verdict)

w = from_symbol(sym, 64).window
P, _ = block_rearrange(w, 2)
print(scipy.linalg.svdvals(w.to_dense())[0], scipy.linalg.svdvals(P)[0])
