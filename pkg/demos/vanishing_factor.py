"""When the smooth part vanishes at the singularity the growth is slower.

With c(t) = t - 1 the normalized norm ||T_n|| / n^{2 alpha} decays toward zero.
"""
from fhtoeplitz import SmoothPart, vanishing_factor_study

res = vanishing_factor_study(0.25, 0, SmoothPart({1: 1, 0: -1}), [2**k for k in range(8, 14)])
for r in res.rows:
    print(f"n={r.n:5d}  ||T_n||/n^(1/2) = {r.normalized:.5f}")
print(f"decrease factor {res.decrease_factor:.3f}, strictly decreasing: {res.strictly_decreasing}")
