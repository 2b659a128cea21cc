"""Fourier coefficients of a single singular factor.

The factor |t - 1|^{-2 alpha} phi_beta has coefficients that decay like
|n|^{2 alpha - 1}, with different constants on the two sides.
"""
import numpy as np

from fhtoeplitz import asymptotic_constants, pure_fh_coeff

alpha, beta = 0.3, 0.2
cplus, cminus = asymptotic_constants(alpha, beta)
print(f"C+ = {cplus:.6f}, C- = {cminus:.6f}")

# scaled coefficients approach the constants
for n in (10, 100, 1000, 10**5):
    scale = n ** (1 - 2 * alpha)
    print(f"n={n:>6}: a_n n^(1-2a) = {pure_fh_coeff(alpha, beta, n).real * scale:.6f}, "
          f"a_-n n^(1-2a) = {pure_fh_coeff(alpha, beta, -n).real * scale:.6f}")

# beta = 0 is symmetric, beta = alpha kills the negative side
print(np.allclose([pure_fh_coeff(0.25, 0, k) for k in (3, 7)], [pure_fh_coeff(0.25, 0, -k) for k in (3, 7)]))
print(pure_fh_coeff(0.25, 0.25, -5))
