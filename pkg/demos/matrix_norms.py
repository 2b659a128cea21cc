"""Spectral norms of large Toeplitz matrices without forming them.

The matrix is applied by FFT and the top singular value comes from a
restarted Lanczos bidiagonalization.  For small n we compare with a dense SVD.
"""
import time

import scipy.linalg

from fhtoeplitz import FHSymbol, from_symbol, spectral_norm

sym = FHSymbol.single(0.25, 0.0)

for n in (64, 256, 1024):
    op = from_symbol(sym, n)
    dense = scipy.linalg.svdvals(op.window.to_dense())[0]
    print(f"n={n:5d}  implicit={spectral_norm(op):.12f}  dense={dense:.12f}")

# far beyond what a dense SVD can handle
for n in (2**14, 2**17):
    t0 = time.perf_counter()
    est = spectral_norm(from_symbol(sym, n), full_output=True)
    print(f"n={n:6d}  norm={est.value:.10f}  iterations={est.iterations}  "
          f"converged={est.converged}  {time.perf_counter() - t0:.1f}s")
