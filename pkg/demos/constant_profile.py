"""The growth constant as alpha runs across (0, 1/2).

Near zero the constant tends to 1; near 1/2 it follows 1 / (2 pi (1/2 - alpha)).
"""
import numpy as np

from fhtoeplitz import constant_profile

rows = constant_profile(np.round(np.linspace(0.05, 0.45, 9), 2), level=10)
print(" alpha   ||K_a||   constant   near-1/2 ref")
for r in rows:
    print(f" {r.alpha:.2f}  {r.knorm:8.4f}  {r.full_constant:9.5f}  {r.large_alpha_ref:9.5f}")
