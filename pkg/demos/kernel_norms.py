"""Norms of the homogeneous integral operators on L2(0,1).

Galerkin discretizations at increasing levels are extrapolated.  The kernel
|x - y|^{2 alpha - 1} is compared with its closed-form lower and upper bounds.
"""
from fhtoeplitz import HomogeneousKernel, fh_kernel, k_alpha_bounds, kernel_norm

# Volterra operator: exact norm 2/pi
volterra = kernel_norm(HomogeneousKernel(1, 0, 0), 10)
print(f"Volterra: {volterra.extrapolated:.12f}  (order {volterra.order:.2f})")

print(" alpha    lower      ||K||     upper")
for alpha in (0.05, 0.15, 0.25, 0.35, 0.45):
    lo, hi = k_alpha_bounds(alpha)
    kn = kernel_norm(HomogeneousKernel(1, 1, 2 * alpha - 1), 10)
    print(f" {alpha:.2f}  {lo:9.5f}  {kn.extrapolated:9.5f}  {hi:9.5f}")

# kernel attached to a Fisher-Hartwig factor
print("fh kernel (0.25, 0):", kernel_norm(fh_kernel(0.25, 0), 10).extrapolated)
