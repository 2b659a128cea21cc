"""Norm growth of Toeplitz matrices with Fisher-Hartwig symbols.

Submodules:

- :mod:`.symbols`       Fourier coefficients and pointwise values of symbols
- :mod:`.toeplitz`      implicit Toeplitz operators, FFT matvec, spectral norm
- :mod:`.integral_ops`  limit integral operators and their norms
- :mod:`.asymptotics`   predictions of ``||T_n||`` and convergence studies
- :mod:`.cli`           command-line front end
"""

from .asymptotics import (
    Prediction,
    StudyResult,
    StudyRow,
    VanishingResult,
    constant_profile,
    convergence_study,
    predict_multi,
    predict_powerlike,
    predict_single,
    vanishing_factor_study,
)
from .exceptions import (
    ConvergenceWarning,
    DivisibilityError,
    DomainError,
    ExperimentalOnlyError,
    GammaPoleError,
    SingularPointError,
    TruncationError,
)
from .integral_ops import (
    HomogeneousKernel,
    PiecewiseConstantKernel,
    fh_kernel,
    k_alpha_apply_one,
    k_alpha_bounds,
    kernel_norm,
    widom_norm,
)
from .symbols import (
    FHFactor,
    FHSymbol,
    SmoothPart,
    asymptotic_constants,
    eval_symbol,
    fh_coeff_at,
    gamma_complex,
    log_gamma_ratio,
    loggamma_complex,
    pure_fh_coeff,
    symbol_coeff,
    symbol_coeffs,
)
from .toeplitz import (
    CoeffWindow,
    NormEstimate,
    ToeplitzOperator,
    block_rearrange,
    from_function,
    from_symbol,
    matvec,
    spectral_norm,
    triangle_bound,
)

__version__ = "0.1.0"
