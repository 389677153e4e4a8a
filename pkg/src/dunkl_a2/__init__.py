"""Dunkl kernel and heat kernel numerics for the root system A2.

Evaluation of the Dunkl kernel E_k(X, lam) through positive double-integral
formulas in terms of the rank-1 kernel, chamber-wise sharp estimates of the
kernel and of the associated heat kernel, and the verification machinery
(eigen-equation residuals, ratio sweeps, golden values) that checks them.
"""

from .core import BACKEND as _BACKEND
from .estimates import (
    ExponentTriple,
    conjecture_estimate,
    exponent_triple,
    sharp_estimate,
    sharp_estimate_log,
)
from .geometry import (
    APoint,
    Chamber,
    Root,
    RootValues,
    apply_word,
    chamber_of,
    chamber_point,
    project_plus,
    reflect,
    root_values,
    shortest_realizations,
    vandermonde,
)
from .heat import compute_ck, heat_estimate, heat_estimate_log, heat_kernel, heat_kernel_log
from .kernel import (
    DegenerateSpectralError,
    KernelValue,
    ek,
    ek_integral_alpha,
    ek_integral_beta,
    wk_weight,
)
from .quadrature import (
    NonConvergenceError,
    QuadRule,
    adaptive_tensor_integrate,
    gauss_jacobi,
    gauss_legendre,
    integrate_1d,
)
from .rank1 import (
    Multiplicity,
    Rank1Value,
    bessel_norm,
    bessel_norm_log,
    rank1_estimate,
    rank1_estimate_log,
    rank1_kernel,
    rank1_kernel_log,
)
from .validation import EvalReport, dunkl_apply, eigen_residual, ratio_sweep

__version__ = "0.1.0"


def backend_name() -> str:
    """Which double-quadrature core is active: 'compiled' or 'numpy'."""
    return _BACKEND
