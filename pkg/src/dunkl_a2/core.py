"""Backend selection for the hot double-quadrature kernel.

core_sum(nu1, w1f1, w1g1, nu2, w2f2, w2g2, zn, zw, a, s, l1, l2, l3, peak)
accumulates, over the rank-1 quadrature nodes z_j with weights zw_j,

    sum_j zw_j * [ S1+(j) * S2+(j) + S1-(j) * S2-(j) ] * e^(-peak-compensation)

where S1+/S2+ carry the e^(+a z_j v) branch of the rank-1 integrand and
S1-/S2- the mirrored branch, each axis sum damped by the per-branch exponent
maximum so every floating-point term lies in [0, 1] times the polynomial
weights.  The compiled extension is preferred; set DUNKL_A2_FORCE_NUMPY=1 to
force the numpy fallback (used by the backend-comparison benchmark).
"""

from __future__ import annotations

import os

if os.environ.get("DUNKL_A2_FORCE_NUMPY"):
    from ._core_py import core_sum

    BACKEND = "numpy"
else:
    try:
        from ._core_c import core_sum  # type: ignore[no-redef]

        BACKEND = "compiled"
    except ImportError:
        from ._core_py import core_sum  # type: ignore[no-redef]

        BACKEND = "numpy"

__all__ = ["core_sum", "BACKEND"]
