"""Numpy fallback for the hot double-quadrature accumulation.

See core.py for the contract.  The separable structure of the integrand
(every factor is a product of a nu1-function and a nu2-function once the
rank-1 integral's own nodes are unrolled) turns the naive O(n^2 m) triple
loop into O(n m) matrix work; this module does that with BLAS-backed
matmuls, the Cython twin with explicit loops.
"""

from __future__ import annotations

import numpy as np


def core_sum(nu1, w1f1, w1g1, nu2, w2f2, w2g2, zn, zw, a, s, l1, l2, l3, peak):
    t1 = s + a * zn
    t2 = s - a * zn
    phi1p = np.maximum(t1 * l1, t1 * l2)
    phi2p = np.maximum(t2 * l2, t2 * l3)
    phi1m = np.maximum(t2 * l1, t2 * l2)
    phi2m = np.maximum(t1 * l2, t1 * l3)
    s1p = np.exp(t1[:, None] * nu1[None, :] - phi1p[:, None]) @ w1f1
    s2p = np.exp(t2[:, None] * nu2[None, :] - phi2p[:, None]) @ w2f2
    s1m = np.exp(t2[:, None] * nu1[None, :] - phi1m[:, None]) @ w1g1
    s2m = np.exp(t1[:, None] * nu2[None, :] - phi2m[:, None]) @ w2g2
    total = s1p * s2p * np.exp(phi1p + phi2p - peak) + s1m * s2m * np.exp(phi1m + phi2m - peak)
    return float(np.dot(zw, total))
