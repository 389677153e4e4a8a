"""Dunkl heat kernel on A2 and its chamber-wise sharp estimate.

The heat kernel is assembled from the Dunkl kernel through

    p_t(X, Y) = 1 / (2^(3k+1) c_k) * t^(-1-3k)
                * e^((-|X|^2 - |Y|^2) / 4t) * E_k(X, Y / 2t)

on the 2-dimensional trace-zero plane (d = 2, gamma = 3k).  c_k is the
Gaussian mass of the squared weight function,

    c_k = integral over the plane of e^(-|x|^2/2) prod_roots |<r, x>|^(2k) dx,

computed by a polar tensor rule: a generalized Gauss-Laguerre rule in the
radial variable u = r^2/2 and per-sector Gauss-Jacobi rules in the angle
(the angular factor vanishes like distance^(2k) at every wall, so tensor
rules in Cartesian coordinates stall for non-integer k while the sector
rules absorb the endpoint behaviour exactly).

The estimate substitutes the kernel envelope into the relation above:

    p_t = ~ c(k) t^(-1-3k+ka+kb+kg) e^(-|X-Y+|^2/4t)
            / prod (t + r_X r_Y+ / 2)^(k_r)

with the exponent triple of Y's chamber read against spectral X.  An
alternative t-power, t^(-4+ka+kb+kg), is sometimes quoted for this envelope;
it matches the substitution only at k = 1, and both variants are computable
via t_exponent=.
"""

from __future__ import annotations

import math

import numpy as np

from .estimates import exponent_triple
from .geometry import APoint, SECTOR_HI, SECTOR_LO, project_plus, root_values
from .kernel import DegenerateSpectralError, _check_k, ek
from .quadrature import NonConvergenceError, gauss_jacobi
from .rank1 import LOG_SCALE_THRESHOLD

__all__ = [
    "HeatParams",
    "compute_ck",
    "heat_kernel",
    "heat_kernel_log",
    "heat_estimate",
    "heat_estimate_log",
]

_CK_CACHE: dict[float, float] = {}


def _laguerre_rule(n: int, alpha: float):
    """Generalized Gauss-Laguerre nodes/weights for u^alpha e^-u on (0, inf).

    Golub-Welsch on the symmetric tridiagonal recurrence matrix; n stays
    small (the radial integrand is a constant here), so a dense solve is fine.
    """
    i = np.arange(n, dtype=float)
    diag = 2.0 * i + alpha + 1.0
    off = np.sqrt((i[1:]) * (i[1:] + alpha))
    mat = np.diag(diag) + np.diag(off, 1) + np.diag(off, -1)
    vals, vecs = np.linalg.eigh(mat)
    weights = math.gamma(alpha + 1.0) * vecs[0, :] ** 2
    return vals, weights


def _angular_sector_integral(k: float, n: int) -> float:
    """Integral over one chamber sector of prod_roots <r, u(theta)>^(2k).

    The product vanishes to order 2k at both sector walls; a Gauss-Jacobi
    rule with exponents (2k, 2k) absorbs that, leaving a smooth residual.
    """
    lo, hi = SECTOR_LO, SECTOR_HI
    rule = gauss_jacobi(n, 2.0 * k, 2.0 * k)
    half = 0.5 * (hi - lo)
    theta = lo + half * (rule.nodes + 1.0)
    # root values of the unit vector at angle theta inside the C+ sector
    a = math.sqrt(2.0) * np.cos(theta)
    b = math.sqrt(2.0) * np.cos(theta - 2.0 * math.pi / 3.0)
    g = a + b
    resid = (a * b * g / ((theta - lo) * (hi - theta))) ** (2.0 * k)
    return half ** (4.0 * k + 1.0) * float(np.dot(rule.weights, resid))


def compute_ck(k, rel_tol: float = 1e-11) -> float:
    """Macdonald-Mehta-type normalization c_k, cached per multiplicity."""
    kk = _check_k(k)
    if kk in _CK_CACHE:
        return _CK_CACHE[kk]
    # radial part: integral of e^{-r^2/2} r^{6k+1} dr = 2^{3k} * sum of
    # generalized Laguerre weights with alpha = 3k
    _, wr = _laguerre_rule(24, 3.0 * kk)
    radial = 2.0**(3.0 * kk) * float(np.sum(wr))
    prev = None
    n = 48
    while True:
        angular = 6.0 * _angular_sector_integral(kk, n)
        if prev is not None:
            if abs(angular - prev) <= rel_tol * abs(angular):
                break
            if n >= 512:
                raise NonConvergenceError(
                    "angular factor of c_k not converged at node cap",
                    last_value=angular,
                    previous_value=prev,
                )
        prev = angular
        n = min(2 * n, 512)
    value = radial * angular
    _CK_CACHE[kk] = value
    return value


class HeatParams:
    """Time, normalization and homogeneity data for one heat evaluation."""

    def __init__(self, t: float, k):
        kk = _check_k(k)
        if not (t > 0 and math.isfinite(t)):
            raise ValueError(f"time must be positive and finite, got {t}")
        self.t = float(t)
        self.k = kk
        self.c_k = compute_ck(kk)
        self.gamma_sum = 3.0 * kk
        assert self.c_k > 0


def heat_kernel_log(t: float, X, Y, k, rel_tol: float = 1e-9) -> float:
    """log p_t(X, Y); symmetric in (X, Y) and finite whenever Y/2t is admissible."""
    params = HeatParams(t, k)
    X = APoint.of(X)
    Y = APoint.of(Y)
    kk = params.k
    spectral = Y.scaled(1.0 / (2.0 * params.t))
    kv = ek(X, spectral, kk, rel_tol=rel_tol)
    return (
        -(3.0 * kk + 1.0) * math.log(2.0)
        - math.log(params.c_k)
        - (1.0 + 3.0 * kk) * math.log(params.t)
        + (-X.dot(X) - Y.dot(Y)) / (4.0 * params.t)
        + kv.log_value
    )


def heat_kernel(t: float, X, Y, k, rel_tol: float = 1e-9) -> float:
    """Dunkl heat kernel p_t(X, Y); strictly positive."""
    lg = heat_kernel_log(t, X, Y, k, rel_tol)
    return math.exp(lg) if lg <= LOG_SCALE_THRESHOLD else math.inf


def heat_estimate_log(t: float, X, Y, k, t_exponent: str = "derived") -> float:
    """log of the sharp heat-kernel envelope for X in the closed positive chamber.

    t_exponent="derived" uses the power t^(-1-3k+ka+kb+kg) obtained by
    substituting the kernel estimate into the heat relation;
    t_exponent="printed" uses the alternative power t^(-4+ka+kb+kg)
    (the two agree only at k = 1).
    """
    params = HeatParams(t, k)
    kk = params.k
    X = APoint.of(X)
    Y = APoint.of(Y)
    rvx = root_values(X)
    if min(rvx.alpha, rvx.beta) < -1e-12 * max(1.0, X.norm()):
        raise ValueError(
            f"heat_estimate requires X in the closed positive chamber, got {X.coords()}"
        )
    triple = exponent_triple(Y, X, kk)
    yp = project_plus(Y)
    rvy = root_values(yp)
    ksum = triple.k_alpha + triple.k_beta + triple.k_gamma
    t_power = (-1.0 - 3.0 * kk + ksum) if t_exponent == "derived" else (-4.0 + ksum)
    if t_exponent not in ("derived", "printed"):
        raise ValueError(f"t_exponent must be 'derived' or 'printed', got {t_exponent!r}")
    d = X.add(yp, -1.0)
    return (
        -(3.0 * kk + 1.0) * math.log(2.0)
        - math.log(params.c_k)
        + t_power * math.log(params.t)
        - d.dot(d) / (4.0 * params.t)
        - triple.k_alpha * math.log(params.t + 0.5 * rvx.alpha * rvy.alpha)
        - triple.k_beta * math.log(params.t + 0.5 * rvx.beta * rvy.beta)
        - triple.k_gamma * math.log(params.t + 0.5 * rvx.gamma * rvy.gamma)
    )


def heat_estimate(t: float, X, Y, k, t_exponent: str = "derived") -> float:
    lg = heat_estimate_log(t, X, Y, k, t_exponent)
    return math.exp(lg) if lg <= LOG_SCALE_THRESHOLD else math.inf
