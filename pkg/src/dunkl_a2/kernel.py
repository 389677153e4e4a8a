"""Dunkl kernel E_k(X, lam) on A2 via positive double-integral formulas.

Two equivalent representations are implemented, keyed to the roots alpha and
beta.  Writing nu = (nu1, nu2) for the interlacing variables
lam2 <= nu1 <= lam1, lam3 <= nu2 <= lam2 and W_k for the six-factor
interlacing weight raised to k-1, the alpha form reads

    E_k(X, lam) = C_k(lam) * II { (nu1-lam2)(lam1-nu2) R(+a, nu1-nu2)
                                 + (lam1-nu1)(lam2-nu2) R(-a, nu1-nu2) }
                      (nu1-lam3)(nu2-lam3) e^((x1+x2-2x3)(nu1+nu2)/2) W_k dnu

with a = (x1-x2)/2 and R the rank-1 kernel; the beta form exchanges the
roles of the two simple roots.  The normalization constant is

    C_k(lam) = 3 Gamma(3k) / (Gamma(k)^3 V(lam)^(2k)),   V = alpha*beta*gamma,

fixed by the requirement E_k(0, lam) = 1: at X = 0 the integral reduces to
a Dixon-Anderson interlacing integral with parameters (k, k, k+1), and its
closed-form evaluation forces exactly this constant (checked by the
normalization tests and, independently, by the eigen-equation residuals).

Numerics: each axis carries a Gauss-Jacobi rule with exponents (k-1, k-1)
absorbing the interlacing-weight endpoint factors; the remaining W_k factors
are smooth on the domain and stay in the integrand.  The rank-1 kernel is
unrolled onto its own Gauss-Jacobi rule with exponents (k-1, k), which makes
the whole integrand separable per rank-1 node; the exponential peak
exp(<lam, X+>) is factored out analytically so every floating-point term is
damped below 1.  Node counts on all three rules double until two successive
values agree to rel_tol.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import core_sum
from .geometry import APoint, project_plus, projection_permutation, root_values
from .quadrature import MAX_NODES, NonConvergenceError, gauss_jacobi
from .rank1 import LOG_SCALE_THRESHOLD, as_k

__all__ = [
    "DegenerateSpectralError",
    "KernelValue",
    "K_MAX",
    "wall_tolerance",
    "wk_weight",
    "ek_integral_alpha",
    "ek_integral_beta",
    "ek",
]

K_MAX = 8.0
_WALL_REL = 1e-6


class DegenerateSpectralError(ValueError):
    """Spectral argument too close to a Weyl-chamber wall for the integral formulas."""


@dataclass(frozen=True)
class KernelValue:
    """One kernel evaluation with quadrature diagnostics.

    log_value is always finite; value is None (scaled mode) when the plain
    number would overflow double precision.
    """

    log_value: float
    formula_used: str
    axis_nodes: int
    rank1_nodes: int
    delta: float
    levels: int

    @property
    def value(self) -> float | None:
        if self.log_value > LOG_SCALE_THRESHOLD:
            return None
        return math.exp(self.log_value)

    @property
    def scaled(self) -> bool:
        return self.log_value > LOG_SCALE_THRESHOLD


def wall_tolerance(lam: APoint) -> float:
    """Minimum admissible distance of the spectral point from a chamber wall."""
    return _WALL_REL * lam.norm()


def _check_k(k) -> float:
    kk = as_k(k)
    if kk > K_MAX:
        raise ValueError(f"multiplicity {kk} outside supported range (0, {K_MAX}]")
    return kk


def _spectral_gaps(lam: APoint) -> tuple[float, float, float]:
    """(alpha, beta, gamma) of lam, validated interior to the positive chamber."""
    rv = root_values(lam)
    tol = wall_tolerance(lam)
    if not (rv.alpha > tol and rv.beta > tol):
        raise DegenerateSpectralError(
            f"spectral point {lam.coords()} within {tol!r} of a wall "
            f"(alpha={rv.alpha}, beta={rv.beta}); no limiting formula is implemented"
        )
    return rv.alpha, rv.beta, rv.gamma


def wk_weight(lam, nu1: float, nu2: float, k) -> float:
    """Interlacing weight ((l1-nu1)(l1-nu2)(nu1-l2)(l2-nu2)(nu1-l3)(nu2-l3))^(k-1).

    Requires l2 <= nu1 <= l1 and l3 <= nu2 <= l2; identically 1 at k = 1.
    """
    kk = as_k(k)
    l1, l2, l3 = APoint.of(lam).coords()
    for name, lo, val, hi in (("nu1", l2, nu1, l1), ("nu2", l3, nu2, l2)):
        if not lo <= val <= hi:
            raise ValueError(
                f"interlacing violated: need {lo} <= {name} <= {hi}, got {name}={val}"
            )
    prod = (
        (l1 - nu1) * (l1 - nu2) * (nu1 - l2) * (l2 - nu2) * (nu1 - l3) * (nu2 - l3)
    )
    if prod == 0.0 and kk < 1.0:
        return math.inf
    return prod ** (kk - 1.0)


def _log_prefactor(k: float, al: float, bl: float) -> float:
    gl = al + bl
    return (
        math.log(3.0)
        + math.lgamma(3.0 * k)
        - 3.0 * math.lgamma(k)
        - 2.0 * k * (math.log(al) + math.log(bl) + math.log(gl))
        + (2.0 * k - 1.0) * (math.log(al / 2.0) + math.log(bl / 2.0))
        + math.lgamma(k + 0.5)
        - 0.5 * math.log(math.pi)
        - math.lgamma(k)
    )


def _axis_polys(formula: str, k: float, l1: float, l2: float, l3: float, nu1, nu2):
    """Separable polynomial factors, one pair per rank-1 sign branch."""
    if formula == "alpha":
        f1 = (nu1 - l2) * (nu1 - l3) ** k
        f2 = (l1 - nu2) ** k * (nu2 - l3)
        g1 = (l1 - nu1) * (nu1 - l3) ** k
        g2 = (l2 - nu2) * (l1 - nu2) ** (k - 1.0) * (nu2 - l3)
    else:
        f1 = (l1 - nu1) * (nu1 - l3) ** k
        f2 = (l2 - nu2) * (l1 - nu2) ** k
        g1 = (nu1 - l2) * (l1 - nu1) * (nu1 - l3) ** (k - 1.0)
        g2 = (nu2 - l3) * (l1 - nu2) ** k
    return f1, f2, g1, g2


def _initial_order(q: float) -> int:
    return max(32, min(MAX_NODES, int(math.ceil(2.0 * math.sqrt(1.0 + q)))))


def _eval_formula(X: APoint, lam: APoint, k: float, rel_tol: float, formula: str) -> KernelValue:
    x1, x2, x3 = X.coords()
    l1, l2, l3 = lam.coords()
    al, bl, gl = _spectral_gaps(lam)
    if formula == "alpha":
        a = 0.5 * (x1 - x2)
        s = 0.5 * (x1 + x2 - 2.0 * x3)
    else:
        a = 0.5 * (x2 - x3)
        s = 0.5 * (x2 + x3 - 2.0 * x1)
    peak = lam.dot(project_plus(X))

    n = _initial_order(2.0 * abs(a) * gl)
    m = _initial_order(abs(a) * gl)
    half1, half2 = 0.5 * al, 0.5 * bl
    log_scale = _log_prefactor(k, al, bl)

    def level(nn: int, mm: int) -> float:
        axis = gauss_jacobi(nn, k - 1.0, k - 1.0)
        zr = gauss_jacobi(mm, k - 1.0, k)
        nu1 = l2 + half1 * (axis.nodes + 1.0)
        nu2 = l3 + half2 * (axis.nodes + 1.0)
        f1, f2, g1, g2 = _axis_polys(formula, k, l1, l2, l3, nu1, nu2)
        w = axis.weights
        return core_sum(
            nu1, w * f1, w * g1, nu2, w * f2, w * g2,
            zr.nodes, zr.weights, a, s, l1, l2, l3, peak,
        )

    prev = None
    levels = 0
    while True:
        damped = level(n, m)
        levels += 1
        if prev is not None:
            delta = abs(damped - prev) / max(abs(damped), 1e-300)
            if delta <= rel_tol:
                log_value = log_scale + peak + math.log(damped)
                return KernelValue(log_value, formula, n, m, delta, levels)
            if n >= MAX_NODES and m >= MAX_NODES:
                raise NonConvergenceError(
                    f"kernel integral ({formula} form) not converged at node cap: "
                    f"last relative delta {delta:.3e}",
                    last_value=damped,
                    previous_value=prev,
                )
        prev = damped
        n = min(2 * n, MAX_NODES)
        m = min(2 * m, MAX_NODES)


def _validate_rel_tol(rel_tol: float) -> float:
    if not 1e-14 <= rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in [1e-14, 1e-2], got {rel_tol}")
    return float(rel_tol)


def ek_integral_alpha(X, lam, k, rel_tol: float = 1e-9) -> KernelValue:
    """Kernel by the alpha-root integral form; lam must be interior to C+."""
    kk = _check_k(k)
    return _eval_formula(APoint.of(X), APoint.of(lam), kk, _validate_rel_tol(rel_tol), "alpha")


def ek_integral_beta(X, lam, k, rel_tol: float = 1e-9) -> KernelValue:
    """Kernel by the beta-root integral form (roles of the simple roots exchanged)."""
    kk = _check_k(k)
    return _eval_formula(APoint.of(X), APoint.of(lam), kk, _validate_rel_tol(rel_tol), "beta")


def ek(X, lam, k, rel_tol: float = 1e-9, formula: str = "auto") -> KernelValue:
    """Dunkl kernel E_k(X, lam) for arbitrary argument placement.

    The spectral argument is mapped into the closed positive chamber by a
    Weyl element w (the kernel is W-equivariant: E(wX, w lam) = E(X, lam))
    and the same w is applied to X.  The alpha form is used when the mapped X
    has x1 >= x2, the beta form otherwise, which keeps the dominant
    exponential attached to the positively-weighted branch.  lam = 0 returns
    the exact value 1 (E_k(., 0) is the constant eigenfunction).
    """
    kk = _check_k(k)
    rel_tol = _validate_rel_tol(rel_tol)
    X = APoint.of(X)
    lam = APoint.of(lam)
    if lam.norm() == 0.0:
        return KernelValue(0.0, "constant", 0, 0, 0.0, 0)
    perm = projection_permutation(lam)
    lam_s = lam.permuted(perm)
    X_s = X.permuted(perm)
    if formula == "auto":
        formula = "alpha" if X_s.x1 >= X_s.x2 else "beta"
    if formula not in ("alpha", "beta"):
        raise ValueError(f"formula must be 'alpha', 'beta' or 'auto', got {formula!r}")
    return _eval_formula(X_s, lam_s, kk, rel_tol, formula)
