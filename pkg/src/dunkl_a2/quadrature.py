"""Gauss-Jacobi rules and tensorized adaptive integration.

Nodes come from safeguarded Newton iteration on the orthonormal three-term
recurrence for Jacobi polynomials; weights are Christoffel numbers
1 / sum_j p_j(x_i)^2, which is numerically robust for the singular exponents
(k-1 can sit anywhere in (-1, 7]).  The same rules serve every integral in
the package: the double-integral kernel formulas, the rank-1 kernel, and the
normalization constant of the heat kernel.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

__all__ = [
    "QuadRule",
    "NonConvergenceError",
    "QuadratureEvalError",
    "gauss_jacobi",
    "gauss_legendre",
    "integrate_1d",
    "adaptive_tensor_integrate",
    "MAX_NODES",
]

MAX_NODES = 512
_NEWTON_TOL = 1e-14
_NEWTON_MAXIT = 100


class NonConvergenceError(RuntimeError):
    """Adaptive refinement hit the node cap before meeting the tolerance."""

    def __init__(self, message, last_value=None, previous_value=None):
        super().__init__(message)
        self.last_value = last_value
        self.previous_value = previous_value


class QuadratureEvalError(ValueError):
    """Integrand returned a non-finite value; carries the offending node."""

    def __init__(self, message, node):
        super().__init__(message)
        self.node = node


@dataclass(frozen=True)
class QuadRule:
    """An n-point Gauss-Jacobi rule for the weight (1-z)^a (1+z)^b on (-1, 1)."""

    nodes: np.ndarray
    weights: np.ndarray
    a: float
    b: float
    n: int = field(default=0)

    def __post_init__(self):
        object.__setattr__(self, "n", len(self.nodes))
        self.nodes.setflags(write=False)
        self.weights.setflags(write=False)

    @property
    def jacobi_exponents(self) -> tuple[float, float]:
        return (self.a, self.b)

    def total_weight(self) -> float:
        return float(np.sum(self.weights))


def _moment0(a: float, b: float) -> float:
    """integral of (1-z)^a (1+z)^b over (-1, 1) = 2^(a+b+1) B(a+1, b+1)."""
    return math.exp(
        (a + b + 1.0) * math.log(2.0)
        + math.lgamma(a + 1.0)
        + math.lgamma(b + 1.0)
        - math.lgamma(a + b + 2.0)
    )


def _recurrence(n: int, a: float, b: float):
    """Monic Jacobi recurrence coefficients alpha_0..alpha_{n-1}, beta_1..beta_{n-1}."""
    ks = np.arange(n, dtype=float)
    apb = a + b
    alpha = np.empty(n)
    alpha[0] = (b - a) / (apb + 2.0)
    if n > 1:
        den = (2.0 * ks[1:] + apb) * (2.0 * ks[1:] + apb + 2.0)
        alpha[1:] = (b * b - a * a) / den
    beta = np.empty(n)
    beta[0] = 0.0  # unused slot; mu0 enters through the orthonormal seed
    if n > 1:
        beta[1] = 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) ** 2 * (3.0 + apb))
    if n > 2:
        kk = ks[2:]
        two = 2.0 * kk + apb
        beta[2:] = 4.0 * kk * (kk + a) * (kk + b) * (kk + apb) / (two * two * (two * two - 1.0))
    return alpha, beta


def _eval_orthonormal(x: np.ndarray, n: int, a: float, b: float, mu0: float):
    """Orthonormal Jacobi values p_n(x), derivatives p_n'(x), Christoffel sums.

    Returns (p_n, dp_n, sum_{j<n} p_j^2) evaluated at every entry of x.
    """
    alpha, sqb = _recurrence(n, a, b)
    sqb = np.sqrt(sqb)
    pm1 = np.zeros_like(x)
    p = np.full_like(x, 1.0 / math.sqrt(mu0))
    dpm1 = np.zeros_like(x)
    dp = np.zeros_like(x)
    christoffel = p * p
    for j in range(n):
        num = (x - alpha[j]) * p - (sqb[j] * pm1 if j > 0 else 0.0)
        dnum = p + (x - alpha[j]) * dp - (sqb[j] * dpm1 if j > 0 else 0.0)
        nb = sqb[j + 1] if j + 1 < n else math.sqrt(_beta_next(n, a, b))
        pm1, p = p, num / nb
        dpm1, dp = dp, dnum / nb
        if j + 1 < n:
            christoffel = christoffel + p * p
    return p, dp, christoffel


def _beta_next(n: int, a: float, b: float) -> float:
    apb = a + b
    if n == 1:
        return 4.0 * (1.0 + a) * (1.0 + b) / ((2.0 + apb) ** 2 * (3.0 + apb))
    two = 2.0 * n + apb
    return 4.0 * n * (n + a) * (n + b) * (n + apb) / (two * two * (two * two - 1.0))


@lru_cache(maxsize=512)
def gauss_jacobi(n: int, a: float, b: float) -> QuadRule:
    """n-point Gauss-Jacobi rule, exact for degree <= 2n-1 against (1-z)^a (1+z)^b.

    Requires 1 <= n <= MAX_NODES and a, b > -1.
    """
    if not isinstance(n, (int, np.integer)) or not 1 <= n <= MAX_NODES:
        raise ValueError(f"node count must be an integer in [1, {MAX_NODES}], got {n!r}")
    if a <= -1.0 or b <= -1.0:
        raise ValueError(f"Jacobi exponents must exceed -1, got a={a}, b={b}")
    a, b = float(a), float(b)
    mu0 = _moment0(a, b)
    if n == 1:
        alpha, _ = _recurrence(1, a, b)
        nodes = np.array([alpha[0]])
        weights = np.array([mu0])
        return QuadRule(nodes, weights, a, b)

    # Bracket the n simple roots by sign changes on a Chebyshev-distributed
    # grid.  First-kind points cos(pi (j+1/2)/N) never coincide with Jacobi
    # roots in the ultraspherical a = b = -1/2 case (and generically
    # elsewhere); the endpoints close the outermost brackets.
    grid_size = max(8 * n, 64)
    for _ in range(4):
        theta = (np.arange(grid_size) + 0.5) * math.pi / grid_size
        xg = np.concatenate(([-1.0], np.cos(theta)[::-1], [1.0]))
        pg, _, _ = _eval_orthonormal(xg, n, a, b, mu0)
        sign_flip = np.nonzero(np.sign(pg[:-1]) * np.sign(pg[1:]) < 0)[0]
        if len(sign_flip) == n:
            break
        grid_size *= 4
    else:
        raise RuntimeError(f"failed to bracket {n} Jacobi roots (a={a}, b={b})")
    lo = xg[sign_flip].copy()
    hi = xg[sign_flip + 1].copy()
    sign_lo = np.sign(pg[sign_flip])

    # Safeguarded Newton: fall back to bisection whenever the step leaves the
    # bracket, and shrink the bracket from the evaluated sign.
    x = 0.5 * (lo + hi)
    for _ in range(_NEWTON_MAXIT):
        p, dp, _ = _eval_orthonormal(x, n, a, b, mu0)
        with np.errstate(divide="ignore", invalid="ignore"):
            step = p / dp
        x_new = x - step
        bad = ~((x_new > lo) & (x_new < hi)) | ~np.isfinite(x_new)
        x_new[bad] = 0.5 * (lo[bad] + hi[bad])
        p_new, _, _ = _eval_orthonormal(x_new, n, a, b, mu0)
        same_side = np.sign(p_new) == sign_lo
        lo = np.where(same_side, x_new, lo)
        hi = np.where(same_side, hi, x_new)
        done = np.abs(x_new - x) <= _NEWTON_TOL
        x = x_new
        if np.all(done):
            break
    _, _, christoffel = _eval_orthonormal(x, n, a, b, mu0)
    weights = 1.0 / christoffel

    if not np.all(np.diff(x) > 0):
        raise RuntimeError("Jacobi nodes not strictly increasing")
    if not np.all(weights > 0):
        raise RuntimeError("non-positive Jacobi weight")
    total = float(np.sum(weights))
    if abs(total - mu0) > 1e-12 * mu0:
        raise RuntimeError(
            f"weight sum {total} deviates from moment {mu0} beyond 1e-12 relative"
        )
    return QuadRule(x, weights, a, b)


def gauss_legendre(n: int) -> QuadRule:
    return gauss_jacobi(n, 0.0, 0.0)


def _map_nodes(rule: QuadRule, lo: float, hi: float):
    half = 0.5 * (hi - lo)
    return lo + half * (rule.nodes + 1.0), half ** (rule.a + rule.b + 1.0)


def integrate_1d(f, lo: float, hi: float, rule: QuadRule) -> float:
    """Integrate f(u) * weight(u) over [lo, hi] with the affinely mapped rule.

    The Jacobi weight (1-z)^a (1+z)^b is implicit: f must be the smooth
    residual only.  The affine map contributes ((hi-lo)/2)^(a+b+1).
    """
    if not lo < hi:
        raise ValueError(f"empty interval [{lo}, {hi}]")
    u, scale = _map_nodes(rule, lo, hi)
    try:
        vals = np.asarray(f(u), dtype=float)
        if vals.shape != u.shape:
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([float(f(ui)) for ui in u])
    if not np.all(np.isfinite(vals)):
        bad = u[~np.isfinite(vals)][0]
        raise QuadratureEvalError(f"integrand non-finite at node {bad!r}", node=float(bad))
    return scale * float(np.dot(rule.weights, vals))


def _tensor_value(f, box, rule1: QuadRule, rule2: QuadRule) -> float:
    (lo1, hi1), (lo2, hi2) = box
    u1, s1 = _map_nodes(rule1, lo1, hi1)
    u2, s2 = _map_nodes(rule2, lo2, hi2)
    try:
        vals = np.asarray(f(u1[:, None], u2[None, :]), dtype=float)
        if vals.shape != (rule1.n, rule2.n):
            raise TypeError
    except (TypeError, ValueError):
        vals = np.array([[float(f(a, b)) for b in u2] for a in u1])
    if not np.all(np.isfinite(vals)):
        i, j = np.argwhere(~np.isfinite(vals))[0]
        raise QuadratureEvalError(
            f"integrand non-finite at node ({u1[i]!r}, {u2[j]!r})",
            node=(float(u1[i]), float(u2[j])),
        )
    return s1 * s2 * float(rule1.weights @ vals @ rule2.weights)


def adaptive_tensor_integrate(f, box, rule_axis1: QuadRule, rule_axis2: QuadRule, rel_tol: float = 1e-9):
    """Tensor integration with node doubling on both axes until convergence.

    f(u1, u2) must broadcast over meshgrid-style arrays (a scalar fallback is
    attempted otherwise).  Doubling stops when two successive values agree to
    rel_tol relatively, or raises NonConvergenceError at the MAX_NODES cap.
    Returns (value, diagnostics) with diagnostics = {n1, n2, delta, levels}.
    """
    if not 1e-14 <= rel_tol <= 1e-2:
        raise ValueError(f"rel_tol must lie in [1e-14, 1e-2], got {rel_tol}")
    n1, n2 = rule_axis1.n, rule_axis2.n
    r1, r2 = rule_axis1, rule_axis2
    prev = None
    levels = 0
    while True:
        value = _tensor_value(f, box, r1, r2)
        levels += 1
        if prev is not None:
            delta = abs(value - prev)
            if delta <= rel_tol * max(abs(value), 1e-300):
                return value, {"n1": n1, "n2": n2, "delta": delta, "levels": levels}
            if n1 >= MAX_NODES and n2 >= MAX_NODES:
                raise NonConvergenceError(
                    f"tensor integral not converged at {MAX_NODES} nodes "
                    f"(last delta {delta:.3e}, values {prev!r} -> {value!r})",
                    last_value=value,
                    previous_value=prev,
                )
        prev = value
        n1 = min(2 * n1, MAX_NODES)
        n2 = min(2 * n2, MAX_NODES)
        r1 = gauss_jacobi(n1, rule_axis1.a, rule_axis1.b)
        r2 = gauss_jacobi(n2, rule_axis2.a, rule_axis2.b)
