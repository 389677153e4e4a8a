"""Rank-1 (A1) Dunkl kernel, normalized modified Bessel function, sharp estimate.

Two computationally independent representations of the same kernel:

* quadrature: c_k * integral of e^(z*x*v) (1-z)^(k-1) (1+z)^k over (-1, 1),
  evaluated with a Gauss-Jacobi rule whose weight absorbs the endpoint
  singularity for k < 1;
* bessel: J_{k-1/2}(vx) + vx/(2k+1) * J_{k+1/2}(vx), with each normalized
  Bessel factor evaluated from its own symmetric-Jacobi integral.

Both are evaluated in damped form (integrand premultiplied by e^(-|xv|)) so
arguments far beyond the e^709 overflow line stay representable; values with
|xv| > LOG_SCALE_THRESHOLD are reported in log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .quadrature import MAX_NODES, NonConvergenceError, gauss_jacobi

__all__ = [
    "Multiplicity",
    "Rank1Value",
    "LOG_SCALE_THRESHOLD",
    "bessel_norm",
    "bessel_norm_log",
    "rank1_kernel",
    "rank1_kernel_log",
    "rank1_estimate",
    "rank1_estimate_log",
]

LOG_SCALE_THRESHOLD = 700.0


@dataclass(frozen=True)
class Multiplicity:
    """The single Weyl-invariant multiplicity parameter, k > 0."""

    k: float

    def __post_init__(self):
        if not (self.k > 0 and math.isfinite(self.k)):
            raise ValueError(f"multiplicity must be a positive finite real, got {self.k}")


def as_k(k) -> float:
    """Accept a Multiplicity or a bare positive float."""
    kk = k.k if isinstance(k, Multiplicity) else float(k)
    if not (kk > 0 and math.isfinite(kk)):
        raise ValueError(f"multiplicity must be a positive finite real, got {k!r}")
    return kk


class Rank1Value(NamedTuple):
    """Kernel value; `value` is None (scaled=True) when only the log is representable."""

    value: float | None
    log_value: float
    scaled: bool


def _damped_exp_integral(c: float, a: float, b: float, rel_tol: float = 1e-12) -> float:
    """e^(-|c|) * integral of e^(c z) (1-z)^a (1+z)^b dz, by node doubling.

    The damped integrand e^(c z - |c|) lies in (0, 1], so the weighted sums
    are cancellation-free and the doubling test measures true relative error.
    """
    n = max(32, min(MAX_NODES, int(math.ceil(2.0 * math.sqrt(1.0 + abs(c))))))
    prev = None
    while True:
        rule = gauss_jacobi(n, a, b)
        val = float(np.dot(rule.weights, np.exp(c * rule.nodes - abs(c))))
        if prev is not None:
            if abs(val - prev) <= rel_tol * abs(val):
                return val
            if n >= MAX_NODES:
                raise NonConvergenceError(
                    f"rank-1 integral (c={c}, a={a}, b={b}) not converged at cap",
                    last_value=val,
                    previous_value=prev,
                )
        prev = val
        n = min(2 * n, MAX_NODES)


def _log_c_rank1(k: float) -> float:
    # Gamma(k+1/2) / (sqrt(pi) Gamma(k))
    return math.lgamma(k + 0.5) - 0.5 * math.log(math.pi) - math.lgamma(k)


def _log_c_bessel(a: float) -> float:
    # Gamma(a+1) / (sqrt(pi) Gamma(a+1/2)), fixing J_a(0) = 1
    return math.lgamma(a + 1.0) - 0.5 * math.log(math.pi) - math.lgamma(a + 0.5)


def bessel_norm_log(a: float, x: float) -> float:
    """log of the normalized modified Bessel function J_a(x)."""
    if a < 0:
        raise ValueError(f"Bessel index must be >= 0, got {a}")
    x = float(x)
    damped = _damped_exp_integral(x, a - 0.5, a - 0.5)
    return abs(x) + _log_c_bessel(a) + math.log(damped)


def bessel_norm(a: float, x: float) -> float:
    """Normalized modified Bessel J_a(x) = C(a) int e^(xz) (1-z^2)^(a-1/2) dz, J_a(0)=1.

    Even in x and >= 1 for all real x.  Overflows to inf past x ~ 709; use
    bessel_norm_log for large arguments.
    """
    lg = bessel_norm_log(a, x)
    return math.exp(lg) if lg <= LOG_SCALE_THRESHOLD else math.inf


def _rank1_damped(x: float, v: float, k: float, method: str, rel_tol: float = 1e-12) -> float:
    """E_k^rk1(x, v) * e^(-|xv|), always in (0, 1]."""
    c = float(x) * float(v)
    if method == "quadrature":
        return math.exp(_log_c_rank1(k)) * _damped_exp_integral(c, k - 1.0, k, rel_tol)
    if method == "bessel":
        a = k - 0.5
        j1 = math.exp(_log_c_bessel(a)) * _damped_exp_integral(c, a - 0.5, a - 0.5, rel_tol)
        j2 = math.exp(_log_c_bessel(a + 1.0)) * _damped_exp_integral(
            c, a + 0.5, a + 0.5, rel_tol
        )
        out = j1 + c / (2.0 * k + 1.0) * j2
        if out <= 0:
            raise NonConvergenceError(
                f"bessel representation lost all significant digits at xv={c}"
            )
        return out
    raise ValueError(f"unknown method {method!r}; expected 'quadrature' or 'bessel'")


def rank1_kernel_log(x: float, v: float, k, method: str = "quadrature") -> float:
    """log E_k^rk1(x, v); exact for any argument size."""
    kk = as_k(k)
    return abs(float(x) * float(v)) + math.log(_rank1_damped(x, v, kk, method))


def rank1_kernel(x: float, v: float, k, method: str = "quadrature") -> Rank1Value:
    """Rank-1 Dunkl kernel E_k^rk1(x, v); strictly positive, equals 1 at xv = 0.

    For |xv| > LOG_SCALE_THRESHOLD the plain value would overflow; the result
    is then flagged scaled with only log_value set.
    """
    kk = as_k(k)
    c = float(x) * float(v)
    log_value = abs(c) + math.log(_rank1_damped(x, v, kk, method))
    if abs(c) > LOG_SCALE_THRESHOLD:
        return Rank1Value(None, log_value, True)
    return Rank1Value(math.exp(log_value), log_value, False)


def rank1_estimate_log(x: float, v: float, k) -> float:
    """log of e^|xv| / (1+|xv|)^(k+p), p = 0 for xv >= 0 and 1 for xv < 0."""
    kk = as_k(k)
    c = float(x) * float(v)
    p = 0.0 if c >= 0 else 1.0
    return abs(c) - (kk + p) * math.log1p(abs(c))


def rank1_estimate(x: float, v: float, k) -> float:
    """Sharp two-sided envelope of the rank-1 kernel; both sign branches give 1 at xv=0."""
    return math.exp(rank1_estimate_log(x, v, k))
