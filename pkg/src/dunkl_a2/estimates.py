"""Chamber-wise sharp estimates of the A2 Dunkl kernel.

The envelope has the shape

    e^<lam, X+> / [(1 + al*a+)^ka (1 + bl*b+)^kb (1 + gl*g+)^kg]

where (al, bl, gl) are the positive-root values of the spectral point,
(a+, b+, g+) those of the projection X+, and the exponent triple
(ka, kb, kg) depends on the chamber of X.  For the two "deep" chambers C231
and C312 the triple additionally splits three ways on the orderings of
(al, bl) and of (al*a+, bl*b+); ties take the first branch in listing
order.  Each exponent is either k or k+1, and the k+1 positions match the
reflections appearing in a shortest word realizing the chamber.

All evaluation happens in log space; exponentiation is on request only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .geometry import (
    APoint,
    Chamber,
    Root,
    chamber_of,
    project_plus,
    root_values,
    shortest_realizations,
)
from .kernel import DegenerateSpectralError, wall_tolerance
from .rank1 import as_k

__all__ = [
    "ExponentTriple",
    "exponent_triple",
    "sharp_estimate",
    "sharp_estimate_log",
    "conjecture_estimate",
    "conjecture_estimate_log",
]


@dataclass(frozen=True)
class ExponentTriple:
    """Denominator exponents (k_alpha, k_beta, k_gamma), each base_k or base_k + 1."""

    k_alpha: float
    k_beta: float
    k_gamma: float
    base_k: float

    def __post_init__(self):
        allowed = (self.base_k, self.base_k + 1.0)
        if any(v not in allowed for v in self):
            raise ValueError(f"exponents {tuple(self)} must each be k or k+1 for k={self.base_k}")
        if sum(1 for v in self if v == self.base_k + 1.0) > 2:
            raise ValueError("at most two exponents may be raised to k+1")

    def __iter__(self):
        return iter((self.k_alpha, self.k_beta, self.k_gamma))

    def bumped_roots(self) -> frozenset[Root]:
        return frozenset(
            root
            for root, v in zip((Root.ALPHA, Root.BETA, Root.GAMMA), self)
            if v > self.base_k
        )

    def label(self) -> str:
        return "|".join("k+1" if v > self.base_k else "k" for v in self)


def _check_spectral_interior(lam: APoint) -> None:
    rv = root_values(lam)
    tol = wall_tolerance(lam)
    if not (rv.alpha > tol and rv.beta > tol):
        raise DegenerateSpectralError(
            f"estimate requires lam interior to C+; got root values "
            f"({rv.alpha}, {rv.beta}) at wall tolerance {tol!r}"
        )


def exponent_triple(X, lam, k) -> ExponentTriple:
    """Exponent triple of the sharp estimate for X's chamber and spectral lam in C+.

    The C231 three-way split keys on al <= bl, the C312 split on bl <= al;
    the remaining two branches of each compare al*a+ against bl*b+.
    """
    kk = as_k(k)
    X = APoint.of(X)
    lam = APoint.of(lam)
    _check_spectral_interior(lam)
    chamber = chamber_of(X)
    k1 = kk + 1.0
    if chamber is Chamber.C123:
        return ExponentTriple(kk, kk, kk, kk)
    if chamber is Chamber.C213:
        return ExponentTriple(k1, kk, kk, kk)
    if chamber is Chamber.C132:
        return ExponentTriple(kk, k1, kk, kk)
    if chamber is Chamber.C321:
        return ExponentTriple(kk, kk, k1, kk)
    rl = root_values(lam)
    rx = root_values(project_plus(X))
    first_key = rl.alpha <= rl.beta if chamber is Chamber.C231 else rl.beta <= rl.alpha
    if first_key:
        return ExponentTriple(k1, k1, kk, kk)
    if rl.alpha * rx.alpha >= rl.beta * rx.beta:
        return ExponentTriple(kk, k1, k1, kk)
    return ExponentTriple(k1, kk, k1, kk)


def _log_envelope(X: APoint, lam: APoint, triple) -> float:
    xp = project_plus(X)
    rl = root_values(lam)
    rx = root_values(xp)
    ka, kb, kg = triple
    return (
        lam.dot(xp)
        - ka * math.log1p(rl.alpha * rx.alpha)
        - kb * math.log1p(rl.beta * rx.beta)
        - kg * math.log1p(rl.gamma * rx.gamma)
    )


def sharp_estimate_log(X, lam, k) -> float:
    """log of the sharp estimate; finite for every (X, lam interior, k)."""
    X = APoint.of(X)
    lam = APoint.of(lam)
    return _log_envelope(X, lam, exponent_triple(X, lam, k))


def sharp_estimate(X, lam, k) -> float:
    """Sharp two-sided envelope of E_k(X, lam); overflows to inf for huge <lam, X+>."""
    return math.exp(sharp_estimate_log(X, lam, k))


def conjecture_estimate_log(X, lam, k, word: tuple[Root, ...]) -> float:
    """log of the candidate envelope attached to one shortest realization word.

    Exponent k+1 on exactly the roots whose reflections occur in `word`,
    which must realize X's chamber.  Exposed for exploration; the acceptance
    suite relies on sharp_estimate only.
    """
    kk = as_k(k)
    X = APoint.of(X)
    lam = APoint.of(lam)
    _check_spectral_interior(lam)
    word = tuple(word)
    cham = chamber_of(X)
    if word not in shortest_realizations(cham):
        raise ValueError(
            f"word {tuple(r.name for r in word)} is not a shortest realization "
            f"of chamber {cham.name}"
        )
    bumped = frozenset(word)
    triple = tuple(kk + 1.0 if root in bumped else kk for root in (Root.ALPHA, Root.BETA, Root.GAMMA))
    return _log_envelope(X, lam, triple)


def conjecture_estimate(X, lam, k, word: tuple[Root, ...]) -> float:
    return math.exp(conjecture_estimate_log(X, lam, k, word))
