"""Root-system A2 combinatorics on the trace-zero plane of R^3.

Points, positive roots (alpha, beta, gamma = alpha + beta), the six Weyl
chambers C_ijk with their shortest reflection-word realizations, projections
onto the closed positive chamber, and reflections.  Everything here is exact
combinatorics plus a little float arithmetic; all values are immutable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

__all__ = [
    "APoint",
    "RootValues",
    "Chamber",
    "Root",
    "CHAMBER_PRECEDENCE",
    "project_plus",
    "projection_permutation",
    "chamber_of",
    "root_values",
    "vandermonde",
    "reflect",
    "apply_word",
    "shortest_realizations",
    "chamber_point",
]

# Construction tolerances: inputs whose coordinate sum is below _RECENTER_TOL
# are re-centered (float noise); larger sums are rejected as misuse.
_RECENTER_TOL = 1e-9
_SUM_TOL = 1e-12


@dataclass(frozen=True)
class APoint:
    """A point of the plane a = {x in R^3 : x1 + x2 + x3 = 0}."""

    x1: float
    x2: float
    x3: float

    def __post_init__(self):
        s = self.x1 + self.x2 + self.x3
        if abs(s) > _RECENTER_TOL:
            raise ValueError(
                f"coordinates must sum to 0 (got sum {s!r}); not a trace-zero point"
            )
        if s != 0.0:
            m = s / 3.0
            object.__setattr__(self, "x1", self.x1 - m)
            object.__setattr__(self, "x2", self.x2 - m)
            object.__setattr__(self, "x3", self.x3 - m)
        assert abs(self.x1 + self.x2 + self.x3) <= _SUM_TOL

    @classmethod
    def of(cls, p) -> "APoint":
        """Coerce a triple / ndarray / APoint to an APoint."""
        if isinstance(p, APoint):
            return p
        a, b, c = (float(v) for v in p)
        return cls(a, b, c)

    def coords(self) -> tuple[float, float, float]:
        return (self.x1, self.x2, self.x3)

    def as_array(self) -> np.ndarray:
        return np.array([self.x1, self.x2, self.x3])

    def norm(self) -> float:
        return math.sqrt(self.x1 * self.x1 + self.x2 * self.x2 + self.x3 * self.x3)

    def dot(self, other: "APoint") -> float:
        return self.x1 * other.x1 + self.x2 * other.x2 + self.x3 * other.x3

    def add(self, other: "APoint", scale: float = 1.0) -> "APoint":
        return APoint(
            self.x1 + scale * other.x1,
            self.x2 + scale * other.x2,
            self.x3 + scale * other.x3,
        )

    def scaled(self, c: float) -> "APoint":
        return APoint(c * self.x1, c * self.x2, c * self.x3)

    def permuted(self, perm: tuple[int, int, int]) -> "APoint":
        """Return the point whose i-th coordinate is x_{perm[i]} (0-based)."""
        c = self.coords()
        return APoint(c[perm[0]], c[perm[1]], c[perm[2]])


@dataclass(frozen=True)
class RootValues:
    """Evaluations (alpha(Z), beta(Z), gamma(Z)); gamma = alpha + beta exactly."""

    alpha: float
    beta: float
    gamma: float

    def __post_init__(self):
        assert self.gamma == self.alpha + self.beta


class Root(Enum):
    """The three positive roots, as vectors of R^3 restricted to the plane."""

    ALPHA = (1.0, -1.0, 0.0)
    BETA = (0.0, 1.0, -1.0)
    GAMMA = (1.0, 0.0, -1.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array(self.value)

    def of(self, Z: APoint) -> float:
        v = self.value
        return v[0] * Z.x1 + v[1] * Z.x2 + v[2] * Z.x3


class Chamber(Enum):
    """Weyl chamber C_ijk = {Y : y_i >= y_j >= y_k}, stored 0-based."""

    C123 = (0, 1, 2)
    C213 = (1, 0, 2)
    C132 = (0, 2, 1)
    C231 = (1, 2, 0)
    C312 = (2, 0, 1)
    C321 = (2, 1, 0)

    @property
    def order(self) -> tuple[int, int, int]:
        """Indices (i, j, k) with y_i >= y_j >= y_k on the chamber."""
        return self.value


# Tie-breaking precedence for wall points (fixed by contract; the estimates
# are wall-continuous so the choice is observationally irrelevant).
CHAMBER_PRECEDENCE = (
    Chamber.C123,
    Chamber.C213,
    Chamber.C132,
    Chamber.C231,
    Chamber.C312,
    Chamber.C321,
)

# Shortest reflection words realizing each chamber: w = s_{r1} o s_{r2} o ...
# (rightmost reflection applied first) maps the closed positive chamber onto
# the chamber.  Hard-coded A2 table; verified against brute-force enumeration
# in the test suite.
_SHORTEST_WORDS: dict[Chamber, frozenset[tuple[Root, ...]]] = {
    Chamber.C123: frozenset({()}),
    Chamber.C213: frozenset({(Root.ALPHA,)}),
    Chamber.C132: frozenset({(Root.BETA,)}),
    Chamber.C321: frozenset({(Root.GAMMA,)}),
    Chamber.C231: frozenset(
        {(Root.ALPHA, Root.BETA), (Root.BETA, Root.GAMMA), (Root.GAMMA, Root.ALPHA)}
    ),
    Chamber.C312: frozenset(
        {(Root.BETA, Root.ALPHA), (Root.GAMMA, Root.BETA), (Root.ALPHA, Root.GAMMA)}
    ),
}


def project_plus(Z) -> APoint:
    """Decreasing rearrangement of Z's coordinates (projection onto closed C+)."""
    Z = APoint.of(Z)
    a, b, c = sorted(Z.coords(), reverse=True)
    return APoint(a, b, c)


def projection_permutation(Z) -> tuple[int, int, int]:
    """A permutation p with Z.permuted(p) = project_plus(Z).

    Ties are resolved stably (lower original index first), which keeps the
    map deterministic on walls.
    """
    Z = APoint.of(Z)
    c = Z.coords()
    return tuple(sorted(range(3), key=lambda i: (-c[i], i)))  # type: ignore[return-value]


def chamber_of(Z, wall_tol: float = 0.0) -> Chamber:
    """Chamber whose defining inequalities hold, ties resolved by precedence.

    A chamber accepts Z when its two inequalities hold with slack >= -wall_tol;
    the first accepting chamber in CHAMBER_PRECEDENCE wins.
    """
    if wall_tol < 0:
        raise ValueError("wall_tol must be >= 0")
    Z = APoint.of(Z)
    c = Z.coords()
    for chamber in CHAMBER_PRECEDENCE:
        i, j, k = chamber.order
        if c[i] >= c[j] - wall_tol and c[j] >= c[k] - wall_tol:
            return chamber
    raise AssertionError("unreachable: some chamber always accepts")


def root_values(Z) -> RootValues:
    """(alpha(Z), beta(Z), gamma(Z)) = (x1-x2, x2-x3, x1-x3), gamma built as alpha+beta."""
    Z = APoint.of(Z)
    a = Z.x1 - Z.x2
    b = Z.x2 - Z.x3
    return RootValues(a, b, a + b)


def vandermonde(lam) -> float:
    """Product alpha(lam) * beta(lam) * gamma(lam) of positive-root values."""
    rv = root_values(lam)
    return rv.alpha * rv.beta * rv.gamma


_REFLECT_PERM = {
    Root.ALPHA: (1, 0, 2),
    Root.BETA: (0, 2, 1),
    Root.GAMMA: (2, 1, 0),
}


def reflect(Z, root: Root) -> APoint:
    """Orthogonal reflection in the wall of a positive root (a coordinate swap)."""
    return APoint.of(Z).permuted(_REFLECT_PERM[root])


def apply_word(Z, word: tuple[Root, ...]) -> APoint:
    """Apply w = s_{word[0]} o ... o s_{word[-1]} (rightmost factor first)."""
    Z = APoint.of(Z)
    for root in reversed(word):
        Z = reflect(Z, root)
    return Z


def shortest_realizations(chamber: Chamber) -> frozenset[tuple[Root, ...]]:
    """All minimal-length reflection words w with w(C+) = chamber."""
    return _SHORTEST_WORDS[chamber]


# Orthonormal basis of the plane; used to parametrize chambers by polar
# coordinates.  e1 is along the alpha-wall normal, e2 completes the frame;
# the open positive chamber is the sector theta in (pi/6, pi/2).
_E1 = np.array([1.0, -1.0, 0.0]) / math.sqrt(2.0)
_E2 = np.array([1.0, 1.0, -2.0]) / math.sqrt(6.0)
SECTOR_LO = math.pi / 6.0
SECTOR_HI = math.pi / 2.0


def chamber_point(chamber: Chamber, radius: float, theta: float) -> APoint:
    """Point of `chamber` at distance `radius`, angle `theta` inside the sector.

    theta is measured inside the positive-chamber sector (SECTOR_LO, SECTOR_HI);
    the point is built in C+ and mapped out by one of the chamber's shortest
    words.
    """
    if not (SECTOR_LO < theta < SECTOR_HI):
        raise ValueError(f"theta {theta} outside open sector ({SECTOR_LO}, {SECTOR_HI})")
    v = radius * (math.cos(theta) * _E1 + math.sin(theta) * _E2)
    base = APoint(v[0], v[1], v[2])
    # deterministic representative word
    word = min(shortest_realizations(chamber), key=lambda w: [r.name for r in w])
    return apply_word(base, word)
