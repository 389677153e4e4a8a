"""Independent correctness oracles and the ratio-sweep machinery.

Two kinds of checks live here:

* the Dunkl-operator eigen-equation, applied to the kernel through centred
  finite differences plus the exact reflection difference quotients, which
  validates the evaluator against the defining property of E_k rather than
  against another integral;
* deterministic (X, lam) grid sweeps per chamber that compare log E_k with
  the log of the sharp estimate and summarize the spread, the statistic
  whose boundedness under radius doubling expresses sharpness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .estimates import ExponentTriple, exponent_triple, sharp_estimate_log
from .geometry import (
    APoint,
    Chamber,
    Root,
    SECTOR_HI,
    SECTOR_LO,
    chamber_of,
    chamber_point,
    reflect,
)
from .kernel import DegenerateSpectralError, ek
from .quadrature import NonConvergenceError
from .rank1 import as_k

__all__ = [
    "EvalReport",
    "SweepSummary",
    "dunkl_apply",
    "eigen_residual",
    "sweep_grid",
    "ratio_sweep",
    "validation_points",
]


@dataclass(frozen=True)
class EvalReport:
    """Kernel vs estimate at one (X, lam, k) point, all in log scale."""

    X: APoint
    lam: APoint
    k: float
    kernel_log: float
    estimate_log: float
    chamber: Chamber
    branch: ExponentTriple
    quad_nodes: int
    quad_delta: float
    t: float = math.nan

    @property
    def log_ratio(self) -> float:
        return self.kernel_log - self.estimate_log


@dataclass
class SweepSummary:
    chamber: Chamber
    radius: float
    grid_n: int
    k: float
    count: int = 0
    failures: list = field(default_factory=list)
    log_ratio_min: float = math.inf
    log_ratio_max: float = -math.inf
    log_ratio_sum: float = 0.0
    branch_counts: dict = field(default_factory=dict)

    @property
    def spread(self) -> float:
        return self.log_ratio_max - self.log_ratio_min

    @property
    def mean(self) -> float:
        return self.log_ratio_sum / self.count if self.count else math.nan

    def record(self, report: EvalReport):
        self.count += 1
        r = report.log_ratio
        self.log_ratio_min = min(self.log_ratio_min, r)
        self.log_ratio_max = max(self.log_ratio_max, r)
        self.log_ratio_sum += r
        key = report.branch.label()
        self.branch_counts[key] = self.branch_counts.get(key, 0) + 1


_ROOTS = (Root.ALPHA, Root.BETA, Root.GAMMA)


def dunkl_apply(f, xi, X, k, h: float | None = None) -> float:
    """Dunkl operator T_xi applied to f at X.

    Centred difference of step h for the directional derivative, exact
    difference quotients for the reflection part:

        T_xi f(X) = d_xi f(X) + k * sum_r <r, xi> (f(X) - f(s_r X)) / <r, X>.

    X must be strictly interior to a chamber (every <r, X> nonzero).
    """
    kk = as_k(k)
    X = APoint.of(X)
    xi = APoint.of(xi)
    if h is None:
        h = 1e-5 * (1.0 + X.norm())
    if not 1e-7 <= h <= 1e-3 * (1.0 + X.norm()):
        raise ValueError(f"finite-difference step {h} outside [1e-7, 1e-3*(1+|X|)]")
    pairings = []
    for root in _ROOTS:
        rx = root.of(X)
        if rx == 0.0:
            raise ValueError(
                f"X {X.coords()} lies on the {root.name} wall; difference quotient singular"
            )
        pairings.append((root, rx))
    deriv = (f(X.add(xi, h)) - f(X.add(xi, -h))) / (2.0 * h)
    fX = f(X)
    refl = 0.0
    for root, rx in pairings:
        refl += root.of(xi) * (fX - f(reflect(X, root))) / rx
    return deriv + kk * refl


def eigen_residual(X, lam, k, xi, h: float | None = None, rel_tol: float = 1e-11) -> float:
    """Normalized eigen-equation residual of the kernel evaluator.

    |T_xi E_k(., lam)(X) - <xi, lam> E_k(X, lam)| / (|<xi, lam> E_k| + 1).
    """
    X = APoint.of(X)
    lam = APoint.of(lam)
    xi = APoint.of(xi)

    def f(P: APoint) -> float:
        value = ek(P, lam, k, rel_tol=rel_tol).value
        if value is None:
            raise NonConvergenceError("kernel in scaled mode; residual undefined in plain scale")
        return value

    applied = dunkl_apply(f, xi, X, k, h)
    target = xi.dot(lam) * f(X)
    return abs(applied - target) / (abs(target) + 1.0)


def sweep_grid(
    chamber: Chamber,
    radius: float,
    grid_n: int,
    margin: float = 0.06,
    angle_offset: float = 0.5,
):
    """Deterministic points of a chamber: log-spaced radial shells x angles.

    Radii halve from `radius` so the root-value products sweep decades; the
    angles stay `margin` radians away from the sector walls, which keeps
    spectral grids clear of the degenerate-wall rejection.  angle_offset
    shifts the angular comb; spatial and spectral grids use different
    offsets so the branch conditions of the deep chambers are sampled away
    from their tie sets.
    """
    if grid_n < 1 or grid_n > 64:
        raise ValueError("grid_n must lie in [1, 64]")
    if radius <= 0 or radius > 50:
        raise ValueError("radius must lie in (0, 50]")
    n_theta = max(2, int(round(math.sqrt(grid_n))))
    n_r = (grid_n + n_theta - 1) // n_theta
    lo = SECTOR_LO + margin
    hi = SECTOR_HI - margin
    points = []
    for i in range(n_r):
        r = radius * 0.5**i
        for j in range(n_theta):
            theta = lo + (hi - lo) * (j + angle_offset) / n_theta
            points.append(chamber_point(chamber, r, theta))
            if len(points) == grid_n:
                return points
    return points


def _sweep_point(args):
    X, lam, kk, rel_tol = args
    try:
        kv = ek(X, lam, kk, rel_tol=rel_tol)
        return EvalReport(
            X=X,
            lam=lam,
            k=kk,
            kernel_log=kv.log_value,
            estimate_log=sharp_estimate_log(X, lam, kk),
            chamber=chamber_of(X),
            branch=exponent_triple(X, lam, kk),
            quad_nodes=kv.axis_nodes,
            quad_delta=kv.delta,
        )
    except (NonConvergenceError, DegenerateSpectralError) as exc:
        return (X.coords(), lam.coords(), repr(exc))


def ratio_sweep(
    chamber: Chamber,
    radius: float,
    grid_n: int,
    k,
    rel_tol: float = 1e-9,
    collect_reports: bool = False,
    jobs: int = 1,
):
    """Compare kernel and sharp estimate over a (X in chamber) x (lam in C+) grid.

    Individual evaluation failures are recorded, not fatal; the sweep raises
    only if more than 1% of the grid points error out.  Row order, and hence
    the summary, is independent of the parallelism degree `jobs`.  Returns a
    SweepSummary (with .reports attached when collect_reports is set).
    """
    kk = as_k(k)
    xs = sweep_grid(chamber, radius, grid_n, angle_offset=0.5)
    lams = sweep_grid(Chamber.C123, radius, grid_n, angle_offset=0.23)
    tasks = [(X, lam, kk, rel_tol) for X in xs for lam in lams]
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_sweep_point, tasks, chunksize=16))
    else:
        results = [_sweep_point(t) for t in tasks]
    summary = SweepSummary(chamber=chamber, radius=radius, grid_n=grid_n, k=kk)
    reports = []
    for res in results:
        if isinstance(res, EvalReport):
            summary.record(res)
            if collect_reports:
                reports.append(res)
        else:
            summary.failures.append(res)
    if len(summary.failures) > 0.01 * len(tasks):
        raise NonConvergenceError(
            f"sweep failed: {len(summary.failures)} of {len(tasks)} points errored"
        )
    if collect_reports:
        summary.reports = reports  # type: ignore[attr-defined]
    return summary


def validation_points():
    """The 30-point eigen-equation validation set: 5 interior points per chamber.

    Deterministic, spans all six chambers, multiplicities cycle over
    {0.5, 1, 2} and probe directions over the three root vectors.
    """
    ks = (0.5, 1.0, 2.0)
    lam = APoint(2.0, 1.0, -3.0)
    out = []
    idx = 0
    for chamber in Chamber:
        for i in range(5):
            theta = SECTOR_LO + (SECTOR_HI - SECTOR_LO) * (i + 1.0) / 6.0
            r = 1.0 + 0.5 * i
            X = chamber_point(chamber, r, theta)
            xi = APoint.of(tuple(_ROOTS[idx % 3].vector))
            out.append((X, lam, ks[idx % 3], xi))
            idx += 1
    return out


# ---------------------------------------------------------------------------
# invariant suites behind the `validate` CLI subcommand: quick, deterministic
# smoke checks of each module's contract (the pytest suite is the deep one)

def _suite_geometry():
    from itertools import permutations

    from .geometry import apply_word, project_plus, root_values, shortest_realizations

    checks = []
    Z = APoint(0.3, -1.1, 0.8)
    images = [Z.permuted(p) for p in permutations((0, 1, 2))]
    want = project_plus(Z).coords()
    ok = all(
        max(abs(a - b) for a, b in zip(project_plus(w).coords(), want)) < 1e-14
        for w in images
    )
    checks.append(("projection is Weyl-invariant", ok, ""))
    rv = root_values(project_plus(Z))
    checks.append(("projected root values nonnegative", min(rv.alpha, rv.beta, rv.gamma) >= 0, ""))
    base = APoint(1.0, 0.2, -1.2)
    ok = all(
        chamber_of(apply_word(base, w)) is c
        for c in Chamber
        for w in shortest_realizations(c)
    )
    checks.append(("shortest words realize their chambers", ok, ""))
    ok = all(
        max(abs(a - b) for a, b in zip(reflect(reflect(Z, r), r).coords(), Z.coords())) < 1e-14
        for r in _ROOTS
    )
    checks.append(("reflections are involutions", ok, ""))
    return checks


def _suite_quadrature():
    import numpy as np

    from .quadrature import adaptive_tensor_integrate, gauss_jacobi

    checks = []
    total = gauss_jacobi(5, 0.0, 0.0).total_weight()
    checks.append(("Legendre mass = 2", abs(total - 2.0) < 1e-13, f"{total!r}"))
    total = gauss_jacobi(16, -0.5, -0.5).total_weight()
    checks.append(("Chebyshev mass = pi", abs(total - math.pi) < 1e-12, f"{total!r}"))
    rule = gauss_jacobi(8, 0.0, 0.0)
    val, _ = adaptive_tensor_integrate(
        lambda u, w: np.exp(u + w), ((0.0, 1.0), (0.0, 1.0)), rule, rule, rel_tol=1e-11
    )
    want = (math.e - 1.0) ** 2
    checks.append(("separable exp tensor", abs(val - want) < 1e-10 * want, f"{val!r}"))
    return checks


def _suite_rank1():
    from .rank1 import bessel_norm, rank1_kernel

    checks = []
    ok = all(abs(bessel_norm(a, 0.0) - 1.0) < 1e-13 for a in (0.0, 0.5, 1.7))
    checks.append(("Bessel normalization at 0", ok, ""))
    worst = 0.0
    for k in (0.5, 1.0, 2.5):
        for c in (-20.0, -1.0, 0.5, 30.0):
            q = rank1_kernel(1.0, c, k).value
            b = rank1_kernel(1.0, c, k, method="bessel").value
            worst = max(worst, abs(q - b) / q)
    checks.append(("representation agreement", worst < 1e-10, f"worst rel {worst:.2e}"))
    checks.append(
        ("positivity", rank1_kernel(3.0, -40.0, 0.3).value > 0.0, "")
    )
    return checks


def _suite_kernel():
    checks = []
    lam = APoint(2.0, 1.0, -3.0)
    worst = max(abs(ek((0.0, 0.0, 0.0), lam, k).value - 1.0) for k in (0.5, 1.0, 2.0))
    checks.append(("normalization E(0, lam) = 1", worst < 1e-9, f"worst {worst:.2e}"))
    from .kernel import ek_integral_alpha, ek_integral_beta

    va = ek_integral_alpha((1.0, 0.0, -1.0), lam, 0.7).value
    vb = ek_integral_beta((1.0, 0.0, -1.0), lam, 0.7).value
    rel = abs(va - vb) / va
    checks.append(("alpha/beta formula agreement", rel < 1e-8, f"rel {rel:.2e}"))
    e1 = ek((1.0, 0.0, -1.0), lam, 1.3).value
    e2 = ek(lam, (1.0, 0.0, -1.0), 1.3).value
    rel = abs(e1 - e2) / e1
    checks.append(("argument symmetry", rel < 1e-8, f"rel {rel:.2e}"))
    return checks


def _suite_estimates():
    from .estimates import sharp_estimate

    checks = []
    want = math.exp(5.0) / 220.0
    got = sharp_estimate((0.0, 1.0, -1.0), APoint(2.0, 1.0, -3.0), 1.0)
    checks.append(("hand value e^5/220", abs(got - want) < 1e-12 * want, f"{got!r}"))
    trip = exponent_triple((-2.0, 3.0, -1.0), APoint(3.0, 1.0, -4.0), 1.0)
    checks.append(("C231 first branch", trip.label() == "k+1|k+1|k", trip.label()))
    return checks


def _suite_heat():
    from .heat import compute_ck, heat_kernel_log

    checks = []
    ck = compute_ck(1.0)
    want = 24.0 * math.pi
    checks.append(("c_1 = 24 pi", abs(ck - want) < 1e-10 * want, f"{ck!r}"))
    p = heat_kernel_log(0.5, (1.0, 0.0, -1.0), (2.0, 1.0, -3.0), 1.0)
    q = heat_kernel_log(0.5, (2.0, 1.0, -3.0), (1.0, 0.0, -1.0), 1.0)
    checks.append(("heat symmetry", abs(p - q) < 1e-7, f"gap {abs(p - q):.2e}"))
    return checks


def _suite_eigen():
    checks = []
    lam = APoint(2.0, 1.0, -3.0)
    for X, xi in (
        ((1.0, 0.0, -1.0), (1.0, -1.0, 0.0)),
        ((0.3, 0.8, -1.1), (0.0, 1.0, -1.0)),
    ):
        res = eigen_residual(X, lam, 1.0, xi)
        checks.append((f"eigen residual at {X}", res <= 1e-4, f"{res:.2e}"))
    return checks


def _suite_sweep():
    checks = []
    s = ratio_sweep(Chamber.C123, 5.0, 6, 1.0)
    checks.append(
        ("C123 sweep finite spread", math.isfinite(s.spread) and not s.failures, f"spread {s.spread:.3f}")
    )
    s = ratio_sweep(Chamber.C231, 5.0, 16, 1.0)
    checks.append(
        ("C231 branch coverage", len(s.branch_counts) == 3, str(s.branch_counts))
    )
    return checks


_SUITES = {
    "geometry": _suite_geometry,
    "quadrature": _suite_quadrature,
    "rank1": _suite_rank1,
    "kernel": _suite_kernel,
    "estimates": _suite_estimates,
    "heat": _suite_heat,
    "eigen": _suite_eigen,
    "sweep": _suite_sweep,
}


def suite_names():
    return tuple(_SUITES)


def run_suites(name: str | None = None):
    """Run one named invariant suite, or all of them; {suite: [(check, ok, detail)]}."""
    if name is not None and name not in _SUITES:
        raise KeyError(f"unknown suite {name!r}")
    selected = (name,) if name else tuple(_SUITES)
    return {s: _SUITES[s]() for s in selected}
