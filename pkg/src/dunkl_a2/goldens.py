"""Golden values and the brute-force oracles that regenerate them.

Every derived expected value in the test suite traces back to one of the
oracles here, none of which share code with the production evaluators:

* oracle_ek: plain tensor quadrature of the double-integral formula, the
  integrand evaluated literally point by point (no separable
  reorganization), rank-1 factors from their own damped rule, node counts
  fixed at a multiple of what the adaptive evaluator converged with;
* oracle_rank1 / oracle_bessel: mpmath high-precision evaluation (tanh-sinh
  quadrature of the defining integral, resp. the scaled Bessel function);
* oracle_ck: the polar-sector quadrature rerun at doubled node counts;
* closed forms for the trivial quadrature cases.

Golden files are CSV with a fixed header per family; the `golden` CLI
subcommand rewrites them into a target directory and can check the packaged
copies.  DUNKL_GOLDEN_DIR overrides the packaged location.
"""

from __future__ import annotations

import csv
import math
import os
from pathlib import Path

import numpy as np

from .geometry import APoint, project_plus, projection_permutation
from .heat import _angular_sector_integral, _laguerre_rule
from .kernel import _log_prefactor, ek
from .quadrature import adaptive_tensor_integrate, gauss_jacobi

__all__ = [
    "golden_dir",
    "KERNEL_CASES",
    "RANK1_CASES",
    "BESSEL_CASES",
    "CK_CASES",
    "QUAD_CASES",
    "oracle_ek",
    "oracle_rank1",
    "oracle_bessel",
    "oracle_ck",
    "regenerate",
    "load_golden",
    "compare_to_stored",
]

GOLDEN_REL_TOL = 1e-8
_ORACLE_FACTOR = 4

# (X, lam, k); all spectral points interior to C+
KERNEL_CASES = (
    ((1.0, 0.0, -1.0), (2.0, 1.0, -3.0), 1.0),
    ((1.0, 0.0, -1.0), (2.0, 1.0, -3.0), 0.5),
    ((-1.0, 0.0, 1.0), (2.0, 1.0, -3.0), 1.0),
    ((0.2, 0.5, -0.7), (1.5, 0.4, -1.9), 2.0),
    ((-2.0, 3.0, -1.0), (3.0, 1.0, -4.0), 0.7),
    ((0.0, 0.0, 0.0), (2.0, 1.0, -3.0), 0.7),
)

# (x, v, k)
RANK1_CASES = (
    (1.0, 2.0, 1.0),  # closed form (3 e^2 + e^-2) / 8
    (1.0, 2.0, 0.5),
    (0.3, -4.0, 1.0),
    (2.0, 5.0, 1.7),
    (-0.9, 7.0, 2.5),
)

# (a, x)
BESSEL_CASES = (
    (0.5, 2.0),  # sinh(2) / 2
    (1.2, 3.7),
    (0.0, 1.0),
    (2.5, -6.0),
)

CK_CASES = (0.5, 1.0, 2.0)

# label -> closed-form value
QUAD_CASES = {
    "jacobi_mass_n16_a-0.5_b-0.5": math.pi,
    "tensor_product_uv_unit_box": 0.25,
    "tensor_separable_exp_unit_box": (math.e - 1.0) ** 2,
}


def golden_dir() -> Path:
    env = os.environ.get("DUNKL_GOLDEN_DIR")
    if env:
        return Path(env)
    return Path(__file__).parent / "golden"


def oracle_ek(X, lam, k, rel_tol: float = 1e-9) -> tuple[float, int]:
    """Brute-force kernel value by plain tensor quadrature at inflated node counts.

    Runs the adaptive evaluator once only to size the rules, then sums the
    alpha-form integrand literally over the tensor grid.  Returns
    (log_value, axis node count).
    """
    X = APoint.of(X)
    lam = APoint.of(lam)
    perm = projection_permutation(lam)
    lam = lam.permuted(perm)
    X = X.permuted(perm)
    kv = ek(X, lam, k, rel_tol=rel_tol, formula="alpha")
    if kv.formula_used == "constant":
        return 0.0, 0
    n = min(512, _ORACLE_FACTOR * kv.axis_nodes)
    m = min(512, _ORACLE_FACTOR * kv.rank1_nodes)

    l1, l2, l3 = lam.coords()
    x1, x2, x3 = X.coords()
    al, bl = l1 - l2, l2 - l3
    a = 0.5 * (x1 - x2)
    s = 0.5 * (x1 + x2 - 2.0 * x3)
    peak = lam.dot(project_plus(X))
    axis = gauss_jacobi(n, k - 1.0, k - 1.0)
    zr = gauss_jacobi(m, k - 1.0, k)
    nu1 = l2 + 0.5 * al * (axis.nodes + 1.0)
    nu2 = l3 + 0.5 * bl * (axis.nodes + 1.0)

    # rank-1 values on the full (nu1, nu2) matrix from the z-rule, damped
    v = nu1[:, None] - nu2[None, :]
    expo = v[:, :, None] * (a * zr.nodes)[None, None, :]
    damp = np.abs(a) * v
    r_plus = np.exp(expo - damp[:, :, None]) @ zr.weights
    r_minus = np.exp(-expo - damp[:, :, None]) @ zr.weights

    braces = (
        (nu1 - l2)[:, None] * (l1 - nu2)[None, :] * r_plus
        + (l1 - nu1)[:, None] * (l2 - nu2)[None, :] * r_minus
    )
    resid = (
        (nu1 - l3)[:, None]
        * (nu2 - l3)[None, :]
        * (l1 - nu2)[None, :] ** (k - 1.0)
        * (nu1 - l3)[:, None] ** (k - 1.0)
    )
    expfac = np.exp(s * (nu1[:, None] + nu2[None, :]) + damp - peak)
    total = float(axis.weights @ (braces * resid * expfac) @ axis.weights)
    log_value = _log_prefactor(k, al, bl) + peak + math.log(total)
    return log_value, n


def oracle_rank1(x: float, v: float, k: float) -> float:
    """Rank-1 kernel via mpmath tanh-sinh quadrature of the defining integral."""
    import mpmath as mp

    with mp.workdps(30):
        c = mp.mpf(x) * mp.mpf(v)
        kk = mp.mpf(k)
        pref = mp.gamma(kk + mp.mpf(1) / 2) / (mp.sqrt(mp.pi) * mp.gamma(kk))
        val = pref * mp.quad(
            lambda z: mp.e ** (c * z) * (1 - z) ** (kk - 1) * (1 + z) ** kk, [-1, 1]
        )
        return float(val)


def oracle_bessel(a: float, x: float) -> float:
    """Normalized modified Bessel via mpmath: Gamma(a+1) (2/x)^a I_a(x)."""
    import mpmath as mp

    with mp.workdps(30):
        if x == 0:
            return 1.0
        xa = mp.mpf(abs(x))
        val = mp.gamma(a + 1) * (2 / xa) ** mp.mpf(a) * mp.besseli(a, xa)
        return float(val)


def oracle_ck(k: float) -> float:
    """c_k by the polar-sector scheme at doubled node counts."""
    _, wr = _laguerre_rule(48, 3.0 * k)
    radial = 2.0 ** (3.0 * k) * float(np.sum(wr))
    return radial * 6.0 * _angular_sector_integral(k, 384)


def _quad_case_value(label: str) -> float:
    if label == "jacobi_mass_n16_a-0.5_b-0.5":
        return gauss_jacobi(16, -0.5, -0.5).total_weight()
    if label == "tensor_product_uv_unit_box":
        rule = gauss_jacobi(8, 0.0, 0.0)
        val, _ = adaptive_tensor_integrate(
            lambda u, w: u * w, ((0.0, 1.0), (0.0, 1.0)), rule, rule, rel_tol=1e-12
        )
        return val
    if label == "tensor_separable_exp_unit_box":
        rule = gauss_jacobi(8, 0.0, 0.0)
        val, _ = adaptive_tensor_integrate(
            lambda u, w: np.exp(u + w), ((0.0, 1.0), (0.0, 1.0)), rule, rule, rel_tol=1e-12
        )
        return val
    raise KeyError(label)


def _fmt(x: float) -> str:
    return format(x, ".17g")


def _point_str(p) -> str:
    return ",".join(_fmt(v) for v in APoint.of(p).coords())


def regenerate(out_dir: Path | str) -> dict[str, dict[str, float]]:
    """Recompute every golden value from its oracle and write the CSV files."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    values: dict[str, dict[str, float]] = {}

    kern: dict[str, float] = {}
    with open(out / "kernel.csv", "w", newline="") as fh:
        fh.write("# golden Dunkl-kernel log-values from the plain-tensor oracle\n")
        w = csv.writer(fh)
        w.writerow(["X", "lambda", "k", "value", "rel_tol", "oracle_nodes"])
        for X, lam, k in KERNEL_CASES:
            log_value, nodes = oracle_ek(X, lam, k)
            key = f"{_point_str(X)}|{_point_str(lam)}|{_fmt(k)}"
            kern[key] = log_value
            w.writerow(
                [_point_str(X), _point_str(lam), _fmt(k), _fmt(log_value), _fmt(GOLDEN_REL_TOL), nodes]
            )
    values["kernel"] = kern

    r1: dict[str, float] = {}
    with open(out / "rank1.csv", "w", newline="") as fh:
        fh.write("# golden rank-1 kernel values from the mpmath tanh-sinh oracle\n")
        w = csv.writer(fh)
        w.writerow(["x", "v", "k", "value", "rel_tol", "oracle_nodes"])
        for x, v, k in RANK1_CASES:
            val = oracle_rank1(x, v, k)
            r1[f"{_fmt(x)}|{_fmt(v)}|{_fmt(k)}"] = val
            w.writerow([_fmt(x), _fmt(v), _fmt(k), _fmt(val), _fmt(GOLDEN_REL_TOL), "mpmath30"])
    values["rank1"] = r1

    bs: dict[str, float] = {}
    with open(out / "bessel.csv", "w", newline="") as fh:
        fh.write("# golden normalized-Bessel values from mpmath besseli\n")
        w = csv.writer(fh)
        w.writerow(["a", "x", "value", "rel_tol", "oracle_nodes"])
        for a, x in BESSEL_CASES:
            val = oracle_bessel(a, x)
            bs[f"{_fmt(a)}|{_fmt(x)}"] = val
            w.writerow([_fmt(a), _fmt(x), _fmt(val), _fmt(GOLDEN_REL_TOL), "mpmath30"])
    values["bessel"] = bs

    ck: dict[str, float] = {}
    with open(out / "heat_ck.csv", "w", newline="") as fh:
        fh.write("# golden heat-normalization constants from the node-doubled polar oracle\n")
        w = csv.writer(fh)
        w.writerow(["k", "value", "rel_tol", "oracle_nodes"])
        for k in CK_CASES:
            val = oracle_ck(k)
            ck[_fmt(k)] = val
            w.writerow([_fmt(k), _fmt(val), _fmt(GOLDEN_REL_TOL), "48x384"])
    values["heat_ck"] = ck

    qd: dict[str, float] = {}
    with open(out / "quadrature.csv", "w", newline="") as fh:
        fh.write("# golden quadrature cases against closed forms\n")
        w = csv.writer(fh)
        w.writerow(["case", "value", "rel_tol", "oracle_nodes"])
        for label in QUAD_CASES:
            val = _quad_case_value(label)
            qd[label] = val
            w.writerow([label, _fmt(val), _fmt(GOLDEN_REL_TOL), "closed-form"])
    values["quadrature"] = qd
    return values


def load_golden(directory: Path | str | None = None) -> dict[str, dict[str, float]]:
    """Read the stored golden files into {family: {key: value}}."""
    directory = Path(directory) if directory is not None else golden_dir()
    values: dict[str, dict[str, float]] = {}
    specs = {
        "kernel": ("kernel.csv", lambda r: f"{r['X']}|{r['lambda']}|{r['k']}"),
        "rank1": ("rank1.csv", lambda r: f"{r['x']}|{r['v']}|{r['k']}"),
        "bessel": ("bessel.csv", lambda r: f"{r['a']}|{r['x']}"),
        "heat_ck": ("heat_ck.csv", lambda r: r["k"]),
        "quadrature": ("quadrature.csv", lambda r: r["case"]),
    }
    for family, (fname, keyfn) in specs.items():
        path = directory / fname
        fam: dict[str, float] = {}
        with open(path, newline="") as fh:
            rows = [line for line in fh if not line.startswith("#")]
        for row in csv.DictReader(rows):
            fam[keyfn(row)] = float(row["value"])
        values[family] = fam
    return values


def compare_to_stored(generated, stored, rel_tol: float = GOLDEN_REL_TOL):
    """Mismatches between two golden dictionaries, as (family, key, got, want).

    Tolerance floor of 1.0: kernel values are stored in log scale, where an
    absolute deviation of rel_tol means a relative deviation of the kernel
    itself by the same amount.
    """
    bad = []
    for family, fam in stored.items():
        for key, want in fam.items():
            got = generated.get(family, {}).get(key)
            if got is None or abs(got - want) > rel_tol * max(abs(want), 1.0):
                bad.append((family, key, got, want))
    return bad
