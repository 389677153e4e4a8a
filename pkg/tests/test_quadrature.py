import math

import numpy as np
import pytest

from dunkl_a2.quadrature import (
    MAX_NODES,
    NonConvergenceError,
    QuadratureEvalError,
    adaptive_tensor_integrate,
    gauss_jacobi,
    gauss_legendre,
    integrate_1d,
)

RNG = np.random.default_rng(7)


def jacobi_moment0(a, b):
    return math.exp(
        (a + b + 1) * math.log(2.0)
        + math.lgamma(a + 1)
        + math.lgamma(b + 1)
        - math.lgamma(a + b + 2)
    )


class TestRuleGeneration:
    def test_midpoint_rule(self):
        r = gauss_jacobi(1, 0.0, 0.0)
        assert r.nodes.tolist() == [0.0]
        assert r.weights.tolist() == [2.0]

    def test_legendre_total_mass(self):
        assert gauss_legendre(5).total_weight() == pytest.approx(2.0, rel=1e-14)

    def test_chebyshev_total_mass_is_pi(self):
        # Beta(1/2, 1/2) = pi, computed independently of the rule
        assert gauss_jacobi(16, -0.5, -0.5).total_weight() == pytest.approx(
            math.pi, rel=1e-12
        )

    @pytest.mark.parametrize("n,a,b", [(0, 0, 0), (513, 0, 0), (8, -1.0, 0.0), (8, 0.0, -1.5)])
    def test_rejects_bad_parameters(self, n, a, b):
        with pytest.raises(ValueError):
            gauss_jacobi(n, a, b)

    @pytest.mark.parametrize(
        "n,a,b",
        [(2, 0.0, 0.0), (9, -0.5, -0.5), (33, 0.3, 1.7), (128, -0.95, 7.0), (512, 1.0, 0.5)],
    )
    def test_structure_invariants(self, n, a, b):
        r = gauss_jacobi(n, a, b)
        assert r.n == n
        assert np.all(np.diff(r.nodes) > 0)
        assert np.all(r.nodes > -1) and np.all(r.nodes < 1)
        assert np.all(r.weights > 0)
        assert r.total_weight() == pytest.approx(jacobi_moment0(a, b), rel=1e-12)

    @pytest.mark.parametrize("n,a,b", [(7, 0.3, 1.7), (32, -0.7, 2.0), (64, 0.0, 0.0)])
    def test_against_scipy(self, n, a, b):
        scipy_special = pytest.importorskip("scipy.special")
        z, w = scipy_special.roots_jacobi(n, a, b)
        r = gauss_jacobi(n, a, b)
        np.testing.assert_allclose(r.nodes, z, atol=1e-13)
        np.testing.assert_allclose(r.weights, w, rtol=1e-11)

    @pytest.mark.parametrize("n,a,b", [(8, 0.3, 1.7), (16, -0.5, -0.5), (32, 2.0, 0.0)])
    def test_polynomial_exactness(self, n, a, b):
        """Random degree <= 2n-1 polynomials against an mpmath oracle."""
        mp = pytest.importorskip("mpmath")
        coeffs = RNG.uniform(-1, 1, size=2 * n) / (np.arange(2 * n) + 1.0)
        poly = np.polynomial.chebyshev.Chebyshev(coeffs)
        r = gauss_jacobi(n, a, b)
        got = float(np.dot(r.weights, poly(r.nodes)))
        with mp.workdps(30):
            want = float(
                mp.quad(
                    lambda z: mp.mpf(float(poly(float(z))))
                    * (1 - z) ** mp.mpf(a)
                    * (1 + z) ** mp.mpf(b),
                    [-1, 0, 1],
                )
            )
        assert got == pytest.approx(want, rel=1e-11)


class TestIntegrate1D:
    def test_constant_on_reference_interval(self):
        assert integrate_1d(lambda u: np.ones_like(u), -1, 1, gauss_legendre(4)) == pytest.approx(2.0)

    def test_interval_scaling(self):
        assert integrate_1d(lambda u: np.ones_like(u), 0, 1, gauss_legendre(4)) == pytest.approx(1.0)

    def test_exact_for_degree_one(self):
        assert integrate_1d(lambda u: u, 0, 2, gauss_legendre(2)) == pytest.approx(2.0)

    def test_implicit_weight(self):
        # residual 1 against weight (1-z)^1 mapped to [0,1]: integral of (1-u) du = 1/2
        rule = gauss_jacobi(4, 1.0, 0.0)
        assert integrate_1d(lambda u: np.ones_like(u), 0, 1, rule) == pytest.approx(0.5)

    def test_scalar_only_callable(self):
        assert integrate_1d(math.exp, 0, 1, gauss_legendre(12)) == pytest.approx(
            math.e - 1.0, rel=1e-13
        )

    def test_nonfinite_error_carries_node(self):
        def f(u):
            return np.where(u > 0.5, np.nan, 1.0)

        with pytest.raises(QuadratureEvalError) as err:
            integrate_1d(f, 0, 1, gauss_legendre(8))
        assert err.value.node > 0.5

    def test_empty_interval_rejected(self):
        with pytest.raises(ValueError):
            integrate_1d(lambda u: u, 1.0, 1.0, gauss_legendre(4))


class TestAdaptiveTensor:
    def box(self):
        return ((0.0, 1.0), (0.0, 1.0))

    def test_constant(self):
        val, diag = adaptive_tensor_integrate(
            lambda u, v: np.ones(np.broadcast(u, v).shape), self.box(),
            gauss_legendre(4), gauss_legendre(4), rel_tol=1e-10,
        )
        assert val == pytest.approx(1.0, rel=1e-13)
        assert diag["levels"] >= 2

    def test_product(self):
        val, _ = adaptive_tensor_integrate(
            lambda u, v: u * v, self.box(), gauss_legendre(4), gauss_legendre(4)
        )
        assert val == pytest.approx(0.25, rel=1e-12)

    def test_separable_exponential(self):
        val, diag = adaptive_tensor_integrate(
            lambda u, v: np.exp(u + v), self.box(), gauss_legendre(4), gauss_legendre(4),
            rel_tol=1e-12,
        )
        assert val == pytest.approx((math.e - 1.0) ** 2, rel=1e-11)
        assert diag["delta"] <= 1e-12 * val

    @pytest.mark.parametrize("rel_tol", [1e-15, 0.5])
    def test_rejects_rel_tol_outside_contract(self, rel_tol):
        with pytest.raises(ValueError):
            adaptive_tensor_integrate(
                lambda u, v: u, self.box(), gauss_legendre(4), gauss_legendre(4), rel_tol=rel_tol
            )

    def test_nonconvergence_carries_last_values(self):
        # a jump integrand stalls the doubling at O(1/n) deltas
        def f(u, v):
            return (u > 1 / math.pi) * 1.0

        with pytest.raises(NonConvergenceError) as err:
            adaptive_tensor_integrate(
                f, self.box(), gauss_legendre(64), gauss_legendre(64), rel_tol=1e-12
            )
        assert err.value.last_value is not None
        assert err.value.previous_value is not None
        assert err.value.last_value == pytest.approx(1 - 1 / math.pi, rel=1e-2)

    def test_monotone_refinement_on_smooth_corpus(self):
        corpus = [
            lambda u, v: np.exp(u + v),
            lambda u, v: 1.0 / (1.0 + u * u + v * v),
            lambda u, v: np.exp(-3.0 * (u - 0.3) ** 2 - 2.0 * (v - 0.6) ** 2),
        ]
        for f in corpus:
            values = []
            for n in (16, 32, 64, 128, 256):
                r = gauss_legendre(n)
                u = 0.5 * (r.nodes + 1.0)
                vals = f(u[:, None], u[None, :])
                values.append(0.25 * float(r.weights @ vals @ r.weights))
            deltas = [abs(values[i + 1] - values[i]) for i in range(len(values) - 1)]
            for earlier, later in zip(deltas, deltas[1:]):
                assert later <= earlier + 1e-16


class TestNodeCap:
    def test_cap_is_512(self):
        assert MAX_NODES == 512
        assert gauss_jacobi(512, 0.0, 0.0).n == 512
