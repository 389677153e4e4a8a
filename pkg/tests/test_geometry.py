import itertools

import numpy as np
import pytest

from dunkl_a2.geometry import (
    APoint,
    CHAMBER_PRECEDENCE,
    Chamber,
    Root,
    apply_word,
    chamber_of,
    chamber_point,
    project_plus,
    projection_permutation,
    reflect,
    root_values,
    shortest_realizations,
    vandermonde,
)

RNG = np.random.default_rng(20240811)


def random_points(n):
    for _ in range(n):
        u, v = RNG.normal(size=2)
        yield APoint(u, v, -(u + v))


class TestAPoint:
    def test_recenters_float_noise(self):
        p = APoint(1.0, 0.5, -1.5 + 3e-10)
        assert abs(p.x1 + p.x2 + p.x3) <= 1e-12

    def test_rejects_real_misuse(self):
        with pytest.raises(ValueError, match="trace-zero"):
            APoint(1.0, 1.0, 1.0)

    def test_of_roundtrip(self):
        p = APoint.of((0.25, -1.0, 0.75))
        assert p.coords() == (0.25, -1.0, 0.75)
        assert APoint.of(p) is p


class TestProjection:
    def test_examples(self):
        assert project_plus((0, 1, -1)).coords() == (1.0, 0.0, -1.0)
        assert project_plus((1, 0, -1)).coords() == (1.0, 0.0, -1.0)
        # x2 >= x1 >= x3 swaps the first two coordinates
        assert project_plus((0.2, 0.5, -0.7)).coords() == (0.5, 0.2, -0.7)

    def test_weyl_invariance(self):
        for Z in random_points(10):
            want = project_plus(Z).coords()
            for perm in itertools.permutations((0, 1, 2)):
                got = project_plus(Z.permuted(perm)).coords()
                # recentering of the permuted sum may shift by an ulp
                assert got == pytest.approx(want, abs=1e-14)

    def test_projected_root_values_nonnegative(self):
        for Z in random_points(10):
            rv = root_values(project_plus(Z))
            assert min(rv.alpha, rv.beta, rv.gamma) >= 0

    def test_projection_permutation_consistent(self):
        for Z in random_points(10):
            perm = projection_permutation(Z)
            assert Z.permuted(perm).coords() == pytest.approx(
                project_plus(Z).coords(), abs=1e-14
            )


class TestRootValues:
    @pytest.mark.parametrize(
        "Z,want",
        [((1, 0, -1), (1, 1, 2)), ((0, 0, 0), (0, 0, 0)), ((2, 1, -3), (1, 4, 5))],
    )
    def test_examples(self, Z, want):
        rv = root_values(Z)
        assert (rv.alpha, rv.beta, rv.gamma) == want

    def test_gamma_is_alpha_plus_beta_exactly(self):
        for Z in random_points(20):
            rv = root_values(Z)
            assert rv.gamma == rv.alpha + rv.beta


class TestChamberOf:
    @pytest.mark.parametrize(
        "Z,want",
        [
            ((1, 0, -1), Chamber.C123),
            ((0, 1, -1), Chamber.C213),
            ((-1, 0, 1), Chamber.C321),
            ((1, -1, 0), Chamber.C132),
            ((-1, 1, 0), Chamber.C231),
            ((0, -1, 1), Chamber.C312),
        ],
    )
    def test_examples(self, Z, want):
        assert chamber_of(Z) is want

    def test_wall_ties_use_precedence(self):
        # x1 = x3 wall between C213 and C231: C213 wins by precedence
        assert chamber_of((-1.0, 2.0, -1.0)) is Chamber.C213
        # widen the tolerance: a point just inside C213 is absorbed into C123
        assert chamber_of((0.5 - 1e-8, 0.5, -1.0 + 1e-8)) is Chamber.C213
        assert chamber_of((0.5 - 1e-8, 0.5, -1.0 + 1e-8), wall_tol=1e-6) is Chamber.C123

    def test_rejects_negative_tolerance(self):
        with pytest.raises(ValueError):
            chamber_of((1, 0, -1), wall_tol=-1.0)

    def test_precedence_covers_all_chambers(self):
        assert set(CHAMBER_PRECEDENCE) == set(Chamber)


class TestReflections:
    def test_examples(self):
        assert reflect((1, 0, -1), Root.ALPHA).coords() == (0.0, 1.0, -1.0)
        assert reflect((1, 0, -1), Root.GAMMA).coords() == (-1.0, 0.0, 1.0)

    def test_involution(self):
        for Z in random_points(6):
            for root in Root:
                got = reflect(reflect(Z, root), root).coords()
                assert got == pytest.approx(Z.coords(), abs=1e-14)

    def test_reflection_negates_root_value(self):
        for Z in random_points(6):
            for root in Root:
                assert root.of(reflect(Z, root)) == pytest.approx(-root.of(Z), abs=1e-12)


class TestVandermonde:
    def test_examples(self):
        assert vandermonde((1, 0, -1)) == pytest.approx(2.0)
        assert vandermonde((2, 0, -2)) == pytest.approx(16.0)
        assert vandermonde((1, 1, -2)) == 0.0


def brute_force_shortest_words(chamber):
    """Oracle: enumerate all reflection words up to length 3."""
    base = APoint(1.0, 0.0, -1.0)
    found, best = set(), None
    for length in range(4):
        for word in itertools.product(tuple(Root), repeat=length):
            if chamber_of(apply_word(base, word)) is chamber:
                if best is None:
                    best = length
                if length == best:
                    found.add(word)
        if best is not None:
            break
    return frozenset(found)


class TestShortestRealizations:
    def test_hardcoded_examples(self):
        assert shortest_realizations(Chamber.C123) == frozenset({()})
        assert shortest_realizations(Chamber.C213) == frozenset({(Root.ALPHA,)})
        assert shortest_realizations(Chamber.C231) == frozenset(
            {(Root.ALPHA, Root.BETA), (Root.BETA, Root.GAMMA), (Root.GAMMA, Root.ALPHA)}
        )

    @pytest.mark.parametrize("chamber", list(Chamber))
    def test_matches_brute_force_enumeration(self, chamber):
        assert shortest_realizations(chamber) == brute_force_shortest_words(chamber)

    @pytest.mark.parametrize("chamber", list(Chamber))
    def test_words_map_interior_into_chamber(self, chamber):
        for Z in random_points(4):
            inside = project_plus(Z)
            if min(root_values(inside).alpha, root_values(inside).beta) < 1e-3:
                continue
            for word in shortest_realizations(chamber):
                assert chamber_of(apply_word(inside, word)) is chamber


class TestChamberPoint:
    def test_lands_in_chamber_with_radius(self):
        for chamber in Chamber:
            p = chamber_point(chamber, 3.0, 0.9)
            assert chamber_of(p) is chamber
            assert p.norm() == pytest.approx(3.0, rel=1e-12)

    def test_rejects_angle_outside_sector(self):
        with pytest.raises(ValueError):
            chamber_point(Chamber.C123, 1.0, 0.1)
