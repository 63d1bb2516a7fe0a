"""Curvettes, generic germs, supports, genericity."""

from fractions import Fraction

import pytest

from conftest import coprime_pairs
from cqsing.arith import greedy_decomposition, hj_expansion
from cqsing.errors import InvalidInputError
from cqsing.germs import (
    Curvette,
    GenericGerm,
    GermSupport,
    branch_decomposition,
    generic_germ,
    germ_support,
    intersection_multiplicity,
    is_generic,
    valuation_vector,
)
from cqsing.lattice import hull_of_class, hull_of_diagram, module_generators
from cqsing.oracle import expand_product

X14 = hj_expansion(14, 11)
X5 = hj_expansion(5, 2)


class TestGenericGerm:
    def test_worked_example_factors(self):
        g = generic_germ(X14, 10)
        assert [(c.i, c.lam) for c in g.factors] == [(2, 1), (4, 1)]

    def test_unit_class(self):
        assert generic_germ(X14, 0).factors == ()

    def test_coin_class_is_one_curvette(self):
        for i in X14.coin_indices():
            g = generic_germ(X14, X14.qseq[i])
            assert len(g.factors) == 1 and g.factors[0].i == i

    def test_distinct_scalars_required(self):
        with pytest.raises(InvalidInputError, match="repeated scalar"):
            GenericGerm(X5, 4, (Curvette(X5, 1, 1), Curvette(X5, 1, 1)))

    def test_multiplicities_must_match_greedy(self):
        with pytest.raises(InvalidInputError):
            GenericGerm(X5, 4, (Curvette(X5, 1, 1), Curvette(X5, 2, 1)))


class TestGermSupport:
    def test_single_curvette(self):
        g = generic_germ(X14, 8)
        assert germ_support(g).points == {(8, 0), (0, 2)}

    def test_worked_example_product(self):
        g = generic_germ(X14, 10)
        assert germ_support(g).points == {(10, 0), (8, 4), (2, 2), (0, 6)}

    def test_unit(self):
        assert germ_support(generic_germ(X14, 0)).points == {(0, 0)}

    @pytest.mark.parametrize("d,q", coprime_pairs(20))
    def test_against_symbolic_expansion(self, d, q):
        X = hj_expansion(d, q)
        for k in range(d):
            g = generic_germ(X, k)
            coeffs = expand_product(
                [((X.qseq[c.i], X.qbarseq[c.i]), c.lam) for c in g.factors]
            )
            support = germ_support(g)
            assert support.points == set(coeffs)
            # no cancellation on the polygon's vertices
            hull = hull_of_diagram(support.points, X, k)
            for v in hull.vertices:
                assert coeffs[v] != 0

    def test_rejects_points_outside_class(self):
        with pytest.raises(InvalidInputError):
            GermSupport(X14, 10, frozenset({(1, 0)}))


class TestValuationVector:
    def test_coordinate_germ(self):
        support = GermSupport(X14, 1, frozenset({(1, 0)}))
        vals, mults = valuation_vector(X14, support)
        assert mults == X14.qbarseq[1:-1]

    def test_curvette_min_formula(self):
        for X in (X5, X14):
            for i in X.coin_indices():
                support = germ_support(generic_germ(X, X.qseq[i]))
                vals, mults = valuation_vector(X, support)
                expect = tuple(
                    min(X.qseq[i] * X.qbarseq[j], X.qbarseq[i] * X.qseq[j])
                    for j in X.coin_indices()
                )
                assert mults == expect

    def test_unit_is_zero(self):
        support = germ_support(generic_germ(X14, 0))
        vals, mults = valuation_vector(X14, support)
        assert set(mults) == {0}

    @pytest.mark.parametrize("d,q", coprime_pairs(20))
    def test_class_congruence(self, d, q):
        # each multiplicity satisfies m_i == k * qbar_i (mod d)
        X = hj_expansion(d, q)
        for k in range(d):
            support = germ_support(generic_germ(X, k))
            _, mults = valuation_vector(X, support)
            for m, i in zip(mults, X.coin_indices()):
                assert (m - k * X.qbarseq[i]) % d == 0

    def test_additive_under_minkowski_products(self):
        g1 = generic_germ(X14, 8)
        g2 = generic_germ(X14, 2)
        s1 = germ_support(g1)
        s2 = germ_support(g2)
        s12 = GermSupport(
            X14,
            10,
            frozenset(
                (a[0] + b[0], a[1] + b[1])
                for a in s1.points
                for b in s2.points
            ),
        )
        v1, _ = valuation_vector(X14, s1)
        v2, _ = valuation_vector(X14, s2)
        v12, _ = valuation_vector(X14, s12)
        assert v12 == tuple(a + b for a, b in zip(v1, v2))


class TestBranchDecomposition:
    @pytest.mark.parametrize("d,q", coprime_pairs(25))
    def test_equals_greedy_with_exact_norms(self, d, q):
        X = hj_expansion(d, q)
        for k in range(d):
            g = generic_germ(X, k)
            alpha = branch_decomposition(g)
            kd = greedy_decomposition(X, k)
            assert alpha.entries == kd.entries
            assert alpha.norm_x == k
            assert alpha.norm_1 == kd.norm_1


class TestIsGeneric:
    @pytest.mark.parametrize("d,q", coprime_pairs(30))
    def test_generic_products_fill_the_class_polygon(self, d, q):
        X = hj_expansion(d, q)
        for k in range(d):
            assert is_generic(X, germ_support(generic_germ(X, k)))

    def test_documented_non_generic_support(self):
        X = hj_expansion(5, 4)
        support = GermSupport(X, 2, frozenset({(2, 0), (1, 4), (0, 8), (0, 18)}))
        assert not is_generic(X, support)

    def test_generator_support_is_generic(self):
        for k in range(14):
            support = GermSupport(X14, k, frozenset(module_generators(X14, k)))
            assert is_generic(X14, support)

    @pytest.mark.parametrize("d,q", coprime_pairs(20))
    def test_face_and_segment_counts(self, d, q):
        # maximal faces = number of distinct coin indices used; lattice
        # segments on the chain = total number of coins
        from cqsing.lattice import ClassLattice

        X = hj_expansion(d, q)
        for k in range(1, d):
            dec = greedy_decomposition(X, k)
            hull = hull_of_class(X, k)
            distinct = sum(1 for i in X.coin_indices() if dec.entries[i])
            assert hull.face_count == distinct
            pts = hull.chain_lattice_points(ClassLattice(X, k))
            assert len(pts) - 1 == dec.norm_1


class TestIntersectionMultiplicity:
    def test_degree_one_pair(self):
        # two transversal quasi-smooth branches meet with multiplicity qbar/d
        for d, q in ((5, 2), (7, 3), (14, 11)):
            X = hj_expansion(d, q)
            qbar = X.qbarseq[X.n]  # inverse of q mod d
            c1 = Curvette(X, X.n, 1)
            c2 = Curvette(X, X.n, 2)
            assert intersection_multiplicity(X, c1, c2) == Fraction(
                X.qseq[X.n] * qbar, d
            )

    def test_small_cross_pair(self):
        got = intersection_multiplicity(X5, Curvette(X5, 1, 1), Curvette(X5, 2, 1))
        assert got == Fraction(1, 5)

    def test_worked_cross_pair(self):
        got = intersection_multiplicity(
            X14, Curvette(X14, 2, 1), Curvette(X14, 4, 1)
        )
        assert got == Fraction(2, 7)

    def test_symmetry(self):
        for i, j in ((1, 2), (2, 4), (3, 3)):
            c1, c2 = Curvette(X14, i, 1), Curvette(X14, j, 2)
            assert intersection_multiplicity(
                X14, c1, c2
            ) == intersection_multiplicity(X14, c2, c1)

    def test_identical_curvettes_rejected(self):
        c = Curvette(X14, 2, 1)
        with pytest.raises(InvalidInputError):
            intersection_multiplicity(X14, c, c)
