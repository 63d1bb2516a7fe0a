"""Continued fractions, greedy decompositions, the Q matrix."""

from fractions import Fraction

import pytest

from conftest import coprime_pairs
from cqsing.arith import (
    Decomposition,
    RawType,
    canonical_decomposition,
    decomposition_norms,
    equivalent,
    greedy_decomposition,
    hj_expansion,
    normalize_type,
    q_matrix,
    sum_with_canonical,
)
from cqsing.errors import InvalidInputError
from cqsing.oracle import dp_coin_optimal, dp_table, invariant_lattice

X14 = hj_expansion(14, 11)
X5 = hj_expansion(5, 2)


class TestNormalize:
    def test_already_normalized(self):
        assert normalize_type(RawType(7, 1, 3)) == hj_expansion(7, 3)

    def test_inverts_first_weight(self):
        # 2^{-1} = 3 mod 5 and 3*3 = 9 = 4
        assert normalize_type(RawType(5, 2, 3)) == hj_expansion(5, 4)

    def test_pseudo_reflection_reduction(self):
        assert normalize_type(RawType(4, 2, 1)) == hj_expansion(2, 1)

    def test_rejects_zero_order(self):
        with pytest.raises(InvalidInputError):
            RawType(0, 1, 1)

    def test_rejects_non_faithful(self):
        with pytest.raises(InvalidInputError, match="not faithful"):
            normalize_type(RawType(4, 2, 2))

    def test_weight_zero_collapses_to_smooth(self):
        # (d;0,b): the whole group acts by pseudo-reflections
        assert normalize_type(RawType(3, 0, 1)).d == 1

    @pytest.mark.parametrize("d,a,b", [
        (5, 2, 3), (7, 3, 5), (12, 5, 7), (9, 2, 5), (11, 10, 3),
    ])
    def test_small_actions_keep_invariant_lattice(self, d, a, b):
        X = normalize_type(RawType(d, a, b))
        assert X.d == d
        assert invariant_lattice(d, a, b, 2 * d) == invariant_lattice(
            d, 1, X.q, 2 * d
        )

    def test_reduction_order_does_not_matter(self):
        # reduce gcd(d,b) before gcd(d,a) and compare
        def alt(d, a, b):
            from math import gcd
            while True:
                g = gcd(d, b)
                if g > 1:
                    d, a, b = d // g, a % (d // g), (b // g) % (d // g)
                    continue
                g = gcd(d, a)
                if g > 1:
                    d, a, b = d // g, (a // g) % (d // g), b % (d // g)
                    continue
                return d, a, b

        for d in range(2, 30):
            for a in range(d):
                for b in range(d):
                    from math import gcd
                    if gcd(gcd(d, a), b) != 1:
                        continue
                    X = normalize_type(RawType(d, a, b))
                    d2, a2, b2 = alt(d, a, b)
                    if d2 == 1:
                        assert X.d == 1
                    else:
                        Y = hj_expansion(d2, (pow(a2, -1, d2) * b2) % d2)
                        assert equivalent(X, Y) or X == Y


class TestExpansion:
    def test_worked_example_sequences(self):
        assert X14.qseq == (14, 11, 8, 5, 2, 1, 0)
        assert X14.cseq == (2, 2, 2, 2, 3, 2, 2)

    def test_worked_example_qbar(self):
        assert X14.qbarseq == (0, 1, 2, 3, 4, 9, 14)

    def test_cone_type(self):
        for d in (2, 5, 9):
            X = hj_expansion(d, 1)
            assert X.qseq == (d, 1, 0)
            assert X.cseq == (2, d, 2)
            assert X.qbarseq == (0, 1, d)

    def test_smooth_point(self):
        X = hj_expansion(1, 0)
        assert (X.n, X.qseq, X.cseq, X.qbarseq) == (0, (1, 0), (2, 2), (0, 1))

    def test_rejects_common_factor(self):
        with pytest.raises(InvalidInputError):
            hj_expansion(9, 6)

    def test_rejects_out_of_range_q(self):
        with pytest.raises(InvalidInputError):
            hj_expansion(5, 5)

    @pytest.mark.parametrize("d,q", coprime_pairs(40))
    def test_lemma_identities(self, d, q):
        X = hj_expansion(d, q)
        qs, qb, n = X.qseq, X.qbarseq, X.n
        subs = [
            hj_expansion(qs[i], qs[i + 1] if qs[i] > 1 else 0)
            for i in range(n + 1)
        ]
        # (1) qbar_i as a partial fraction sum, exact rationals
        pref = Fraction(0)
        for i in range(n + 1):
            assert Fraction(qb[i]) == d * qs[i] * pref
            pref += Fraction(1, qs[i] * qs[i + 1]) if qs[i + 1] else 0
        # (2) the recurrence
        for i in range(2, n + 2):
            assert qb[i] == X.cseq[i - 1] * qb[i - 1] - qb[i - 2]
        # (3) nested qbar sequences
        for i in range(n + 1):
            for j in range(i, n + 2):
                assert qb[j] * qs[i] - qs[j] * qb[i] == d * subs[i].qbarseq[j - i]
        # (4)
        if n >= 1:
            for i in range(1, n + 2):
                assert qs[i] == q * qb[i] - d * subs[1].qbarseq[i - 1]
        # (5) unimodularity
        for i in range(n + 1):
            assert qb[i + 1] * qs[i] - qs[i + 1] * qb[i] == d
        # (6) the 2x2 minor identity
        for i in range(n):
            A, B = subs[i].qbarseq, subs[i + 1].qbarseq
            for j in range(1, n - i + 1):
                assert A[j] * B[j] - A[j + 1] * B[j - 1] == 1


class TestGreedy:
    def test_worked_example(self):
        assert greedy_decomposition(X14, 10).entries == (0, 0, 1, 0, 1, 0, 0)

    def test_single_coin(self):
        for X in (X14, X5):
            for i in X.coin_indices():
                e = greedy_decomposition(X, X.qseq[i]).entries
                assert sum(e) == 1 and e[i] == 1

    def test_class_twelve(self):
        assert greedy_decomposition(X14, 12).entries == (0, 1, 0, 0, 0, 1, 0)

    @pytest.mark.parametrize("d,q", coprime_pairs(30))
    def test_sentinels_and_value(self, d, q):
        X = hj_expansion(d, q)
        for k in range(-d, 2 * d):
            dec = greedy_decomposition(X, k)
            assert dec.entries[0] == 0 and dec.entries[-1] == 0
            assert dec.norm_x % d == k % d

    @pytest.mark.parametrize("d,q", coprime_pairs(60))
    def test_greedy_is_optimal(self, d, q):
        X = hj_expansion(d, q)
        denoms = [X.qseq[i] for i in X.coin_indices()]
        best = dp_table(denoms, d - 1)
        for k in range(d):
            assert greedy_decomposition(X, k).norm_1 == best[k]

    def test_non_canonical_system_contrast(self):
        # [4,3,1] is not a continued-fraction system: greedy 6 = 4+1+1 uses
        # three coins while 3+3 uses two, and the DP oracle must see that.
        greedy = 0
        rem = 6
        for c in (4, 3, 1):
            take, rem = divmod(rem, c)
            greedy += take
        assert greedy == 3
        assert dp_coin_optimal([4, 3, 1], 6) == 2


class TestNorms:
    def test_worked_example_norms(self):
        dec = greedy_decomposition(X14, 10)
        norm_x, norm_1, kbar, lowers, uppers = decomposition_norms(dec)
        assert (norm_x, norm_1, kbar) == (10, 2, 6)
        assert lowers[0] == norm_x and uppers[X14.n + 1] == kbar

    def test_zero_vector(self):
        dec = greedy_decomposition(X14, 0)
        assert decomposition_norms(dec)[:3] == (0, 0, 0)

    def test_class_twelve_norms(self):
        dec = greedy_decomposition(X14, 12)
        assert dec.norm_1 == 2 and dec.kbar == 10

    def test_partial_norm_tables(self):
        dec = greedy_decomposition(X14, 10)
        assert [dec.lower_norm(j) for j in range(7)] == [10, 10, 10, 2, 2, 0, 0]
        assert [dec.upper_norm(j) for j in range(7)] == [0, 0, 2, 2, 6, 6, 6]

    def test_display_trims_sentinels(self):
        assert greedy_decomposition(X14, 10).trimmed() == (0, 1, 0, 1, 0)

    def test_length_is_validated(self):
        with pytest.raises(InvalidInputError):
            Decomposition(X5, (0, 1))


class TestQMatrix:
    def test_worked_example_matrix(self):
        assert q_matrix(X14) == (
            (1, 2, 3, 4, 9, 14),
            (0, 1, 2, 3, 7, 11),
            (0, 0, 1, 2, 5, 8),
            (0, 0, 0, 1, 3, 5),
            (0, 0, 0, 0, 1, 2),
            (0, 0, 0, 0, 0, 1),
        )

    def test_cone(self):
        for d in (3, 7):
            assert q_matrix(hj_expansion(d, 1)) == ((1, d), (0, 1))

    def test_small_case_both_routes(self):
        assert q_matrix(X5) == ((1, 3, 5), (0, 1, 2), (0, 0, 1))

    @pytest.mark.parametrize("d,q", coprime_pairs(40))
    def test_row_zero_is_qbar(self, d, q):
        X = hj_expansion(d, q)
        Q = q_matrix(X)
        assert Q[0] == X.qbarseq[1:]
        for i in range(X.n + 1):
            assert Q[i][i] == 1
            if i < X.n:
                assert Q[i][i + 1] == X.cseq[i + 1]
            assert Q[i][X.n] == X.qseq[i]


class TestCanonical:
    def test_worked_example(self):
        assert canonical_decomposition(X14).entries == (0, 0, 0, 0, 1, 0, 0)
        assert X14.w == 2

    def test_du_val_chain_has_trivial_canonical(self):
        for d in (3, 6, 11):
            X = hj_expansion(d, d - 1)
            assert X.w == 0
            assert set(canonical_decomposition(X).entries) == {0}

    def test_small_case(self):
        assert X5.w == 2
        assert canonical_decomposition(X5).entries == (0, 1, 0, 0)


class TestSumWithCanonical:
    def test_worked_example(self):
        assert sum_with_canonical(X14, 10).entries == (0, 1, 0, 0, 0, 1, 0)

    def test_single_top_coin(self):
        for X in (X14, X5, hj_expansion(9, 2)):
            got = sum_with_canonical(X, X.qseq[1])
            assert got.entries == greedy_decomposition(X, X.qseq[1] + X.w).entries

    def test_first_index_boundary(self):
        # k = 3 on X(5;1,2) has k_1 != 0, so there is no leading c-block
        assert sum_with_canonical(X5, 3).entries == greedy_decomposition(X5, 0).entries

    def test_rejects_trivial_class(self):
        with pytest.raises(InvalidInputError):
            sum_with_canonical(X14, 14)

    @pytest.mark.parametrize("d,q", coprime_pairs(60))
    def test_closed_form_matches_greedy(self, d, q):
        X = hj_expansion(d, q)
        for k in range(1, d):
            # internal dual-route assertion does the comparison
            sum_with_canonical(X, k)


class TestEquivalent:
    def test_inverse_presentations(self):
        assert equivalent(hj_expansion(5, 2), hj_expansion(5, 3))

    def test_reflexive(self):
        assert equivalent(X14, X14)

    def test_distinct(self):
        assert not equivalent(hj_expansion(5, 2), hj_expansion(5, 4))
        assert not equivalent(hj_expansion(5, 2), hj_expansion(7, 2))
