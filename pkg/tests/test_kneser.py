import math
import random

import pytest

from minranklab.budgets import BudgetExceededError
from minranklab.graphs import (
    complete_graph,
    empty_graph,
    is_isomorphic,
    min_odd_cycle_at_most,
)
from minranklab.kneser import (
    KneserParams,
    binary_entropy,
    construction_subgraph,
    entropy_delta_limit,
    intersection_polynomial,
    kneser_graph,
    odd_girth_guarantee,
    pattern_polynomial_coefficients,
    rank_bound_report,
    representation_matrix,
    subset_masks,
)
from minranklab.minrank import represents

from _oracles import oracle_multilinear_coefficients


class TestParams:
    def test_validation(self):
        KneserParams(6, 3, 1)
        with pytest.raises(ValueError):
            KneserParams(4, 5, 1)
        with pytest.raises(ValueError):
            KneserParams(4, 2, 3)
        with pytest.raises(ValueError):
            KneserParams(4, 2, -1)

    def test_counts(self):
        p = KneserParams(10, 5, 2)
        assert p.vertex_count == 252
        assert p.rank_bound == sum(math.comb(10, i) for i in range(4))


class TestGraph:
    def test_4_2_1(self):
        g = kneser_graph(KneserParams(4, 2, 1))
        assert g.n == 6
        assert g.edge_count() == 3

    def test_6_3_1_perfect_matching(self):
        g = kneser_graph(KneserParams(6, 3, 1))
        assert g.n == 20
        assert g.edge_count() == 10
        assert all(g.degree(v) == 1 for v in range(20))
        assert min_odd_cycle_at_most(g, 3) is None

    def test_singletons_give_complete_graph(self):
        assert is_isomorphic(kneser_graph(KneserParams(3, 1, 1)), complete_graph(3))

    def test_m_zero_is_empty(self):
        assert kneser_graph(KneserParams(4, 2, 0)) == empty_graph(6)

    def test_budget_refusal(self):
        with pytest.raises(BudgetExceededError):
            kneser_graph(KneserParams(30, 15, 1))


class TestCoefficients:
    def test_s2_m1(self):
        assert pattern_polynomial_coefficients(2, 1) == [-1, 1]

    def test_s3_m1(self):
        assert pattern_polynomial_coefficients(3, 1) == [2, -2, 2]

    def test_higher_differences_vanish(self):
        # differences of order beyond the polynomial degree are zero
        for s, m in [(3, 1), (4, 2), (5, 1)]:
            values = [intersection_polynomial(s, m, t) for t in range(s - m + 3)]
            for u in (s - m + 1, s - m + 2):
                diff = sum(
                    (-1) ** (u - t) * math.comb(u, t) * values[t] for t in range(u + 1)
                )
                assert diff == 0

    def test_binomial_transform_recovers_polynomial(self):
        for s, m in [(2, 1), (3, 0), (4, 2), (5, 3)]:
            coeffs = pattern_polynomial_coefficients(s, m)
            for t in range(s + 1):
                recovered = sum(
                    math.comb(t, u) * c for u, c in enumerate(coeffs)
                )
                assert recovered == intersection_polynomial(s, m, t)

    def test_against_multilinear_expansion_oracle(self):
        # expand the product over 0/1 variables directly and compare
        for d in range(1, 5):
            for s in range(1, d + 1):
                for m in range(0, s + 1):
                    expansion = oracle_multilinear_coefficients(d, s, m)
                    coeffs = pattern_polynomial_coefficients(s, m)
                    for mono in range(1 << d):
                        size = mono.bit_count()
                        expected = coeffs[size] if size < len(coeffs) else 0
                        assert expansion.get(mono, 0) == expected


class TestRepresentation:
    def test_4_2_1_entries(self):
        w = representation_matrix(KneserParams(4, 2, 1), check_rank=True)
        masks = w.vertices
        for a, ma in enumerate(masks):
            for b, mb in enumerate(masks):
                inter = (ma & mb).bit_count()
                expected = {2: 1, 1: 0, 0: -1}[inter]
                assert w.matrix.entries[a][b] == expected
        assert w.rank == 3
        assert w.rank_bound == 5

    def test_diagonal_is_factorial(self):
        for d, s, m in [(5, 3, 1), (6, 3, 0), (7, 3, 2)]:
            w = representation_matrix(KneserParams(d, s, m))
            assert w.matrix.entries[0][0] == math.factorial(s - m)

    def test_represents_the_graph(self):
        for d, s, m in [(4, 2, 1), (5, 2, 1), (6, 3, 2), (6, 3, 1)]:
            params = KneserParams(d, s, m)
            w = representation_matrix(params)
            assert represents(w.matrix, kneser_graph(params))

    def test_entries_match_direct_product_evaluation(self):
        # evaluate prod_j (<c_A, c_B> - j) straight from the bitstrings
        for d, s, m in [(6, 3, 1), (6, 3, 2), (8, 4, 2)]:
            w = representation_matrix(KneserParams(d, s, m))
            masks = w.vertices
            rng = random.Random(d * 100 + m)
            for _ in range(200):
                a = rng.randrange(len(masks))
                b = rng.randrange(len(masks))
                dot = sum(
                    ((masks[a] >> i) & 1) * ((masks[b] >> i) & 1) for i in range(d)
                )
                direct = 1
                for j in range(m, s):
                    direct *= dot - j
                assert w.matrix.entries[a][b] == direct

    def test_factorization_shape_and_product(self):
        w = representation_matrix(KneserParams(5, 2, 1))
        assert w.factor_left.rows == w.matrix.rows
        assert w.factor_left.cols == w.rank_bound
        product = w.factor_left.matmul(w.factor_right.transpose())
        assert product == w.matrix

    def test_rank_certificates_small_sweep(self):
        for d in (2, 4, 6):
            s = d // 2
            for m in range(s + 1):
                w = representation_matrix(KneserParams(d, s, m), check_rank=True)
                assert w.rank <= w.rank_bound

    def test_structural_invariants_hold_across_all_small_params(self):
        # includes the full structural verification (diagonal, zero pattern,
        # factorization identity) run by the builder on every instance
        for d in range(1, 9):
            for s in range(0, d + 1):
                for m in range(0, s + 1):
                    representation_matrix(KneserParams(d, s, m))


class TestOddGirth:
    def test_hypothesis_and_search(self):
        assert odd_girth_guarantee(6, 1, 3, verify=True)
        assert odd_girth_guarantee(10, 1, 5, verify=True)

    def test_hypothesis_fails(self):
        assert not odd_girth_guarantee(6, 2, 3)

    def test_parity_errors(self):
        with pytest.raises(ValueError):
            odd_girth_guarantee(5, 1, 3)
        with pytest.raises(ValueError):
            odd_girth_guarantee(6, 1, 4)

    def test_walk_intersection_inequality(self):
        # along any walk with adjacent consecutive sets, the first set keeps
        # at least d/2 - 2i*m common elements with the (2i+1)-th one
        for d, m in [(6, 1), (10, 1)]:
            params = KneserParams(d, d // 2, m)
            g = kneser_graph(params)
            masks = subset_masks(d, d // 2)
            rng = random.Random(d)
            for _ in range(50):
                v = rng.randrange(g.n)
                walk = [v]
                for _ in range(6):
                    nbrs = [u for u in range(g.n) if g.has_edge(walk[-1], u)]
                    if not nbrs:
                        break
                    walk.append(rng.choice(nbrs))
                for i in range((len(walk) + 1) // 2):
                    if 2 * i < len(walk):
                        inter = (masks[walk[0]] & masks[walk[2 * i]]).bit_count()
                        assert inter >= d // 2 - 2 * i * m


class TestEntropyReport:
    def test_small_instance(self):
        rep = rank_bound_report(3, 20)
        assert (rep.d, rep.m) == (6, 1)
        assert rep.rank_bound == 22
        assert rep.vertex_count == 20
        assert rep.delta_star < 0  # bound is vacuous at this scale

    def test_d_is_smallest_multiple(self):
        rep = rank_bound_report(3, 21)  # just past C(6,3)
        assert rep.d == 12

    def test_delta_increases_toward_entropy_limit(self):
        values = [
            rank_bound_report(3, math.comb(d, d // 2)).delta_star
            for d in (60, 120, 240, 480)
        ]
        assert all(a < b for a, b in zip(values, values[1:]))
        assert values[-1] < entropy_delta_limit(3)

    def test_validation(self):
        with pytest.raises(ValueError):
            rank_bound_report(4, 10)
        with pytest.raises(ValueError):
            rank_bound_report(3, 0)

    def test_entropy_function(self):
        assert binary_entropy(0.5) == 1.0
        assert binary_entropy(0.0) == 0.0
        assert 0.91 < binary_entropy(1 / 3) < 0.92


def test_construction_subgraph_prefix():
    g = construction_subgraph(3, 12)
    assert g.n == 12
    assert min_odd_cycle_at_most(g, 3) is None
