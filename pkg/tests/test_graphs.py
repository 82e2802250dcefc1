import random

import pytest

from minranklab.graphs import (
    Digraph,
    Graph,
    chromatic_number,
    complement,
    complete_graph,
    complete_multipartite,
    contains_subgraph,
    count_labeled_copies,
    cycle_graph,
    degeneracy,
    empty_graph,
    greedy_coloring,
    independence_number,
    induced_subgraph,
    is_forest,
    is_isomorphic,
    is_tree,
    min_odd_cycle_at_most,
    named_graph,
    path_graph,
    sample_digraph,
    star_graph,
    underlying_graph,
    union_graph,
)

from _oracles import oracle_min_odd_cycle, oracle_min_vertex_cover


def all_graphs(n):
    for mask in range(1 << (n * (n - 1) // 2)):
        yield Graph.from_edge_mask(n, mask)


def random_graph(n, rng):
    return Graph.from_edge_mask(n, rng.getrandbits(n * (n - 1) // 2))


class TestConstruction:
    def test_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Graph.from_edges(3, [(0, 0)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(ValueError):
            Graph(2, (0b10, 0b00))

    def test_digraph_rejects_self_loop(self):
        with pytest.raises(ValueError):
            Digraph.from_arcs(2, [(1, 1)])

    def test_edge_mask_roundtrip(self):
        for g in all_graphs(4):
            assert Graph.from_edge_mask(4, g.edge_mask()) == g

    def test_named_graphs(self):
        assert named_graph("K4") == complete_graph(4)
        assert named_graph("C5") == cycle_graph(5)
        assert named_graph("P3") == path_graph(3)
        assert named_graph("star3") == star_graph(3)
        assert named_graph("empty6") == empty_graph(6)
        with pytest.raises(ValueError):
            named_graph("Q17")
        with pytest.raises(ValueError):
            named_graph("C2")


class TestComplement:
    def test_complete_to_empty(self):
        assert complement(complete_graph(3)) == empty_graph(3)

    def test_involution_exhaustive(self):
        for g in all_graphs(4):
            assert complement(complement(g)) == g

    def test_c5_self_complementary(self):
        assert is_isomorphic(complement(cycle_graph(5)), cycle_graph(5))


class TestContainsSubgraph:
    def test_clique_in_clique(self):
        assert contains_subgraph(complete_graph(4), complete_graph(3))

    def test_no_triangle_in_c5(self):
        assert not contains_subgraph(cycle_graph(5), complete_graph(3))

    def test_c5_in_complement_c7(self):
        assert contains_subgraph(complement(cycle_graph(7)), cycle_graph(5))

    def test_empty_pattern_rejected(self):
        with pytest.raises(ValueError):
            contains_subgraph(complete_graph(3), empty_graph(0))

    def test_monotone_in_host_edges(self):
        rng = random.Random(7)
        h = path_graph(3)
        for _ in range(50):
            g = random_graph(5, rng)
            before = contains_subgraph(g, h)
            pairs = [(u, v) for u in range(5) for v in range(u + 1, 5) if not g.has_edge(u, v)]
            if not pairs:
                continue
            extra = rng.choice(pairs)
            bigger = Graph.from_edges(5, g.edges() + [extra])
            if before:
                assert contains_subgraph(bigger, h)

    def test_antitone_in_pattern_edges(self):
        rng = random.Random(8)
        for _ in range(50):
            g = random_graph(6, rng)
            h = random_graph(4, rng)
            if h.edge_count() == 0:
                continue
            smaller = Graph.from_edges(4, h.edges()[:-1])
            if smaller.edge_count() and contains_subgraph(g, h):
                assert contains_subgraph(g, smaller)

    def test_labeled_copy_count(self):
        # 4 triangles in K4, each with 3! vertex labelings
        assert count_labeled_copies(complete_graph(4), complete_graph(3)) == 24
        assert count_labeled_copies(cycle_graph(5), cycle_graph(5)) == 10


class TestOddCycles:
    def test_c5_itself(self):
        assert min_odd_cycle_at_most(cycle_graph(5), 5) == 5

    def test_c5_triangle_free(self):
        assert min_odd_cycle_at_most(cycle_graph(5), 3) is None

    def test_rejects_even_or_small_ell(self):
        with pytest.raises(ValueError):
            min_odd_cycle_at_most(cycle_graph(5), 4)
        with pytest.raises(ValueError):
            min_odd_cycle_at_most(cycle_graph(5), 1)

    def test_matches_bruteforce_small(self):
        for g in all_graphs(5):
            assert min_odd_cycle_at_most(g, 5) == oracle_min_odd_cycle(g, 5)

    def test_matches_bruteforce_sampled(self):
        rng = random.Random(11)
        for _ in range(12):
            g = random_graph(8, rng)
            assert min_odd_cycle_at_most(g, 7) == oracle_min_odd_cycle(g, 7)

    def test_matches_bruteforce_ten_vertices(self):
        rng = random.Random(13)
        for _ in range(2):
            g = random_graph(10, rng)
            assert min_odd_cycle_at_most(g, 7) == oracle_min_odd_cycle(g, 7)
        petersen = Graph.from_edges(
            10,
            [(i, (i + 1) % 5) for i in range(5)]
            + [(i, i + 5) for i in range(5)]
            + [(5 + i, 5 + (i + 2) % 5) for i in range(5)],
        )
        assert min_odd_cycle_at_most(petersen, 7) == 5
        assert oracle_min_odd_cycle(petersen, 7) == 5
        nine_cycle_padded = Graph.from_edges(10, [(i, (i + 1) % 9) for i in range(9)])
        assert min_odd_cycle_at_most(nine_cycle_padded, 7) is None
        assert oracle_min_odd_cycle(nine_cycle_padded, 7) is None

    def test_bipartite_has_none(self):
        assert min_odd_cycle_at_most(complete_multipartite([3, 3]), 7) is None


class TestDegeneracyColoring:
    def test_union_of_cliques(self):
        g = complement(complete_multipartite([4, 4]))  # two disjoint K4s
        assert degeneracy(g)[0] == 3

    def test_empty(self):
        assert degeneracy(empty_graph(5))[0] == 0

    def test_cycle(self):
        assert degeneracy(cycle_graph(5))[0] == 2

    def test_greedy_reverse_elimination_bound(self):
        rng = random.Random(3)
        for _ in range(40):
            g = random_graph(8, rng)
            d, order = degeneracy(g)
            colors = greedy_coloring(g, order[::-1])
            assert max(colors, default=-1) + 1 <= d + 1


class TestExactNumbers:
    def test_alpha_known(self):
        assert independence_number(complete_graph(6)) == 1
        assert independence_number(cycle_graph(5)) == 2
        assert independence_number(complete_multipartite([2, 2, 2])) == 2

    def test_alpha_vs_vertex_cover_exhaustive(self):
        for g in all_graphs(4):
            assert independence_number(g) == 4 - oracle_min_vertex_cover(g)

    @pytest.mark.parametrize("n", [5, 6, 7])
    def test_alpha_vs_vertex_cover_sampled(self, n):
        rng = random.Random(n)
        for _ in range(25):
            g = random_graph(n, rng)
            assert independence_number(g) == n - oracle_min_vertex_cover(g)

    def test_chi_known(self):
        assert chromatic_number(empty_graph(5)) == 1
        assert chromatic_number(cycle_graph(5)) == 3
        assert chromatic_number(complement(complete_multipartite([2, 2, 2]))) == 2
        assert chromatic_number(complete_graph(7)) == 7

    def test_chi_vs_bruteforce_exhaustive(self):
        from itertools import product as iproduct

        for g in all_graphs(4):
            brute = None
            for k in range(1, 5):
                if any(
                    all(colors[u] != colors[v] for u, v in g.edges())
                    for colors in iproduct(range(k), repeat=4)
                ):
                    brute = k
                    break
            assert chromatic_number(g) == brute

    def test_chi_greedy_bound_sampled(self):
        rng = random.Random(4)
        for _ in range(25):
            g = random_graph(7, rng)
            chi = chromatic_number(g)
            assert chi <= max(greedy_coloring(g), default=-1) + 1
            assert chi >= independence_number(complement(g))


class TestMultipartite:
    def test_k3(self):
        assert complete_multipartite([1, 1, 1]) == complete_graph(3)

    def test_single_part_empty(self):
        assert complete_multipartite([3]) == empty_graph(3)

    def test_two_by_two(self):
        g = complete_multipartite([2, 2])
        assert independence_number(g) == 2
        assert chromatic_number(complement(g)) == 2

    def test_rejects_empty_or_nonpositive(self):
        with pytest.raises(ValueError):
            complete_multipartite([])
        with pytest.raises(ValueError):
            complete_multipartite([2, 0])


class TestTrees:
    def test_forest_and_tree_predicates(self):
        assert is_tree(path_graph(4))
        assert is_tree(star_graph(3))
        assert not is_tree(cycle_graph(4))
        assert is_forest(empty_graph(3))
        assert not is_tree(empty_graph(3))
        assert not is_forest(cycle_graph(3))


class TestSampling:
    def test_extremes(self):
        assert sample_digraph(6, 0.0, 1).arc_count() == 0
        assert sample_digraph(6, 1.0, 1).arc_count() == 30

    def test_reproducible(self):
        assert sample_digraph(10, 0.3, 99) == sample_digraph(10, 0.3, 99)
        assert sample_digraph(10, 0.3, 99) != sample_digraph(10, 0.3, 100)

    def test_rejects_bad_probability(self):
        with pytest.raises(ValueError):
            sample_digraph(4, 1.5, 0)

    def test_underlying_density_concentrates(self):
        # both arcs survive with probability 1/4 at p = 0.5
        d = sample_digraph(1000, 0.5, 2026)
        g = underlying_graph(d)
        density = g.edge_count() / (1000 * 999 / 2)
        assert abs(density - 0.25) < 0.01

    def test_underlying_and_union(self):
        d = Digraph.from_arcs(3, [(0, 1), (1, 0), (1, 2)])
        assert underlying_graph(d) == Graph.from_edges(3, [(0, 1)])
        assert union_graph(d) == Graph.from_edges(3, [(0, 1), (1, 2)])


class TestInduced:
    def test_induced_subgraph(self):
        g = cycle_graph(5)
        sub = induced_subgraph(g, [0, 1, 2])
        assert sub == path_graph(3)
        with pytest.raises(ValueError):
            induced_subgraph(g, [0, 0, 1])
