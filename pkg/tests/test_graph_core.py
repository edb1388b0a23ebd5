from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import bidirectional_digraphs, digraphs
from indexcoding.errors import InvalidGraph, InvalidParams, RateTooHigh, SizeLimitExceeded
from indexcoding.graph_core import (
    DiGraph, bidirectional_cycle, complete_bidirectional, directed_cycle, disjoint_union, edge_on_cycle,
    edgeless, fig1, fig2, fig3, fig5, forward_backward_split, is_acyclic_set, is_isomorphic, is_uscs, mais,
    minimal_equal_rate_graph, prune_to_uscs, rate_edge_requirement, relabel, strongly_connected_components,
    turan_edge_count, turan_graph, uniqueness_search,
)
from utils.config import Limits


class TestDiGraph:
    def test_rejects_self_loop(self):
        with pytest.raises(InvalidGraph):
            DiGraph(3, frozenset([(2, 2)]))

    def test_rejects_out_of_range_endpoint(self):
        with pytest.raises(InvalidGraph):
            DiGraph(2, frozenset([(1, 3)]))

    def test_rejects_duplicate_edge_in_list(self):
        with pytest.raises(InvalidGraph):
            DiGraph(2, [(1, 2), (1, 2)])

    def test_induced_relabels(self):
        sub, labels = fig1().induced([3, 4, 5])
        assert labels == [3, 4, 5]
        assert sub.sorted_edges == [(1, 2), (2, 3)]

    def test_disjoint_union_shifts_second_graph(self):
        union = disjoint_union(directed_cycle(2), directed_cycle(3))
        assert union.n == 5
        assert (3, 4) in union.edges and (5, 3) in union.edges

    def test_to_dict_is_sorted(self):
        assert fig2().to_dict()['edges'][0] == [1, 2]


class TestStructure:
    def test_scc_of_dag_is_topological(self):
        assert strongly_connected_components(fig2()).components == ((1,), (2,), (3,), (4,), (5,))

    def test_scc_nontrivial_components(self):
        assert strongly_connected_components(fig3()).nontrivial() == [(1, 2, 3), (4, 5)]

    def test_prune_removes_every_dag_edge(self):
        pruned, removed = prune_to_uscs(fig2())
        assert pruned.edges == frozenset()
        assert removed == fig2().sorted_edges

    def test_prune_is_noop_on_uscs_graph(self):
        pruned, removed = prune_to_uscs(fig3())
        assert is_uscs(fig3())
        assert removed == []
        assert pruned == fig3()

    def test_prune_drops_apex_edges(self):
        _, removed = prune_to_uscs(fig5())
        assert removed == [(6, v) for v in range(1, 6)]

    def test_edgeless_and_cycle_are_uscs(self):
        assert is_uscs(edgeless(4))
        assert is_uscs(directed_cycle(4))

    @settings(max_examples=80, deadline=None)
    @given(digraphs(max_n=6))
    def test_prune_matches_brute_force_and_is_idempotent(self, g):
        pruned, removed = prune_to_uscs(g)
        assert removed == [e for e in g.sorted_edges if not edge_on_cycle(g, e)]
        assert is_uscs(pruned)
        assert prune_to_uscs(pruned) == (pruned, [])


class TestMais:
    def test_fig1_witness_is_lexicographically_first(self):
        assert mais(fig1()) == (4, (1, 2, 3, 4))

    @pytest.mark.parametrize("g, expected", [
        (edgeless(5), 5),
        (directed_cycle(5), 4),
        (bidirectional_cycle(5), 2),
        (complete_bidirectional(4), 1),
        (fig5(), 3),
        (fig2(), 5),
    ])
    def test_known_values(self, g, expected):
        assert mais(g)[0] == expected

    def test_size_limit(self):
        with pytest.raises(SizeLimitExceeded) as info:
            mais(edgeless(5), Limits(mais_max_n=4))
        assert info.value.limit_name == 'mais_max_n'

    @settings(max_examples=60, deadline=None)
    @given(digraphs(max_n=6))
    def test_matches_exhaustive_search(self, g):
        size, witness = mais(g)
        assert is_acyclic_set(g, witness)
        assert len(witness) == size
        best = max(k for k in range(g.n + 1)
                   if any(is_acyclic_set(g, s) for s in combinations(g.vertices, k)))
        assert size == best

    @settings(max_examples=40, deadline=None)
    @given(bidirectional_digraphs())
    def test_bidirectional_mais_is_independence_number(self, g):
        independent = [s for k in range(g.n + 1) for s in combinations(g.vertices, k)
                       if not any(g.has_edge(u, v) for u, v in combinations(s, 2))]
        assert mais(g)[0] == max(len(s) for s in independent)


class TestTuran:
    @pytest.mark.parametrize("m, k, expected", [(5, 2, 6), (4, 2, 4), (6, 3, 12), (5, 3, 8), (5, 1, 0)])
    def test_edge_count(self, m, k, expected):
        assert turan_edge_count(m, k) == expected
        assert len(turan_graph(m, k).edges) == 2 * expected

    def test_minimal_graph_half_rate_five_nodes(self):
        result = minimal_equal_rate_graph(Fraction(1, 2), 5)
        assert result.edge_count == 8
        assert result.parts == 2
        assert is_isomorphic(result.graph, disjoint_union(complete_bidirectional(3), complete_bidirectional(2)))

    def test_requirement_third_rate(self):
        assert rate_edge_requirement(Fraction(1, 3), 5) == 4

    def test_full_rate_needs_complete_graph(self):
        assert minimal_equal_rate_graph(1, 4).graph == complete_bidirectional(4)

    def test_rate_below_one_over_m(self):
        result = minimal_equal_rate_graph(Fraction(1, 6), 5)
        assert result.below_minimum_rate
        assert result.edge_count == 0

    def test_rate_above_one(self):
        with pytest.raises(RateTooHigh):
            minimal_equal_rate_graph(2, 3)

    def test_bad_part_count(self):
        with pytest.raises(InvalidParams):
            turan_graph(3, 4)

    def test_uniqueness_at_four_nodes(self):
        found = uniqueness_search(Fraction(1, 2), 4)
        assert found.edge_count == 4
        assert found.unique


class TestIsomorphism:
    def test_relabelled_cycle(self):
        g = directed_cycle(4)
        assert is_isomorphic(g, relabel(g, {1: 3, 2: 1, 3: 4, 4: 2}))

    def test_reversed_orientation_differs(self):
        path = DiGraph(3, frozenset([(1, 2), (1, 3)]))
        star_in = DiGraph(3, frozenset([(2, 1), (3, 1)]))
        assert not is_isomorphic(path, star_in)

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            is_isomorphic(edgeless(9), edgeless(9))


@settings(max_examples=40, deadline=None)
@given(digraphs(max_n=6))
def test_forward_backward_split_halves_are_acyclic(g):
    forward, backward = forward_backward_split(g, list(reversed(list(g.vertices))))
    assert forward.edges | backward.edges == g.edges
    assert is_acyclic_set(forward, g.vertices)
    assert is_acyclic_set(backward, g.vertices)
