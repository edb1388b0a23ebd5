from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import digraphs
from indexcoding.bounds import clique_cover_number, cycle_cover
from indexcoding.confusion import verify_code
from indexcoding.errors import (
    InvalidCode, InvalidParams, NotACliquePartition, NotASinkPartition, SearchBudgetExceeded,
    SizeLimitExceeded,
)
from indexcoding.graph_core import (
    DiGraph, bidirectional_cycle, complete_bidirectional, directed_cycle, edgeless, fig_a22, mais,
)
from indexcoding.linear_codes import (
    LinearIndexCode, PrimeField, block_diagonal, blowup_code, blowup_graph, clique_xor_code,
    conjecture1_code, cycle_apex_code, cycle_apex_graph, cycle_cover_code, echelon_code, expand_to_table,
    is_valid_linear_code, minrank_gf2, minrank_gf2_code, permute_nodes, row_reduce, split_code,
)
from indexcoding.suites import random_valid_code
from utils.config import Limits


class TestConstruction:
    def test_field_must_be_prime(self):
        with pytest.raises(InvalidParams):
            PrimeField(4)

    def test_entries_reduced_mod_q(self):
        code = LinearIndexCode.create(3, [1, 1], [[4, -1]])
        assert code.matrix.tolist() == [[1, 2]]

    def test_layout(self):
        code = LinearIndexCode.create(2, [2, 1, 1], [[1, 0, 1, 0], [0, 1, 0, 1]])
        assert code.offsets == (0, 2, 3, 4)
        assert code.column(3, 1) == 3
        assert code.node_columns(1) == [0, 1]
        assert code.rate_vector().rates == (1, Fraction(1, 2), Fraction(1, 2))
        assert code.symmetric_rate() is None


class TestValidity:
    def test_xor_on_bidirectional_pair(self):
        g = complete_bidirectional(2)
        code = LinearIndexCode.create(2, [1, 1], [[1, 1]])
        valid, certificate = is_valid_linear_code(g, code)
        assert valid
        alpha, gamma = certificate.entries[(1, 1)]
        assert alpha == (1,)
        assert gamma == {(2, 1): 1}

    def test_xor_fails_without_side_information(self):
        code = LinearIndexCode.create(2, [1, 1], [[1, 1]])
        assert is_valid_linear_code(edgeless(2), code) == (False, None)

    def test_ternary_code(self):
        g = complete_bidirectional(2)
        code = LinearIndexCode.create(3, [1, 1], [[1, 2]])
        valid, certificate = is_valid_linear_code(g, code)
        assert valid
        assert certificate.entries[(2, 1)][1] == {(1, 1): 2}

    def test_empty_code_invalid_unless_nothing_to_send(self):
        empty = LinearIndexCode.create(2, [1], np.zeros((0, 1), dtype=np.int64))
        assert not is_valid_linear_code(edgeless(1), empty)[0]
        nothing = LinearIndexCode.create(2, [0, 1], [[1]])
        assert is_valid_linear_code(edgeless(2), nothing)[0]

    def test_conjecture1_code(self):
        graph, code = conjecture1_code()
        assert graph == fig_a22().remove_edges([(2, 3)])
        assert is_valid_linear_code(graph, code)[0]
        assert code.rate_vector().rates == (1, Fraction(1, 2), Fraction(1, 2))

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=4), st.sampled_from([2, 3]), st.integers(min_value=0, max_value=2 ** 16))
    def test_random_valid_codes_pass(self, g, q, seed):
        rng = np.random.default_rng(seed)
        dims = [int(rng.integers(1, 3)) for _ in g.vertices]
        assert is_valid_linear_code(g, random_valid_code(g, q, dims, rng))[0]

    @settings(max_examples=25, deadline=None)
    @given(digraphs(max_n=3), st.integers(min_value=0, max_value=2 ** 16))
    def test_agrees_with_table_verification(self, g, seed):
        rng = np.random.default_rng(seed)
        rows = rng.integers(0, 2, size=(int(rng.integers(1, g.n + 1)), g.n))
        code = LinearIndexCode.create(2, [1] * g.n, rows)
        assert is_valid_linear_code(g, code)[0] == verify_code(expand_to_table(code, g)).valid


class TestRowReduce:
    def test_echelon_is_row_equivalent(self):
        code = LinearIndexCode.create(3, [1, 1, 1], [[0, 1, 2], [1, 1, 1], [1, 2, 0]])
        form, transform = row_reduce(code)
        assert (transform.dot(code.matrix) % 3).tolist() == form.matrix.tolist()
        assert form.rank == 2
        assert form.pivots == ((1, 1), (2, 1))
        assert echelon_code(code).matrix.tolist() == form.matrix.tolist()


class TestMinrank:
    @pytest.mark.parametrize("g, expected", [
        (edgeless(4), 4),
        (complete_bidirectional(4), 1),
        (directed_cycle(5), 4),
        (bidirectional_cycle(5), 3),
    ])
    def test_known_values(self, g, expected):
        assert minrank_gf2(g) == expected

    def test_optimal_code_is_valid(self):
        g = bidirectional_cycle(5)
        code = minrank_gf2_code(g)
        assert code.length == 3
        assert is_valid_linear_code(g, code)[0]

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            minrank_gf2(edgeless(5), Limits(minrank_max_n=4))

    def test_node_budget_reports_bounds(self):
        with pytest.raises(SearchBudgetExceeded) as info:
            minrank_gf2(bidirectional_cycle(5), Limits(minrank_node_budget=1))
        assert (info.value.lower, info.value.upper) == (2, 3)
        assert info.value.limit_name == 'minrank_node_budget'

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=5))
    def test_between_mais_and_clique_cover(self, g):
        value = minrank_gf2(g)
        assert mais(g)[0] <= value <= clique_cover_number(g)[0]


class TestExplicitCodes:
    def test_clique_xor(self):
        g = bidirectional_cycle(5)
        _, cover = clique_cover_number(g)
        code = clique_xor_code(g, cover)
        assert code.length == 3
        assert is_valid_linear_code(g, code)[0]

    def test_clique_xor_rejects_non_clique(self):
        with pytest.raises(NotACliquePartition):
            clique_xor_code(directed_cycle(3), [[1, 2], [3]])

    def test_cycle_cover_code(self):
        g = bidirectional_cycle(5)
        cover = cycle_cover(g)
        code = cycle_cover_code(g, cover.cycles)
        assert code.length == cover.bound
        assert is_valid_linear_code(g, code)[0]

    def test_cycle_apex(self):
        graph, code = cycle_apex_code(3, 2, 1, 3)
        assert graph.n == 4
        assert code.length == 2
        assert code.symmetric_rate() == Fraction(1, 2)
        assert is_valid_linear_code(graph, code)[0]

    @pytest.mark.parametrize("params", [(3, 1, 1, 2), (3, 2, 2, 3), (1, 1, 1, 1), (4, 3, 1, 5)])
    def test_cycle_apex_rejects_bad_params(self, params):
        with pytest.raises(InvalidParams):
            cycle_apex_graph(*params)

    def test_blowup(self):
        graph, code = blowup_code((3, 2, 1, 3), (1, 2, 1, 1))
        assert graph == blowup_graph((3, 2, 1, 3), (1, 2, 1, 1))
        assert graph.n == 5
        assert code.symmetric_rate() == Fraction(1, 2)
        assert is_valid_linear_code(graph, code)[0]

    def test_expand_to_table(self):
        graph, code = conjecture1_code()
        table = expand_to_table(code, graph)
        assert table.spec.sizes == (4, 2, 2)
        assert table.N == 4
        assert verify_code(table).valid


class TestSplit:
    def test_sink_side_with_two_cycle(self):
        g = DiGraph(3, frozenset([(1, 2), (2, 1), (1, 3), (2, 3)]))
        code = LinearIndexCode.create(2, [1, 1, 1], [[1, 1, 0], [1, 1, 1]])
        split = split_code(g, code, [1, 2])
        assert split.s == 2
        assert split.v_double == (3,)
        assert split.code_double.matrix.tolist() == [[1]]
        assert split.code_prime.matrix.tolist() == [[1, 1]]
        assert is_valid_linear_code(split.graph_prime, split.code_prime)[0]
        assert is_valid_linear_code(split.graph_double, split.code_double)[0]

    def test_two_nodes(self):
        g = DiGraph(2, frozenset([(2, 1)]))
        code = LinearIndexCode.create(2, [1, 1], [[1, 0], [1, 1]])
        split = split_code(g, code, [1])
        assert split.echelon.matrix.tolist() == [[1, 1], [0, 1]]
        assert split.s == 2
        assert split.code_double.matrix.tolist() == [[1]]
        assert split.code_prime.matrix.tolist() == [[1]]

    def test_block_diagonal_input_splits_into_blocks(self):
        first = LinearIndexCode.create(2, [1, 1], [[1, 1]])
        second = LinearIndexCode.create(2, [1], [[1]])
        joined = block_diagonal(first, second)
        g = DiGraph(3, frozenset([(1, 2), (2, 1)]))
        split = split_code(g, joined, [3])
        assert split.s == 2
        assert split.code_double.same_as(first)
        assert split.code_prime.same_as(second)

    def test_edge_out_of_sink_side(self):
        g = DiGraph(2, frozenset([(1, 2)]))
        code = LinearIndexCode.create(2, [1, 1], [[1, 0], [0, 1]])
        with pytest.raises(NotASinkPartition):
            split_code(g, code, [1])

    def test_invalid_input_code(self):
        code = LinearIndexCode.create(2, [1, 1], [[1, 1]])
        with pytest.raises(InvalidCode):
            split_code(edgeless(2), code, [1])

    def test_block_diagonal_field_mismatch(self):
        with pytest.raises(InvalidParams):
            block_diagonal(LinearIndexCode.create(2, [1], [[1]]), LinearIndexCode.create(3, [1], [[1]]))

    def test_permute_nodes(self):
        code = LinearIndexCode.create(2, [2, 1], [[1, 0, 1]])
        assert permute_nodes(code, [2, 1]).matrix.tolist() == [[1, 1, 0]]
        assert permute_nodes(code, [2, 1]).dims == (1, 2)
