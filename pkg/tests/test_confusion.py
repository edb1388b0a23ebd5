from itertools import combinations

import pytest
from hypothesis import given, settings

from conftest import digraphs
from indexcoding import coloring
from indexcoding.confusion import (
    FIG5_MASKS, AlphabetSpec, CodeTable, build_confusion_graph, chromatic_bounds, chromatic_number,
    code_from_coloring, confusable, constant_code, fig5_mask_code, good_mask_family_search, good_masks,
    identity_code, is_good_sequence, max_distinguishable_family, min_code_by_search, min_oneshot_size,
    verify_code,
)
from indexcoding.errors import DimensionMismatch, NotBidirectional, SearchBudgetExceeded, SizeLimitExceeded
from indexcoding.graph_core import (
    bidirectional_cycle, complete_bidirectional, directed_cycle, edgeless, fig5, mais,
)
from utils.config import Limits

FIVE_CYCLE_ADJ = [0b10010, 0b00101, 0b01010, 0b10100, 0b01001]


class TestAlphabetSpec:
    def test_rank_round_trip(self):
        spec = AlphabetSpec((2, 3))
        assert spec.rank((1, 2)) == 5
        assert spec.unrank(5) == (1, 2)
        assert spec.size == 6

    def test_validate(self):
        with pytest.raises(DimensionMismatch):
            AlphabetSpec((2, 2)).validate((0, 2))


class TestConfusability:
    def test_k2(self):
        g = complete_bidirectional(2)
        spec = AlphabetSpec.binary(2)
        assert not confusable(g, spec, (0, 0), (1, 1))
        assert confusable(g, spec, (0, 0), (1, 0))

    def test_good_masks_c5(self):
        c5 = bidirectional_cycle(5)
        assert len(good_masks(c5)) == 16
        assert is_good_sequence(c5, "11000")
        assert not is_good_sequence(c5, "10100")

    def test_good_sequence_needs_bidirectional(self):
        with pytest.raises(NotBidirectional):
            is_good_sequence(directed_cycle(3), "110")

    def test_mask_family_c5(self):
        c5 = bidirectional_cycle(5)
        family = good_mask_family_search(c5, 5)
        assert family is not None and family[0] == (0, 0, 0, 0, 0)
        assert good_mask_family_search(c5, 6) is None

    def test_five_masks_pairwise_distinguishable(self):
        c5 = bidirectional_cycle(5)
        spec = AlphabetSpec.binary(5)
        family = [tuple(int(ch) for ch in m) for m in FIG5_MASKS]
        assert all(not confusable(c5, spec, a, b) for a, b in combinations(family, 2))


class TestConfusionGraph:
    def test_edgeless_is_complete(self):
        cg = build_confusion_graph(edgeless(2), AlphabetSpec.binary(2))
        assert cg.edge_count == 6

    def test_c5_max_distinguishable(self):
        cg = build_confusion_graph(bidirectional_cycle(5), AlphabetSpec.binary(5))
        size, members = max_distinguishable_family(cg)
        assert size == 5
        assert len(members) == 5

    def test_c5_lower_bound_seven(self):
        cg = build_confusion_graph(bidirectional_cycle(5), AlphabetSpec.binary(5))
        lower, upper, _ = chromatic_bounds(cg)
        assert lower >= 7
        assert upper >= lower

    def test_tuple_limit(self):
        with pytest.raises(SizeLimitExceeded):
            build_confusion_graph(edgeless(5), AlphabetSpec.binary(5), Limits(max_tuples=16))

    def test_spec_length_must_match(self):
        with pytest.raises(DimensionMismatch):
            build_confusion_graph(edgeless(3), AlphabetSpec.binary(2))

    def test_to_digraph_is_bidirectional(self):
        cg = build_confusion_graph(directed_cycle(3), AlphabetSpec.binary(3))
        assert cg.to_digraph().is_bidirectional()


class TestOneshotSize:
    @pytest.mark.parametrize("g, expected", [
        (complete_bidirectional(2), 2),
        (edgeless(2), 4),
        (directed_cycle(3), 4),
        (complete_bidirectional(3), 2),
    ])
    def test_binary_values(self, g, expected):
        assert min_oneshot_size(g, AlphabetSpec.binary(g.n)) == expected

    def test_coloring_is_valid_code(self):
        g = directed_cycle(3)
        spec = AlphabetSpec.binary(3)
        chi, colors = chromatic_number(build_confusion_graph(g, spec))
        table = code_from_coloring(g, spec, colors)
        assert table.N == chi
        assert verify_code(table).valid

    @settings(max_examples=30, deadline=None)
    @given(digraphs(max_n=3))
    def test_matches_exhaustive_code_search(self, g):
        spec = AlphabetSpec.binary(g.n)
        searched, table = min_code_by_search(g, spec)
        assert verify_code(table).valid
        assert min_oneshot_size(g, spec) == searched
        assert searched >= 2 ** mais(g)[0]


class TestCodeTables:
    def test_identity_and_constant(self):
        g = complete_bidirectional(2)
        spec = AlphabetSpec.binary(2)
        assert verify_code(identity_code(g, spec)).valid
        verdict = verify_code(constant_code(g, spec))
        assert not verdict.valid
        a, b, node = verdict.violation
        assert a != b and node in (1, 2)

    def test_wrong_row_count(self):
        with pytest.raises(DimensionMismatch):
            CodeTable(edgeless(2), AlphabetSpec.binary(2), (1, 2, 3), 3)

    def test_fig5_mask_code(self):
        base, spec, table = fig5_mask_code()
        assert base == fig5()
        assert spec.size == 160
        assert table.N == 32
        assert verify_code(table).valid


class TestColoringEngine:
    def test_five_cycle(self):
        chi, colors = coloring.chromatic_number(FIVE_CYCLE_ADJ)
        assert chi == 3
        assert all(colors[u] != colors[v] for u in range(5) for v in coloring.iter_bits(FIVE_CYCLE_ADJ[u]))

    def test_independent_set(self):
        assert coloring.max_independent_set(FIVE_CYCLE_ADJ)[0] == 2

    def test_join_blocks_of_complete_bipartite(self):
        # K_{2,2}: 0,1 | 2,3
        adj = [0b1100, 0b1100, 0b0011, 0b0011]
        assert sorted(coloring.join_blocks(adj)) == [0b0011, 0b1100]
        assert coloring.chromatic_number(adj)[0] == 2

    def test_budget(self):
        with pytest.raises(SearchBudgetExceeded):
            coloring.max_independent_set(FIVE_CYCLE_ADJ, Limits(mis_node_budget=1))
