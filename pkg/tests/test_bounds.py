from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import digraphs
from indexcoding.bounds import (
    RateVector, beta_interval, check_rate_vector, clique_cover_number, cycle_cover, format_rational,
    fractional_clique_cover,
)
from indexcoding.errors import DimensionMismatch, InvalidParams, SizeLimitExceeded
from indexcoding.graph_core import (
    bidirectional_cycle, complete_bidirectional, directed_cycle, disjoint_union, edgeless, fig_a22,
)
from indexcoding.simplex import maximize
from utils.config import Limits


def test_format_rational():
    assert format_rational(Fraction(5, 2)) == "5/2"
    assert format_rational(4) == "4"


class TestRateVector:
    def test_negative_rate_rejected(self):
        with pytest.raises(InvalidParams):
            RateVector((Fraction(1, 2), Fraction(-1, 2)))

    def test_symmetric_c5_half_fails_on_independent_pair_plus(self):
        check = check_rate_vector(bidirectional_cycle(5), RateVector.symmetric(5, Fraction(1, 2)))
        assert check.passes
        assert check.max_acyclic_sum == 1

    def test_violation_reports_witness(self):
        check = check_rate_vector(edgeless(3), [Fraction(1, 2)] * 3)
        assert not check.passes
        assert check.max_acyclic_sum == Fraction(3, 2)
        assert check.violating_set == (1, 2, 3)

    def test_length_mismatch(self):
        with pytest.raises(DimensionMismatch):
            check_rate_vector(edgeless(3), [1, 0])

    def test_reduced_a22_outer_bound_met(self):
        g = fig_a22().remove_edges([(2, 3)])
        check = check_rate_vector(g, [1, Fraction(1, 2), Fraction(1, 2)])
        assert check.passes
        assert check.max_acyclic_sum == 1


class TestCliqueCovers:
    def test_clique_cover_c5(self):
        size, cover = clique_cover_number(bidirectional_cycle(5))
        assert size == 3
        assert sorted(v for part in cover.parts for v in part) == [1, 2, 3, 4, 5]

    def test_fractional_c5(self):
        value, cover = fractional_clique_cover(bidirectional_cycle(5))
        assert value == Fraction(5, 2)
        assert cover.size == Fraction(5, 2)

    def test_fractional_complete(self):
        assert fractional_clique_cover(complete_bidirectional(4))[0] == 1

    def test_one_directional_edges_ignored(self):
        assert fractional_clique_cover(directed_cycle(4))[0] == 4

    def test_limit(self):
        with pytest.raises(SizeLimitExceeded):
            clique_cover_number(edgeless(5), Limits(clique_max_n=4))


class TestCycleCover:
    def test_directed_cycle(self):
        cover = cycle_cover(directed_cycle(5))
        assert cover.bound == 4
        assert cover.cycles == ((1, 2, 3, 4, 5),)
        assert cover.singletons == ()

    def test_bidirectional_c5_uses_two_digons(self):
        cover = cycle_cover(bidirectional_cycle(5))
        assert cover.bound == 3
        assert len(cover.cycles) == 2
        assert len(cover.singletons) == 1

    def test_edgeless(self):
        assert cycle_cover(edgeless(3)).bound == 3


class TestBetaInterval:
    @pytest.mark.parametrize("g, lower, upper", [
        (edgeless(5), 5, 5),
        (directed_cycle(5), 4, 4),
        (complete_bidirectional(3), 1, 1),
        (bidirectional_cycle(5), 2, Fraction(5, 2)),
        (disjoint_union(complete_bidirectional(3), complete_bidirectional(3)), 2, 2),
    ])
    def test_known_intervals(self, g, lower, upper):
        interval = beta_interval(g)
        assert interval.lower == lower
        assert interval.upper == upper

    def test_c5_upper_engine(self):
        interval = beta_interval(bidirectional_cycle(5))
        assert interval.upper_engine == 'fractional_clique_cover'
        assert interval.engines['minrank_gf2'] == '3'
        assert interval.contains(Fraction(5, 2))
        assert not interval.is_tight

    def test_skipped_engines_are_recorded(self):
        limits = Limits(clique_max_n=3, cycle_cover_max_n=3, minrank_max_n=3)
        interval = beta_interval(edgeless(4), limits)
        assert interval.engines['minrank_gf2'].startswith('skipped:')
        assert interval.upper_engine == 'trivial'
        assert interval.upper == 4

    @settings(max_examples=40, deadline=None)
    @given(digraphs(max_n=5))
    def test_lower_never_exceeds_upper(self, g):
        interval = beta_interval(g)
        assert interval.lower <= interval.upper <= g.n


def test_simplex_small_lp():
    # max x + y, x + 2y <= 4, 3x + y <= 6
    solution = maximize([[1, 2], [3, 1]], [4, 6], [1, 1])
    assert solution.status == 'optimal'
    assert solution.value == Fraction(14, 5)
    assert solution.primal == (Fraction(8, 5), Fraction(6, 5))
    assert sum(d * b for d, b in zip(solution.dual, [4, 6])) == solution.value
