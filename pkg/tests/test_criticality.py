from fractions import Fraction

import pytest

from indexcoding import criticality
from indexcoding.confusion import AlphabetSpec
from indexcoding.errors import NoSuchEdge, NotBidirectional
from indexcoding.graph_core import (
    DiGraph, bidirectional_cycle, complete_bidirectional, directed_cycle, disjoint_union, edgeless, fig3,
    fig5,
)
from indexcoding.linear_codes import cycle_apex_graph


class TestStructures:
    def test_cycle_apex_is_critical(self):
        result = criticality.verify_structure_a(3, 2, 1, 3)
        assert result.code_valid
        assert result.rate == Fraction(1, 2)
        assert result.passes
        assert result.searched_edges == ()
        for entry in result.report.entries:
            assert entry.certificate.kind == 'acyclic-set'
            assert criticality.recheck_certificate(result.graph, entry)

    def test_longer_cycle(self):
        assert criticality.verify_structure_a(5, 4, 2, 5).passes

    def test_constructed_witnesses_are_used(self):
        result = criticality.verify_structure_a(4, 3, 1, 4)
        assert all(e.certificate.data['source'] == 'stated' for e in result.report.entries)
        assert all(len(e.certificate.data['set']) == 4 for e in result.report.entries)

    def test_broken_witness_is_not_hidden_by_search(self, monkeypatch):
        monkeypatch.setattr(criticality, '_apex_witness', lambda m, i, j, k, e: [1])
        result = criticality.verify_structure_a(3, 2, 1, 3)
        assert result.report.all_degrade
        assert len(result.searched_edges) == len(result.graph.edges)
        assert not result.passes
        assert result.to_dict()['searched_edges'][0] == list(result.graph.sorted_edges[0])

    def test_blowup_is_critical(self):
        result = criticality.verify_structure_b((3, 2, 1, 3), (1, 2, 1, 1))
        assert result.passes
        assert result.searched_edges == ()
        assert len(result.labels) == 5
        assert all(criticality.recheck_certificate(result.graph, e) for e in result.report.entries)


class TestBidirectional:
    def test_witness_rates(self):
        rates = criticality.bidirectional_certificate(bidirectional_cycle(5), (1, 2))
        assert rates.rates == (1, 1, 0, 0, 0)

    def test_needs_bidirectional_graph(self):
        with pytest.raises(NotBidirectional):
            criticality.bidirectional_certificate(directed_cycle(3), (1, 2))

    def test_missing_edge(self):
        with pytest.raises(NoSuchEdge):
            criticality.bidirectional_certificate(bidirectional_cycle(5), (1, 3))

    def test_edge_report_rechecks(self):
        g = bidirectional_cycle(4)
        report = criticality.bidirectional_edge_report(g)
        assert report.all_degrade
        assert report.counts()[criticality.STRICT] == 8
        assert all(criticality.recheck_certificate(g, e) for e in report.entries)

    def test_c4_demonstration(self):
        demo = criticality.c4_not_symmetric_critical()
        assert demo.subgraph_code.N == 4
        assert demo.cap_violating_set in ((1, 3), (2, 4))
        assert demo.passes


class TestSymmetricRate:
    def test_directed_triangle_edges_all_degrade(self):
        g = directed_cycle(3)
        report = criticality.symmetric_rate_edge_report(g)
        assert report.all_degrade
        entry = report.entries[0]
        assert entry.certificate.kind == 'beta-gap'
        assert entry.before['beta'] == '[2, 2]'
        assert entry.after['beta'] == '[3, 3]'
        assert criticality.recheck_certificate(g, entry)

    def test_edge_off_cycle_changes_nothing(self):
        g = DiGraph(3, frozenset([(1, 2), (2, 1), (1, 3)]))
        report = criticality.symmetric_rate_edge_report(g)
        verdicts = {e.edge: e.verdict for e in report.entries}
        assert verdicts[(1, 3)] == criticality.NO_CHANGE
        assert not criticality.recheck_certificate(g, report.entries[1])


class TestOneshot:
    def test_k2_edges_are_critical(self):
        g = complete_bidirectional(2)
        spec = AlphabetSpec.binary(2)
        report = criticality.oneshot_edge_report(g, spec)
        assert report.all_degrade
        entry = report.entries[0]
        assert entry.before['oneshot_size'] == '2'
        assert entry.after['oneshot_size'] == '4'
        assert criticality.recheck_certificate(g, entry, spec=spec)

    def test_edge_set_removal(self):
        g = complete_bidirectional(2)
        entry = criticality.oneshot_removal_comparison(g, AlphabetSpec.binary(2), [(1, 2), (2, 1)])
        assert entry.edges == ((1, 2), (2, 1))
        assert entry.verdict == criticality.STRICT

    def test_report_to_dict(self):
        report = criticality.oneshot_edge_report(complete_bidirectional(2), AlphabetSpec.binary(2))
        data = report.to_dict()
        assert data['counts'][criticality.STRICT] == 2
        assert data['entries'][0]['certificate'] == {'kind': 'size-increase', 'before_upper': 2, 'after_lower': 4}


class TestUnionsAndCensus:
    def test_additivity(self):
        report = criticality.union_additivity_check(complete_bidirectional(3), directed_cycle(3))
        assert report.passes
        assert report.metric('mais').union == 3
        assert report.metric('minrank_gf2').holds
        assert report.union_interval.lower == report.union_interval.upper == 3
        assert report.composed_rate == (Fraction(1, 3), Fraction(1, 3))

    def test_census_row(self):
        entries = [criticality.CensusEntry('empty', edgeless(5), Fraction(5)),
                   criticality.CensusEntry('c5', bidirectional_cycle(5), Fraction(5, 2))]
        report = criticality.census_verify(entries)
        assert report.passes
        assert report.certified == 1
        frame = report.to_frame()
        assert list(frame['status']) == ['certified', 'interval-only']

    def test_census_mismatch_fails(self):
        report = criticality.census_verify([criticality.CensusEntry('bad', edgeless(3), Fraction(2))])
        assert not report.passes

    def test_uscs_report_flags_apex(self):
        report = criticality.uscs_necessity_report(fig5())
        assert not report.is_uscs
        assert report.apex_vertices == (6,)
        assert report.to_dict()['oneshot_nonlinear_exception']
        assert criticality.uscs_necessity_report(fig3()).is_uscs

    def test_structure_match_ignores_isolated_vertex(self):
        g = disjoint_union(edgeless(1), cycle_apex_graph(3, 2, 1, 3))
        match = criticality.theorem5_structure_match(g)
        assert match.kind == 'cycle-apex'
        assert match.dropped == (1,)
        assert criticality.theorem5_structure_match(directed_cycle(4)) is None
