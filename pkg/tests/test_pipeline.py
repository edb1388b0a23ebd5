import json
from fractions import Fraction

import pytest

from indexcoding.confusion import verify_code
from indexcoding.errors import DataFileMissing, ParseError
from indexcoding.graph_core import complete_bidirectional, fig5
from indexcoding.groupcast import GroupcastInstance
from indexcoding.linear_codes import is_valid_linear_code
from pipeline import reader, writer

K2_TABLE = """\
N 2
sizes 2 2
0 0 -> 1
0 1 -> 2
1 0 -> 2   # 합 비트
1 1 -> 1
"""


class TestGraphText:
    def test_comments_and_blank_lines(self):
        g = reader.parse_graph_text("# 두 정점\nn 2\n\n1 2  # 한 방향\n2 1\n")
        assert g == complete_bidirectional(2)

    @pytest.mark.parametrize('text, line_no', [
        ("n 3\n1 2\n2 2\n", 3),
        ("n 3\n1 2\n1 2\n", 3),
        ("n 3\n1 4\n", 2),
        ("n 3\n1 x\n", 2),
        ("n 3\n1 2 3\n", 2),
        ("edges 3\n", 1),
    ])
    def test_errors_carry_line_numbers(self, text, line_no):
        with pytest.raises(ParseError) as info:
            reader.parse_graph_text(text)
        assert info.value.line_no == line_no
        assert str(info.value).startswith(f"line {line_no}:")

    def test_json_form(self):
        g = reader.parse_graph('{"n": 2, "edges": [[1, 2], [2, 1]]}')
        assert g == complete_bidirectional(2)

    def test_json_needs_n(self):
        with pytest.raises(ParseError):
            reader.parse_graph('{"edges": []}')

    def test_write_then_read(self, tmp_path):
        path = writer.write_graph(fig5(), str(tmp_path / 'out' / 'fig5.txt'), comment='fig5')
        assert reader.read_graph(path) == fig5()
        json_path = writer.write_graph(fig5(), str(tmp_path / 'fig5.json'))
        assert reader.read_graph(json_path) == fig5()

    def test_invalid_utf8(self, tmp_path):
        path = tmp_path / 'bad.graph'
        path.write_bytes(b'n 3\n\xff\xfe\n')
        with pytest.raises(ParseError, match='UTF-8'):
            reader.read_graph(str(path))


class TestCodeFiles:
    def test_code_table_text(self):
        table = reader.parse_code_table_text(K2_TABLE, complete_bidirectional(2))
        assert table.N == 2
        assert table.symbols == (1, 2, 2, 1)
        assert verify_code(table).valid

    def test_code_table_missing_tuple(self):
        text = "N 2\nsizes 2 2\n0 0 -> 1\n"
        with pytest.raises(ParseError, match='missing'):
            reader.parse_code_table_text(text, complete_bidirectional(2))

    def test_code_table_needs_arrow(self):
        with pytest.raises(ParseError) as info:
            reader.parse_code_table_text("N 2\n0 0 1\n", complete_bidirectional(2))
        assert info.value.line_no == 2

    def test_code_table_json_matches_text(self):
        g = complete_bidirectional(2)
        table = reader.parse_code_table_text(K2_TABLE, g)
        again = reader.parse_code_table_json(writer.code_table_to_dict(table), g)
        assert again.symbols == table.symbols

    def test_linear_code_text(self):
        code = reader.parse_linear_code_text("2 1 2\ndims 1 1\n1 1\n")
        assert (code.q, code.length, code.m) == (2, 1, 2)
        assert is_valid_linear_code(complete_bidirectional(2), code)[0]

    @pytest.mark.parametrize('text', [
        "2 1 2\ndims 1\n1 1\n",
        "2 1 2\ndims 1 1\n1 2\n",
        "2 2 2\ndims 1 1\n1 1\n",
        "4 1 2\ndims 1 1\n1 1\n",
    ])
    def test_linear_code_errors(self, text):
        with pytest.raises(ParseError):
            reader.parse_linear_code_text(text)

    def test_detect_kind(self, tmp_path):
        table_path = tmp_path / 'table.txt'
        table_path.write_text(K2_TABLE)
        linear_path = tmp_path / 'code.json'
        linear_path.write_text(json.dumps({'q': 2, 'dims': [1, 1], 'rows': [[1, 1]]}))
        assert reader.detect_code_kind(str(table_path)) == 'table'
        assert reader.detect_code_kind(str(linear_path)) == 'linear'


class TestGroupcastFiles:
    def test_text_form(self):
        h = reader.parse_groupcast_text("m 2\ndemand 1 side 2\ndemand 2 side 1\ndemand 1 side\n")
        assert h.m == 2
        assert len(h.receivers) == 3
        assert h.receivers[2].side == frozenset()

    def test_demand_in_side(self):
        with pytest.raises(ParseError) as info:
            reader.parse_groupcast_text("m 2\ndemand 1 side 2\ndemand 2 side 2\n")
        assert info.value.line_no == 3

    def test_round_trip(self, tmp_path):
        h = GroupcastInstance.create(3, [(1, [2]), (2, [1, 3]), (3, [])])
        path = writer.write_groupcast(h, str(tmp_path / 'h.txt'))
        assert reader.read_groupcast(path) == h

    def test_repeated_receiver_lines_merge(self):
        h = reader.parse_groupcast_text("m 2\ndemand 1 side 2\ndemand 2 side 1\ndemand 1 side 2\n")
        assert h.counts == (2, 1)
        assert h.is_unicast()
        assert writer.format_groupcast_text(h) == "m 2\ndemand 1 side 2\ndemand 2 side 1\n"

    def test_json_keeps_counts(self, tmp_path):
        h = GroupcastInstance.create(2, [(1, [2]), (1, [2]), (2, [])])
        path = writer.write_groupcast(h, str(tmp_path / 'h.json'))
        assert reader.read_groupcast(path) == h


class TestCensus:
    def test_bundled_census(self):
        entries = reader.read_census()
        assert len(entries) == 32
        assert entries[0].figure == '2'
        assert entries[0].beta == Fraction(5)
        assert all(e.graph.n == 5 for e in entries)

    def test_missing_file(self, tmp_path):
        with pytest.raises(DataFileMissing):
            reader.read_census(str(tmp_path / 'nope.json'))

    def test_data_dir_from_environment(self, tmp_path, monkeypatch):
        (tmp_path / 'census_5node.json').write_text(json.dumps({'entries': [
            {'figure': 'x', 'beta': '5/2', 'n': 5, 'edges': [[1, 2], [2, 1]]},
        ]}))
        monkeypatch.setenv('INDEXCODING_DATA_DIR', str(tmp_path))
        entries = reader.read_census()
        assert [e.figure for e in entries] == ['x']
        assert entries[0].beta == Fraction(5, 2)
