import json
from fractions import Fraction

import pandas as pd
import pytest

from indexcoding.report_formatter import ReportFormatter


def test_json_renders_rationals_and_sets():
    text = ReportFormatter().to_json({'beta': Fraction(5, 2), 'n': Fraction(4), 'set': frozenset([3, 1])})
    assert json.loads(text) == {'beta': '5/2', 'n': '4', 'set': [1, 3]}


def test_json_rejects_unknown_objects():
    with pytest.raises(TypeError):
        ReportFormatter().to_json({'x': object()})


def test_save_creates_directories(tmp_path):
    path = str(tmp_path / 'reports' / 'analyze.json')
    assert ReportFormatter().save_to_json({'command': 'analyze', 'success': True}, path) == path
    with open(path, encoding='utf-8') as f:
        assert json.load(f)['command'] == 'analyze'


def test_default_name_uses_command(tmp_path, monkeypatch):
    monkeypatch.chdir(tmp_path)
    name = ReportFormatter().save_to_json({'command': 'census'})
    assert name.startswith('indexcoding_census_') and name.endswith('.json')
    assert (tmp_path / name).exists()


def test_census_table_summary():
    frame = pd.DataFrame([{'figure': '2', 'status': 'certified'}, {'figure': '5', 'status': 'interval-only'}])
    text = ReportFormatter(golden=True).format_census(frame)
    assert '확정: 1, 구간만: 1' in text
    assert text.startswith('=' * 60)
