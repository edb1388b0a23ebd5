import numpy as np
import pytest

from indexcoding import suites
from indexcoding.errors import UnknownSuite
from utils.config import Limits


def test_registry_names():
    assert set(suites.SUITES) == {
        'thm1', 'cycle5', 'fig5', 'thm5', 'census', 'additivity', 'conjecture1', 'bidirectional', 'pruning',
        'split',
    }


def test_unknown_suite():
    with pytest.raises(UnknownSuite):
        suites.run_suite('fig9')


@pytest.mark.parametrize('name', ['conjecture1', 'cycle5'])
def test_light_suites_pass(name):
    result = suites.run_suite(name, Limits())
    assert result.passed, [c for c in result.checks if not c[1]]
    assert result.checks


def test_golden_dict_has_no_timing():
    result = suites.run_suite('conjecture1')
    assert 'elapsed_seconds' not in result.to_dict(golden=True)
    assert 'elapsed_seconds' in result.to_dict()


def test_failed_check_is_recorded():
    result = suites.SuiteResult('demo')
    assert not result.check("always fails", False, 'detail')
    assert not result.passed
    assert result.to_dict(golden=True)['checks'] == [
        {'check': 'always fails', 'passed': False, 'detail': 'detail'},
    ]


def test_pruning_sample():
    result = suites.SuiteResult('pruning')
    suites.suite_pruning(result, Limits(), samples=40)
    assert result.passed


def test_split_sample():
    result = suites.SuiteResult('split')
    suites.suite_split(result, Limits(), samples=20)
    assert result.passed


def test_random_generators_are_seeded():
    first = suites.random_digraph(5, 0.5, np.random.default_rng(suites.SEED))
    second = suites.random_digraph(5, 0.5, np.random.default_rng(suites.SEED))
    assert first == second
