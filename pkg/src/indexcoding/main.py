#!/usr/bin/env python3
"""
index coding 분석 명령줄 인터페이스
그래프/인스턴스/부호 파일을 읽어 분석하고 텍스트 또는 JSON 보고서를 출력합니다.
"""

import argparse
import hashlib
import os
import sys
import time
from datetime import datetime
from typing import Any, Callable, Dict, List, Optional, Tuple

# 상위 디렉터리를 Python 경로에 추가
sys.path.append(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))

from indexcoding import graph_core
from indexcoding.bounds import beta_interval, format_rational
from indexcoding.confusion import AlphabetSpec, fig5_mask_code, oneshot_size_bounds, verify_code
from indexcoding.criticality import census_verify, uscs_necessity_report
from indexcoding.errors import (
    DataFileMissing, DimensionMismatch, IndexCodingError, InvalidCode, ParseError, SizeLimitExceeded,
    UnknownSuite,
)
from indexcoding.groupcast import PRUNE_SETTINGS, prune_groupcast, underlying_digraph
from indexcoding.linear_codes import conjecture1_code, is_valid_linear_code
from indexcoding.report_formatter import ReportFormatter
from indexcoding.suites import SUITES, run_all, run_suite
from pipeline import reader, writer
from utils.config import Limits, load_limits
from utils.logger import setup_logging

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_LIMIT = 3
EXIT_INVALID_CODE = 4
EXIT_SUITE_FAILED = 5

# --output 가 보고서 JSON 을 저장하는 명령 (나머지는 결과 파일 자체를 씀)
REPORT_FILE_COMMANDS = ('analyze', 'verify-code', 'reproduce', 'census')

FIGURES: Dict[str, Callable[[], graph_core.DiGraph]] = {
    'fig1': graph_core.fig1,
    'fig2': graph_core.fig2,
    'fig3': graph_core.fig3,
    'fig5': graph_core.fig5,
    'fig_a22': graph_core.fig_a22,
    'empty5': lambda: graph_core.edgeless(5),
    'cycle5': lambda: graph_core.directed_cycle(5),
    'bicycle5': lambda: graph_core.bidirectional_cycle(5),
}


def main(argv: Optional[List[str]] = None) -> int:
    """메인 함수"""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--json', action='store_true', help='JSON 으로 출력')
    common.add_argument('--golden', action='store_true', help='시각/소요 시간 없이 고정된 출력')
    common.add_argument('--max-n', type=int, help='모든 정점 수 한계를 덮어씀')
    common.add_argument('--max-tuples', type=int, help='혼동 그래프 튜플 수 한계')
    common.add_argument('--output', '-o', help='결과 파일 경로')
    common.add_argument('--verbose', '-v', action='store_true', help='DEBUG 로그 출력')

    parser = argparse.ArgumentParser(
        description="index coding 인스턴스를 분석합니다.",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
예시:
  python main.py analyze fig5.graph --spec 2,2,2,2,2,5 --hint fig5.table
  python main.py prune fig2.graph -o pruned.graph
  python main.py verify-code fig_a22.graph conj1.code
  python main.py reproduce all --golden
        """
    )
    sub = parser.add_subparsers(dest='command', required=True)

    p = sub.add_parser('analyze', parents=[common], help='그래프 분석')
    p.add_argument('graph', help='그래프 파일')
    p.add_argument('--spec', help='알파벳 크기 (예: 2,2,2,2,2,5)')
    p.add_argument('--hint', help='알려진 유효 부호표 파일 (단발 크기 상한)')

    p = sub.add_parser('prune', parents=[common], help='USCS 가지치기')
    p.add_argument('graph', help='그래프 파일')

    p = sub.add_parser('prune-groupcast', parents=[common], help='그룹캐스트 부가정보 가지치기')
    p.add_argument('instance', help='인스턴스 파일')
    p.add_argument('--setting', choices=PRUNE_SETTINGS, default='linear')

    p = sub.add_parser('verify-code', parents=[common], help='부호 검증')
    p.add_argument('graph', help='그래프 파일')
    p.add_argument('code', help='선형 부호 또는 부호표 파일')

    p = sub.add_parser('reproduce', parents=[common], help='재현 검사 실행')
    p.add_argument('suite', help=f"{', '.join(SUITES)} 또는 all")

    p = sub.add_parser('census', parents=[common], help='5-노드 센서스 검증')
    p.add_argument('--csv', help='표를 CSV 로 저장')

    p = sub.add_parser('figure', parents=[common], help='예제 그래프/부호 파일 쓰기')
    p.add_argument('name', choices=sorted(FIGURES) + ['fig5_table', 'conjecture1_code'])

    args = parser.parse_args(argv)
    setup_logging('DEBUG' if args.verbose else None)

    try:
        limits = _limits_from_args(args)
    except IndexCodingError as e:
        return _emit(_create_error_result(args.command, e), args, ReportFormatter()._format_error_result,
                     EXIT_PARSE)

    formatter = ReportFormatter(golden=args.golden)
    commands = {
        'analyze': (cmd_analyze, formatter.format_analysis),
        'prune': (cmd_prune, formatter.format_prune),
        'prune-groupcast': (cmd_prune_groupcast, formatter.format_prune),
        'verify-code': (cmd_verify_code, formatter.format_verification),
        'reproduce': (cmd_reproduce, formatter.format_suite),
        'census': (cmd_census, None),
        'figure': (cmd_figure, _render_figure),
    }
    command, render = commands[args.command]
    try:
        report, code = command(args, limits, formatter)
    except ParseError as e:
        report, code = _create_error_result(args.command, e), EXIT_PARSE
    except (InvalidCode, DimensionMismatch) as e:
        report, code = _create_error_result(args.command, e), EXIT_INVALID_CODE
    except SizeLimitExceeded as e:
        report, code = _create_error_result(args.command, e), EXIT_LIMIT
    except (UnknownSuite, DataFileMissing, OSError) as e:
        report, code = _create_error_result(args.command, e), EXIT_PARSE

    frame = report.pop('_frame', None)
    if args.output and args.command in REPORT_FILE_COMMANDS and 'output_file' not in report:
        report['output_file'] = formatter.save_to_json(report, args.output)
    if frame is not None:
        render = lambda _: formatter.format_census(frame)
    elif render is None:
        render = formatter._format_error_result
    return _emit(report, args, render, code)


def _limits_from_args(args) -> Limits:
    overrides: Dict[str, Any] = {}
    if args.max_n is not None:
        overrides['max_n'] = args.max_n
    if args.max_tuples is not None:
        overrides['max_tuples'] = args.max_tuples
    return load_limits(overrides)


def _emit(report: Dict[str, Any], args, render: Callable[[Dict[str, Any]], str], code: int) -> int:
    if not args.golden and 'timestamp' not in report:
        report['timestamp'] = datetime.now().isoformat()
    if args.golden:
        report.pop('timestamp', None)
        report.pop('timings', None)
    formatter = ReportFormatter(golden=args.golden)
    print(formatter.to_json(report) if args.json else render(report))
    return code


def _render_figure(report: Dict[str, Any]) -> str:
    if report.get('output_file'):
        return f"📁 {report['name']} -> {report['output_file']}"
    return report.get('text', '').rstrip()


def _create_error_result(command: str, error: Exception) -> Dict[str, Any]:
    """오류 결과를 생성합니다."""
    return {
        'command': command,
        'success': False,
        'error': str(error),
        'error_type': type(error).__name__,
        'line': getattr(error, 'line_no', None),
    }


def _digest(path: str) -> str:
    with open(path, 'rb') as f:
        return hashlib.sha256(f.read()).hexdigest()


def _edge_lists(edges) -> List[List[int]]:
    return [list(e) for e in edges]


# ---------------------------------------------------------------------------
# 명령

def cmd_analyze(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    """USCS 가지치기, MAIS, β 구간, minrank, (선택) 최소 단발 크기"""
    g = reader.read_graph(args.graph)
    engines: Dict[str, Any] = {}
    timings: Dict[str, float] = {}
    exit_code = EXIT_OK

    def run(name: str, fn: Callable[[], Any]) -> None:
        nonlocal exit_code
        started = time.perf_counter()
        try:
            engines[name] = fn()
        except SizeLimitExceeded as e:
            engines[name] = f"skipped: {e}"
            exit_code = EXIT_LIMIT
        timings[name] = time.perf_counter() - started

    run('scc', lambda: [list(c) for c in graph_core.strongly_connected_components(g).components])
    run('uscs', lambda: graph_core.is_uscs(g))

    def prune() -> Dict[str, Any]:
        pruned, removed = graph_core.prune_to_uscs(g)
        return {'kept': _edge_lists(pruned.sorted_edges), 'removed': _edge_lists(removed)}

    run('prune', prune)

    def mais() -> Dict[str, Any]:
        value, witness = graph_core.mais(g, limits)
        return {'value': value, 'witness': list(witness)}

    run('mais', mais)

    def interval() -> Dict[str, Any]:
        found = beta_interval(g, limits)
        return {
            'lower': format_rational(found.lower),
            'upper': format_rational(found.upper),
            'upper_engine': found.upper_engine,
            'engines': dict(found.engines),
        }

    run('beta_interval', interval)
    if isinstance(engines['beta_interval'], dict):
        engines['minrank_gf2'] = engines['beta_interval']['engines'].get('minrank_gf2')
        if str(engines['minrank_gf2']).startswith('skipped'):
            exit_code = EXIT_LIMIT

    if args.spec:
        spec = _parse_spec(args.spec, g.n)
        hint = reader.read_code_table(args.hint, g) if args.hint else None

        def oneshot() -> Dict[str, Any]:
            lower, upper, exact = oneshot_size_bounds(g, spec, limits, hint)
            return {'sizes': list(spec.sizes), 'lower': lower, 'upper': upper, 'exact': exact}

        run('oneshot', oneshot)

    report = {
        'command': 'analyze',
        'success': exit_code == EXIT_OK,
        'input': {'path': args.graph, 'digest': _digest(args.graph)},
        'graph': g.to_dict(),
        'engines': engines,
        'timings': {k: round(v, 4) for k, v in timings.items()},
    }
    return report, exit_code


def _parse_spec(text: str, n: int) -> AlphabetSpec:
    try:
        sizes = tuple(int(s) for s in text.split(','))
    except ValueError:
        raise ParseError(f"--spec expects comma-separated integers, got '{text}'")
    if len(sizes) != n:
        raise ParseError(f"--spec lists {len(sizes)} sizes for {n} nodes")
    try:
        return AlphabetSpec(sizes)
    except IndexCodingError as e:
        raise ParseError(str(e))


def cmd_prune(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    g = reader.read_graph(args.graph)
    pruned, removed = graph_core.prune_to_uscs(g)
    necessity = uscs_necessity_report(g)
    report = {
        'command': 'prune',
        'success': True,
        'kept': _edge_lists(pruned.sorted_edges),
        'removed': _edge_lists(removed),
        'uscs_report': necessity.to_dict(),
    }
    if args.output:
        report['output_file'] = writer.write_graph(pruned, args.output, comment=f"pruned from {args.graph}")
    return report, EXIT_OK


def cmd_prune_groupcast(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    h = reader.read_groupcast(args.instance)
    result = prune_groupcast(h, args.setting)
    report = {
        'command': 'prune-groupcast',
        'success': True,
        'setting': result.setting,
        'capacity_preserved': result.capacity_preserved,
        'kept': _edge_lists(underlying_digraph(result.instance).sorted_edges),
        'removed': [list(item) for item in result.removed],
        'instance': result.instance.to_dict(),
    }
    if args.output:
        report['output_file'] = writer.write_groupcast(result.instance, args.output)
    return report, EXIT_OK


def cmd_verify_code(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    """파일 종류에 따라 선형 부호 또는 부호표 검증"""
    g = reader.read_graph(args.graph)
    kind = reader.detect_code_kind(args.code)
    report: Dict[str, Any] = {'command': 'verify-code', 'kind': kind}
    if kind == 'linear':
        code = reader.read_linear_code(args.code)
        valid, certificate = is_valid_linear_code(g, code)
        report['valid'] = valid
        report['rates'] = [format_rational(r) for r in code.rate_vector().rates]
        if valid:
            report['certificate'] = [
                f"W[{i},{j}]: rows {list(alpha)}, side {sorted((f'{v}.{jj}', c) for (v, jj), c in gamma.items())}"
                for (i, j), (alpha, gamma) in sorted(certificate.entries.items())
            ]
        else:
            report['witness'] = "some coordinate is outside rowspace(C) + side information"
    else:
        table = reader.read_code_table(args.code, g)
        verdict = verify_code(table)
        report['valid'] = verdict.valid
        report['N'] = table.N
        if not verdict.valid:
            a, b, node = verdict.violation
            report['witness'] = f"node {node} confuses {list(a)} and {list(b)}, both sent as {table.symbol(a)}"
    report['success'] = report['valid']
    return report, EXIT_OK if report['valid'] else EXIT_INVALID_CODE


def cmd_reproduce(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    results = run_all(limits) if args.suite == 'all' else [run_suite(args.suite, limits)]
    passed = sum(1 for r in results if r.passed)
    summary = {
        'command': 'reproduce',
        'success': passed == len(results),
        'suites': [r.to_dict(golden=args.golden) for r in results],
        'passed_count': passed,
        'total': len(results),
    }
    return summary, EXIT_OK if summary['success'] else EXIT_SUITE_FAILED


def cmd_census(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    report = census_verify(reader.read_census(), limits)
    frame = report.to_frame()
    if args.csv:
        formatter.save_to_csv(frame, args.csv)
    summary = {
        'command': 'census',
        'success': report.passes,
        'rows': frame.to_dict(orient='records'),
        'certified': report.certified,
        '_frame': frame,
    }
    return summary, EXIT_OK if report.passes else EXIT_SUITE_FAILED


def cmd_figure(args, limits: Limits, formatter: ReportFormatter) -> Tuple[Dict[str, Any], int]:
    """내장 예제를 reader 가 읽는 형식으로 출력하거나 파일로 씁니다."""
    if args.name == 'fig5_table':
        _, _, table = fig5_mask_code()
        text = writer.format_code_table_text(table)
    elif args.name == 'conjecture1_code':
        _, code = conjecture1_code()
        text = writer.format_linear_code_text(code)
    else:
        text = writer.format_graph_text(FIGURES[args.name](), comment=args.name)
    report: Dict[str, Any] = {'command': 'figure', 'success': True, 'name': args.name}
    if args.output:
        report['output_file'] = writer.write_text(args.output, text)
    else:
        report['text'] = text
    return report, EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
