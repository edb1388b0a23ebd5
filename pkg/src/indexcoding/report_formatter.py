import json
import os
from datetime import datetime
from fractions import Fraction
from typing import Any, Dict, List

import pandas as pd

from indexcoding.bounds import format_rational


class ReportFormatter:
    """분석 결과를 텍스트/JSON/CSV 로 출력하는 클래스"""

    def __init__(self, golden: bool = False):
        """
        Args:
            golden: True 이면 시각, 소요 시간처럼 실행마다 바뀌는 값을 출력하지 않습니다
        """
        self.golden = golden

    def format_analysis(self, report: Dict[str, Any]) -> str:
        """
        그래프 분석 결과를 읽기 쉬운 형태로 포맷합니다.

        Args:
            report: cmd_analyze 가 만든 보고서

        Returns:
            포맷된 문자열
        """
        if not report.get('success', False) and 'engines' not in report:
            return self._format_error_result(report)

        output = []
        output.append("=" * 60)
        output.append("🔎 부가정보 그래프 분석 결과")
        output.append("=" * 60)
        output.append("")

        graph = report.get('graph', {})
        output.append("📋 입력")
        output.append("-" * 20)
        output.append(f"파일: {report.get('input', {}).get('path', 'N/A')}")
        output.append(f"SHA-256: {report.get('input', {}).get('digest', 'N/A')}")
        output.append(f"정점 수: {graph.get('n', 0)}, 간선 수: {len(graph.get('edges', []))}")
        if not self.golden and 'timestamp' in report:
            output.append(f"분석 시간: {report['timestamp']}")
        output.append("")

        engines = report.get('engines', {})
        output.append("🧩 구조")
        output.append("-" * 20)
        scc = engines.get('scc', [])
        output.append(f"강연결 성분: {self._components(scc) if isinstance(scc, list) else scc}")
        output.append(f"USCS: {engines.get('uscs', 'N/A')}")
        prune = engines.get('prune', {})
        if isinstance(prune, dict):
            output.append(f"제거 가능한 간선: {self._edges(prune.get('removed', []))}")
        output.append("")

        output.append("📏 전송률 경계")
        output.append("-" * 20)
        output.append(f"MAIS: {self._value(engines.get('mais'))}")
        interval = engines.get('beta_interval', {})
        if isinstance(interval, dict):
            output.append(f"β ∈ [{interval.get('lower')}, {interval.get('upper')}]"
                          f" (상한: {interval.get('upper_engine', '')})")
            for name, value in interval.get('engines', {}).items():
                output.append(f"  • {name}: {value}")
        else:
            output.append(f"β 구간: {interval}")
        output.append(f"minrank (GF(2)): {self._value(engines.get('minrank_gf2'))}")
        if 'oneshot' in engines:
            oneshot = engines['oneshot']
            if isinstance(oneshot, dict):
                exact = "정확" if oneshot.get('exact') else "경계"
                output.append(f"최소 단발 크기: {oneshot.get('lower')}..{oneshot.get('upper')} ({exact})")
            else:
                output.append(f"최소 단발 크기: {oneshot}")
        output.append("")

        if not self.golden and report.get('timings'):
            output.append("⏱️ 소요 시간")
            output.append("-" * 20)
            for name, seconds in report['timings'].items():
                output.append(f"  • {name}: {seconds:.3f}s")
            output.append("")

        output.append("=" * 60)
        return "\n".join(output)

    def format_prune(self, report: Dict[str, Any]) -> str:
        if not report.get('success', False):
            return self._format_error_result(report)

        output = []
        output.append("=" * 60)
        output.append("✂️ USCS 가지치기")
        output.append("=" * 60)
        if 'setting' in report:
            output.append(f"설정: {report['setting']}")
            preserved = report.get('capacity_preserved')
            output.append(f"용량 보존: {'알 수 없음' if preserved is None else preserved}")
        output.append(f"유지: {self._edges(report.get('kept', []))}")
        output.append(f"제거: {self._edges(report.get('removed', []))}")
        if report.get('output_file'):
            output.append(f"📁 가지친 파일: {report['output_file']}")
        output.append("=" * 60)
        return "\n".join(output)

    def format_verification(self, report: Dict[str, Any]) -> str:
        if not report.get('success', False) and 'valid' not in report:
            return self._format_error_result(report)

        output = []
        output.append("=" * 60)
        output.append(f"🔐 부호 검증 ({report.get('kind', 'N/A')})")
        output.append("=" * 60)
        if report.get('valid'):
            output.append("✅ 모든 노드가 복호할 수 있습니다")
            for line in report.get('certificate', []):
                output.append(f"  • {line}")
        else:
            output.append("❌ 복호할 수 없는 노드가 있습니다")
            witness = report.get('witness')
            if witness:
                output.append(f"  • {witness}")
        output.append("=" * 60)
        return "\n".join(output)

    def format_suite(self, summary: Dict[str, Any]) -> str:
        output = []
        output.append("=" * 60)
        output.append("🧪 재현 검사")
        output.append("=" * 60)
        for suite in summary.get('suites', []):
            icon = "✅" if suite['passed'] else "❌"
            timing = ""
            if not self.golden and 'elapsed_seconds' in suite:
                timing = f" ({suite['elapsed_seconds']:.1f}s)"
            output.append(f"{icon} {suite['suite']}{timing}")
            for check in suite['checks']:
                mark = "pass" if check['passed'] else "FAIL"
                detail = f" [{check['detail']}]" if check['detail'] else ""
                output.append(f"    {mark}  {check['check']}{detail}")
        output.append("")
        output.append(f"통과: {summary.get('passed_count', 0)}/{summary.get('total', 0)}")
        output.append("=" * 60)
        return "\n".join(output)

    def format_census(self, frame: pd.DataFrame) -> str:
        """센서스 표를 정렬된 평문 표로"""
        output = []
        output.append("=" * 60)
        output.append("📚 5-노드 임계 그래프 센서스")
        output.append("=" * 60)
        output.append(frame.to_string(index=False))
        certified = int((frame['status'] == 'certified').sum()) if len(frame) else 0
        output.append("")
        output.append(f"확정: {certified}, 구간만: {len(frame) - certified}")
        output.append("=" * 60)
        return "\n".join(output)

    def _format_error_result(self, result: Dict[str, Any]) -> str:
        """오류 결과를 포맷합니다."""
        output = []
        output.append("=" * 60)
        output.append("❌ 실패")
        output.append("=" * 60)
        output.append(f"오류: {result.get('error', 'Unknown error')}")
        if result.get('line') is not None:
            output.append(f"줄: {result['line']}")
        output.append("=" * 60)
        return "\n".join(output)

    def _edges(self, edges: List[List[int]]) -> str:
        if not edges:
            return "(없음)"
        return ", ".join(f"({u},{v})" for u, v in edges)

    def _components(self, components: List[List[int]]) -> str:
        return " ".join("{" + ",".join(str(v) for v in c) + "}" for c in components)

    def _value(self, value: Any) -> str:
        if value is None:
            return "N/A"
        if isinstance(value, dict):
            return str(value.get('value', value))
        return str(value)

    def to_json(self, report: Dict[str, Any], pretty: bool = True) -> str:
        """
        analyze/verify-code/reproduce/census 보고서를 JSON 으로 만듭니다.
        유리수는 이미 "p/q" 문자열이고, 혹시 남은 Fraction 도 같은 형식으로 바꿉니다.
        """
        indent = 2 if pretty else None
        return json.dumps(report, ensure_ascii=False, indent=indent, default=self._json_default)

    def save_to_json(self, report: Dict[str, Any], filename: str = None) -> str:
        """
        보고서를 --output 경로에 씁니다.

        Args:
            report: 명령별 보고서 (command 키로 기본 파일명을 정함)
            filename: 저장 경로. None 이면 indexcoding_<command>_<시각>.json

        Returns:
            저장된 파일 경로
        """
        if filename is None:
            timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
            filename = f"indexcoding_{report.get('command', 'report')}_{timestamp}.json"

        directory = os.path.dirname(filename)
        if directory:
            os.makedirs(directory, exist_ok=True)
        with open(filename, 'w', encoding='utf-8') as f:
            f.write(self.to_json(report) + "\n")

        return filename

    @staticmethod
    def _json_default(value: Any) -> Any:
        if isinstance(value, Fraction):
            return format_rational(value)
        if isinstance(value, (set, frozenset)):
            return sorted(value)
        raise TypeError(f"{type(value).__name__} is not JSON serializable")

    def save_to_csv(self, frame: pd.DataFrame, filename: str) -> str:
        frame.to_csv(filename, index=False, encoding='utf-8')
        return filename
