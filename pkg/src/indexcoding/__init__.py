"""
index coding 분석 도구 모음
부가정보 그래프의 구조, 전송률 경계, 혼동 그래프, 선형 부호, 간선 임계성을 계산합니다.

모듈:
- graph_core: 그래프 자료형, SCC/USCS 가지치기, MAIS, Turán 그래프
- bounds: 전송률 벡터 검사, 클리크/사이클 덮개, β 구간
- confusion: 혼동 그래프와 최소 단발 부호 크기
- linear_codes: GF(q) 선형 부호, minrank, cycle-apex 구성
- groupcast: 그룹캐스트 인스턴스와 가지치기
- criticality: 간선 임계성 판정과 인증서
- suites: 재현 검사 모음
"""

from .errors import IndexCodingError, SizeLimitExceeded
from .graph_core import DiGraph, mais, prune_to_uscs, strongly_connected_components
from .bounds import RateVector, beta_interval, check_rate_vector
from .confusion import AlphabetSpec, CodeTable, build_confusion_graph, min_oneshot_size
from .linear_codes import LinearIndexCode, is_valid_linear_code, minrank_gf2
from .groupcast import GroupcastInstance, prune_groupcast

__all__ = [
    'IndexCodingError', 'SizeLimitExceeded',
    'DiGraph', 'mais', 'prune_to_uscs', 'strongly_connected_components',
    'RateVector', 'beta_interval', 'check_rate_vector',
    'AlphabetSpec', 'CodeTable', 'build_confusion_graph', 'min_oneshot_size',
    'LinearIndexCode', 'is_valid_linear_code', 'minrank_gf2',
    'GroupcastInstance', 'prune_groupcast',
]
