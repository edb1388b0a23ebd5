"""
설정 로더
config/job_config.yaml 에서 탐색 한계값과 로그 레벨을 읽어옵니다.
"""

import os
from dataclasses import dataclass, fields, replace
from typing import Any, Dict, Optional

import yaml

PROJECT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))
DEFAULT_CONFIG_PATH = os.path.join(PROJECT_ROOT, 'config', 'job_config.yaml')
DATA_DIR_ENV = 'INDEXCODING_DATA_DIR'

# max_n 재정의가 적용되는 정점 수 한계값
VERTEX_LIMIT_FIELDS = (
    'mais_max_n', 'isomorphism_max_n', 'clique_max_n', 'cycle_cover_max_n', 'minrank_max_n',
)


@dataclass(frozen=True)
class Limits:
    """엔진별 탐색 한계값"""
    mais_max_n: int = 20
    isomorphism_max_n: int = 8
    clique_max_n: int = 10
    cycle_cover_max_n: int = 10
    minrank_max_n: int = 10
    max_tuples: int = 2 ** 20
    mis_max_vertices: int = 2 ** 16
    exact_coloring_max_vertices: int = 256
    coloring_node_budget: int = 2_000_000
    mis_node_budget: int = 5_000_000
    minrank_node_budget: int = 2_000_000


_cache: Dict[str, Dict[str, Any]] = {}


def load_config(path: Optional[str] = None) -> Dict[str, Any]:
    """
    YAML 설정 파일을 읽습니다.

    Args:
        path: 설정 파일 경로 (None이면 기본 경로)

    Returns:
        설정 딕셔너리 (파일이 없으면 빈 딕셔너리)
    """
    path = path or DEFAULT_CONFIG_PATH
    if path in _cache:
        return _cache[path]
    if not os.path.exists(path):
        return {}
    with open(path, 'r', encoding='utf-8') as f:
        config = yaml.safe_load(f) or {}
    _cache[path] = config
    return config


def load_limits(overrides: Optional[Dict[str, Any]] = None, path: Optional[str] = None) -> Limits:
    """
    설정 파일과 명령행 재정의를 합쳐 Limits를 만듭니다.

    Args:
        overrides: 필드 이름 -> 값. 'max_n' 키는 모든 정점 수 한계에 적용됩니다.
        path: 설정 파일 경로

    Returns:
        Limits 인스턴스
    """
    known = {f.name for f in fields(Limits)}
    section = load_config(path).get('limits', {}) or {}
    values = {k: int(v) for k, v in section.items() if k in known}

    for key, value in (overrides or {}).items():
        if value is None:
            continue
        if key == 'max_n':
            for name in VERTEX_LIMIT_FIELDS:
                values[name] = int(value)
        elif key in known:
            values[key] = int(value)

    return replace(Limits(), **values)


def default_limits() -> Limits:
    """설정 파일 기준 기본 한계값"""
    return load_limits()


def data_dir() -> str:
    """센서스 데이터 디렉터리 (환경 변수가 있으면 우선)"""
    return os.environ.get(DATA_DIR_ENV) or os.path.join(PROJECT_ROOT, 'data')
