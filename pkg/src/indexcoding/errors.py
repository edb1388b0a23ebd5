"""
index coding 도구 모음의 예외 계층
"""

from typing import Any, Optional


class IndexCodingError(Exception):
    """모든 도메인 예외의 기본 클래스"""


class SizeLimitExceeded(IndexCodingError):
    """입력이 설정된 탐색 한계를 넘을 때"""

    def __init__(self, limit_name: str, value: int, limit: int, message: Optional[str] = None):
        self.limit_name = limit_name
        self.value = value
        self.limit = limit
        super().__init__(message or f"{limit_name}: {value} > {limit}")


class SearchBudgetExceeded(SizeLimitExceeded):
    """탐색 노드 예산 소진. 그때까지의 하한/상한을 함께 보고합니다."""

    def __init__(self, limit_name: str, budget: int, lower: Any = None, upper: Any = None):
        self.lower = lower
        self.upper = upper
        super().__init__(
            limit_name, budget, budget,
            f"{limit_name}: search budget {budget} exhausted (bounds {lower}..{upper})",
        )


class InvalidParams(IndexCodingError):
    """매개변수 조건 위반"""


class RateTooHigh(InvalidParams):
    """전송률이 1을 넘을 때"""


class DimensionMismatch(IndexCodingError):
    """튜플/행렬 차원이 그래프와 맞지 않을 때"""


class NotBidirectional(IndexCodingError):
    """양방향 그래프가 필요한 연산에 단방향 간선이 있을 때"""


class NotASinkPartition(IndexCodingError):
    """V′ 에서 V″ 로 가는 간선이 존재할 때"""


class InvalidCode(IndexCodingError):
    """복호 불가능한 부호가 입력될 때"""


class NotACliquePartition(IndexCodingError):
    """분할 조각이 양방향 클리크가 아니거나 V를 분할하지 않을 때"""


class NoSuchEdge(IndexCodingError):
    """그래프에 없는 간선"""


class DataFileMissing(IndexCodingError):
    """센서스 데이터 파일을 찾을 수 없을 때"""


class UnknownSuite(IndexCodingError):
    """알 수 없는 재현 스위트 이름"""


class ParseError(IndexCodingError):
    """입력 파일 파싱 실패. line_no 는 1부터 시작합니다."""

    def __init__(self, message: str, line_no: Optional[int] = None):
        self.line_no = line_no
        where = f"line {line_no}: " if line_no is not None else ""
        super().__init__(f"{where}{message}")


class InvalidGraph(ParseError):
    """자기 루프, 중복 간선, 범위 밖 정점"""
