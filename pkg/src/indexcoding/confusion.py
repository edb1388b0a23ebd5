"""
영오류(zero-error) 단발(one-shot) 분석

메시지 튜플 사이의 혼동 관계, 혼동 그래프, 최대 구별 가능 집합, 정확한 채색수,
최소 단발 부호 크기, 부호표 검증을 제공합니다. 튜플 순위는 노드 1 이 최상위
자릿수인 혼합 기수 표기입니다.
"""

from dataclasses import dataclass
from functools import cached_property, reduce
from itertools import combinations, product
from operator import mul
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from indexcoding import coloring
from indexcoding.errors import (
    DimensionMismatch, InvalidCode, InvalidParams, NotBidirectional, SizeLimitExceeded,
)
from indexcoding.graph_core import DiGraph, fig5, vertices_to_mask
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

MessageTuple = Tuple[int, ...]

FIG5_MASKS: Tuple[str, ...] = ("00000", "10001", "01111", "01100", "10111")


@dataclass(frozen=True)
class AlphabetSpec:
    """노드별 메시지 알파벳 크기 |W_i|"""
    sizes: Tuple[int, ...]

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if any(s < 1 for s in sizes):
            raise InvalidParams(f"alphabet sizes must be >= 1, got {sizes}")
        object.__setattr__(self, 'sizes', sizes)

    @classmethod
    def binary(cls, n: int) -> 'AlphabetSpec':
        return cls(tuple([2] * n))

    @property
    def n(self) -> int:
        return len(self.sizes)

    @cached_property
    def size(self) -> int:
        return reduce(mul, self.sizes, 1)

    @cached_property
    def weights(self) -> Tuple[int, ...]:
        """혼합 기수 자릿값 (노드 1 이 최상위)"""
        out = [1] * self.n
        for i in range(self.n - 2, -1, -1):
            out[i] = out[i + 1] * self.sizes[i + 1]
        return tuple(out)

    def validate(self, w: Sequence[int]) -> MessageTuple:
        if len(w) != self.n:
            raise DimensionMismatch(f"tuple of length {len(w)} for {self.n} nodes")
        for value, size in zip(w, self.sizes):
            if not 0 <= value < size:
                raise DimensionMismatch(f"value {value} outside alphabet of size {size}")
        return tuple(int(v) for v in w)

    def rank(self, w: Sequence[int]) -> int:
        return sum(v * wt for v, wt in zip(w, self.weights))

    def unrank(self, idx: int) -> MessageTuple:
        out = []
        for wt, size in zip(self.weights, self.sizes):
            out.append((idx // wt) % size)
        return tuple(out)

    def tuples(self) -> Iterator[MessageTuple]:
        return product(*(range(s) for s in self.sizes))


@dataclass(frozen=True)
class ConfusionGraph:
    """모든 메시지 튜플 위의 무향 혼동 그래프 (행 비트셋)"""
    base: DiGraph
    spec: AlphabetSpec
    adj: Tuple[int, ...]

    @property
    def vertex_count(self) -> int:
        return len(self.adj)

    @property
    def edge_count(self) -> int:
        return sum(coloring.popcount(row) for row in self.adj) // 2

    def adjacent(self, a: int, b: int) -> bool:
        return bool(self.adj[a] >> b & 1)

    def to_digraph(self) -> DiGraph:
        """그래프 텍스트 형식 내보내기용 (무향 간선은 양방향, 정점 = 순위+1)"""
        edges = [(a + 1, b + 1) for a, row in enumerate(self.adj) for b in coloring.iter_bits(row)]
        return DiGraph(self.vertex_count, frozenset(edges))


@dataclass(frozen=True)
class CodeTable:
    """모든 튜플 -> 기호 1..N 부호표 (순위 순서)"""
    base: DiGraph
    spec: AlphabetSpec
    symbols: Tuple[int, ...]
    N: int

    def __post_init__(self):
        if self.spec.n != self.base.n:
            raise DimensionMismatch(f"alphabet spec has {self.spec.n} nodes, graph has {self.base.n}")
        if len(self.symbols) != self.spec.size:
            raise DimensionMismatch(f"code table has {len(self.symbols)} rows for {self.spec.size} tuples")
        if self.N < 1 or any(not 1 <= s <= self.N for s in self.symbols):
            raise InvalidParams(f"symbols must lie in 1..{self.N}")

    def symbol(self, w: Sequence[int]) -> int:
        return self.symbols[self.spec.rank(self.spec.validate(w))]

    def used_symbols(self) -> int:
        return len(set(self.symbols))


@dataclass(frozen=True)
class CodeVerdict:
    valid: bool
    violation: Optional[Tuple[MessageTuple, MessageTuple, int]] = None


# ---------------------------------------------------------------------------
# 혼동 관계

def confusable(base: DiGraph, spec: AlphabetSpec, w: Sequence[int], w2: Sequence[int]) -> bool:
    """어떤 노드 i 가 w_i ≠ w'_i 인데 자신의 부가정보로는 둘을 구별하지 못하는지"""
    if spec.n != base.n:
        raise DimensionMismatch(f"alphabet spec has {spec.n} nodes, graph has {base.n}")
    a = spec.validate(w)
    b = spec.validate(w2)
    return confusing_node(base, a, b) is not None


def confusing_node(base: DiGraph, a: MessageTuple, b: MessageTuple) -> Optional[int]:
    for i in base.vertices:
        if a[i - 1] != b[i - 1] and all(a[j - 1] == b[j - 1] for j in base.out_neighbors(i)):
            return i
    return None


def _parse_mask(mask) -> Tuple[int, ...]:
    if isinstance(mask, str):
        return tuple(int(ch) for ch in mask)
    return tuple(int(v) for v in mask)


def is_good_sequence(base: DiGraph, mask) -> bool:
    """
    마스크의 1 위치가 유도하는 부분 그래프에 고립 정점이 없는지.
    양방향 그래프에서 w, w' 가 구별 가능함은 w ⊕ w' 가 좋은 마스크임과 같습니다.

    Args:
        base: 양방향 그래프
        mask: 0/1 튜플 또는 "11100" 같은 문자열
    """
    if not base.is_bidirectional():
        raise NotBidirectional("good-sequence test needs a bidirectional graph")
    bits = _parse_mask(mask)
    if len(bits) != base.n or any(v not in (0, 1) for v in bits):
        raise DimensionMismatch(f"mask {mask!r} is not a binary tuple of length {base.n}")
    support = vertices_to_mask(i + 1 for i, v in enumerate(bits) if v)
    return all(base.out_masks[i] & support for i, v in enumerate(bits) if v)


def good_masks(base: DiGraph) -> List[Tuple[int, ...]]:
    """0 이 아닌 좋은 마스크 전체 (사전순)"""
    return [m for m in product((0, 1), repeat=base.n) if any(m) and is_good_sequence(base, m)]


def good_mask_family_search(base: DiGraph, size: int) -> Optional[List[Tuple[int, ...]]]:
    """
    영 튜플을 포함해 서로 구별 가능한 이진 튜플 size 개를 찾습니다.
    좋은 마스크 중 쌍별 XOR 도 좋은 것들의 클리크를 전수 탐색합니다.

    Returns:
        찾은 집합 (영 튜플이 첫 원소) 또는 None
    """
    if size <= 0:
        return []
    masks = good_masks(base)
    good = set(masks)

    def xor(a, b):
        return tuple(x ^ y for x, y in zip(a, b))

    compatible = {
        (i, j) for i, j in combinations(range(len(masks)), 2) if xor(masks[i], masks[j]) in good
    }

    def extend(chosen: List[int], start: int) -> Optional[List[int]]:
        if len(chosen) == size - 1:
            return chosen
        for idx in range(start, len(masks)):
            if all((c, idx) in compatible for c in chosen):
                found = extend(chosen + [idx], idx + 1)
                if found is not None:
                    return found
        return None

    found = extend([], 0)
    if found is None:
        return None
    return [tuple([0] * base.n)] + [masks[i] for i in found]


# ---------------------------------------------------------------------------
# 혼동 그래프

def build_confusion_graph(base: DiGraph, spec: AlphabetSpec,
                          limits: Optional[Limits] = None) -> ConfusionGraph:
    """
    노드별로 부가정보 값이 같은 튜플들을 묶고, 같은 묶음 안에서 자신의 값이 다른
    튜플끼리 인접시킵니다.
    """
    limits = limits or default_limits()
    if spec.n != base.n:
        raise DimensionMismatch(f"alphabet spec has {spec.n} nodes, graph has {base.n}")
    if spec.size > limits.max_tuples:
        raise SizeLimitExceeded('max_tuples', spec.size, limits.max_tuples)

    all_tuples = list(spec.tuples())
    adj = [0] * spec.size
    for i in base.vertices:
        side = base.out_neighbors(i)
        groups: Dict[Tuple[int, ...], Dict[int, int]] = {}
        for idx, w in enumerate(all_tuples):
            key = tuple(w[j - 1] for j in side)
            by_value = groups.setdefault(key, {})
            by_value[w[i - 1]] = by_value.get(w[i - 1], 0) | (1 << idx)
        for by_value in groups.values():
            union = 0
            for members in by_value.values():
                union |= members
            for members in by_value.values():
                others = union & ~members
                for idx in coloring.iter_bits(members):
                    adj[idx] |= others
    cg = ConfusionGraph(base, spec, tuple(adj))
    logger.debug("confusion graph: %d vertices, %d edges", cg.vertex_count, cg.edge_count)
    return cg


def max_distinguishable_family(cg: ConfusionGraph,
                               limits: Optional[Limits] = None) -> Tuple[int, List[MessageTuple]]:
    """혼동 그래프의 정확한 최대 독립 집합 (쌍별로 구별 가능한 튜플들)"""
    size, members = coloring.max_independent_set(cg.adj, limits)
    return size, [cg.spec.unrank(idx) for idx in members]


def _hint_from_code(cg: ConfusionGraph, code: Optional['CodeTable']) -> Optional[Dict[int, int]]:
    if code is None:
        return None
    verdict = verify_code(code)
    if not verdict.valid:
        raise InvalidCode(f"hint code is not decodable: {verdict.violation}")
    return {idx: s - 1 for idx, s in enumerate(code.symbols)}


def chromatic_number(cg: ConfusionGraph, limits: Optional[Limits] = None,
                     hint: Optional['CodeTable'] = None) -> Tuple[int, Dict[MessageTuple, int]]:
    """
    정확한 채색수와 적정 채색 (튜플 -> 색 1..χ).

    Args:
        cg: 혼동 그래프
        hint: 알려진 유효 부호표 (초기 상한)
    """
    chi, colors = coloring.chromatic_number(cg.adj, limits, _hint_from_code(cg, hint))
    return chi, {cg.spec.unrank(idx): c + 1 for idx, c in sorted(colors.items())}


def chromatic_bounds(cg: ConfusionGraph, limits: Optional[Limits] = None,
                     hint: Optional['CodeTable'] = None) -> Tuple[int, int, List[coloring.BlockBounds]]:
    return coloring.chromatic_bounds(cg.adj, limits, _hint_from_code(cg, hint))


def min_oneshot_size(base: DiGraph, spec: AlphabetSpec, limits: Optional[Limits] = None,
                     hint: Optional['CodeTable'] = None) -> int:
    """공개 메시지의 최소 알파벳 크기 = 혼동 그래프의 채색수"""
    cg = build_confusion_graph(base, spec, limits)
    chi, _ = chromatic_number(cg, limits, hint)
    return chi


def oneshot_size_bounds(base: DiGraph, spec: AlphabetSpec, limits: Optional[Limits] = None,
                        hint: Optional['CodeTable'] = None) -> Tuple[int, int, bool]:
    """
    정확한 값을 시도하고, 탐색 한계에 걸리면 경계로 대신합니다.

    Returns:
        (하한, 상한, 정확 여부)
    """
    cg = build_confusion_graph(base, spec, limits)
    try:
        chi, _ = chromatic_number(cg, limits, hint)
        return chi, chi, True
    except SizeLimitExceeded as e:
        logger.warning("one-shot size: exact search unavailable (%s); using bounds", e)
        lower, upper, _ = chromatic_bounds(cg, limits, hint)
        return lower, upper, False


# ---------------------------------------------------------------------------
# 부호표

def verify_code(code: CodeTable) -> CodeVerdict:
    """혼동 가능한 두 튜플이 같은 기호를 받는지 검사합니다."""
    base, spec = code.base, code.spec
    all_tuples = list(spec.tuples())
    for i in base.vertices:
        side = base.out_neighbors(i)
        seen: Dict[Tuple[Tuple[int, ...], int], Tuple[int, int]] = {}
        for idx, w in enumerate(all_tuples):
            key = (tuple(w[j - 1] for j in side), code.symbols[idx])
            first = seen.get(key)
            if first is None:
                seen[key] = (w[i - 1], idx)
            elif first[0] != w[i - 1]:
                return CodeVerdict(False, (all_tuples[first[1]], w, i))
    return CodeVerdict(True)


def identity_code(base: DiGraph, spec: AlphabetSpec) -> CodeTable:
    return CodeTable(base, spec, tuple(range(1, spec.size + 1)), spec.size)


def constant_code(base: DiGraph, spec: AlphabetSpec) -> CodeTable:
    return CodeTable(base, spec, tuple([1] * spec.size), 1)


def code_from_coloring(base: DiGraph, spec: AlphabetSpec, colors: Dict[MessageTuple, int]) -> CodeTable:
    symbols = tuple(colors[w] for w in spec.tuples())
    return CodeTable(base, spec, symbols, max(symbols))


def min_code_by_search(base: DiGraph, spec: AlphabetSpec, max_tuples: int = 64) -> Tuple[int, CodeTable]:
    """
    튜플 순서대로 기호를 배정하는 백트래킹으로 최소 N 을 찾습니다 (소규모 교차 검증용).
    새 기호는 지금까지 쓴 기호 수 + 1 까지만 허용합니다.
    """
    if spec.size > max_tuples:
        raise SizeLimitExceeded('min_code_tuples', spec.size, max_tuples)
    all_tuples = list(spec.tuples())
    clash = [[confusing_node(base, a, b) is not None for b in all_tuples] for a in all_tuples]

    def attempt(N: int) -> Optional[List[int]]:
        assigned: List[int] = []

        def place(idx: int, used: int) -> bool:
            if idx == len(all_tuples):
                return True
            for s in range(1, min(used + 1, N) + 1):
                if all(not (assigned[j] == s and clash[idx][j]) for j in range(idx)):
                    assigned.append(s)
                    if place(idx + 1, max(used, s)):
                        return True
                    assigned.pop()
            return False

        return assigned if place(0, 0) else None

    for N in range(1, spec.size + 1):
        found = attempt(N)
        if found is not None:
            return N, CodeTable(base, spec, tuple(found), N)
    raise ArithmeticError("identity code always exists")


def fig5_mask_code() -> Tuple[DiGraph, AlphabetSpec, CodeTable]:
    """
    w_6 로 고른 마스크를 w_1..w_5 에 XOR 한 5비트 값을 기호로 보냅니다 (N=32).
    """
    base = fig5()
    spec = AlphabetSpec((2, 2, 2, 2, 2, 5))
    masks = [_parse_mask(m) for m in FIG5_MASKS]
    five_bits = AlphabetSpec.binary(5)
    symbols = []
    for w in spec.tuples():
        mixed = tuple(a ^ b for a, b in zip(w[:5], masks[w[5]]))
        symbols.append(five_bits.rank(mixed) + 1)
    return base, spec, CodeTable(base, spec, tuple(symbols), 32)
