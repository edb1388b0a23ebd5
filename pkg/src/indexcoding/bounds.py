"""
대칭 방송률 β 의 하한/상한과 전송률 벡터 가능성 검사

하한은 MAIS, 상한은 분수 클리크 덮개, 순환 덮개, GF(2) minrank 중 최솟값입니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, Union

import networkx as nx

from indexcoding.errors import DimensionMismatch, InvalidParams, SizeLimitExceeded
from indexcoding.graph_core import (
    DiGraph, Rational, mais, mask_to_vertices, max_weight_acyclic_set,
)
from indexcoding.simplex import maximize
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class RateVector:
    """노드별 유리수 전송률 r_1..r_n"""
    rates: Tuple[Fraction, ...]

    def __post_init__(self):
        values = tuple(Fraction(r) for r in self.rates)
        if any(r < 0 for r in values):
            raise InvalidParams("rates must be non-negative")
        object.__setattr__(self, 'rates', values)

    @classmethod
    def symmetric(cls, n: int, rate: Rational) -> 'RateVector':
        return cls(tuple([Fraction(rate)] * n))

    def __len__(self) -> int:
        return len(self.rates)

    def __getitem__(self, idx: int) -> Fraction:
        return self.rates[idx]


@dataclass(frozen=True)
class CliqueCover:
    """양방향 클리크 조각과 가중치 (정수 덮개는 모든 가중치가 1)"""
    parts: Tuple[Tuple[int, ...], ...]
    weights: Tuple[Fraction, ...] = ()

    def __post_init__(self):
        if not self.weights:
            object.__setattr__(self, 'weights', tuple(Fraction(1) for _ in self.parts))

    @property
    def size(self) -> Fraction:
        return sum(self.weights, Fraction(0))


@dataclass(frozen=True)
class RateCheck:
    passes: bool
    max_acyclic_sum: Fraction
    violating_set: Optional[Tuple[int, ...]]


@dataclass(frozen=True)
class BetaInterval:
    lower: Fraction
    upper: Fraction
    engines: Dict[str, str] = field(default_factory=dict)
    lower_engine: str = 'mais'
    upper_engine: str = ''

    def contains(self, beta: Rational) -> bool:
        return self.lower <= Fraction(beta) <= self.upper

    @property
    def is_tight(self) -> bool:
        return self.lower == self.upper


@dataclass(frozen=True)
class CycleCover:
    bound: int
    cycles: Tuple[Tuple[int, ...], ...]
    singletons: Tuple[int, ...]


def format_rational(value: Rational) -> str:
    """유리수를 "p/q" (정수는 "p") 문자열로"""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def _check_size(g: DiGraph, limit_name: str, limits: Limits) -> None:
    limit = getattr(limits, limit_name)
    if g.n > limit:
        raise SizeLimitExceeded(limit_name, g.n, limit)


# ---------------------------------------------------------------------------
# 전송률 벡터

def check_rate_vector(g: DiGraph, r: Union[RateVector, Sequence[Rational]],
                      limits: Optional[Limits] = None) -> RateCheck:
    """
    모든 비순환 유도 집합 X 에 대해 Σ_{i∈X} r_i <= 1 인지 검사합니다 (필요조건).

    Args:
        g: 부가정보 그래프
        r: 전송률 벡터

    Returns:
        RateCheck (실패 시 합이 최대인 위반 집합 포함)
    """
    rates = r if isinstance(r, RateVector) else RateVector(tuple(r))
    if len(rates) != g.n:
        raise DimensionMismatch(f"rate vector has {len(rates)} entries for {g.n} nodes")
    total, witness = max_weight_acyclic_set(g, rates.rates, limits)
    total = Fraction(total)
    passes = total <= 1
    return RateCheck(passes, total, None if passes else witness)


# ---------------------------------------------------------------------------
# 클리크 덮개

def bidirectional_skeleton(g: DiGraph) -> nx.Graph:
    """양방향 간선만 남긴 무향 그래프"""
    und = nx.Graph()
    und.add_nodes_from(g.vertices)
    und.add_edges_from((u, v) for u, v in g.sorted_edges if u < v and (v, u) in g.edges)
    return und


def maximal_bidirectional_cliques(g: DiGraph) -> List[Tuple[int, ...]]:
    return sorted(tuple(sorted(c)) for c in nx.find_cliques(bidirectional_skeleton(g)))


def clique_cover_number(g: DiGraph, limits: Optional[Limits] = None) -> Tuple[int, CliqueCover]:
    """양방향 클리크로의 최소 분할 (정점 순서 분기 한정)"""
    limits = limits or default_limits()
    _check_size(g, 'clique_max_n', limits)
    if g.n == 0:
        return 0, CliqueCover(())
    both = [g.out_masks[i] & g.in_masks[i] for i in range(g.n)]

    best: List[List[int]] = [[1 << i for i in range(g.n)]]

    def search(v: int, parts: List[int]) -> None:
        if len(parts) >= len(best[0]):
            return
        if v == g.n:
            best[0] = list(parts)
            return
        for idx, part in enumerate(parts):
            if (part & ~both[v]) == 0:
                parts[idx] = part | (1 << v)
                search(v + 1, parts)
                parts[idx] = part
        parts.append(1 << v)
        search(v + 1, parts)
        parts.pop()

    search(0, [])
    cover = CliqueCover(tuple(tuple(mask_to_vertices(p)) for p in best[0]))
    return len(best[0]), cover


def fractional_clique_cover(g: DiGraph, limits: Optional[Limits] = None) -> Tuple[Fraction, CliqueCover]:
    """
    극대 양방향 클리크 위 덮개 LP 의 정확한 최적값.

    쌍대 문제 max Σx_v s.t. Σ_{v∈K} x_v <= 1 을 풀고, 각 클리크 제약의 쌍대값을
    덮개 가중치로 읽습니다.
    """
    limits = limits or default_limits()
    _check_size(g, 'clique_max_n', limits)
    if g.n == 0:
        return Fraction(0), CliqueCover(())
    cliques = maximal_bidirectional_cliques(g)
    A = [[1 if v in clique else 0 for v in g.vertices] for clique in cliques]
    solution = maximize(A, [1] * len(cliques), [1] * g.n)
    if solution.status != 'optimal':
        raise ArithmeticError(f"covering LP ended with status {solution.status}")
    chosen = [(clique, w) for clique, w in zip(cliques, solution.dual) if w > 0]
    cover = CliqueCover(tuple(c for c, _ in chosen), tuple(w for _, w in chosen))
    if cover.size != solution.value:
        raise ArithmeticError(f"dual weights sum {cover.size} != optimum {solution.value}")
    return solution.value, cover


# ---------------------------------------------------------------------------
# 순환 덮개

def _hamiltonian_sets(g: DiGraph) -> List[bool]:
    """각 정점 부분집합이 길이 >= 2 의 해밀턴 순환을 유도하는지"""
    n = g.n
    ham = [False] * (1 << n)
    for start in range(n):
        low = 1 << start
        higher = ~((low << 1) - 1)
        # ends[mask]: start 에서 출발해 mask 를 정확히 지나는 경로의 끝 정점 비트들
        ends: Dict[int, int] = {low: low}
        frontier = [low]
        while frontier:
            grown = []
            for mask in frontier:
                tails = ends[mask]
                while tails:
                    bit = tails & -tails
                    tails ^= bit
                    v = bit.bit_length() - 1
                    if mask != low and g.out_masks[v] & low:
                        ham[mask] = True
                    options = g.out_masks[v] & higher & ~mask
                    while options:
                        nb = options & -options
                        options ^= nb
                        new_mask = mask | nb
                        if new_mask not in ends:
                            ends[new_mask] = 0
                            grown.append(new_mask)
                        ends[new_mask] |= nb
            frontier = grown
    return ham


def _hamiltonian_cycle(g: DiGraph, mask: int) -> Tuple[int, ...]:
    """mask 위 해밀턴 순환 하나 (최소 정점에서 시작, 사전순 첫 번째)"""
    members = mask_to_vertices(mask)
    start = members[0]

    def extend(path: List[int], used: int) -> Optional[List[int]]:
        if used == mask:
            return path if g.has_edge(path[-1], start) else None
        for w in g.out_neighbors(path[-1]):
            bit = 1 << (w - 1)
            if mask & bit and not used & bit:
                found = extend(path + [w], used | bit)
                if found:
                    return found
        return None

    cycle = extend([start], 1 << (start - 1))
    if cycle is None:
        raise ArithmeticError(f"no Hamiltonian cycle on {members}")
    return tuple(cycle)


def cycle_cover(g: DiGraph, limits: Optional[Limits] = None) -> CycleCover:
    """
    V 를 유향 순환(길이 >= 2)과 단일 정점으로 분할할 때
    Σ(ℓ-1) + 단일 정점 수 = n - 순환 수 의 최솟값과 그 분할.
    """
    limits = limits or default_limits()
    _check_size(g, 'cycle_cover_max_n', limits)
    n = g.n
    if n == 0:
        return CycleCover(0, (), ())
    ham = _hamiltonian_sets(g)
    memo: Dict[int, Tuple[int, Tuple[int, ...]]] = {0: (0, ())}

    def best(mask: int) -> Tuple[int, Tuple[int, ...]]:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        count, sets = best(mask ^ low)
        rest = mask ^ low
        sub = rest
        while True:
            candidate = sub | low
            if ham[candidate]:
                c_count, c_sets = best(mask ^ candidate)
                if c_count + 1 > count:
                    count, sets = c_count + 1, (candidate,) + c_sets
            if sub == 0:
                break
            sub = (sub - 1) & rest
        memo[mask] = (count, sets)
        return memo[mask]

    full = (1 << n) - 1
    count, sets = best(full)
    covered = 0
    for s in sets:
        covered |= s
    cycles = tuple(sorted(_hamiltonian_cycle(g, s) for s in sets))
    singletons = tuple(mask_to_vertices(full & ~covered))
    return CycleCover(n - count, cycles, singletons)


def cycle_cover_bound(g: DiGraph, limits: Optional[Limits] = None) -> int:
    return cycle_cover(g, limits).bound


# ---------------------------------------------------------------------------
# β 구간

def beta_interval(g: DiGraph, limits: Optional[Limits] = None) -> BetaInterval:
    """
    β 의 하한(MAIS)과 상한(여러 엔진의 최솟값)을 출처와 함께 계산합니다.
    한계를 넘은 상한 엔진은 "skipped: 이유" 로 기록되고, 모든 상한 엔진이 건너뛰어지면 n 을 씁니다.
    """
    # 순환 import 방지
    from indexcoding.linear_codes import minrank_gf2

    limits = limits or default_limits()
    lower, _ = mais(g, limits)
    engines: Dict[str, str] = {'mais': format_rational(lower)}
    candidates: List[Tuple[Fraction, str]] = []

    upper_engines = (
        ('fractional_clique_cover', lambda: fractional_clique_cover(g, limits)[0]),
        ('cycle_cover', lambda: cycle_cover_bound(g, limits)),
        ('minrank_gf2', lambda: minrank_gf2(g, limits)),
    )
    for name, engine in upper_engines:
        try:
            value = Fraction(engine())
        except SizeLimitExceeded as e:
            engines[name] = f"skipped: {e}"
            logger.warning("beta_interval: %s skipped (%s)", name, e)
            continue
        engines[name] = format_rational(value)
        candidates.append((value, name))

    if candidates:
        upper, upper_engine = min(candidates, key=lambda item: item[0])
    else:
        upper, upper_engine = Fraction(g.n), 'trivial'
    interval = BetaInterval(Fraction(lower), upper, engines, 'mais', upper_engine)
    if interval.lower > interval.upper:
        raise ArithmeticError(f"beta interval inverted: {interval}")
    return interval
