"""
부가정보(side information) 유향 그래프 모델

정점은 1..n 으로 번호가 매겨지며 간선 (u, v) 는 "노드 u 가 W_v 를 알고 있음" 을 뜻합니다.
강연결 성분, USCS 판정과 가지치기, MAIS, Turán 구성, 합집합, 소규모 동형 판정을 제공합니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple, Union

import networkx as nx

from indexcoding.errors import InvalidGraph, InvalidParams, RateTooHigh, SizeLimitExceeded
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

Edge = Tuple[int, int]
Rational = Union[int, Fraction]


@dataclass(frozen=True)
class DiGraph:
    """정점 1..n 위의 유향 그래프 (자기 루프, 중복 간선 없음)"""
    n: int
    edges: FrozenSet[Edge] = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise InvalidGraph(f"vertex count must be non-negative, got {self.n}")
        items = [(int(u), int(v)) for u, v in self.edges]
        unique = frozenset(items)
        if len(unique) != len(items):
            raise InvalidGraph("duplicate edge")
        for u, v in items:
            if u == v:
                raise InvalidGraph(f"self-loop at vertex {u}")
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise InvalidGraph(f"edge ({u},{v}) outside 1..{self.n}")
        object.__setattr__(self, 'edges', unique)

    @property
    def vertices(self) -> range:
        return range(1, self.n + 1)

    @cached_property
    def sorted_edges(self) -> List[Edge]:
        return sorted(self.edges)

    @cached_property
    def out_masks(self) -> Tuple[int, ...]:
        """정점 v 의 외부 이웃 비트마스크 (비트 u-1)"""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u - 1] |= 1 << (v - 1)
        return tuple(masks)

    @cached_property
    def in_masks(self) -> Tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[v - 1] |= 1 << (u - 1)
        return tuple(masks)

    def out_neighbors(self, v: int) -> List[int]:
        return mask_to_vertices(self.out_masks[v - 1])

    def has_edge(self, u: int, v: int) -> bool:
        return (u, v) in self.edges

    def is_bidirectional(self) -> bool:
        return all((v, u) in self.edges for u, v in self.edges)

    def remove_edges(self, edges: Iterable[Edge]) -> 'DiGraph':
        return DiGraph(self.n, self.edges - frozenset(edges))

    def add_edges(self, edges: Iterable[Edge]) -> 'DiGraph':
        return DiGraph(self.n, self.edges | frozenset(edges))

    def induced(self, vertices: Iterable[int]) -> Tuple['DiGraph', List[int]]:
        """
        유도 부분 그래프를 1..k 로 다시 번호 매겨 반환합니다.

        Returns:
            (부분 그래프, 새 번호 -> 원래 정점 목록)
        """
        labels = sorted(set(vertices))
        index = {v: i + 1 for i, v in enumerate(labels)}
        sub = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return DiGraph(len(labels), sub), labels

    def to_networkx(self) -> nx.DiGraph:
        nxg = nx.DiGraph()
        nxg.add_nodes_from(self.vertices)
        nxg.add_edges_from(self.sorted_edges)
        return nxg

    def to_dict(self) -> Dict[str, object]:
        return {'n': self.n, 'edges': [list(e) for e in self.sorted_edges]}

    def __str__(self) -> str:
        return f"DiGraph(n={self.n}, edges={self.sorted_edges})"


@dataclass(frozen=True)
class SccPartition:
    """강연결 성분 분할 (응축 그래프의 위상 순서)"""
    components: Tuple[Tuple[int, ...], ...]

    @cached_property
    def component_of(self) -> Dict[int, int]:
        return {v: i for i, comp in enumerate(self.components) for v in comp}

    def nontrivial(self) -> List[Tuple[int, ...]]:
        return [c for c in self.components if len(c) > 1]


@dataclass(frozen=True)
class TuranSpec:
    """T(m,k): b 개의 (a+1) 크기 파트와 k-b 개의 a 크기 파트"""
    m: int
    k: int
    a: int
    b: int

    @property
    def part_sizes(self) -> List[int]:
        return [self.a + 1] * self.b + [self.a] * (self.k - self.b)


@dataclass(frozen=True)
class MinimalGraphResult:
    graph: DiGraph
    edge_count: int
    parts: int
    below_minimum_rate: bool = False


@dataclass(frozen=True)
class UniquenessResult:
    """균등 전송률 최소 그래프의 유일성 전수 탐색 결과"""
    rate: Fraction
    m: int
    edge_count: int
    survivors: int
    classes: Tuple[DiGraph, ...]
    fewer_edge_survivors: int
    matches_construction: bool

    @property
    def unique(self) -> bool:
        return len(self.classes) == 1 and self.matches_construction and self.fewer_edge_survivors == 0


# ---------------------------------------------------------------------------
# 비트마스크 도우미

def mask_to_vertices(mask: int) -> List[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length())
        mask ^= low
    return out


def vertices_to_mask(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def _reach(out_masks: Sequence[int], start: int, allowed: int) -> int:
    """start 비트들에서 allowed 안에서 도달 가능한 정점 집합"""
    seen = start & allowed
    frontier = seen
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        nxt = out_masks[low.bit_length() - 1] & allowed & ~seen
        seen |= nxt
        frontier |= nxt
    return seen


def _closes_cycle(g: DiGraph, chosen: int, v: int) -> bool:
    """비순환 집합 chosen 에 v 를 추가하면 순환이 생기는지"""
    if g.out_masks[v - 1] & g.in_masks[v - 1] & chosen:
        return True
    reached = _reach(g.out_masks, g.out_masks[v - 1] & chosen, chosen)
    return bool(reached & g.in_masks[v - 1])


def is_acyclic_mask(g: DiGraph, mask: int) -> bool:
    """mask 위의 유도 부분 그래프에 유향 순환이 없는지 (Kahn 방식)"""
    remaining = mask
    while remaining:
        progressed = False
        rest = remaining
        while rest:
            low = rest & -rest
            rest ^= low
            v = low.bit_length()
            if not (g.in_masks[v - 1] & remaining):
                remaining ^= low
                progressed = True
        if not progressed:
            return False
    return True


def is_acyclic_set(g: DiGraph, vertices: Iterable[int]) -> bool:
    return is_acyclic_mask(g, vertices_to_mask(vertices))


def edge_on_cycle(g: DiGraph, edge: Edge) -> bool:
    """간선 (u,v) 가 유향 순환 위에 있는지: v 에서 u 로 돌아오는 경로 존재 여부"""
    u, v = edge
    full = (1 << g.n) - 1
    return bool(_reach(g.out_masks, 1 << (v - 1), full) & (1 << (u - 1)))


# ---------------------------------------------------------------------------
# 고정 그래프 생성자

def edgeless(n: int) -> DiGraph:
    return DiGraph(n, frozenset())


def complete_bidirectional(n: int) -> DiGraph:
    return DiGraph(n, frozenset((u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v))


def directed_cycle(n: int) -> DiGraph:
    return DiGraph(n, frozenset((v, v % n + 1) for v in range(1, n + 1)))


def bidirectional_cycle(n: int) -> DiGraph:
    fwd = {(v, v % n + 1) for v in range(1, n + 1)}
    return DiGraph(n, frozenset(fwd | {(v, u) for u, v in fwd}))


def bidirectional_clique_union(sizes: Sequence[int]) -> DiGraph:
    """크기 목록대로 연속 번호의 양방향 클리크들을 만듭니다."""
    result = edgeless(0)
    for size in sizes:
        result = disjoint_union(result, complete_bidirectional(size))
    return result


def fig1() -> DiGraph:
    return DiGraph(5, frozenset([(1, 2), (1, 3), (2, 3), (3, 4), (4, 5), (5, 1)]))


def fig2() -> DiGraph:
    return DiGraph(5, frozenset([(1, 2), (1, 3), (1, 5), (2, 3), (3, 4), (4, 5)]))


def fig3() -> DiGraph:
    return DiGraph(6, frozenset([(1, 2), (1, 3), (2, 3), (3, 1), (4, 5), (5, 4)]))


def fig5() -> DiGraph:
    """양방향 5-순환 1-2-3-4-5 와 꼭짓점 6 에서 나머지 모두로 가는 간선"""
    cycle = bidirectional_cycle(5)
    return DiGraph(6, cycle.edges | frozenset((6, v) for v in range(1, 6)))


def fig_a22() -> DiGraph:
    return DiGraph(3, frozenset([(1, 2), (1, 3), (2, 3), (2, 1), (3, 1)]))


# ---------------------------------------------------------------------------
# 구조 판정

def strongly_connected_components(g: DiGraph) -> SccPartition:
    """
    강연결 성분을 응축 그래프의 위상 순서로 반환합니다.
    위상 순서가 결정되지 않는 부분은 가장 작은 정점 기준으로 정렬합니다.
    """
    nxg = g.to_networkx()
    comps = [tuple(sorted(c)) for c in nx.strongly_connected_components(nxg)]
    cond = nx.condensation(nxg, scc=[set(c) for c in comps])
    order = nx.lexicographical_topological_sort(cond, key=lambda c: min(cond.nodes[c]['members']))
    return SccPartition(tuple(tuple(sorted(cond.nodes[c]['members'])) for c in order))


def is_uscs(g: DiGraph) -> bool:
    comp = strongly_connected_components(g).component_of
    return all(comp[u] == comp[v] for u, v in g.edges)


def prune_to_uscs(g: DiGraph) -> Tuple[DiGraph, List[Edge]]:
    """
    어떤 유향 순환에도 속하지 않는 간선을 제거합니다.

    Returns:
        (USCS 부분 그래프, 정렬된 제거 간선 목록)
    """
    comp = strongly_connected_components(g).component_of
    removed = [e for e in g.sorted_edges if comp[e[0]] != comp[e[1]]]
    if removed:
        logger.debug("prune_to_uscs: %d edge(s) lie on no cycle", len(removed))
    return g.remove_edges(removed), removed


# ---------------------------------------------------------------------------
# 최대 비순환 유도 부분 그래프

def max_weight_acyclic_set(g: DiGraph, weights: Sequence[Rational],
                           limits: Optional[Limits] = None) -> Tuple[Rational, Tuple[int, ...]]:
    """
    가중치 합이 최대인 비순환 유도 정점 집합을 찾습니다.

    자명한 강연결 성분의 정점은 항상 포함하고, 나머지는 성분별로 독립적으로
    정점 번호 순서의 포함-우선 분기 한정 탐색을 합니다. 동률이면 작은 번호의
    정점을 포함하는 집합이 먼저 선택됩니다.

    Args:
        g: 그래프
        weights: 정점별 음이 아닌 가중치 (길이 n)
        limits: 탐색 한계

    Returns:
        (최대 가중치, 정렬된 증인 집합)
    """
    limits = limits or default_limits()
    if g.n > limits.mais_max_n:
        raise SizeLimitExceeded('mais_max_n', g.n, limits.mais_max_n)
    if len(weights) != g.n:
        raise InvalidParams(f"expected {g.n} weights, got {len(weights)}")

    total: Rational = 0
    chosen = 0
    for comp in strongly_connected_components(g).components:
        if len(comp) == 1:
            chosen |= 1 << (comp[0] - 1)
            total += weights[comp[0] - 1]
            continue
        value, mask = _best_in_component(g, comp, weights)
        total += value
        chosen |= mask
    return total, tuple(mask_to_vertices(chosen))


def _best_in_component(g: DiGraph, comp: Tuple[int, ...],
                       weights: Sequence[Rational]) -> Tuple[Rational, int]:
    order = list(comp)
    suffix = [0] * (len(order) + 1)
    for idx in range(len(order) - 1, -1, -1):
        suffix[idx] = suffix[idx + 1] + max(weights[order[idx] - 1], 0)

    best_value: List[Optional[Rational]] = [None]
    best_mask = [0]

    def search(idx: int, chosen: int, value: Rational) -> None:
        if best_value[0] is not None and value + suffix[idx] <= best_value[0]:
            return
        if idx == len(order):
            best_value[0] = value
            best_mask[0] = chosen
            return
        v = order[idx]
        if not _closes_cycle(g, chosen, v):
            search(idx + 1, chosen | (1 << (v - 1)), value + weights[v - 1])
        search(idx + 1, chosen, value)

    search(0, 0, 0)
    return best_value[0], best_mask[0]


def mais(g: DiGraph, limits: Optional[Limits] = None) -> Tuple[int, Tuple[int, ...]]:
    """최대 비순환 유도 부분 그래프의 크기와 사전순 최소 증인"""
    size, witness = max_weight_acyclic_set(g, [1] * g.n, limits)
    return int(size), witness


# ---------------------------------------------------------------------------
# Turán 구성

def turan_spec(m: int, k: int) -> TuranSpec:
    if k < 1 or k > m:
        raise InvalidParams(f"need 1 <= k <= m, got m={m}, k={k}")
    a, b = divmod(m, k)
    return TuranSpec(m=m, k=k, a=a, b=b)


def turan_graph(m: int, k: int) -> DiGraph:
    """완전 k-분할 그래프 T(m,k) (무향 간선은 양방향 간선 쌍)"""
    spec = turan_spec(m, k)
    part_of: Dict[int, int] = {}
    v = 1
    for idx, size in enumerate(spec.part_sizes):
        for _ in range(size):
            part_of[v] = idx
            v += 1
    edges = [(u, w) for u in range(1, m + 1) for w in range(1, m + 1)
             if u != w and part_of[u] != part_of[w]]
    return DiGraph(m, frozenset(edges))


def turan_edge_count(m: int, k: int) -> int:
    """닫힌 형식 e(m,k) = (1 - 1/k) m²/2 - b(k-b)/(2k), 구성 그래프와 교차 검증"""
    spec = turan_spec(m, k)
    value = Fraction(1, 2) * (1 - Fraction(1, k)) * m * m - Fraction(spec.b * (k - spec.b), 2 * k)
    if value.denominator != 1:
        raise ArithmeticError(f"e({m},{k}) is not integral: {value}")
    count = int(value)
    constructed = len(turan_graph(m, k).edges) // 2
    if constructed != count:
        raise ArithmeticError(f"e({m},{k}) closed form {count} != constructed {constructed}")
    return count


def minimal_equal_rate_graph(r: Rational, m: int) -> MinimalGraphResult:
    """
    균등 전송률 r 을 지원하는 간선 수 최소의 m-정점 그래프 (Turán 그래프의 여그래프).

    Args:
        r: 목표 대칭 전송률
        m: 정점 수

    Returns:
        MinimalGraphResult (r < 1/m 이면 빈 그래프와 below_minimum_rate=True)
    """
    r = Fraction(r)
    if m < 1:
        raise InvalidParams(f"m must be positive, got {m}")
    if r > 1:
        raise RateTooHigh(f"rate {r} exceeds 1")
    if r <= 0:
        raise InvalidParams(f"rate must be positive, got {r}")
    if r < Fraction(1, m):
        return MinimalGraphResult(edgeless(m), 0, m, below_minimum_rate=True)

    k = int(1 / r)
    spec = turan_spec(m, k)
    graph = bidirectional_clique_union(spec.part_sizes)
    edge_count = m * (m - 1) - 2 * turan_edge_count(m, k)
    if len(graph.edges) != edge_count:
        raise ArithmeticError(f"g({r},{m}) = {edge_count} but construction has {len(graph.edges)}")
    return MinimalGraphResult(graph, edge_count, k)


def rate_edge_requirement(r: Rational, m: int) -> int:
    """g(r,m) = m(m-1) - 2 e(m, ⌊1/r⌋)"""
    return minimal_equal_rate_graph(r, m).edge_count


# ---------------------------------------------------------------------------
# 분해와 결합

def forward_backward_split(g: DiGraph, order: Sequence[int]) -> Tuple[DiGraph, DiGraph]:
    """순서상 앞에서 뒤로 가는 간선(forward)과 나머지(backward)로 나눕니다."""
    if sorted(order) != list(g.vertices):
        raise InvalidParams(f"order must be a permutation of 1..{g.n}")
    position = {v: i for i, v in enumerate(order)}
    forward = frozenset(e for e in g.edges if position[e[0]] < position[e[1]])
    return DiGraph(g.n, forward), DiGraph(g.n, g.edges - forward)


def disjoint_union(g: DiGraph, h: DiGraph) -> DiGraph:
    """h 의 정점을 n_g+1..n_g+n_h 로 옮겨 붙입니다."""
    shifted = frozenset((u + g.n, v + g.n) for u, v in h.edges)
    return DiGraph(g.n + h.n, g.edges | shifted)


def relabel(g: DiGraph, mapping: Dict[int, int]) -> DiGraph:
    return DiGraph(g.n, frozenset((mapping[u], mapping[v]) for u, v in g.edges))


def _degree_signature(g: DiGraph) -> List[Tuple[int, int]]:
    return sorted((bin(g.out_masks[i]).count('1'), bin(g.in_masks[i]).count('1')) for i in range(g.n))


def is_isomorphic(g: DiGraph, h: DiGraph, limits: Optional[Limits] = None) -> bool:
    """간선 수와 (출차수, 입차수) 다중집합으로 거른 뒤 VF2 로 판정합니다."""
    limits = limits or default_limits()
    for graph in (g, h):
        if graph.n > limits.isomorphism_max_n:
            raise SizeLimitExceeded('isomorphism_max_n', graph.n, limits.isomorphism_max_n)
    if g.n != h.n or len(g.edges) != len(h.edges):
        return False
    if _degree_signature(g) != _degree_signature(h):
        return False
    return nx.is_isomorphic(g.to_networkx(), h.to_networkx())


# ---------------------------------------------------------------------------
# 유일성 전수 탐색

def _has_acyclic_subset(mask_edges: int, subsets: List[Tuple[int, int, List[Tuple[int, int]]]],
                        memo: Dict[Tuple[int, int], bool]) -> bool:
    for s_idx, inner, pairs in subsets:
        key = (s_idx, mask_edges & inner)
        cached = memo.get(key)
        if cached is None:
            cached = _acyclic_from_pairs([p for p in pairs if key[1] >> p[2] & 1])
            memo[key] = cached
        if cached:
            return True
    return False


def _acyclic_from_pairs(edge_items: List[Tuple[int, int, int]]) -> bool:
    succ: Dict[int, List[int]] = {}
    indeg: Dict[int, int] = {}
    for u, v, _ in edge_items:
        succ.setdefault(u, []).append(v)
        indeg[v] = indeg.get(v, 0) + 1
        indeg.setdefault(u, 0)
    queue = [v for v, d in indeg.items() if d == 0]
    seen = 0
    while queue:
        u = queue.pop()
        seen += 1
        for w in succ.get(u, []):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return seen == len(indeg)


def uniqueness_search(r: Rational, m: int, limits: Optional[Limits] = None) -> UniquenessResult:
    """
    m-정점 유향 그래프 중 간선이 정확히 g(r,m) 개이고 모든 (⌊1/r⌋+1)-부분집합이
    순환을 포함하는 것을 전수 열거해 동형류로 묶습니다. g(r,m)-1 개 간선에서도 같은
    조건을 검사합니다 (조건은 간선 추가에 대해 단조이므로 그 이하 전부를 대신함).
    """
    limits = limits or default_limits()
    if m > limits.isomorphism_max_n:
        raise SizeLimitExceeded('isomorphism_max_n', m, limits.isomorphism_max_n)
    construction = minimal_equal_rate_graph(r, m)
    k = construction.parts
    target = construction.edge_count

    all_edges = [(u, v) for u in range(1, m + 1) for v in range(1, m + 1) if u != v]
    subsets = []
    for s_idx, subset in enumerate(combinations(range(1, m + 1), k + 1)):
        members = set(subset)
        pairs = [(u, v, bit) for bit, (u, v) in enumerate(all_edges) if u in members and v in members]
        inner = 0
        for _, _, bit in pairs:
            inner |= 1 << bit
        subsets.append((s_idx, inner, pairs))
    memo: Dict[Tuple[int, int], bool] = {}

    def survivors_with(count: int) -> List[int]:
        found = []
        if count < 0:
            return found
        for combo in combinations(range(len(all_edges)), count):
            mask = 0
            for bit in combo:
                mask |= 1 << bit
            if not _has_acyclic_subset(mask, subsets, memo):
                found.append(mask)
        return found

    exact = survivors_with(target)
    fewer = survivors_with(target - 1) if target > 0 else []
    classes: List[DiGraph] = []
    for mask in exact:
        graph = DiGraph(m, frozenset(e for bit, e in enumerate(all_edges) if mask >> bit & 1))
        if not any(is_isomorphic(graph, rep, limits) for rep in classes):
            classes.append(graph)
    logger.info("uniqueness r=%s m=%d: %d survivors, %d classes", r, m, len(exact), len(classes))
    matches = len(classes) == 1 and is_isomorphic(classes[0], construction.graph, limits)
    return UniquenessResult(Fraction(r), m, target, len(exact), tuple(classes), len(fewer), matches)
