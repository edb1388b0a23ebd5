"""
비트 병렬 그래프 탐색: 최대 독립 집합, DSATUR, 정확한 채색수

인접 행렬은 정수 비트셋 목록 adj[v] (정점 0..N-1) 로 표현합니다.
"""

from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Set, Tuple

from indexcoding.errors import SearchBudgetExceeded, SizeLimitExceeded
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

Adjacency = Sequence[int]


def popcount(x: int) -> int:
    return bin(x).count('1')


def iter_bits(x: int):
    while x:
        low = x & -x
        yield low.bit_length() - 1
        x ^= low


def complement_rows(adj: Adjacency, universe: Optional[int] = None) -> List[int]:
    full = (1 << len(adj)) - 1 if universe is None else universe
    return [(full & ~adj[v]) & ~(1 << v) for v in range(len(adj))]


class _Budget:
    def __init__(self, name: str, limit: int):
        self.name = name
        self.limit = limit
        self.used = 0

    def tick(self, lower=None, upper=None) -> None:
        self.used += 1
        if self.used > self.limit:
            raise SearchBudgetExceeded(self.name, self.limit, lower, upper)


# ---------------------------------------------------------------------------
# 최대 독립 집합

def _greedy_clique_partition_count(adj: Adjacency, cand: int) -> int:
    """후보 집합을 클리크로 탐욕 분할한 조각 수 (독립 집합 크기의 상한)"""
    cliques: List[int] = []
    for v in iter_bits(cand):
        for idx, members in enumerate(cliques):
            if (members & ~adj[v]) == 0:
                cliques[idx] = members | (1 << v)
                break
        else:
            cliques.append(1 << v)
    return len(cliques)


def max_independent_set(adj: Adjacency, limits: Optional[Limits] = None,
                        universe: Optional[int] = None) -> Tuple[int, List[int]]:
    """
    정확한 최대 독립 집합 (포함 우선 분기 한정).

    Args:
        adj: 비트셋 인접 행렬
        limits: 정점 수 한계와 노드 예산
        universe: 탐색할 정점 부분집합 (None이면 전체)

    Returns:
        (크기, 사전순 최소 증인 정점 목록)
    """
    limits = limits or default_limits()
    n = len(adj)
    if n > limits.mis_max_vertices:
        raise SizeLimitExceeded('mis_max_vertices', n, limits.mis_max_vertices)
    cand0 = (1 << n) - 1 if universe is None else universe
    budget = _Budget('mis_node_budget', limits.mis_node_budget)
    best_size = [0]
    best_set = [0]

    def search(chosen: int, size: int, cand: int) -> None:
        budget.tick(best_size[0], None)
        if cand == 0:
            if size > best_size[0]:
                best_size[0] = size
                best_set[0] = chosen
            return
        if size + _greedy_clique_partition_count(adj, cand) <= best_size[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        rest = cand ^ low
        search(chosen | low, size + 1, rest & ~adj[v])
        search(chosen, size, rest)

    search(0, 0, cand0)
    logger.debug("max_independent_set: alpha=%d after %d nodes", best_size[0], budget.used)
    return best_size[0], list(iter_bits(best_set[0]))


def greedy_clique(adj: Adjacency, universe: Optional[int] = None) -> List[int]:
    """차수 우선 탐욕 클리크 (채색수 하한용)"""
    n = len(adj)
    cand_all = (1 << n) - 1 if universe is None else universe
    best: List[int] = []
    for start in sorted(iter_bits(cand_all), key=lambda v: (-popcount(adj[v] & cand_all), v)):
        clique = [start]
        cand = adj[start] & cand_all
        while cand:
            v = max(iter_bits(cand), key=lambda x: (popcount(adj[x] & cand), -x))
            clique.append(v)
            cand &= adj[v]
        if len(clique) > len(best):
            best = clique
    return sorted(best)


# ---------------------------------------------------------------------------
# 채색

def dsatur_coloring(adj: Adjacency, universe: Optional[int] = None) -> Dict[int, int]:
    """DSATUR 탐욕 채색. 색은 0부터."""
    n = len(adj)
    todo = (1 << n) - 1 if universe is None else universe
    color: Dict[int, int] = {}
    neighbor_colors: Dict[int, Set[int]] = {v: set() for v in iter_bits(todo)}
    while todo:
        v = max(iter_bits(todo),
                key=lambda x: (len(neighbor_colors[x]), popcount(adj[x] & todo), -x))
        c = 0
        while c in neighbor_colors[v]:
            c += 1
        color[v] = c
        todo &= ~(1 << v)
        for w in iter_bits(adj[v] & todo):
            neighbor_colors[w].add(c)
    return color


def join_blocks(adj: Adjacency) -> List[int]:
    """
    여그래프의 연결 성분. 서로 다른 성분의 정점은 모두 인접하므로
    채색수는 성분별 채색수의 합입니다.
    """
    n = len(adj)
    comp_rows = complement_rows(adj)
    unseen = (1 << n) - 1
    blocks = []
    while unseen:
        low = unseen & -unseen
        block = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            nxt = comp_rows[bit.bit_length() - 1] & unseen & ~block
            block |= nxt
            frontier |= nxt
        unseen &= ~block
        blocks.append(block)
    return blocks


def _maximal_independent_sets_with(adj: Adjacency, remaining: int, v: int,
                                   budget: _Budget) -> List[int]:
    """remaining 안에서 v 를 포함하는 극대 독립 집합 (여그래프의 Bron-Kerbosch)"""
    def non_adj(w: int) -> int:
        return remaining & ~adj[w] & ~(1 << w)

    found: List[int] = []

    def expand(r: int, p: int, x: int) -> None:
        budget.tick()
        if p == 0 and x == 0:
            found.append(r)
            return
        pivot = max(iter_bits(p | x), key=lambda u: popcount(p & non_adj(u)))
        for w in list(iter_bits(p & ~non_adj(pivot))):
            bit = 1 << w
            expand(r | bit, p & non_adj(w), x & non_adj(w))
            p &= ~bit
            x |= bit

    expand(1 << v, non_adj(v), 0)
    found.sort(key=lambda s: (-popcount(s), sorted(iter_bits(s))))
    return found


def k_colorable(adj: Adjacency, block: int, k: int, alpha: int,
                budget: _Budget) -> Optional[List[int]]:
    """
    block 을 k 개 독립 집합으로 나눌 수 있으면 색 클래스 목록을, 아니면 None.

    색 클래스는 남은 정점 중 차수가 가장 큰 정점을 포함하는 극대 독립 집합으로
    분기합니다. 남은 정점 수가 (남은 색 수 × α) 를 넘으면 가지를 자릅니다.
    """
    failed: Set[Tuple[int, int]] = set()

    def search(remaining: int, colors_left: int) -> Optional[List[int]]:
        if remaining == 0:
            return []
        if colors_left == 0 or popcount(remaining) > colors_left * alpha:
            return None
        if (remaining, colors_left) in failed:
            return None
        budget.tick()
        v = max(iter_bits(remaining), key=lambda x: (popcount(adj[x] & remaining), -x))
        for cls in _maximal_independent_sets_with(adj, remaining, v, budget):
            rest = search(remaining & ~cls, colors_left - 1)
            if rest is not None:
                return [cls] + rest
        failed.add((remaining, colors_left))
        return None

    return search(block, k)


@dataclass(frozen=True)
class BlockBounds:
    vertices: int
    lower: int
    upper: int
    alpha: int
    clique: int


def _block_bounds(adj: Adjacency, block: int, limits: Limits,
                  hint: Optional[Dict[int, int]]) -> Tuple[BlockBounds, Dict[int, int]]:
    size = popcount(block)
    alpha, _ = max_independent_set(adj, limits, universe=block)
    clique = len(greedy_clique(adj, block))
    lower = max(clique, -(-size // max(alpha, 1)))
    coloring = dsatur_coloring(adj, block)
    if hint is not None:
        hinted = _restrict_coloring(hint, block)
        if len(set(hinted.values())) < len(set(coloring.values())):
            coloring = hinted
    upper = len(set(coloring.values()))
    return BlockBounds(size, lower, upper, alpha, clique), coloring


def _restrict_coloring(coloring: Dict[int, int], block: int) -> Dict[int, int]:
    used = sorted({coloring[v] for v in iter_bits(block)})
    relabel = {c: i for i, c in enumerate(used)}
    return {v: relabel[coloring[v]] for v in iter_bits(block)}


def chromatic_bounds(adj: Adjacency, limits: Optional[Limits] = None,
                     hint: Optional[Dict[int, int]] = None) -> Tuple[int, int, List[BlockBounds]]:
    """정확 탐색 없이 결합 분해 + 블록별 (클리크, ⌈N/α⌉, DSATUR) 경계의 합"""
    limits = limits or default_limits()
    results = [_block_bounds(adj, block, limits, hint)[0] for block in join_blocks(adj)]
    return sum(b.lower for b in results), sum(b.upper for b in results), results


def chromatic_number(adj: Adjacency, limits: Optional[Limits] = None,
                     hint: Optional[Dict[int, int]] = None) -> Tuple[int, Dict[int, int]]:
    """
    결합 분해 후 블록별 반복 심화로 정확한 채색수를 구합니다.

    Args:
        adj: 비트셋 인접 행렬
        limits: 블록 크기 한계와 노드 예산
        hint: 이미 알려진 적정 채색 (초기 상한)

    Returns:
        (채색수, 정점 -> 색 번호)
    """
    limits = limits or default_limits()
    blocks = join_blocks(adj)
    budget = _Budget('coloring_node_budget', limits.coloring_node_budget)
    total = 0
    coloring: Dict[int, int] = {}
    lower_sum = 0
    upper_sum = 0
    plans = []
    for block in blocks:
        size = popcount(block)
        if size > limits.exact_coloring_max_vertices:
            raise SizeLimitExceeded('exact_coloring_max_vertices', size, limits.exact_coloring_max_vertices)
        bounds, block_coloring = _block_bounds(adj, block, limits, hint)
        lower_sum += bounds.lower
        upper_sum += bounds.upper
        plans.append((block, bounds, block_coloring))
    logger.debug("chromatic_number: %d join block(s), bounds %d..%d", len(blocks), lower_sum, upper_sum)

    for block, bounds, block_coloring in plans:
        best = bounds.upper
        for k in range(bounds.lower, bounds.upper):
            try:
                classes = k_colorable(adj, block, k, bounds.alpha, budget)
            except SearchBudgetExceeded:
                logger.warning("chromatic_number: budget exhausted at k=%d", k)
                raise SearchBudgetExceeded('coloring_node_budget', limits.coloring_node_budget,
                                           lower_sum - bounds.lower + k + total, total + upper_sum)
            if classes is not None:
                best = k
                block_coloring = {v: idx for idx, cls in enumerate(classes) for v in iter_bits(cls)}
                break
        # 확정된 블록은 하한/상한 합에서 제외하고 total 로 옮김
        lower_sum -= bounds.lower
        upper_sum -= bounds.upper
        for v, c in block_coloring.items():
            coloring[v] = total + c
        total += best
    return total, coloring
