"""
소수체 GF(q) 위의 선형 index 부호

부호 행렬 C 는 n 행 × Σl_i 열이며, 열은 노드 순서대로 묶인 메시지 기호 w_{ij} 입니다.
공개 메시지는 t = C w 입니다. 체 연산은 galois 의 FieldArray 로 합니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Dict, List, Optional, Sequence, Tuple, Union

import galois
import numpy as np

from indexcoding.bounds import CliqueCover, RateVector, clique_cover_number
from indexcoding.confusion import AlphabetSpec, CodeTable
from indexcoding.errors import (
    DimensionMismatch, InvalidCode, InvalidParams, NotACliquePartition, NotASinkPartition,
    SearchBudgetExceeded, SizeLimitExceeded,
)
from indexcoding.graph_core import DiGraph, mais
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

Coord = Tuple[int, int]


@dataclass(frozen=True)
class PrimeField:
    q: int

    def __post_init__(self):
        if self.q < 2 or not galois.is_prime(self.q):
            raise InvalidParams(f"field size must be prime, got {self.q}")

    @cached_property
    def GF(self):
        return galois.GF(self.q)


@dataclass(frozen=True, eq=False)
class LinearIndexCode:
    """행렬 C (정수 표현, 0..q-1) 와 노드별 차원 l_i"""
    field: PrimeField
    dims: Tuple[int, ...]
    matrix: np.ndarray

    def __post_init__(self):
        dims = tuple(int(l) for l in self.dims)
        if any(l < 0 for l in dims):
            raise InvalidParams(f"dimensions must be non-negative, got {dims}")
        matrix = np.array(self.matrix, dtype=np.int64).reshape(-1, sum(dims)) % self.field.q
        matrix.setflags(write=False)
        object.__setattr__(self, 'dims', dims)
        object.__setattr__(self, 'matrix', matrix)

    @classmethod
    def create(cls, q: int, dims: Sequence[int], rows: Sequence[Sequence[int]]) -> 'LinearIndexCode':
        width = sum(dims)
        data = np.array(rows, dtype=np.int64).reshape(len(rows), width)
        return cls(PrimeField(q), tuple(dims), data)

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def length(self) -> int:
        return self.matrix.shape[0]

    @property
    def m(self) -> int:
        return len(self.dims)

    @cached_property
    def offsets(self) -> Tuple[int, ...]:
        out = [0]
        for l in self.dims:
            out.append(out[-1] + l)
        return tuple(out)

    def column(self, i: int, j: int) -> int:
        """노드 i (1부터) 의 j 번째 기호 (1부터) 의 열 번호 (0부터)"""
        return self.offsets[i - 1] + j - 1

    def node_columns(self, i: int) -> List[int]:
        return list(range(self.offsets[i - 1], self.offsets[i]))

    def coords(self) -> List[Coord]:
        return [(i, j) for i in range(1, self.m + 1) for j in range(1, self.dims[i - 1] + 1)]

    def rate_vector(self) -> RateVector:
        if self.length == 0:
            return RateVector(tuple(Fraction(0) for _ in self.dims))
        return RateVector(tuple(Fraction(l, self.length) for l in self.dims))

    def symmetric_rate(self) -> Optional[Fraction]:
        rates = set(self.rate_vector().rates)
        return rates.pop() if len(rates) == 1 else None

    def to_dict(self) -> Dict[str, object]:
        return {'q': self.q, 'n': self.length, 'dims': list(self.dims), 'rows': self.matrix.tolist()}

    def same_as(self, other: 'LinearIndexCode') -> bool:
        return (self.q == other.q and self.dims == other.dims
                and self.matrix.shape == other.matrix.shape and bool(np.array_equal(self.matrix, other.matrix)))


@dataclass(frozen=True, eq=False)
class EchelonForm:
    matrix: np.ndarray
    pivot_columns: Tuple[int, ...]
    pivots: Tuple[Coord, ...]

    @property
    def rank(self) -> int:
        return len(self.pivot_columns)


@dataclass(frozen=True)
class DecodingCertificate:
    """(i,j) -> (행 계수 α_1..α_n, 부가정보 계수 γ)"""
    entries: Dict[Coord, Tuple[Tuple[int, ...], Dict[Coord, int]]] = field(default_factory=dict)


@dataclass(frozen=True, eq=False)
class SplitResult:
    code_prime: LinearIndexCode
    code_double: LinearIndexCode
    s: int
    v_prime: Tuple[int, ...]
    v_double: Tuple[int, ...]
    graph_prime: DiGraph
    graph_double: DiGraph
    echelon: EchelonForm


# ---------------------------------------------------------------------------
# 기본 선형대수

def _as_int(array) -> np.ndarray:
    return np.asarray(array.view(np.ndarray), dtype=np.int64)


def _echelon(GF, A):
    """
    전진 소거로 단위 피벗 행 사다리꼴을 만듭니다.

    Returns:
        (R, T, 피벗 열 목록), T·A = R
    """
    R = A.copy()
    rows, cols = R.shape
    T = GF.Identity(rows)
    pivots: List[int] = []
    row = 0
    for col in range(cols):
        if row == rows:
            break
        candidates = [r for r in range(row, rows) if R[r, col] != 0]
        if not candidates:
            continue
        p = candidates[0]
        if p != row:
            R[[row, p]] = R[[p, row]]
            T[[row, p]] = T[[p, row]]
        inv = GF(1) / R[row, col]
        R[row] = R[row] * inv
        T[row] = T[row] * inv
        for r in range(row + 1, rows):
            f = R[r, col]
            if f != 0:
                R[r] = R[r] - f * R[row]
                T[r] = T[r] - f * T[row]
        pivots.append(col)
        row += 1
    return R, T, pivots


def _left_solve(GF, R, T, pivots: List[int], target):
    """α·A = target 인 α (R = T·A 사다리꼴), 없으면 None"""
    residual = target.copy()
    combo = GF.Zeros(T.shape[1])
    for r, col in enumerate(pivots):
        coef = residual[col]
        if coef != 0:
            residual = residual - coef * R[r]
            combo = combo + coef * T[r]
    if np.count_nonzero(_as_int(residual)):
        return None
    return combo


def row_reduce(code: LinearIndexCode) -> Tuple[EchelonForm, np.ndarray]:
    """
    C 와 행 동치인 사다리꼴과 가역 변환 T (T·C = R) 를 반환합니다.
    """
    GF = code.field.GF
    R, T, pivots = _echelon(GF, GF(code.matrix.copy()))
    owner = []
    for col in pivots:
        i = next(idx for idx in range(1, code.m + 1) if code.offsets[idx - 1] <= col < code.offsets[idx])
        owner.append((i, col - code.offsets[i - 1] + 1))
    matrix = _as_int(R)
    transform = _as_int(T)
    return EchelonForm(matrix, tuple(pivots), tuple(owner)), transform


def echelon_code(code: LinearIndexCode) -> LinearIndexCode:
    form, _ = row_reduce(code)
    return LinearIndexCode(code.field, code.dims, form.matrix)


# ---------------------------------------------------------------------------
# 유효성

def _check_layout(g: DiGraph, code: LinearIndexCode) -> None:
    if code.m != g.n:
        raise DimensionMismatch(f"code has {code.m} nodes, graph has {g.n}")


def is_valid_linear_code(g: DiGraph, code: LinearIndexCode) -> Tuple[bool, Optional[DecodingCertificate]]:
    """
    모든 노드 i, 좌표 j 에 대해 e_{ij} 가 rowspace(C) + (i 의 부가정보 좌표) 에 있는지 검사하고,
    그렇다면 복호 계수 증명서를 돌려줍니다.
    """
    _check_layout(g, code)
    if code.length == 0:
        # 보낼 것이 없을 때만 유효
        return (True, DecodingCertificate()) if not any(code.dims) else (False, None)
    GF = code.field.GF
    C = GF(code.matrix.copy())
    width = sum(code.dims)
    entries: Dict[Coord, Tuple[Tuple[int, ...], Dict[Coord, int]]] = {}

    for i in g.vertices:
        if code.dims[i - 1] == 0:
            continue
        side_cols = [c for v in g.out_neighbors(i) for c in code.node_columns(v)]
        masked = C.copy()
        if side_cols:
            masked[:, side_cols] = 0
        R, T, pivots = _echelon(GF, masked)
        for j in range(1, code.dims[i - 1] + 1):
            target = GF.Zeros(width)
            target[code.column(i, j)] = 1
            alpha = _left_solve(GF, R, T, pivots, target)
            if alpha is None:
                logger.debug("node %d coordinate %d cannot be decoded", i, j)
                return False, None
            decoded = _as_int(alpha @ C)
            decoded[code.column(i, j)] = (decoded[code.column(i, j)] - 1) % code.q
            gamma: Dict[Coord, int] = {}
            for v in g.out_neighbors(i):
                for jj in range(1, code.dims[v - 1] + 1):
                    value = int(decoded[code.column(v, jj)])
                    if value:
                        gamma[(v, jj)] = value
            entries[(i, j)] = (tuple(int(a) for a in _as_int(alpha)), gamma)
    return True, DecodingCertificate(entries)


# ---------------------------------------------------------------------------
# minrank (GF(2))

def _reduce(vec: int, basis: Dict[int, int]) -> int:
    for lead in sorted(basis, reverse=True):
        if vec >> lead & 1:
            vec ^= basis[lead]
    return vec


def _insert(basis: Dict[int, int], vec: int) -> Dict[int, int]:
    """축약 사다리꼴을 유지하며 vec (이미 basis 로 축약된 0 아닌 벡터) 를 추가"""
    lead = vec.bit_length() - 1
    updated = {}
    for key, b in basis.items():
        updated[key] = b ^ vec if b >> lead & 1 else b
    updated[lead] = vec
    return updated


def _minrank_search(g: DiGraph, limits: Limits) -> Tuple[int, List[int]]:
    n = g.n
    if n > limits.minrank_max_n:
        raise SizeLimitExceeded('minrank_max_n', n, limits.minrank_max_n)
    if n == 0:
        return 0, []

    parts = clique_cover_number(g, limits)[1].parts if n <= limits.clique_max_n else tuple((v,) for v in g.vertices)
    best_rows = [0] * n
    for part in parts:
        mask = sum(1 << (v - 1) for v in part)
        for v in part:
            best_rows[v - 1] = mask
    best = [len(parts), best_rows]
    floor = mais(g, limits)[0]
    if best[0] == floor:
        return best[0], best[1]

    options: List[List[int]] = []
    for i in g.vertices:
        free = g.out_neighbors(i)
        rows = []
        for pattern in range(1 << len(free)):
            row = 1 << (i - 1)
            for pos, v in enumerate(free):
                if pattern >> pos & 1:
                    row |= 1 << (v - 1)
            rows.append(row)
        options.append(rows)

    visited = [0]

    def search(i: int, basis: Dict[int, int], rows: List[int]) -> bool:
        visited[0] += 1
        if visited[0] > limits.minrank_node_budget:
            raise SearchBudgetExceeded('minrank_node_budget', limits.minrank_node_budget, floor, best[0])
        if len(basis) >= best[0]:
            return False
        if i == n:
            best[0] = len(basis)
            best[1] = list(rows)
            return best[0] == floor
        seen = set()
        in_span = []
        grows = []
        for row in options[i]:
            reduced = _reduce(row, basis)
            if reduced in seen:
                continue
            seen.add(reduced)
            (in_span if reduced == 0 else grows).append((row, reduced))
        for row, reduced in in_span + grows:
            next_basis = basis if reduced == 0 else _insert(basis, reduced)
            if search(i + 1, next_basis, rows + [row]):
                return True
        return False

    search(0, {}, [])
    logger.debug("minrank_gf2: %d after %d nodes (floor %d)", best[0], visited[0], floor)
    return best[0], best[1]


def minrank_gf2(g: DiGraph, limits: Optional[Limits] = None) -> int:
    """
    GF(2) 위 g 에 맞는 행렬(대각 1, 비간선 위치 0)의 최소 계수.

    정확 탐색은 n <= limits.minrank_max_n (기본 10) 까지 받습니다. 6 보다 큰 그래프도 받는 대신
    탐색 노드 수를 minrank_node_budget 으로 제한하므로 큰 그래프에서는 결과 대신 예외가 날 수 있습니다.

    Raises:
        SizeLimitExceeded: n 이 minrank_max_n 을 넘을 때
        SearchBudgetExceeded: 노드 예산을 다 썼을 때 (그때까지의 하한/상한 포함).
            CLI 는 이 경우 엔진을 "skipped" 로 기록하고 종료 코드 3 을 씁니다.
    """
    return _minrank_search(g, limits or default_limits())[0]


def minrank_gf2_code(g: DiGraph, limits: Optional[Limits] = None) -> LinearIndexCode:
    """최적 맞춤 행렬의 행공간 기저를 부호 행렬로 쓰는 스칼라 선형 부호"""
    rank, rows = _minrank_search(g, limits or default_limits())
    basis: Dict[int, int] = {}
    for row in rows:
        reduced = _reduce(row, basis)
        if reduced:
            basis = _insert(basis, reduced)
    matrix = [[vec >> (v - 1) & 1 for v in g.vertices] for _, vec in sorted(basis.items(), reverse=True)]
    if len(matrix) != rank:
        raise ArithmeticError(f"fitting matrix rank {len(matrix)} != {rank}")
    return LinearIndexCode.create(2, [1] * g.n, matrix if matrix else np.zeros((0, g.n), dtype=np.int64))


# ---------------------------------------------------------------------------
# 분할과 결합

def permute_nodes(code: LinearIndexCode, order: Sequence[int]) -> LinearIndexCode:
    """노드 열 블록을 order 순서로 재배치"""
    cols = [c for v in order for c in code.node_columns(v)]
    dims = tuple(code.dims[v - 1] for v in order)
    return LinearIndexCode(code.field, dims, code.matrix[:, cols])


def restrict(code: LinearIndexCode, nodes: Sequence[int], rows: Sequence[int]) -> LinearIndexCode:
    cols = [c for v in nodes for c in code.node_columns(v)]
    dims = tuple(code.dims[v - 1] for v in nodes)
    sub = code.matrix[np.ix_(list(rows), cols)] if rows else np.zeros((0, len(cols)), dtype=np.int64)
    return LinearIndexCode(code.field, dims, sub)


def block_diagonal(first: LinearIndexCode, second: LinearIndexCode) -> LinearIndexCode:
    """서로소 합집합 위의 연접 부호"""
    if first.q != second.q:
        raise InvalidParams(f"field mismatch: GF({first.q}) vs GF({second.q})")
    top = np.hstack([first.matrix, np.zeros((first.length, second.matrix.shape[1]), dtype=np.int64)])
    bottom = np.hstack([np.zeros((second.length, first.matrix.shape[1]), dtype=np.int64), second.matrix])
    return LinearIndexCode(first.field, first.dims + second.dims, np.vstack([top, bottom]))


def split_code(g: DiGraph, code: LinearIndexCode, sink: Sequence[int]) -> SplitResult:
    """
    V′ 에서 V″ 로 가는 간선이 없을 때, 열을 V″ 먼저 재배치해 사다리꼴로 만든 뒤
    V″ 블록이 0 인 첫 행 s 를 경계로 두 부호로 나눕니다.

    Args:
        g: 부가정보 그래프
        code: g 위의 유효한 선형 부호
        sink: V′ (나가는 간선이 V′ 안에만 있는 정점 집합)

    Returns:
        SplitResult (code″ = 1..s-1 행의 V″ 열, code′ = s..n 행의 V′ 열)
    """
    _check_layout(g, code)
    v_prime = tuple(sorted(set(sink)))
    if any(not 1 <= v <= g.n for v in v_prime):
        raise InvalidParams(f"sink vertices {v_prime} outside 1..{g.n}")
    v_double = tuple(v for v in g.vertices if v not in set(v_prime))
    crossing = [(u, v) for u, v in g.sorted_edges if u in v_prime and v in v_double]
    if crossing:
        raise NotASinkPartition(f"edges leave the sink side: {crossing}")
    valid, _ = is_valid_linear_code(g, code)
    if not valid:
        raise InvalidCode("input code is not decodable on the graph")

    permuted = permute_nodes(code, v_double + v_prime)
    form, _ = row_reduce(permuted)
    reduced = LinearIndexCode(code.field, permuted.dims, form.matrix)
    width_double = sum(code.dims[v - 1] for v in v_double)

    s = reduced.length + 1
    for k in range(reduced.length):
        if not np.any(form.matrix[k, :width_double]):
            s = k + 1
            break

    local_double = list(range(1, len(v_double) + 1))
    local_prime = list(range(len(v_double) + 1, len(v_double) + len(v_prime) + 1))
    code_double = restrict(reduced, local_double, range(0, s - 1))
    code_prime = restrict(reduced, local_prime, range(s - 1, reduced.length))
    graph_double, _ = g.induced(v_double)
    graph_prime, _ = g.induced(v_prime)
    logger.debug("split_code: s=%d, n''=%d, n'=%d", s, code_double.length, code_prime.length)
    return SplitResult(code_prime, code_double, s, v_prime, v_double, graph_prime, graph_double, form)


# ---------------------------------------------------------------------------
# 명시적 부호기

def clique_xor_code(g: DiGraph, partition: Union[CliqueCover, Sequence[Sequence[int]]]) -> LinearIndexCode:
    """클리크마다 구성원 비트의 XOR 하나씩 보냅니다."""
    parts = partition.parts if isinstance(partition, CliqueCover) else tuple(tuple(p) for p in partition)
    covered = sorted(v for part in parts for v in part)
    if covered != list(g.vertices):
        raise NotACliquePartition(f"parts {parts} do not partition 1..{g.n}")
    for part in parts:
        for u in part:
            for v in part:
                if u != v and not g.has_edge(u, v):
                    raise NotACliquePartition(f"part {tuple(part)} is not a bidirectional clique")
    rows = [[1 if v in part else 0 for v in g.vertices] for part in parts]
    return LinearIndexCode.create(2, [1] * g.n, rows if rows else np.zeros((0, g.n), dtype=np.int64))


def cycle_cover_code(g: DiGraph, cycles: Sequence[Sequence[int]]) -> LinearIndexCode:
    """순환마다 인접 쌍 XOR 을 (ℓ-1) 개 보내고 덮이지 않은 정점은 그대로 보냅니다."""
    rows = []
    covered = set()
    for cycle in cycles:
        for a, b in zip(cycle, list(cycle[1:]) + [cycle[0]]):
            if not g.has_edge(a, b):
                raise InvalidParams(f"({a},{b}) is not an edge of the cycle {tuple(cycle)}")
        for a, b in zip(cycle[:-1], cycle[1:]):
            rows.append([1 if v in (a, b) else 0 for v in g.vertices])
        covered.update(cycle)
    for v in g.vertices:
        if v not in covered:
            rows.append([1 if u == v else 0 for u in g.vertices])
    return LinearIndexCode.create(2, [1] * g.n, rows if rows else np.zeros((0, g.n), dtype=np.int64))


def _check_apex_params(m: int, i: int, j: int, k: int) -> None:
    if m < 2:
        raise InvalidParams(f"cycle length must be at least 2, got {m}")
    if not (1 <= j < i <= k <= m):
        raise InvalidParams(f"need 1 <= j < i <= k <= m, got m={m}, i={i}, j={j}, k={k}")


def cycle_apex_graph(m: int, i: int, j: int, k: int) -> DiGraph:
    _check_apex_params(m, i, j, k)
    apex = m + 1
    edges = {(l, l % m + 1) for l in range(1, m + 1)}
    edges |= {(apex, 1), (apex, i), (j, apex), (k, apex)}
    return DiGraph(m + 1, frozenset(edges))


def _apex_rows(m: int, j: int, k: int) -> List[List[int]]:
    """f_1..f_m (각 행은 m+1 개 집계 메시지 위의 0/1)"""
    rows = []
    for l in range(1, m + 1):
        row = [0] * (m + 1)
        row[l - 1] = 1
        row[l % m] = 1
        if l in (j, k):
            row[m] = 1
        rows.append(row)
    return rows


def cycle_apex_code(m: int, i: int, j: int, k: int) -> Tuple[DiGraph, LinearIndexCode]:
    """
    유향 m-순환과 꼭짓점 m+1 구조 위의 부호. f_l = W_l ⊕ W_{l+1} 에 f_j, f_k 는 W_{m+1} 을
    더하고, 전체 XOR 이 0 이므로 f_1 은 생략해 f_2..f_m 을 보냅니다.
    """
    graph = cycle_apex_graph(m, i, j, k)
    rows = _apex_rows(m, j, k)
    return graph, LinearIndexCode.create(2, [1] * (m + 1), rows[1:])


def full_apex_messages(m: int, j: int, k: int) -> List[List[int]]:
    return _apex_rows(m, j, k)


def blowup_labels(sizes: Sequence[int]) -> List[Tuple[int, int]]:
    """정점 번호 순서의 (u, s) 라벨"""
    return [(u, s) for u, size in enumerate(sizes, start=1) for s in range(1, size + 1)]


def blowup_graph(base_params: Tuple[int, int, int, int], sizes: Sequence[int]) -> DiGraph:
    m, i, j, k = base_params
    base = cycle_apex_graph(m, i, j, k)
    if len(sizes) != base.n or any(s < 1 for s in sizes):
        raise InvalidParams(f"need {base.n} clique sizes >= 1, got {tuple(sizes)}")
    labels = blowup_labels(sizes)
    index = {lab: idx + 1 for idx, lab in enumerate(labels)}
    edges = set()
    for (u, s) in labels:
        for (v, t) in labels:
            if (u, s) == (v, t):
                continue
            if u == v or base.has_edge(u, v):
                edges.add((index[(u, s)], index[(v, t)]))
    return DiGraph(len(labels), frozenset(edges))


def blowup_code(base_params: Tuple[int, int, int, int], sizes: Sequence[int]) -> Tuple[DiGraph, LinearIndexCode]:
    """각 클리크의 XOR 집계 W_u 에 순환-꼭짓점 부호기를 적용합니다."""
    m, i, j, k = base_params
    graph = blowup_graph(base_params, sizes)
    labels = blowup_labels(sizes)
    rows = []
    for agg_row in _apex_rows(m, j, k)[1:]:
        rows.append([agg_row[u - 1] for (u, _) in labels])
    return graph, LinearIndexCode.create(2, [1] * len(labels), rows)


def conjecture1_code() -> Tuple[DiGraph, LinearIndexCode]:
    """
    간선 (2,3) 을 뺀 3-노드 그래프에서 W_1 (2비트) 과 W_2∥W_3 을 XOR 해 보냅니다.
    """
    graph = DiGraph(3, frozenset([(1, 2), (1, 3), (2, 1), (3, 1)]))
    code = LinearIndexCode.create(2, [2, 1, 1], [[1, 0, 1, 0], [0, 1, 0, 1]])
    return graph, code


# ---------------------------------------------------------------------------
# 부호표 전개

def expand_to_table(code: LinearIndexCode, base: DiGraph, limits: Optional[Limits] = None) -> CodeTable:
    """
    노드 i 의 메시지를 q^{l_i} 알파벳의 정수로 보고 t = C w 를 기호로 바꾼 부호표.
    """
    _check_layout(base, code)
    limits = limits or default_limits()
    q = code.q
    spec = AlphabetSpec(tuple(q ** l for l in code.dims))
    if spec.size > limits.max_tuples:
        raise SizeLimitExceeded('max_tuples', spec.size, limits.max_tuples)
    symbols = []
    for w in spec.tuples():
        digits: List[int] = []
        for value, l in zip(w, code.dims):
            digits.extend((value // q ** (l - 1 - pos)) % q for pos in range(l))
        t = code.matrix.dot(np.array(digits, dtype=np.int64)) % q
        rank = 0
        for value in t:
            rank = rank * q + int(value)
        symbols.append(rank + 1)
    return CodeTable(base, spec, tuple(symbols), q ** code.length)
