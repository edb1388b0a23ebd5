"""
임계성(criticality) 검사와 증명서

간선 하나를 지웠을 때 지원 전송률이 엄격히 줄어드는지를 설정별로 판정합니다.
단발 설정은 혼동 그래프 채색수, 선형 설정은 부호 유효성, 전송률 벡터 설정은
비순환 집합 합 조건을 씁니다. 엄격한 감소 판정에는 항상 다시 검증 가능한 증명서가 붙습니다.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import pandas as pd

from indexcoding.bounds import (
    BetaInterval, RateVector, beta_interval, check_rate_vector, clique_cover_number,
    cycle_cover_bound, format_rational, fractional_clique_cover,
)
from indexcoding.confusion import (
    AlphabetSpec, CodeTable, build_confusion_graph, chromatic_bounds, oneshot_size_bounds, verify_code,
)
from indexcoding.errors import InvalidParams, NoSuchEdge, NotBidirectional, SizeLimitExceeded
from indexcoding.graph_core import (
    DiGraph, Edge, bidirectional_cycle, disjoint_union, is_acyclic_set, is_isomorphic, is_uscs, mais,
    prune_to_uscs, strongly_connected_components,
)
from indexcoding.linear_codes import (
    LinearIndexCode, blowup_code, blowup_labels, cycle_apex_code, cycle_apex_graph, blowup_graph,
    expand_to_table, is_valid_linear_code, minrank_gf2,
)
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

STRICT = 'strictly-degrades'
NO_CHANGE = 'no-change'
UNKNOWN = 'unknown'

# 엄격 부등식 시연용 ε
EPSILON = Fraction(1, 10)


@dataclass(frozen=True)
class Certificate:
    """
    kind:
        size-increase: 단발 크기 하한이 제거 전 상한보다 큼
        rate-witness: 제거 전 달성 가능한 전송률 벡터가 제거 후 비순환 합 조건을 어김
        acyclic-set: 제거 후 비순환 집합 A 에서 |A|·rate > 1 (source: 구성 증인 stated, 탐색 결과 search)
        beta-gap: 제거 후 β 하한이 제거 전 β 상한보다 큼
    """
    kind: str
    data: Dict[str, Any] = field(default_factory=dict)


@dataclass(frozen=True)
class EdgeVerdict:
    edges: Tuple[Edge, ...]
    before: Dict[str, str]
    after: Dict[str, str]
    verdict: str
    certificate: Optional[Certificate] = None

    @property
    def edge(self) -> Edge:
        return self.edges[0]

    def to_dict(self) -> Dict[str, Any]:
        out = {
            'edges': [list(e) for e in self.edges],
            'before': dict(self.before),
            'after': dict(self.after),
            'verdict': self.verdict,
        }
        if self.certificate is not None:
            out['certificate'] = {'kind': self.certificate.kind, **_jsonable(self.certificate.data)}
        return out


@dataclass(frozen=True)
class CriticalityReport:
    graph: DiGraph
    setting: str
    entries: Tuple[EdgeVerdict, ...]

    @property
    def all_degrade(self) -> bool:
        return all(e.verdict == STRICT for e in self.entries)

    def counts(self) -> Dict[str, int]:
        out = {STRICT: 0, NO_CHANGE: 0, UNKNOWN: 0}
        for e in self.entries:
            out[e.verdict] += 1
        return out

    def to_dict(self) -> Dict[str, Any]:
        return {
            'graph': self.graph.to_dict(),
            'setting': self.setting,
            'counts': self.counts(),
            'entries': [e.to_dict() for e in self.entries],
        }


@dataclass(frozen=True)
class StructureVerification:
    """순환-꼭짓점 구조 (또는 그 확대) 의 부호 유효성과 간선별 비순환 증인"""
    graph: DiGraph
    code: LinearIndexCode
    rate: Optional[Fraction]
    expected_rate: Fraction
    code_valid: bool
    report: CriticalityReport
    labels: Tuple[Tuple[int, int], ...] = ()

    @property
    def searched_edges(self) -> Tuple[Edge, ...]:
        """구성에서 정한 증인이 통하지 않아 탐색으로 증인을 찾은 간선"""
        return tuple(e.edge for e in self.report.entries
                     if e.certificate is not None and e.certificate.data.get('source') == 'search')

    @property
    def passes(self) -> bool:
        return (self.code_valid and self.rate == self.expected_rate and self.report.all_degrade
                and not self.searched_edges)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'graph': self.graph.to_dict(),
            'code': self.code.to_dict(),
            'rate': format_rational(self.rate) if self.rate is not None else None,
            'expected_rate': format_rational(self.expected_rate),
            'code_valid': self.code_valid,
            'passes': self.passes,
            'searched_edges': [list(e) for e in self.searched_edges],
            'report': self.report.to_dict(),
        }


@dataclass(frozen=True)
class C4Demonstration:
    subgraph: DiGraph
    subgraph_code: CodeTable
    subgraph_code_valid: bool
    subgraph_rate: Fraction
    cap_check_passes: bool
    cap_violating_set: Optional[Tuple[int, ...]]
    interval: BetaInterval

    @property
    def passes(self) -> bool:
        return (self.subgraph_code_valid and self.subgraph_code.N == 4 and self.subgraph_rate == Fraction(1, 2)
                and not self.cap_check_passes and self.interval.lower == self.interval.upper == 2)


@dataclass(frozen=True)
class MetricAdditivity:
    name: str
    first: Optional[Fraction]
    second: Optional[Fraction]
    union: Optional[Fraction]
    relation: str
    holds: Optional[bool]
    note: str = ''


@dataclass(frozen=True)
class AdditivityReport:
    metrics: Tuple[MetricAdditivity, ...]
    interval_sum: Tuple[Fraction, Fraction]
    union_interval: BetaInterval
    composed_rate: Tuple[Fraction, Fraction]

    @property
    def passes(self) -> bool:
        return all(m.holds is not False for m in self.metrics)

    def metric(self, name: str) -> MetricAdditivity:
        return next(m for m in self.metrics if m.name == name)


@dataclass(frozen=True)
class CensusEntry:
    figure: str
    graph: DiGraph
    beta: Fraction


@dataclass(frozen=True)
class CensusRow:
    figure: str
    beta: Fraction
    interval: BetaInterval
    contains: bool
    uscs: bool
    certified: bool
    structure: Optional[str]

    @property
    def passes(self) -> bool:
        if not (self.contains and self.uscs):
            return False
        return not self.interval.is_tight or self.interval.lower == self.beta


@dataclass(frozen=True)
class CensusReport:
    rows: Tuple[CensusRow, ...]

    @property
    def passes(self) -> bool:
        return len(self.rows) > 0 and all(r.passes for r in self.rows)

    @property
    def certified(self) -> int:
        return sum(1 for r in self.rows if r.certified)

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame([{
            'figure': r.figure,
            'beta': format_rational(r.beta),
            'lower': format_rational(r.interval.lower),
            'upper': format_rational(r.interval.upper),
            'upper_engine': r.interval.upper_engine,
            'contains': r.contains,
            'uscs': r.uscs,
            'status': 'certified' if r.certified else 'interval-only',
            'structure': r.structure or '',
        } for r in self.rows])


@dataclass(frozen=True)
class UscsReport:
    graph: DiGraph
    is_uscs: bool
    removable: Tuple[Edge, ...]
    apex_vertices: Tuple[int, ...]

    @property
    def oneshot_nonlinear_exception(self) -> bool:
        return len(self.apex_vertices) > 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            'is_uscs': self.is_uscs,
            'removable': [list(e) for e in self.removable],
            'not_critical_in': [] if self.is_uscs else ['linear', 'oneshot-linear', 'asymptotic'],
            'oneshot_nonlinear_exception': self.oneshot_nonlinear_exception,
            'apex_vertices': list(self.apex_vertices),
        }


@dataclass(frozen=True)
class StructureMatch:
    kind: str
    params: Tuple[int, int, int, int]
    sizes: Tuple[int, ...]
    dropped: Tuple[int, ...]

    def describe(self) -> str:
        m, i, j, k = self.params
        if self.kind == 'cycle-apex':
            return f"cycle-apex(m={m},i={i},j={j},k={k})"
        return f"blow-up(m={m},i={i},j={j},k={k}; sizes={self.sizes})"


def _jsonable(data: Dict[str, Any]) -> Dict[str, Any]:
    out = {}
    for key, value in data.items():
        if isinstance(value, Fraction):
            out[key] = format_rational(value)
        elif isinstance(value, RateVector):
            out[key] = [format_rational(r) for r in value.rates]
        elif isinstance(value, LinearIndexCode):
            out[key] = value.to_dict()
        elif isinstance(value, tuple):
            out[key] = list(value)
        else:
            out[key] = value
    return out


def _require_edge(g: DiGraph, e: Edge) -> None:
    if tuple(e) not in g.edges:
        raise NoSuchEdge(f"({e[0]},{e[1]}) is not an edge")


# ---------------------------------------------------------------------------
# 단발 설정

def _size_text(lower: int, upper: int) -> str:
    return str(lower) if lower == upper else f"{lower}..{upper}"


def oneshot_removal_comparison(g: DiGraph, spec: AlphabetSpec, edges: Sequence[Edge],
                               limits: Optional[Limits] = None, before_hint: Optional[CodeTable] = None,
                               exact: bool = True) -> EdgeVerdict:
    """
    간선 집합을 한꺼번에 지웠을 때 최소 단발 크기를 비교합니다.

    Args:
        g: 부가정보 그래프
        spec: 알파벳 크기
        edges: 지울 간선들
        before_hint: 제거 전 그래프의 알려진 유효 부호표
        exact: False 이면 정확 탐색 없이 경계만 씁니다
    """
    limits = limits or default_limits()
    for e in edges:
        _require_edge(g, e)
    after_graph = g.remove_edges(edges)

    def bounds(graph: DiGraph, hint: Optional[CodeTable]) -> Tuple[int, int]:
        if exact:
            lower, upper, _ = oneshot_size_bounds(graph, spec, limits, hint)
            return lower, upper
        lower, upper, _ = chromatic_bounds(build_confusion_graph(graph, spec, limits), limits, hint)
        return lower, upper

    b_lower, b_upper = bounds(g, before_hint)
    a_lower, a_upper = bounds(after_graph, None)
    if a_lower > b_upper:
        verdict = STRICT
        cert = Certificate('size-increase', {'before_upper': b_upper, 'after_lower': a_lower})
    elif b_lower == b_upper == a_lower == a_upper:
        verdict, cert = NO_CHANGE, None
    else:
        verdict, cert = UNKNOWN, None
    return EdgeVerdict(tuple(sorted(tuple(e) for e in edges)),
                       {'oneshot_size': _size_text(b_lower, b_upper)},
                       {'oneshot_size': _size_text(a_lower, a_upper)}, verdict, cert)


def oneshot_edge_report(g: DiGraph, spec: AlphabetSpec, limits: Optional[Limits] = None) -> CriticalityReport:
    """간선마다 g-e 의 최소 단발 크기를 다시 계산해 증가 여부로 판정합니다."""
    limits = limits or default_limits()
    if not g.edges:
        return CriticalityReport(g, 'oneshot', ())
    b_lower, b_upper, _ = oneshot_size_bounds(g, spec, limits)
    entries = []
    for e in g.sorted_edges:
        a_lower, a_upper, _ = oneshot_size_bounds(g.remove_edges([e]), spec, limits)
        if a_lower > b_upper:
            verdict = STRICT
            cert = Certificate('size-increase', {'before_upper': b_upper, 'after_lower': a_lower})
        elif b_lower == b_upper == a_lower == a_upper:
            verdict, cert = NO_CHANGE, None
        else:
            verdict, cert = UNKNOWN, None
        entries.append(EdgeVerdict((e,), {'oneshot_size': _size_text(b_lower, b_upper)},
                                   {'oneshot_size': _size_text(a_lower, a_upper)}, verdict, cert))
    return CriticalityReport(g, 'oneshot', tuple(entries))


# ---------------------------------------------------------------------------
# 전송률 벡터 설정

def _pair_xor_code(g: DiGraph, u: int, v: int) -> LinearIndexCode:
    dims = [1 if w in (u, v) else 0 for w in g.vertices]
    return LinearIndexCode.create(2, dims, [[1, 1]])


def bidirectional_certificate(g: DiGraph, e: Edge, limits: Optional[Limits] = None) -> RateVector:
    """
    양방향 그래프의 간선 (u,v) 에 대해 r_u = r_v = 1, 나머지 0 인 증인 벡터.
    g 에서는 W_u ⊕ W_v 한 비트로 달성되고, g-e 에서는 {u,v} 가 비순환이 되어 합 2 > 1.
    """
    if not g.is_bidirectional():
        raise NotBidirectional("graph has a one-directional edge")
    _require_edge(g, e)
    u, v = e
    code = _pair_xor_code(g, u, v)
    valid, _ = is_valid_linear_code(g, code)
    rates = code.rate_vector()
    after = check_rate_vector(g.remove_edges([e]), rates, limits)
    if not valid or after.passes:
        raise ArithmeticError(f"bidirectional certificate failed on edge {e}")
    return rates


def bidirectional_edge_report(g: DiGraph, limits: Optional[Limits] = None) -> CriticalityReport:
    entries = []
    for e in g.sorted_edges:
        rates = bidirectional_certificate(g, e, limits)
        u, v = e
        cert = Certificate('rate-witness', {'rates': rates, 'code': _pair_xor_code(g, u, v)})
        entries.append(EdgeVerdict((e,), {'rate_vector': 'achievable'}, {'rate_vector': 'infeasible'},
                                   STRICT, cert))
    return CriticalityReport(g, 'rate-vector', tuple(entries))


def c4_not_symmetric_critical(limits: Optional[Limits] = None) -> C4Demonstration:
    """
    양방향 C4 의 부분 그래프 H = {1↔2, 3↔4} 에서 (W1⊕W2, W3⊕W4) 두 비트로 대칭 전송률 1/2 를
    달성하고, C4 자체도 {1,3} 이 비순환이라 1/2 를 넘을 수 없음을 보입니다.
    """
    c4 = bidirectional_cycle(4)
    h = DiGraph(4, frozenset([(1, 2), (2, 1), (3, 4), (4, 3)]))
    code = LinearIndexCode.create(2, [1, 1, 1, 1], [[1, 1, 0, 0], [0, 0, 1, 1]])
    table = expand_to_table(code, h, limits)
    valid = verify_code(table).valid
    cap = check_rate_vector(c4, RateVector.symmetric(4, Fraction(1, 2) + EPSILON), limits)
    return C4Demonstration(h, table, valid, code.symmetric_rate(), cap.passes, cap.violating_set,
                           beta_interval(c4, limits))


def _acyclic_verdict(g: DiGraph, e: Edge, witness: Sequence[int], rate: Fraction,
                     limits: Limits) -> EdgeVerdict:
    after = g.remove_edges([e])
    members = tuple(sorted(witness))
    source = 'stated'
    if not (is_acyclic_set(after, members) and len(members) * rate > 1):
        logger.warning("edge %s: stated witness %s rejected, falling back to search", e, members)
        _, members = mais(after, limits)
        source = 'search'
    ok = is_acyclic_set(after, members) and len(members) * rate > 1
    cert = Certificate('acyclic-set', {'set': tuple(members), 'rate': rate, 'source': source}) if ok else None
    return EdgeVerdict((e,), {'symmetric_rate': format_rational(rate)},
                       {'acyclic_set_size': str(len(members))}, STRICT if ok else UNKNOWN, cert)


def _apex_witness(m: int, i: int, j: int, k: int, e: Edge) -> List[int]:
    """순환-꼭짓점 그래프에서 e 를 지웠을 때의 비순환 집합"""
    apex = m + 1
    cycle = set(range(1, m + 1))
    everything = cycle | {apex}
    if apex not in e:
        return sorted(cycle)
    if e == (apex, 1):
        return sorted(everything - {i})
    if e == (apex, i):
        return sorted(everything - {1})
    if e == (j, apex):
        return sorted(everything - {k})
    if e == (k, apex):
        return sorted(everything - {j})
    raise NoSuchEdge(f"({e[0]},{e[1]}) is not an edge")


def verify_structure_a(m: int, i: int, j: int, k: int, limits: Optional[Limits] = None) -> StructureVerification:
    """순환-꼭짓점 부호가 1/(m-1) 을 달성하고 모든 간선 제거가 이를 불가능하게 하는지"""
    limits = limits or default_limits()
    graph, code = cycle_apex_code(m, i, j, k)
    valid, _ = is_valid_linear_code(graph, code)
    rate = Fraction(1, m - 1)
    entries = [_acyclic_verdict(graph, e, _apex_witness(m, i, j, k, e), rate, limits)
               for e in graph.sorted_edges]
    return StructureVerification(graph, code, code.symmetric_rate(), rate, valid,
                                 CriticalityReport(graph, 'symmetric-rate', tuple(entries)))


def verify_structure_b(params: Tuple[int, int, int, int], sizes: Sequence[int],
                       limits: Optional[Limits] = None) -> StructureVerification:
    """
    각 정점을 완전 양방향 클리크로 키운 그래프에서 같은 검사를 합니다.

    클리크 사이 간선 ((u,s),(v,t)) 는 기저 증인 A' 를 들어올려
    {(l,1) : l ∈ A', l ∉ {u,v}} ∪ {(u,s),(v,t)} 를 쓰고, 클리크 안 간선은 순환 위 u 이면
    {(u,s),(u,t)} 와 u 다음 m-2 개 순환 정점, 꼭짓점이면 j, k 를 뺀 순환 정점과 두 복사본을 씁니다.
    """
    limits = limits or default_limits()
    m, i, j, k = params
    graph, code = blowup_code(params, sizes)
    labels = blowup_labels(sizes)
    index = {lab: idx + 1 for idx, lab in enumerate(labels)}
    valid, _ = is_valid_linear_code(graph, code)
    rate = Fraction(1, m - 1)
    apex = m + 1

    entries = []
    for e in graph.sorted_edges:
        (u, s), (v, t) = labels[e[0] - 1], labels[e[1] - 1]
        if u != v:
            base = _apex_witness(m, i, j, k, (u, v))
            witness = [index[(l, 1)] for l in base if l not in (u, v)] + [e[0], e[1]]
        elif u <= m:
            ring = [((u + l - 1) % m) + 1 for l in range(1, m - 1)]
            witness = [e[0], e[1]] + [index[(l, 1)] for l in ring]
        else:
            witness = [index[(l, 1)] for l in range(1, m + 1) if l not in (j, k)] + [e[0], e[1]]
        entries.append(_acyclic_verdict(graph, e, witness, rate, limits))
    report = CriticalityReport(graph, 'symmetric-rate', tuple(entries))
    return StructureVerification(graph, code, code.symmetric_rate(), rate, valid, report, tuple(labels))


def symmetric_rate_edge_report(g: DiGraph, limits: Optional[Limits] = None) -> CriticalityReport:
    """간선별 β 구간 전후 비교"""
    limits = limits or default_limits()
    before = beta_interval(g, limits)
    entries = []
    for e in g.sorted_edges:
        after = beta_interval(g.remove_edges([e]), limits)
        if after.lower > before.upper:
            verdict = STRICT
            cert = Certificate('beta-gap', {'before_upper': before.upper, 'after_lower': after.lower})
        elif before.is_tight and after.is_tight and before.lower == after.lower:
            verdict, cert = NO_CHANGE, None
        else:
            verdict, cert = UNKNOWN, None
        entries.append(EdgeVerdict(
            (e,),
            {'beta': f"[{format_rational(before.lower)}, {format_rational(before.upper)}]"},
            {'beta': f"[{format_rational(after.lower)}, {format_rational(after.upper)}]"},
            verdict, cert))
    return CriticalityReport(g, 'symmetric-rate', tuple(entries))


def recheck_certificate(g: DiGraph, entry: EdgeVerdict, spec: Optional[AlphabetSpec] = None,
                        hint: Optional[CodeTable] = None,
                        limits: Optional[Limits] = None) -> bool:
    """엄격한 감소 판정의 증명서를 처음부터 다시 검증합니다."""
    limits = limits or default_limits()
    if entry.verdict != STRICT or entry.certificate is None:
        return False
    for e in entry.edges:
        _require_edge(g, e)
    after = g.remove_edges(entry.edges)
    cert = entry.certificate
    data = cert.data

    if cert.kind == 'acyclic-set':
        members = data['set']
        return is_acyclic_set(after, members) and len(members) * Fraction(data['rate']) > 1
    if cert.kind == 'rate-witness':
        valid, _ = is_valid_linear_code(g, data['code'])
        return valid and not check_rate_vector(after, data['rates'], limits).passes
    if cert.kind == 'beta-gap':
        return beta_interval(after, limits).lower > beta_interval(g, limits).upper
    if cert.kind == 'size-increase':
        if spec is None:
            raise InvalidParams("alphabet spec required to recheck a size-increase certificate")
        _, before_upper, _ = chromatic_bounds(build_confusion_graph(g, spec, limits), limits, hint)
        after_lower, _, _ = chromatic_bounds(build_confusion_graph(after, spec, limits), limits)
        return after_lower > before_upper
    raise InvalidParams(f"unknown certificate kind '{cert.kind}'")


# ---------------------------------------------------------------------------
# 합집합

def _try_metric(fn: Callable[[DiGraph], Any], g: DiGraph) -> Tuple[Optional[Fraction], str]:
    try:
        return Fraction(fn(g)), ''
    except SizeLimitExceeded as e:
        return None, f"skipped: {e}"


def union_additivity_check(g: DiGraph, h: DiGraph, limits: Optional[Limits] = None,
                           oneshot: bool = False) -> AdditivityReport:
    """
    서로소 합집합에서 minrank, MAIS, 클리크 덮개, 분수 클리크 덮개, 순환 덮개의 가법성과
    (oneshot=True 이면) 이진 단발 크기의 곱셈적 준가법성을 검사합니다.
    """
    limits = limits or default_limits()
    union = disjoint_union(g, h)
    engines: List[Tuple[str, Callable[[DiGraph], Any]]] = [
        ('minrank_gf2', lambda x: minrank_gf2(x, limits)),
        ('mais', lambda x: mais(x, limits)[0]),
        ('clique_cover', lambda x: clique_cover_number(x, limits)[0]),
        ('fractional_clique_cover', lambda x: fractional_clique_cover(x, limits)[0]),
        ('cycle_cover', lambda x: cycle_cover_bound(x, limits)),
    ]
    metrics = []
    for name, fn in engines:
        a, note_a = _try_metric(fn, g)
        b, note_b = _try_metric(fn, h)
        c, note_c = _try_metric(fn, union)
        holds = None if None in (a, b, c) else a + b == c
        metrics.append(MetricAdditivity(name, a, b, c, 'additive', holds, note_a or note_b or note_c))

    if oneshot:
        metrics.append(_oneshot_submultiplicative(g, h, union, limits))

    ig, ih = beta_interval(g, limits), beta_interval(h, limits)
    lower, upper = ig.lower + ih.lower, ig.upper + ih.upper
    composed = (1 / upper if upper else Fraction(0), 1 / lower if lower else Fraction(0))
    report = AdditivityReport(tuple(metrics), (lower, upper), beta_interval(union, limits), composed)
    logger.debug("union_additivity_check: %s", {m.name: m.holds for m in metrics})
    return report


def _oneshot_submultiplicative(g: DiGraph, h: DiGraph, union: DiGraph, limits: Limits) -> MetricAdditivity:
    try:
        a_lo, a_hi, a_exact = oneshot_size_bounds(g, AlphabetSpec.binary(g.n), limits)
        b_lo, b_hi, b_exact = oneshot_size_bounds(h, AlphabetSpec.binary(h.n), limits)
        c_lo, c_hi, _ = oneshot_size_bounds(union, AlphabetSpec.binary(union.n), limits)
    except SizeLimitExceeded as e:
        return MetricAdditivity('oneshot_size', None, None, None, 'submultiplicative', None, f"skipped: {e}")
    holds = c_lo <= a_hi * b_hi if a_exact and b_exact else None
    return MetricAdditivity('oneshot_size', Fraction(a_hi), Fraction(b_hi), Fraction(c_lo),
                            'submultiplicative', holds)


# ---------------------------------------------------------------------------
# 센서스와 구조

def census_verify(entries: Sequence[CensusEntry], limits: Optional[Limits] = None) -> CensusReport:
    """각 그래프의 β 구간이 표기된 β 를 포함하는지, USCS 인지, 구간이 조이면 같은지"""
    limits = limits or default_limits()
    rows = []
    for entry in entries:
        interval = beta_interval(entry.graph, limits)
        match = theorem5_structure_match(entry.graph, limits)
        row = CensusRow(entry.figure, entry.beta, interval, interval.contains(entry.beta),
                        is_uscs(entry.graph), interval.is_tight and interval.lower == entry.beta,
                        match.describe() if match else None)
        if not row.passes:
            logger.warning("census figure %s: beta %s vs interval [%s, %s]", entry.figure,
                           entry.beta, interval.lower, interval.upper)
        rows.append(row)
    return CensusReport(tuple(rows))


def uscs_necessity_report(g: DiGraph) -> UscsReport:
    """
    USCS 가 아니면 지울 수 있는 간선 목록을 반환합니다. 나가는 간선이 모두 지울 수 있는 것이고
    그 끝점이 모두 비자명 강연결 성분에 속하는 정점은 단발 비선형 예외 유형으로 표시합니다.
    """
    _, removable = prune_to_uscs(g)
    removable_set = set(removable)
    scc = strongly_connected_components(g)
    in_cycle = {v for comp in scc.nontrivial() for v in comp}
    apex = []
    for v in g.vertices:
        outs = g.out_neighbors(v)
        if outs and all((v, w) in removable_set for w in outs) and all(w in in_cycle for w in outs):
            apex.append(v)
    return UscsReport(g, not removable, tuple(removable), tuple(apex))


def theorem5_structure_match(g: DiGraph, limits: Optional[Limits] = None) -> Optional[StructureMatch]:
    """
    고립 정점을 뺀 그래프가 순환-꼭짓점 구조이거나, 한 정점만 크기 2 클리크로 키운 확대와
    동형인지 판정합니다.
    """
    limits = limits or default_limits()
    isolated = [v for v in g.vertices if not g.out_masks[v - 1] and not g.in_masks[v - 1]]
    core, _ = g.induced(v for v in g.vertices if v not in isolated)
    if core.n > limits.isomorphism_max_n:
        raise SizeLimitExceeded('isomorphism_max_n', core.n, limits.isomorphism_max_n)

    def candidates(m: int):
        for i, j, k in product(range(1, m + 1), repeat=3):
            if 1 <= j < i <= k <= m:
                yield (m, i, j, k)

    m = core.n - 1
    if m >= 2:
        for params in candidates(m):
            if is_isomorphic(core, cycle_apex_graph(*params), limits):
                return StructureMatch('cycle-apex', params, tuple([1] * (m + 1)), tuple(isolated))
    m = core.n - 2
    if m >= 2:
        for params in candidates(m):
            for grown in range(m + 1):
                sizes = tuple(2 if idx == grown else 1 for idx in range(m + 1))
                if is_isomorphic(core, blowup_graph(params, sizes), limits):
                    return StructureMatch('blow-up', params, sizes, tuple(isolated))
    return None
