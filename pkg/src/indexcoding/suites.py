"""
재현 검사 묶음

각 묶음은 구성적 결과 하나를 처음부터 다시 계산해 확인합니다. 난수 검사는 고정 시드의
numpy Generator 를 써서 실행마다 같은 결과를 냅니다.
"""

import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Callable, Dict, List, Optional, Tuple

import numpy as np

from indexcoding import criticality
from indexcoding.bounds import check_rate_vector, clique_cover_number, format_rational
from indexcoding.confusion import (
    FIG5_MASKS, AlphabetSpec, _parse_mask, build_confusion_graph, chromatic_bounds, confusable,
    fig5_mask_code, good_mask_family_search, good_masks, max_distinguishable_family, verify_code,
)
from indexcoding.errors import UnknownSuite
from indexcoding.graph_core import (
    DiGraph, bidirectional_cycle, complete_bidirectional, edge_on_cycle, minimal_equal_rate_graph,
    prune_to_uscs, uniqueness_search,
)
from indexcoding.groupcast import GroupcastInstance, prune_groupcast, underlying_digraph
from indexcoding.linear_codes import (
    LinearIndexCode, block_diagonal, clique_xor_code, conjecture1_code, is_valid_linear_code, split_code,
)
from utils.config import Limits, default_limits
from utils.logger import get_logger

logger = get_logger(__name__)

SEED = 20170101


@dataclass
class SuiteResult:
    name: str
    checks: List[Tuple[str, bool, str]] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(ok for _, ok, _ in self.checks)

    def check(self, description: str, ok: bool, detail: str = '') -> bool:
        self.checks.append((description, bool(ok), detail))
        if not ok:
            logger.warning("suite %s: FAILED %s %s", self.name, description, detail)
        return bool(ok)

    def to_dict(self, golden: bool = False) -> Dict[str, object]:
        out: Dict[str, object] = {
            'suite': self.name,
            'passed': self.passed,
            'checks': [{'check': d, 'passed': ok, 'detail': det} for d, ok, det in self.checks],
        }
        if not golden:
            out['elapsed_seconds'] = round(self.elapsed, 3)
        return out


# ---------------------------------------------------------------------------
# 난수 생성 도우미

def random_digraph(n: int, p: float, rng: np.random.Generator) -> DiGraph:
    edges = [(u, v) for u in range(1, n + 1) for v in range(1, n + 1) if u != v and rng.random() < p]
    return DiGraph(n, frozenset(edges))


def random_groupcast(m: int, receivers: int, rng: np.random.Generator) -> GroupcastInstance:
    out = []
    for _ in range(receivers):
        d = int(rng.integers(1, m + 1))
        side = [a for a in range(1, m + 1) if a != d and rng.random() < 0.5]
        out.append((d, side))
    return GroupcastInstance.create(m, out)


def random_valid_code(g: DiGraph, q: int, dims: List[int], rng: np.random.Generator) -> LinearIndexCode:
    """
    좌표마다 e_{ij} + (부가정보 좌표의 임의 결합) 행을 만들고, 가역 행 연산과
    덧붙인 임의 행으로 섞은 유효 부호
    """
    template = LinearIndexCode.create(q, dims, np.zeros((0, sum(dims)), dtype=np.int64))
    rows = []
    for i in g.vertices:
        side_cols = [c for v in g.out_neighbors(i) for c in template.node_columns(v)]
        for j in range(1, dims[i - 1] + 1):
            row = np.zeros(sum(dims), dtype=np.int64)
            row[template.column(i, j)] = 1
            for c in side_cols:
                row[c] = rng.integers(0, q)
            rows.append(row)
    if rng.random() < 0.3:
        rows.append(rng.integers(0, q, size=sum(dims)))
    matrix = np.array(rows, dtype=np.int64).reshape(len(rows), sum(dims))
    for _ in range(3 * len(rows)):
        if len(rows) < 2:
            break
        a, b = rng.choice(len(rows), size=2, replace=False)
        matrix[a] = (matrix[a] + int(rng.integers(1, q)) * matrix[b]) % q
    return LinearIndexCode.create(q, dims, matrix)


# ---------------------------------------------------------------------------
# 묶음

def suite_thm1(result: SuiteResult, limits: Limits) -> None:
    construction = minimal_equal_rate_graph(Fraction(1, 2), 5)
    result.check("T(5,2) complement has 8 edges", construction.edge_count == 8, str(construction.edge_count))
    _, cover = clique_cover_number(construction.graph, limits)
    code = clique_xor_code(construction.graph, cover)
    valid, _ = is_valid_linear_code(construction.graph, code)
    result.check("clique-XOR code valid at rate 1/2", valid and code.symmetric_rate() == Fraction(1, 2),
                 format_rational(code.symmetric_rate() or 0))
    for m, r in ((4, Fraction(1, 2)), (5, Fraction(1, 2)), (5, Fraction(1, 3))):
        found = uniqueness_search(r, m, limits)
        result.check(f"unique minimal graph at (m={m}, r={format_rational(r)})", found.unique,
                     f"{found.survivors} survivors, {len(found.classes)} class(es), "
                     f"{found.fewer_edge_survivors} with fewer edges")


def suite_cycle5(result: SuiteResult, limits: Limits) -> None:
    c5 = bidirectional_cycle(5)
    spec = AlphabetSpec.binary(5)
    cg = build_confusion_graph(c5, spec, limits)
    alpha, _ = max_distinguishable_family(cg, limits)
    result.check("max distinguishable family = 5", alpha == 5, str(alpha))
    family = [_parse_mask(m) for m in FIG5_MASKS]
    pairwise = all(not confusable(c5, spec, a, b) for a, b in combinations(family, 2))
    result.check("five masks pairwise distinguishable", pairwise)
    result.check("16 good masks", len(good_masks(c5)) == 16, str(len(good_masks(c5))))
    result.check("no good-mask family of 6", good_mask_family_search(c5, 6) is None)
    lower, upper, _ = chromatic_bounds(cg, limits)
    result.check("min one-shot size >= 7", lower >= 7, f"chi in [{lower}, {upper}]")


def suite_fig5(result: SuiteResult, limits: Limits) -> None:
    base, spec, table = fig5_mask_code()
    verdict = verify_code(table)
    result.check("mask code valid with N=32", verdict.valid and table.N == 32, str(verdict.violation or ''))
    pruned, removed = prune_to_uscs(base)
    result.check("pruning removes node 6's five edges", removed == [(6, v) for v in range(1, 6)], str(removed))
    entry = criticality.oneshot_removal_comparison(base, spec, removed, limits, before_hint=table, exact=False)
    cg = build_confusion_graph(pruned, spec, limits)
    lower, upper, blocks = chromatic_bounds(cg, limits)
    result.check("pruned confusion graph is a join of 5 slices", len(blocks) == 5, str(len(blocks)))
    result.check("pruned min one-shot size >= 35", lower >= 35, f"chi in [{lower}, {upper}]")
    result.check("removal strictly degrades", entry.verdict == criticality.STRICT,
                 f"{entry.before['oneshot_size']} -> {entry.after['oneshot_size']}")


def suite_thm5(result: SuiteResult, limits: Limits, max_total: int = 8) -> None:
    failures_a: List[str] = []
    checked_a = 0
    failures_b: List[str] = []
    checked_b = 0
    for m in range(3, 7):
        for i, j, k in product(range(1, m + 1), repeat=3):
            if not 1 <= j < i <= k <= m:
                continue
            checked_a += 1
            if not criticality.verify_structure_a(m, i, j, k, limits).passes:
                failures_a.append(f"({m},{i},{j},{k})")
            extra = max_total - (m + 1)
            for sizes in product(range(1, extra + 2), repeat=m + 1):
                if sum(sizes) > max_total or all(s == 1 for s in sizes):
                    continue
                checked_b += 1
                if not criticality.verify_structure_b((m, i, j, k), sizes, limits).passes:
                    failures_b.append(f"({m},{i},{j},{k}) sizes {sizes}")
    result.check(f"cycle-apex structures critical ({checked_a} checked)", not failures_a, ", ".join(failures_a))
    result.check(f"blow-ups critical ({checked_b} checked)", not failures_b, ", ".join(failures_b[:5]))


def suite_census(result: SuiteResult, limits: Limits) -> None:
    # 순환 import 방지
    from pipeline.reader import read_census

    entries = read_census()
    result.check("32 census entries", len(entries) == 32, str(len(entries)))
    report = criticality.census_verify(entries, limits)
    contained = sum(1 for r in report.rows if r.contains)
    result.check(f"{contained}/{len(report.rows)} containment pass", contained == len(report.rows))
    result.check("all census graphs USCS", all(r.uscs for r in report.rows))
    bad_tight = [r.figure for r in report.rows if r.interval.is_tight and r.interval.lower != r.beta]
    result.check(f"tight intervals match ({report.certified} certified)", not bad_tight, ", ".join(bad_tight))


def suite_additivity(result: SuiteResult, limits: Limits, pairs: int = 100, oneshot_pairs: int = 20) -> None:
    rng = np.random.default_rng(SEED)
    failed: List[str] = []
    skipped = 0
    for idx in range(pairs):
        g = random_digraph(int(rng.integers(1, 6)), 0.5, rng)
        h = random_digraph(int(rng.integers(1, 6)), 0.5, rng)
        report = criticality.union_additivity_check(g, h, limits)
        skipped += sum(1 for m in report.metrics if m.holds is None)
        failed.extend(f"pair {idx}: {m.name}" for m in report.metrics if m.holds is False)
    result.check(f"exact additivity on {pairs} random pairs ({skipped} skipped)", not failed, ", ".join(failed[:5]))

    failed = []
    for idx in range(oneshot_pairs):
        g = random_digraph(int(rng.integers(1, 4)), 0.5, rng)
        h = random_digraph(int(rng.integers(1, 4)), 0.5, rng)
        metric = criticality.union_additivity_check(g, h, limits, oneshot=True).metric('oneshot_size')
        if metric.holds is False:
            failed.append(f"pair {idx}")
    result.check(f"one-shot size submultiplicative on {oneshot_pairs} pairs", not failed, ", ".join(failed))

    k3 = complete_bidirectional(3)
    union = criticality.union_additivity_check(k3, k3, limits)
    result.check("K3 + K3 interval [2,2]", union.union_interval.lower == union.union_interval.upper == 2)


def suite_conjecture1(result: SuiteResult, limits: Limits) -> None:
    graph, code = conjecture1_code()
    valid, _ = is_valid_linear_code(graph, code)
    rates = code.rate_vector()
    result.check("concatenation code valid", valid)
    result.check("rate (1, 1/2, 1/2)", rates.rates == (1, Fraction(1, 2), Fraction(1, 2)),
                 ", ".join(format_rational(r) for r in rates.rates))
    bound = check_rate_vector(graph, rates, limits)
    result.check("outer bound met with equality", bound.passes and bound.max_acyclic_sum == 1,
                 format_rational(bound.max_acyclic_sum))


def suite_bidirectional(result: SuiteResult, limits: Limits) -> None:
    checked = 0
    failed: List[str] = []
    for n in range(2, 6):
        pairs = list(combinations(range(1, n + 1), 2))
        for pattern in range(1, 1 << len(pairs)):
            chosen = [p for bit, p in enumerate(pairs) if pattern >> bit & 1]
            g = DiGraph(n, frozenset(chosen + [(v, u) for u, v in chosen]))
            for e in g.sorted_edges:
                checked += 1
                try:
                    criticality.bidirectional_certificate(g, e, limits)
                except ArithmeticError:
                    failed.append(f"{g} edge {e}")
    result.check(f"(1,1) witness for every edge ({checked} checked)", not failed, ", ".join(failed[:3]))
    demo = criticality.c4_not_symmetric_critical(limits)
    result.check("C4 subgraph 2-bit code and cap 1/2", demo.passes)


def suite_pruning(result: SuiteResult, limits: Limits, samples: int = 500) -> None:
    rng = np.random.default_rng(SEED + 1)
    failed: List[str] = []
    for idx in range(samples):
        g = random_digraph(int(rng.integers(1, 7)), float(rng.uniform(0.2, 0.7)), rng)
        pruned, removed = prune_to_uscs(g)
        again, removed_again = prune_to_uscs(pruned)
        brute = sorted(e for e in g.sorted_edges if not edge_on_cycle(g, e))
        if removed_again or again != pruned or removed != brute:
            failed.append(f"graph {idx}")
    result.check(f"prune_to_uscs exact and idempotent on {samples} graphs", not failed, ", ".join(failed[:5]))

    failed = []
    for idx in range(samples // 5):
        h = random_groupcast(int(rng.integers(1, 7)), int(rng.integers(1, 11)), rng)
        pruned = prune_groupcast(h).instance
        if underlying_digraph(pruned) != prune_to_uscs(underlying_digraph(h))[0]:
            failed.append(f"instance {idx}")
        elif prune_groupcast(pruned).removed:
            failed.append(f"instance {idx} (not idempotent)")
    result.check("groupcast pruning commutes with underlying digraph", not failed, ", ".join(failed[:5]))


def suite_split(result: SuiteResult, limits: Limits, samples: int = 200) -> None:
    rng = np.random.default_rng(SEED + 2)
    failed: List[str] = []
    for idx in range(samples):
        n = int(rng.integers(2, 6))
        q = int(rng.choice([2, 3]))
        g = random_digraph(n, 0.5, rng)
        sink = [v for v in g.vertices if rng.random() < 0.5] or [n]
        if len(sink) == n:
            sink = sink[1:]
        g = g.remove_edges([(u, v) for u, v in g.edges if u in sink and v not in sink])
        dims = [int(rng.integers(1, 3)) for _ in range(n)]
        code = random_valid_code(g, q, dims, rng)
        split = split_code(g, code, sink)
        ok_double = is_valid_linear_code(split.graph_double, split.code_double)[0]
        ok_prime = is_valid_linear_code(split.graph_prime, split.code_prime)[0]
        lengths = split.code_double.length + split.code_prime.length == code.length
        order = list(split.v_double) + list(split.v_prime)
        position = {v: p + 1 for p, v in enumerate(order)}
        kept = [(position[u], position[v]) for u, v in g.edges
                if not (u in split.v_double and v in split.v_prime)]
        joined = block_diagonal(split.code_double, split.code_prime)
        ok_joined = is_valid_linear_code(DiGraph(n, frozenset(kept)), joined)[0]
        if not (ok_double and ok_prime and lengths and ok_joined):
            failed.append(f"sample {idx} (q={q})")
    result.check(f"split yields valid parts on {samples} random codes", not failed, ", ".join(failed[:5]))


SUITES: Dict[str, Callable[[SuiteResult, Limits], None]] = {
    'thm1': suite_thm1,
    'cycle5': suite_cycle5,
    'fig5': suite_fig5,
    'thm5': suite_thm5,
    'census': suite_census,
    'additivity': suite_additivity,
    'conjecture1': suite_conjecture1,
    'bidirectional': suite_bidirectional,
    'pruning': suite_pruning,
    'split': suite_split,
}


def run_suite(name: str, limits: Optional[Limits] = None) -> SuiteResult:
    """
    이름으로 묶음을 실행합니다.

    Raises:
        UnknownSuite: 등록되지 않은 이름
    """
    if name not in SUITES:
        raise UnknownSuite(f"unknown suite '{name}', expected one of {sorted(SUITES)} or 'all'")
    limits = limits or default_limits()
    result = SuiteResult(name)
    started = time.perf_counter()
    logger.info("running suite %s", name)
    SUITES[name](result, limits)
    result.elapsed = time.perf_counter() - started
    return result


def run_all(limits: Optional[Limits] = None) -> List[SuiteResult]:
    return [run_suite(name, limits) for name in SUITES]
