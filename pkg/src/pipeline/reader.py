"""
입력 파일 파서: 그래프, 부호표, 선형 부호, 그룹캐스트 인스턴스, 센서스 데이터

텍스트 형식은 '#' 이후를 주석으로 무시하고 빈 줄을 건너뜁니다. 형식 오류는
줄 번호를 담은 ParseError 로 알립니다. 각 형식은 같은 내용의 JSON 표현도 받습니다.
"""

import json
import os
from fractions import Fraction
from typing import Any, Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np

from indexcoding.confusion import AlphabetSpec, CodeTable
from indexcoding.criticality import CensusEntry
from indexcoding.errors import DataFileMissing, IndexCodingError, ParseError
from indexcoding.graph_core import DiGraph
from indexcoding.groupcast import GroupcastInstance, Receiver
from indexcoding.linear_codes import LinearIndexCode, PrimeField
from utils.config import data_dir, load_config
from utils.logger import get_logger

logger = get_logger(__name__)

Line = Tuple[int, List[str]]


def _content_lines(text: str) -> Iterator[Line]:
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split('#', 1)[0].strip()
        if body:
            yield line_no, body.split()


def _ints(tokens: Sequence[str], line_no: int) -> List[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"expected integers, got '{' '.join(tokens)}'", line_no)


def _read(path: str) -> str:
    try:
        with open(path, 'r', encoding='utf-8') as f:
            return f.read()
    except UnicodeDecodeError as e:
        raise ParseError(f"input is not valid UTF-8 (byte offset {e.start})")


def _is_json(text: str) -> bool:
    return text.lstrip().startswith('{')


def _load_json(text: str) -> Dict[str, Any]:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"invalid JSON: {e.msg}", e.lineno)
    if not isinstance(data, dict):
        raise ParseError("JSON document must be an object")
    return data


# ---------------------------------------------------------------------------
# 그래프

def parse_graph_text(text: str) -> DiGraph:
    """
    "n <정점 수>" 헤더 뒤에 한 줄에 하나씩 "u v" 간선을 읽습니다.

    Raises:
        ParseError: 헤더 누락, 정수 아님, 자기 루프, 중복 간선, 범위 밖 끝점
    """
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != 'n' or len(lines[0][1]) != 2:
        raise ParseError("expected header 'n <count>'", lines[0][0] if lines else 1)
    header_no, header = lines[0]
    n = _ints(header[1:], header_no)[0]
    if n < 0:
        raise ParseError(f"vertex count must be non-negative, got {n}", header_no)

    edges = set()
    for line_no, tokens in lines[1:]:
        if len(tokens) != 2:
            raise ParseError(f"expected 'u v', got '{' '.join(tokens)}'", line_no)
        u, v = _ints(tokens, line_no)
        if u == v:
            raise ParseError(f"self-loop at vertex {u}", line_no)
        if not (1 <= u <= n and 1 <= v <= n):
            raise ParseError(f"edge ({u},{v}) outside 1..{n}", line_no)
        if (u, v) in edges:
            raise ParseError(f"duplicate edge ({u},{v})", line_no)
        edges.add((u, v))
    return DiGraph(n, frozenset(edges))


def parse_graph_json(data: Dict[str, Any]) -> DiGraph:
    try:
        n = int(data['n'])
        edges = [tuple(int(x) for x in e) for e in data.get('edges', [])]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"graph JSON needs 'n' and 'edges': {e}")
    if any(len(e) != 2 for e in edges):
        raise ParseError("every edge must have two endpoints")
    return DiGraph(n, edges)


def parse_graph(text: str) -> DiGraph:
    return parse_graph_json(_load_json(text)) if _is_json(text) else parse_graph_text(text)


def read_graph(path: str) -> DiGraph:
    graph = parse_graph(_read(path))
    logger.info("graph loaded from %s: n=%d, %d edges", path, graph.n, len(graph.edges))
    return graph


# ---------------------------------------------------------------------------
# 부호표

def parse_code_table_text(text: str, base: DiGraph) -> CodeTable:
    """
    "N <정수>" 헤더, 선택적 "sizes s_1 ... s_n" 줄, 그리고 튜플마다 "w_1 ... w_n -> symbol".
    sizes 가 없으면 각 자리의 최댓값 + 1 을 알파벳 크기로 씁니다.
    """
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != 'N' or len(lines[0][1]) != 2:
        raise ParseError("expected header 'N <int>'", lines[0][0] if lines else 1)
    N = _ints(lines[0][1][1:], lines[0][0])[0]
    body = lines[1:]
    sizes: Optional[Tuple[int, ...]] = None
    if body and body[0][1][0] == 'sizes':
        sizes = tuple(_ints(body[0][1][1:], body[0][0]))
        body = body[1:]

    rows: List[Tuple[int, Tuple[int, ...], int]] = []
    for line_no, tokens in body:
        if '->' not in tokens or tokens.index('->') != len(tokens) - 2:
            raise ParseError("expected 'w_1 ... w_n -> symbol'", line_no)
        w = tuple(_ints(tokens[:-2], line_no))
        if len(w) != base.n:
            raise ParseError(f"tuple has {len(w)} entries for {base.n} nodes", line_no)
        rows.append((line_no, w, _ints(tokens[-1:], line_no)[0]))
    if sizes is None:
        sizes = tuple(max((w[i] for _, w, _ in rows), default=0) + 1 for i in range(base.n))
    return _build_table(base, sizes, N, rows)


def _build_table(base: DiGraph, sizes: Sequence[int], N: int,
                 rows: Sequence[Tuple[Optional[int], Tuple[int, ...], int]]) -> CodeTable:
    try:
        spec = AlphabetSpec(tuple(sizes))
        symbols: List[Optional[int]] = [None] * spec.size
        for line_no, w, s in rows:
            try:
                idx = spec.rank(spec.validate(w))
            except IndexCodingError as e:
                raise ParseError(str(e), line_no)
            if symbols[idx] is not None:
                raise ParseError(f"tuple {w} listed twice", line_no)
            symbols[idx] = s
        missing = [spec.unrank(i) for i, s in enumerate(symbols) if s is None]
        if missing:
            raise ParseError(f"{len(missing)} tuple(s) missing, first {missing[0]}")
        return CodeTable(base, spec, tuple(symbols), N)
    except ParseError:
        raise
    except IndexCodingError as e:
        raise ParseError(str(e))


def parse_code_table_json(data: Dict[str, Any], base: DiGraph) -> CodeTable:
    try:
        rows = [(None, tuple(int(x) for x in r['tuple']), int(r['symbol'])) for r in data['rows']]
        sizes = data.get('sizes') or [max((w[i] for _, w, _ in rows), default=0) + 1 for i in range(base.n)]
        return _build_table(base, [int(s) for s in sizes], int(data['N']), rows)
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"code table JSON needs 'N' and 'rows': {e}")


def read_code_table(path: str, base: DiGraph) -> CodeTable:
    text = _read(path)
    return parse_code_table_json(_load_json(text), base) if _is_json(text) else parse_code_table_text(text, base)


# ---------------------------------------------------------------------------
# 선형 부호

def parse_linear_code_text(text: str) -> LinearIndexCode:
    """헤더 "q n m", "dims l_1 ... l_m", 그리고 Σl_i 개 체 원소로 된 n 개 행"""
    lines = list(_content_lines(text))
    if not lines or len(lines[0][1]) != 3:
        raise ParseError("expected header 'q n m'", lines[0][0] if lines else 1)
    q, n, m = _ints(lines[0][1], lines[0][0])
    if len(lines) < 2 or lines[1][1][0] != 'dims':
        raise ParseError("expected 'dims l_1 ... l_m'", lines[1][0] if len(lines) > 1 else lines[0][0])
    dims = _ints(lines[1][1][1:], lines[1][0])
    if len(dims) != m:
        raise ParseError(f"'dims' lists {len(dims)} values for m={m}", lines[1][0])
    rows = []
    for line_no, tokens in lines[2:]:
        row = _ints(tokens, line_no)
        if len(row) != sum(dims):
            raise ParseError(f"row has {len(row)} entries, expected {sum(dims)}", line_no)
        if any(not 0 <= x < q for x in row):
            raise ParseError(f"entries must lie in 0..{q - 1}", line_no)
        rows.append(row)
    if len(rows) != n:
        raise ParseError(f"expected {n} rows, got {len(rows)}")
    return _build_linear(q, dims, rows)


def _build_linear(q: int, dims: Sequence[int], rows: List[List[int]]) -> LinearIndexCode:
    try:
        PrimeField(q)
        return LinearIndexCode.create(q, dims, rows if rows else np.zeros((0, sum(dims)), dtype=np.int64))
    except IndexCodingError as e:
        raise ParseError(str(e))


def parse_linear_code_json(data: Dict[str, Any]) -> LinearIndexCode:
    try:
        q = int(data['q'])
        dims = [int(l) for l in data['dims']]
        rows = [[int(x) for x in row] for row in data.get('rows', [])]
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"linear code JSON needs 'q', 'dims', 'rows': {e}")
    if 'n' in data and int(data['n']) != len(rows):
        raise ParseError(f"expected {data['n']} rows, got {len(rows)}")
    return _build_linear(q, dims, rows)


def read_linear_code(path: str) -> LinearIndexCode:
    text = _read(path)
    return parse_linear_code_json(_load_json(text)) if _is_json(text) else parse_linear_code_text(text)


def detect_code_kind(path: str) -> str:
    """'linear' 또는 'table'"""
    text = _read(path)
    if _is_json(text):
        return 'linear' if 'q' in _load_json(text) else 'table'
    for _, tokens in _content_lines(text):
        return 'table' if tokens[0] == 'N' else 'linear'
    raise ParseError("empty code file", 1)


# ---------------------------------------------------------------------------
# 그룹캐스트

def parse_groupcast_text(text: str) -> GroupcastInstance:
    """"m <정수>" 헤더 뒤에 수신자마다 "demand <d> side <a1> <a2> ..." """
    lines = list(_content_lines(text))
    if not lines or lines[0][1][0] != 'm' or len(lines[0][1]) != 2:
        raise ParseError("expected header 'm <int>'", lines[0][0] if lines else 1)
    m = _ints(lines[0][1][1:], lines[0][0])[0]
    receivers = []
    for line_no, tokens in lines[1:]:
        if len(tokens) < 3 or tokens[0] != 'demand' or tokens[2] != 'side':
            raise ParseError("expected 'demand <d> side <a1> ...'", line_no)
        d = _ints(tokens[1:2], line_no)[0]
        side = _ints(tokens[3:], line_no)
        if len(set(side)) != len(side):
            raise ParseError("side information lists a message twice", line_no)
        try:
            receivers.append(Receiver(d, frozenset(side)))
            GroupcastInstance(m, (receivers[-1],))
        except IndexCodingError as e:
            raise ParseError(str(e), line_no)
    return GroupcastInstance(m, tuple(receivers))


def parse_groupcast_json(data: Dict[str, Any]) -> GroupcastInstance:
    try:
        m = int(data['m'])
        receivers = [Receiver(int(r['demand']), frozenset(int(a) for a in r.get('side', [])))
                     for r in data['receivers']]
        counts = tuple(int(c) for c in data.get('counts', []))
    except (KeyError, TypeError, ValueError) as e:
        raise ParseError(f"groupcast JSON needs 'm' and 'receivers': {e}")
    try:
        return GroupcastInstance(m, tuple(receivers), counts)
    except IndexCodingError as e:
        raise ParseError(str(e))


def read_groupcast(path: str) -> GroupcastInstance:
    text = _read(path)
    return parse_groupcast_json(_load_json(text)) if _is_json(text) else parse_groupcast_text(text)


# ---------------------------------------------------------------------------
# 센서스

def census_path() -> str:
    filename = load_config().get('census', {}).get('file', 'census_5node.json')
    return os.path.join(data_dir(), filename)


def read_census(path: Optional[str] = None) -> List[CensusEntry]:
    """
    센서스 데이터 (그림 번호, 간선 목록, "p/q" 형식 β) 를 읽습니다.

    Raises:
        DataFileMissing: 파일이 없을 때
    """
    path = path or census_path()
    if not os.path.exists(path):
        raise DataFileMissing(f"census data not found at {path}")
    data = _load_json(_read(path))
    entries = []
    for record in data.get('entries', []):
        try:
            graph = DiGraph(int(record.get('n', 5)), [tuple(e) for e in record['edges']])
            entries.append(CensusEntry(str(record['figure']), graph, Fraction(record['beta'])))
        except (KeyError, TypeError, ValueError) as e:
            raise ParseError(f"census record {record.get('figure', '?')}: {e}")
    logger.info("census loaded: %d entries from %s", len(entries), path)
    return entries
