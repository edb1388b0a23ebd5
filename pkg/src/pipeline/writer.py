"""
출력 파일 작성: reader 가 읽는 텍스트 형식 그대로 그래프, 부호표, 선형 부호, 그룹캐스트 인스턴스를 씁니다.
"""

import json
import os
from typing import Any, Dict, List, Optional

from indexcoding.confusion import CodeTable, ConfusionGraph
from indexcoding.graph_core import DiGraph
from indexcoding.groupcast import GroupcastInstance
from indexcoding.linear_codes import LinearIndexCode
from utils.logger import get_logger

logger = get_logger(__name__)


def format_graph_text(g: DiGraph, comment: Optional[str] = None) -> str:
    lines: List[str] = []
    if comment:
        lines.extend(f"# {line}" for line in comment.splitlines())
    lines.append(f"n {g.n}")
    lines.extend(f"{u} {v}" for u, v in g.sorted_edges)
    return "\n".join(lines) + "\n"


def format_code_table_text(table: CodeTable) -> str:
    lines = [f"N {table.N}", "sizes " + " ".join(str(s) for s in table.spec.sizes)]
    for w, s in zip(table.spec.tuples(), table.symbols):
        lines.append(" ".join(str(x) for x in w) + f" -> {s}")
    return "\n".join(lines) + "\n"


def code_table_to_dict(table: CodeTable) -> Dict[str, Any]:
    return {
        'N': table.N,
        'sizes': list(table.spec.sizes),
        'rows': [{'tuple': list(w), 'symbol': s} for w, s in zip(table.spec.tuples(), table.symbols)],
    }


def format_linear_code_text(code: LinearIndexCode) -> str:
    lines = [f"{code.q} {code.length} {code.m}", "dims " + " ".join(str(l) for l in code.dims)]
    lines.extend(" ".join(str(int(x)) for x in row) for row in code.matrix)
    return "\n".join(lines) + "\n"


def format_groupcast_text(h: GroupcastInstance) -> str:
    lines = [f"m {h.m}"]
    for r in h.receivers:
        side = " ".join(str(a) for a in sorted(r.side))
        lines.append(f"demand {r.demand} side {side}".rstrip())
    return "\n".join(lines) + "\n"


def export_confusion_graph(cg: ConfusionGraph) -> str:
    """혼동 그래프를 그래프 텍스트 형식으로 (무향 간선은 양방향 두 줄, 정점 = 순위 + 1)"""
    return format_graph_text(cg.to_digraph(), comment=f"confusion graph, sizes {list(cg.spec.sizes)}")


def write_text(path: str, text: str) -> str:
    directory = os.path.dirname(path)
    if directory:
        os.makedirs(directory, exist_ok=True)
    with open(path, 'w', encoding='utf-8') as f:
        f.write(text)
    logger.info("wrote %s", path)
    return path


def write_json(path: str, data: Dict[str, Any]) -> str:
    return write_text(path, json.dumps(data, ensure_ascii=False, indent=2) + "\n")


def write_graph(g: DiGraph, path: str, comment: Optional[str] = None) -> str:
    if path.endswith('.json'):
        return write_json(path, g.to_dict())
    return write_text(path, format_graph_text(g, comment))


def write_groupcast(h: GroupcastInstance, path: str) -> str:
    if path.endswith('.json'):
        return write_json(path, h.to_dict())
    return write_text(path, format_groupcast_text(h))
