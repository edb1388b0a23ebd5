"""
그룹캐스트 index coding: 유향 하이퍼그래프, 기저 유향 그래프, USCS 기반 부가정보 가지치기
"""

from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from indexcoding.errors import InvalidParams
from indexcoding.graph_core import DiGraph, Edge, prune_to_uscs
from utils.logger import get_logger

logger = get_logger(__name__)

PRUNE_SETTINGS = ('linear', 'asymptotic', 'oneshot-nonlinear')


@dataclass(frozen=True)
class Receiver:
    demand: int
    side: FrozenSet[int]

    def __post_init__(self):
        object.__setattr__(self, 'side', frozenset(int(a) for a in self.side))

    def to_dict(self) -> Dict[str, object]:
        return {'demand': self.demand, 'side': sorted(self.side)}


@dataclass(frozen=True)
class GroupcastInstance:
    """
    m 개 메시지와 수신자 목록 (수요 d_i, 부가정보 A_i).

    같은 수요와 같은 부가정보를 가진 수신자는 하나로 합치고 counts 에 몇 번 나왔는지 남깁니다.
    """
    m: int
    receivers: Tuple[Receiver, ...]
    counts: Tuple[int, ...] = ()

    def __post_init__(self):
        receivers = tuple(r if isinstance(r, Receiver) else Receiver(r[0], frozenset(r[1]))
                          for r in self.receivers)
        counts = tuple(int(c) for c in self.counts) or (1,) * len(receivers)
        if len(counts) != len(receivers) or any(c < 1 for c in counts):
            raise InvalidParams(f"{len(counts)} positive counts required for {len(receivers)} receivers")
        for idx, r in enumerate(receivers, start=1):
            if not 1 <= r.demand <= self.m:
                raise InvalidParams(f"receiver {idx}: demand {r.demand} outside 1..{self.m}")
            if r.demand in r.side:
                raise InvalidParams(f"receiver {idx}: demand {r.demand} is in its own side information")
            bad = sorted(a for a in r.side if not 1 <= a <= self.m)
            if bad:
                raise InvalidParams(f"receiver {idx}: side information {bad} outside 1..{self.m}")

        merged: Dict[Receiver, int] = {}
        for r, c in zip(receivers, counts):
            merged[r] = merged.get(r, 0) + c
        object.__setattr__(self, 'receivers', tuple(merged))
        object.__setattr__(self, 'counts', tuple(merged.values()))

    @classmethod
    def create(cls, m: int, receivers: Sequence[Tuple[int, Sequence[int]]]) -> 'GroupcastInstance':
        return cls(m, tuple(Receiver(d, frozenset(a)) for d, a in receivers))

    @classmethod
    def from_digraph(cls, g: DiGraph) -> 'GroupcastInstance':
        """노드마다 수신자 하나 (유니캐스트)"""
        return cls(g.n, tuple(Receiver(v, frozenset(g.out_neighbors(v))) for v in g.vertices))

    @property
    def hyperedges(self) -> List[Tuple[int, Tuple[int, ...]]]:
        """(수요, 정렬된 부가정보) 하이퍼간선"""
        return sorted((r.demand, tuple(sorted(r.side))) for r in self.receivers)

    def multiplicity(self) -> Dict[Tuple[int, Tuple[int, ...]], int]:
        return {(r.demand, tuple(sorted(r.side))): c for r, c in zip(self.receivers, self.counts)}

    def is_unicast(self) -> bool:
        demands = [r.demand for r in self.receivers]
        return sorted(demands) == list(range(1, self.m + 1))

    def to_digraph(self) -> DiGraph:
        """유니캐스트 인스턴스의 부가정보 그래프 (수요 번호 = 정점 번호)"""
        if not self.is_unicast():
            raise InvalidParams("instance is not unicast: every message needs exactly one receiver")
        return underlying_digraph(self)

    def to_dict(self) -> Dict[str, object]:
        out: Dict[str, object] = {'m': self.m, 'receivers': [r.to_dict() for r in self.receivers]}
        if any(c > 1 for c in self.counts):
            out['counts'] = list(self.counts)
        return out



@dataclass(frozen=True)
class GroupcastPruneResult:
    instance: GroupcastInstance
    removed: Tuple[Tuple[int, int], ...]
    setting: str
    capacity_preserved: Optional[bool]


def underlying_digraph(h: GroupcastInstance) -> DiGraph:
    """(u, v) ∈ E ⟺ 어떤 수신자가 u 를 요구하면서 v 를 알고 있음"""
    edges = {(r.demand, a) for r in h.receivers for a in r.side}
    return DiGraph(h.m, frozenset(edges))


def prune_groupcast(h: GroupcastInstance, setting: str = 'linear') -> GroupcastPruneResult:
    """
    기저 그래프에서 순환에 속하지 않는 간선에 해당하는 부가정보 항목을 모두 지웁니다.

    USCS 가지치기 뒤에 남은 간선은 제거 전에도 순환 위에 있었으므로 한 번의 응축으로
    고정점에 도달합니다. 단발 비선형 설정에서는 용량이 보존된다는 보장이 없어
    인스턴스를 그대로 돌려주고 capacity_preserved=None 으로 표시합니다.

    Args:
        h: 그룹캐스트 인스턴스
        setting: 'linear', 'asymptotic', 'oneshot-nonlinear'

    Returns:
        GroupcastPruneResult (removed 는 (수신자 번호, 메시지) 목록)
    """
    if setting not in PRUNE_SETTINGS:
        raise InvalidParams(f"unknown setting '{setting}', expected one of {PRUNE_SETTINGS}")
    if setting == 'oneshot-nonlinear':
        logger.warning("prune_groupcast: one-shot non-linear capacity is not preserved in general")
        return GroupcastPruneResult(h, (), setting, None)

    _, dropped = prune_to_uscs(underlying_digraph(h))
    dropped_set = set(dropped)
    removed: List[Tuple[int, int]] = []
    receivers = []
    for idx, r in enumerate(h.receivers, start=1):
        gone = sorted(a for a in r.side if (r.demand, a) in dropped_set)
        removed.extend((idx, a) for a in gone)
        receivers.append(Receiver(r.demand, r.side - frozenset(gone)))
    logger.debug("prune_groupcast: %d side-information entries removed", len(removed))
    pruned = GroupcastInstance(h.m, tuple(receivers), h.counts)
    return GroupcastPruneResult(pruned, tuple(removed), setting, True)


def removed_edges(result: GroupcastPruneResult, original: GroupcastInstance) -> List[Edge]:
    """제거 항목을 기저 그래프 간선으로"""
    return sorted({(original.receivers[idx - 1].demand, a) for idx, a in result.removed})
