"""
유리수 정확 연산 심플렉스 (Bland 규칙)

    maximize c·x  subject to  A x <= b,  x >= 0,  b >= 0

슬랙 기저가 곧 가능해이므로 1단계가 필요 없습니다.
"""

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from utils.logger import get_logger

logger = get_logger(__name__)


@dataclass(frozen=True)
class LpSolution:
    status: str
    value: Fraction
    primal: Tuple[Fraction, ...]
    dual: Tuple[Fraction, ...]
    pivots: int


class SimplexTableau:
    """사전(dictionary) 형태의 축약 심플렉스 표. 변수 0..n-1 은 원변수, n..n+m-1 은 슬랙."""

    def __init__(self, A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int]):
        self.m = len(A)
        self.n = len(c)
        self.A: List[List[Fraction]] = [[Fraction(v) for v in row] for row in A]
        self.b: List[Fraction] = [Fraction(v) for v in b]
        self.c: List[Fraction] = [Fraction(v) for v in c]
        self.z = Fraction(0)
        if any(v < 0 for v in self.b):
            raise ValueError("slack basis requires b >= 0")
        self.nb_vars = list(range(self.n))
        self.b_vars = list(range(self.n, self.n + self.m))
        self.pivot_count = 0

    def pivot(self, i: int, j: int) -> None:
        piv = self.A[i][j]
        row = [v / piv for v in self.A[i]]
        row[j] = 1 / piv
        self.b[i] /= piv
        self.A[i] = row

        for k in range(self.m):
            if k == i:
                continue
            f = self.A[k][j]
            if f == 0:
                continue
            for l in range(self.n):
                self.A[k][l] = -f / piv if l == j else self.A[k][l] - f * row[l]
            self.b[k] -= f * self.b[i]

        delta = self.c[j]
        for l in range(self.n):
            self.c[l] = -delta / piv if l == j else self.c[l] - delta * row[l]
        self.z += delta * self.b[i]

        self.nb_vars[j], self.b_vars[i] = self.b_vars[i], self.nb_vars[j]
        self.pivot_count += 1

    def bland_step(self) -> str:
        entering = [(self.nb_vars[j], j) for j in range(self.n) if self.c[j] > 0]
        if not entering:
            return 'optimal'
        _, j = min(entering)
        leaving = [(self.b[i] / self.A[i][j], self.b_vars[i], i) for i in range(self.m) if self.A[i][j] > 0]
        if not leaving:
            return 'unbounded'
        _, _, i = min(leaving)
        self.pivot(i, j)
        return 'go_on'

    def solve(self) -> LpSolution:
        status = 'go_on'
        while status == 'go_on':
            status = self.bland_step()
        logger.debug("simplex finished: %s after %d pivots, z=%s", status, self.pivot_count, self.z)

        primal = [Fraction(0)] * self.n
        for i, var in enumerate(self.b_vars):
            if var < self.n:
                primal[var] = self.b[i]
        dual = [Fraction(0)] * self.m
        for j, var in enumerate(self.nb_vars):
            if var >= self.n:
                dual[var - self.n] = -self.c[j]
        return LpSolution(status, self.z, tuple(primal), tuple(dual), self.pivot_count)


def maximize(A: Sequence[Sequence[int]], b: Sequence[int], c: Sequence[int]) -> LpSolution:
    return SimplexTableau(A, b, c).solve()
