"""
에너지 함수 모듈

B⊗B 위의 에너지 함수 H 전파, 아핀 에너지 H_aff, 0-화살표 최소 개수 거리,
극대 벡터, 고전 연결 성분을 계산합니다.

부호 규약: f_0 이 왼쪽 인자에 작용하면 H 가 1 증가합니다.
H 를 반대 부호로 정의하는 문헌의 값과 비교할 때는 −H 로 읽어야 합니다.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Set, Tuple

import networkx as nx

from .crystal import NONE, AffineElem, CrystalGraph, pair_step
from .perfect import EMPTY_LABEL, extremal_elements, root_label
from .root_data import CartanSpec, Root, enumerate_roots, highest_root, phi_layer

# 로거 설정
logger = logging.getLogger(__name__)


class EnergyError(Exception):
    """에너지 함수 관련 예외"""
    pass


class InconsistentEnergyError(EnergyError):
    """전파 중 값이 서로 맞지 않는 경우 (결정 데이터 오류 신호)"""
    pass


@dataclass
class EnergyTable:
    """
    에너지 함수 H : B⊗B → ℤ

    Attributes:
        crystal: 결정 B
        values: a·|B| + b 위치에 H(a⊗b)
        seed: H(b⊗b) = 0 으로 정규화한 극값 원소
    """
    crystal: CrystalGraph
    values: List[int]
    seed: int

    def __call__(self, a: int, b: int) -> int:
        return self.values[a * self.crystal.size + b]

    def value(self, a: int, b: int) -> int:
        return self(a, b)

    def rows(self) -> List[Tuple[str, str, int]]:
        """(왼쪽 라벨, 오른쪽 라벨, H) 행 목록"""
        n = self.crystal.size
        labels = self.crystal.labels
        return [(labels[a], labels[b], self.values[a * n + b]) for a in range(n) for b in range(n)]


def energy_table(crystal: CrystalGraph, seed: Optional[int] = None) -> EnergyTable:
    """
    B⊗B 위에서 씨앗 쌍 (b*, b*) 로부터 H 를 너비 우선 전파

    Args:
        crystal: 완전 결정 B
        seed: 정규화 극값 원소 (기본값: id 가 가장 작은 극값 원소)

    Returns:
        EnergyTable

    Raises:
        InconsistentEnergyError: 다시 방문한 쌍의 값이 다를 때 또는 B⊗B 가 연결되지 않았을 때
    """
    n = crystal.size
    if seed is None:
        seed = extremal_elements(crystal)[0]
    values: List[Optional[int]] = [None] * (n * n)
    values[seed * n + seed] = 0
    queue = deque([(seed, seed)])

    while queue:
        a, b = queue.popleft()
        current = values[a * n + b]
        assert current is not None
        for i in crystal.index_set:
            for direction in ("f", "e"):
                moved = pair_step(crystal, crystal, direction, i, a, b)
                if moved is None:
                    continue
                a2, b2, side = moved
                delta = 0
                if i == 0:
                    delta = 1 if side == "left" else -1
                    if direction == "e":
                        delta = -delta
                new_value = current + delta
                slot = a2 * n + b2
                if values[slot] is None:
                    values[slot] = new_value
                    queue.append((a2, b2))
                elif values[slot] != new_value:
                    raise InconsistentEnergyError(
                        f"{crystal.name}: {direction}_{i}({crystal.labels[a]}⊗{crystal.labels[b]}) "
                        f"에서 H 충돌 ({values[slot]} vs {new_value})"
                    )

    missing = sum(1 for v in values if v is None)
    if missing:
        raise InconsistentEnergyError(f"{crystal.name}⊗{crystal.name} 이 연결되지 않았습니다 (미도달 {missing}개)")
    logger.debug(f"{crystal.name} 에너지 함수 전파 완료 (씨앗 {crystal.labels[seed]})")
    return EnergyTable(crystal, [int(v) for v in values if v is not None], seed)


def h_aff(table: EnergyTable, left: AffineElem, right: AffineElem) -> int:
    """H_aff(zᵐa ⊗ zⁿb) = H(a⊗b) + m − n"""
    return table(left.base, right.base) + left.power - right.power


@dataclass
class ZeroArrowDistance:
    """
    유향 경로의 최소 0-화살표 개수

    Attributes:
        crystal: 결정 B
        dist: dist[a][b] (도달 불가면 None)
    """
    crystal: CrystalGraph
    dist: List[List[Optional[int]]]

    def __call__(self, a: int, b: int) -> Optional[int]:
        return self.dist[a][b]

    def witness_path(self, a: int, b: int) -> Optional[List[Tuple[int, int]]]:
        """최소 0-화살표 경로를 (색, 도착 원소) 목록으로 반환"""
        if self.dist[a][b] is None:
            return None
        best, parent = _zero_one_bfs(self.crystal, a, keep_parents=True)
        path: List[Tuple[int, int]] = []
        node = b
        while node != a:
            color, previous = parent[node]
            path.append((color, node))
            node = previous
        return list(reversed(path))


def _zero_one_bfs(
    crystal: CrystalGraph, source: int, keep_parents: bool = False
) -> Tuple[List[Optional[int]], Dict[int, Tuple[int, int]]]:
    best: List[Optional[int]] = [None] * crystal.size
    parent: Dict[int, Tuple[int, int]] = {}
    best[source] = 0
    queue = deque([source])
    while queue:
        x = queue.popleft()
        base = best[x]
        assert base is not None
        for i in crystal.index_set:
            y = crystal.f(i, x)
            if y == NONE:
                continue
            cost = base + (1 if i == 0 else 0)
            if best[y] is None or cost < best[y]:  # type: ignore[operator]
                best[y] = cost
                if keep_parents:
                    parent[y] = (i, x)
                if i == 0:
                    queue.append(y)
                else:
                    queue.appendleft(y)
    return best, parent


def zero_arrow_distance(crystal: CrystalGraph) -> ZeroArrowDistance:
    """0-화살표에 가중치 1, 나머지에 0 을 둔 전 쌍 최단 경로 (출발점별 0/1 BFS)"""
    rows = [_zero_one_bfs(crystal, a)[0] for a in range(crystal.size)]
    return ZeroArrowDistance(crystal, rows)


def zero_arrow_counts(crystal: CrystalGraph, source: int, cap: int) -> List[Set[int]]:
    """
    source 에서 각 원소로 가는 유향 경로의 0-화살표 개수로 가능한 값 (cap 이하)

    B_aff 에서 zⁿa → … → z^{n−k}b 경로가 있다는 것은 k 가 이 집합에 있다는 뜻입니다.
    """
    counts: List[Set[int]] = [set() for _ in range(crystal.size)]
    counts[source].add(0)
    queue = deque([(source, 0)])
    while queue:
        x, k = queue.popleft()
        for i in crystal.index_set:
            y = crystal.f(i, x)
            if y == NONE:
                continue
            k2 = k + (1 if i == 0 else 0)
            if k2 <= cap and k2 not in counts[y]:
                counts[y].add(k2)
                queue.append((y, k2))
    return counts


def affine_path_exists(crystal: CrystalGraph, start: AffineElem, end: AffineElem, cap: int = 8) -> bool:
    """B_aff 에서 start → … → end 유향 경로 존재 여부"""
    needed = start.power - end.power
    if needed < 0 or needed > cap:
        return False
    return needed in zero_arrow_counts(crystal, start.base, cap)[end.base]


def maximal_vectors(crystal: CrystalGraph, table: EnergyTable) -> List[Tuple[int, int, int]]:
    """
    B⊗B 에서 모든 i∈I₀ 의 e_i 로 소멸되는 쌍

    Returns:
        (왼쪽 id, 오른쪽 id, H) 목록
    """
    finite = crystal.spec.finite_nodes
    result: List[Tuple[int, int, int]] = []
    for a in range(crystal.size):
        if any(crystal.epsilon(i, a) for i in finite):
            continue
        for b in range(crystal.size):
            if all(crystal.phi(i, a) >= crystal.epsilon(i, b) for i in finite):
                result.append((a, b, table(a, b)))
    return result


def classical_component(crystal: CrystalGraph, seed: Tuple[int, int]) -> FrozenSet[Tuple[int, int]]:
    """0-화살표를 잊은 B⊗B 에서 seed 를 포함하는 연결 성분"""
    seen = {seed}
    queue = deque([seed])
    while queue:
        a, b = queue.popleft()
        for i in crystal.spec.finite_nodes:
            for direction in ("f", "e"):
                moved = pair_step(crystal, crystal, direction, i, a, b)
                if moved is None:
                    continue
                pair = (moved[0], moved[1])
                if pair not in seen:
                    seen.add(pair)
                    queue.append(pair)
    return frozenset(seen)


def maximal_layer_zero_root(spec: CartanSpec) -> Root:
    """Φ₀⁺ 의 최대 원소 (높이가 가장 큰 층 0 양근)"""
    candidates = [r for r in enumerate_roots(spec) if r.is_positive and phi_layer(spec, r) == 0]
    return max(candidates, key=lambda r: (r.height, r.coeffs))


def expected_maximal_vectors(crystal: CrystalGraph) -> Dict[Tuple[int, int], int]:
    """
    최고근 구성 결정의 극대 벡터와 H 값 목록 (Ĩ 가 한 점인 경우)

    Returns:
        (왼쪽 id, 오른쪽 id) → H
    """
    spec = crystal.spec
    theta = highest_root(spec)
    (node,) = tuple(spec.tilde_I)
    x = lambda root: crystal.find_label(root_label(root))  # noqa: E731
    empty = crystal.find_label(EMPTY_LABEL)
    beta = maximal_layer_zero_root(spec)
    return {
        (empty, empty): 2,
        (x(theta), x(-theta)): 2,
        (empty, x(theta)): 1,
        (x(theta), empty): 1,
        (x(theta), crystal.find_label(f"y{node}")): 2,
        (x(theta), x(theta - spec.simple_root(node))): 1,
        (x(theta), x(theta)): 0,
        (x(theta), x(beta)): 2,
    }


def _path_root(spec: CartanSpec, nodes: List[int]) -> Root:
    coeffs = [0] * spec.rank
    for j in nodes:
        coeffs[j - 1] += 1
    return Root(tuple(coeffs))


def described_component(crystal: CrystalGraph, node: int) -> Set[Tuple[int, int]]:
    """
    𝒞(x_θ ⊗ y_i) 의 근 조합론적 기술

    - x_θ⊗y_i, y_i⊗x_{−θ}
    - γ∈Φ⁺∖{θ} 마다 x_{θ−α}⊗x_{−β}, x_β⊗x_{−θ+α}
      (α 는 supp(γ) 에서 i 로 가는 I₀∖supp(γ) 안의 최단 경로 위 단순근의 합, i∈supp(γ) 이면 0;
      β = θ−γ−α)
    - j∈I₀ 마다 x_{θ−α}⊗x_{−θ+α} (α 는 i 에서 j 까지 경로 위 단순근의 합)
    """
    spec = crystal.spec
    theta = highest_root(spec)
    finite_graph = nx.Graph()
    finite_graph.add_nodes_from(spec.finite_nodes)
    finite_graph.add_edges_from((a, b) for a, b in spec.adjacency if a != 0 and b != 0)

    def x(root: Root) -> int:
        return crystal.find_label(root_label(root))

    y = crystal.find_label(f"y{node}")
    members: Set[Tuple[int, int]] = {(x(theta), y), (y, x(-theta))}
    zero = Root(tuple(0 for _ in range(spec.rank)))

    for gamma in enumerate_roots(spec):
        if not gamma.is_positive or gamma == theta:
            continue
        support = gamma.support
        if node in support:
            alpha = zero
        else:
            paths = [nx.shortest_path(finite_graph, node, s) for s in sorted(support)]
            shortest = min(paths, key=len)
            alpha = _path_root(spec, shortest[:-1])
        beta = theta - gamma - alpha
        members.add((x(theta - alpha), x(-beta)))
        members.add((x(beta), x(alpha - theta)))

    for j in spec.finite_nodes:
        alpha = _path_root(spec, nx.shortest_path(finite_graph, node, j))
        members.add((x(theta - alpha), x(alpha - theta)))
    return members
