"""
추상 결정 그래프 핵심 모듈

유한 색 유향 그래프로서의 결정, 카시와라 연산자, 문자열 통계,
텐서곱, 아핀화, 성분 분해, 앵커 동형 탐색을 제공합니다.

텐서곱은 b⊗b′ 에서 φ_i(b) > ε_i(b′) 일 때 f_i가 왼쪽 인자에 작용하는
규약을 따릅니다. 인자 순서를 뒤집는 규약을 쓰는 계산 대수 시스템과
비교할 때는 b⊗b′ 를 b′⊗b 로 바꿔 읽으면 됩니다.
"""

import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Any, Callable, Dict, Iterable, Iterator, List, Literal, Optional, Sequence, Set, Tuple

import networkx as nx

from .root_data import CartanSpec, WeightVector, pairing

# 로거 설정
logger = logging.getLogger(__name__)

# 연산 결과가 없음을 나타내는 값
NONE = -1

Direction = Literal["e", "f"]


class CrystalError(Exception):
    """결정 구조 관련 예외"""
    pass


class InfiniteStringError(CrystalError):
    """ε_i/φ_i 가 유한하지 않은 경우"""
    pass


@dataclass
class CrystalGraph:
    """
    유한 결정 그래프

    원소는 0..N-1 조밀 id이며, 색마다 부분 단사 f_i 와 그 역 e_i 를
    배열로 저장합니다.

    Attributes:
        spec: 카르탄 데이터
        f_arrows: 색 → f_i 대상 배열 (없으면 NONE)
        e_arrows: 색 → e_i 대상 배열
        weights: 원소별 가중치
        labels: 원소별 이름
        name: 결정 이름
    """
    spec: CartanSpec
    f_arrows: Dict[int, List[int]]
    e_arrows: Dict[int, List[int]]
    weights: List[WeightVector]
    labels: List[str]
    name: str = ""

    @classmethod
    def from_arrows(
        cls,
        spec: CartanSpec,
        size: int,
        arrows: Iterable[Tuple[int, int, int]],
        weights: Sequence[WeightVector],
        labels: Optional[Sequence[str]] = None,
        name: str = "",
    ) -> "CrystalGraph":
        """
        (색, 출발, 도착) 화살표 목록으로 결정 생성

        Raises:
            CrystalError: 화살표가 부분 단사가 아닌 경우
        """
        f_arrows = {i: [NONE] * size for i in spec.index_set}
        e_arrows = {i: [NONE] * size for i in spec.index_set}
        for color, source, target in arrows:
            if f_arrows[color][source] not in (NONE, target):
                raise CrystalError(f"{name}: 색 {color}의 f가 {source}에서 두 번 정의됨")
            if e_arrows[color][target] not in (NONE, source):
                raise CrystalError(f"{name}: 색 {color}의 e가 {target}에서 두 번 정의됨")
            f_arrows[color][source] = target
            e_arrows[color][target] = source
        if labels is None:
            labels = [str(x) for x in range(size)]
        return cls(spec, f_arrows, e_arrows, list(weights), list(labels), name)

    @property
    def size(self) -> int:
        return len(self.weights)

    @property
    def index_set(self) -> Tuple[int, ...]:
        return self.spec.index_set

    def __len__(self) -> int:
        return self.size

    def f(self, i: int, x: int) -> int:
        return self.f_arrows[i][x]

    def e(self, i: int, x: int) -> int:
        return self.e_arrows[i][x]

    def step(self, direction: Direction, i: int, x: int) -> int:
        if x == NONE:
            return NONE
        return self.f_arrows[i][x] if direction == "f" else self.e_arrows[i][x]

    def arrows(self) -> Iterator[Tuple[int, int, int]]:
        """(색, 출발, 도착)을 출발 id, 색 오름차순으로 순회"""
        for x in range(self.size):
            for i in self.index_set:
                y = self.f_arrows[i][x]
                if y != NONE:
                    yield i, x, y

    @cached_property
    def _stats(self) -> Dict[int, Tuple[List[int], List[int]]]:
        stats: Dict[int, Tuple[List[int], List[int]]] = {}
        for i in self.index_set:
            eps = [0] * self.size
            phi = [0] * self.size
            f_row, e_row = self.f_arrows[i], self.e_arrows[i]
            for x in range(self.size):
                if e_row[x] != NONE:
                    continue
                # 문자열 시작점에서 끝까지 따라가며 길이 기록
                chain = [x]
                while f_row[chain[-1]] != NONE:
                    chain.append(f_row[chain[-1]])
                    if len(chain) > self.size:
                        raise InfiniteStringError(f"{self.name}: 색 {i} 문자열이 순환합니다")
                length = len(chain) - 1
                for k, y in enumerate(chain):
                    eps[y] = k
                    phi[y] = length - k
            for x in range(self.size):
                # 시작점이 없는 원소는 순환 문자열에 있음
                if e_row[x] != NONE and eps[x] == 0:
                    raise InfiniteStringError(
                        f"{self.name}: 원소 {self.labels[x]}의 색 {i} 문자열이 유한하지 않습니다"
                    )
            stats[i] = (eps, phi)
        return stats

    def epsilon(self, i: int, x: int) -> int:
        return self._stats[i][0][x]

    def phi(self, i: int, x: int) -> int:
        return self._stats[i][1][x]

    def string_stats(self, i: int, x: int) -> Tuple[int, int]:
        return self._stats[i][0][x], self._stats[i][1][x]

    def epsilon_weight(self, x: int) -> WeightVector:
        """ε(b) = Σ ε_i(b) Λ_i"""
        return WeightVector(tuple(self.epsilon(i, x) for i in self.index_set))

    def phi_weight(self, x: int) -> WeightVector:
        """φ(b) = Σ φ_i(b) Λ_i"""
        return WeightVector(tuple(self.phi(i, x) for i in self.index_set))

    @cached_property
    def _label_index(self) -> Dict[str, int]:
        return {label: x for x, label in enumerate(self.labels)}

    def find_label(self, label: str) -> int:
        """
        이름으로 원소 id 검색

        Raises:
            KeyError: 해당 이름이 없는 경우
        """
        if label not in self._label_index:
            raise KeyError(f"{self.name}: 원소 '{label}'이(가) 없습니다")
        return self._label_index[label]

    def to_json_dict(self) -> Dict[str, Any]:
        """{elements:[{id, weight, label}], arrows:[{color, from, to}]} 스키마"""
        return {
            "name": self.name,
            "type": self.spec.type_tag.value,
            "elements": [
                {
                    "id": x,
                    "weight": {
                        "lambda": list(self.weights[x].lambda_coeffs),
                        "delta": self.weights[x].delta_coeff,
                    },
                    "label": self.labels[x],
                }
                for x in range(self.size)
            ],
            "arrows": [{"color": i, "from": x, "to": y} for i, x, y in self.arrows()],
        }


def string_stats(crystal: CrystalGraph, i: int, x: int) -> Tuple[int, int]:
    """(ε_i(x), φ_i(x))"""
    return crystal.string_stats(i, x)


def step(crystal: CrystalGraph, direction: Direction, i: int, x: int) -> int:
    """ẽ_i 또는 f̃_i 한 번 적용 (정의되지 않으면 NONE)"""
    return crystal.step(direction, i, x)


def check_axioms(crystal: CrystalGraph) -> List[str]:
    """
    결정 공리 검사

    Returns:
        위반 메시지 목록 (비어 있으면 통과)
    """
    violations: List[str] = []
    for i in crystal.index_set:
        alpha = crystal.spec.simple_root_weight(i).classical()
        for x in range(crystal.size):
            eps, phi = crystal.string_stats(i, x)
            weight = crystal.weights[x]
            if phi - eps != pairing(weight, i):
                violations.append(
                    f"φ_{i}-ε_{i} ≠ ⟨wt,h_{i}⟩: {crystal.labels[x]} ({phi}-{eps} vs {pairing(weight, i)})"
                )
            y = crystal.f(i, x)
            if y != NONE:
                if crystal.e(i, y) != x:
                    violations.append(f"e_{i}(f_{i}({crystal.labels[x]})) ≠ {crystal.labels[x]}")
                if crystal.weights[y].classical() != (weight - alpha).classical():
                    violations.append(f"wt(f_{i} {crystal.labels[x]}) ≠ wt - α_{i}")
    return violations


def tensor(left: CrystalGraph, right: CrystalGraph, name: Optional[str] = None) -> CrystalGraph:
    """
    텐서곱 B⊗B′

    원소 a⊗b 의 id는 a·|B′| + b 입니다.

    Args:
        left: 왼쪽 인자 B
        right: 오른쪽 인자 B′
        name: 결과 결정 이름

    Returns:
        텐서곱 결정
    """
    if left.index_set != right.index_set:
        raise CrystalError("텐서곱 인자의 첨자 집합이 다릅니다")

    n_right = right.size
    size = left.size * n_right
    arrows: List[Tuple[int, int, int]] = []
    for i in left.index_set:
        for a in range(left.size):
            phi_a = left.phi(i, a)
            for b in range(n_right):
                if phi_a > right.epsilon(i, b):
                    target = left.f(i, a)
                    if target != NONE:
                        arrows.append((i, a * n_right + b, target * n_right + b))
                else:
                    target = right.f(i, b)
                    if target != NONE:
                        arrows.append((i, a * n_right + b, a * n_right + target))

    weights = [left.weights[a] + right.weights[b] for a in range(left.size) for b in range(n_right)]
    labels = [f"{left.labels[a]}⊗{right.labels[b]}" for a in range(left.size) for b in range(n_right)]
    product = CrystalGraph.from_arrows(
        left.spec, size, arrows, weights, labels, name or f"{left.name}⊗{right.name}"
    )
    logger.debug(f"텐서곱 생성: {product.name} ({size}개 원소)")
    return product


def pair_step(
    left: CrystalGraph,
    right: CrystalGraph,
    direction: Direction,
    i: int,
    a: int,
    b: int,
) -> Optional[Tuple[int, int, str]]:
    """
    텐서곱 원소 a⊗b 에 연산자 적용 (텐서곱 결정을 만들지 않음)

    Returns:
        (새 왼쪽 id, 새 오른쪽 id, 작용한 인자 "left"/"right") 또는 None
    """
    phi_a = left.phi(i, a)
    eps_b = right.epsilon(i, b)
    if direction == "f":
        acts_left = phi_a > eps_b
    else:
        acts_left = phi_a >= eps_b
    if acts_left:
        target = left.step(direction, i, a)
        return None if target == NONE else (target, b, "left")
    target = right.step(direction, i, b)
    return None if target == NONE else (a, target, "right")


def split_tensor(right: CrystalGraph, x: int) -> Tuple[int, int]:
    """텐서곱 id → (왼쪽 id, 오른쪽 id)"""
    return divmod(x, right.size)


@dataclass(frozen=True, order=True)
class AffineElem:
    """
    아핀화 B_aff 의 원소 zⁿb

    Attributes:
        base: 원소 id
        power: z 지수 n
    """
    base: int
    power: int = 0

    def weight(self, crystal: CrystalGraph) -> WeightVector:
        """wt(zⁿb) = wt(b) + nδ"""
        return crystal.weights[self.base] + crystal.spec.delta().scale(self.power)

    def shifted(self, k: int) -> "AffineElem":
        return AffineElem(self.base, self.power + k)


def aff_step(
    crystal: CrystalGraph, direction: Direction, i: int, element: AffineElem
) -> Optional[AffineElem]:
    """
    아핀화에서의 연산자: f_0 은 z 지수를 1 내리고 e_0 은 1 올림

    Returns:
        결과 원소 또는 None
    """
    target = crystal.step(direction, i, element.base)
    if target == NONE:
        return None
    if i != 0:
        return AffineElem(target, element.power)
    return AffineElem(target, element.power + (1 if direction == "e" else -1))


def to_networkx(crystal: CrystalGraph, forget_colors: Iterable[int] = ()) -> nx.MultiDiGraph:
    """색 라벨이 붙은 networkx 다중 유향 그래프로 변환"""
    forgotten = set(forget_colors)
    graph = nx.MultiDiGraph()
    graph.add_nodes_from(range(crystal.size))
    for i, x, y in crystal.arrows():
        if i not in forgotten:
            graph.add_edge(x, y, color=i)
    return graph


def components(crystal: CrystalGraph, forget_colors: Iterable[int] = ()) -> List[List[int]]:
    """
    주어진 색의 화살표를 지운 뒤의 약연결 성분

    Returns:
        성분 목록 (각 성분은 id 오름차순, 성분은 최소 id 순)
    """
    graph = to_networkx(crystal, forget_colors)
    parts = [sorted(part) for part in nx.weakly_connected_components(graph)]
    return sorted(parts, key=lambda part: part[0])


@dataclass
class IsomorphismResult:
    """
    앵커 동형 탐색 결과

    Attributes:
        mapping: A id → B id (충돌 시 None)
        conflict: 충돌한 화살표 설명
        total: 모든 원소가 대응되었는지 여부
    """
    mapping: Optional[Dict[int, int]]
    conflict: Optional[str] = None
    total: bool = False
    visited: int = 0

    @property
    def ok(self) -> bool:
        return self.mapping is not None and self.conflict is None and self.total


def find_isomorphism(
    source: CrystalGraph,
    target: CrystalGraph,
    anchors: Sequence[Tuple[int, int]],
    color_map: Optional[Dict[int, int]] = None,
) -> IsomorphismResult:
    """
    앵커에서 화살표를 따라 라벨을 전파하는 결정 동형 탐색

    color_map 이 주어지면 색 i 화살표를 색 π(i) 화살표로 보내고
    가중치도 Λ_i → Λ_{π(i)} 로 치환해 비교합니다.

    Args:
        source: 결정 A
        target: 결정 B
        anchors: (A id, B id) 앵커 목록
        color_map: 색 치환 π

    Returns:
        IsomorphismResult
    """
    if not anchors:
        raise CrystalError("앵커가 비어 있습니다")
    colors = color_map or {i: i for i in source.index_set}

    mapping: Dict[int, int] = {}
    image: Dict[int, int] = {}
    queue: deque = deque()

    def assign(a: int, b: int, reason: str) -> Optional[str]:
        if a in mapping:
            if mapping[a] != b:
                return f"{reason}: {source.labels[a]} ↦ {target.labels[mapping[a]]} 와 {target.labels[b]} 충돌"
            return None
        if b in image:
            return f"{reason}: {target.labels[b]} 이(가) {source.labels[image[b]]} 의 상으로 이미 사용됨"
        if source.weights[a].permute(colors) != target.weights[b]:
            return (
                f"{reason}: 가중치 불일치 {source.labels[a]} ({source.weights[a].label()}) "
                f"vs {target.labels[b]} ({target.weights[b].label()})"
            )
        mapping[a] = b
        image[b] = a
        queue.append(a)
        return None

    for a, b in anchors:
        problem = assign(a, b, "앵커")
        if problem:
            return IsomorphismResult(None, problem)

    while queue:
        a = queue.popleft()
        b = mapping[a]
        for i in source.index_set:
            j = colors[i]
            for direction in ("f", "e"):
                a_next = source.step(direction, i, a)
                b_next = target.step(direction, j, b)
                arrow = f"{direction}_{i}({source.labels[a]})"
                if (a_next == NONE) != (b_next == NONE):
                    return IsomorphismResult(
                        None,
                        f"{arrow}: 한쪽에만 화살표 존재 "
                        f"({source.labels[a]} → {'없음' if a_next == NONE else source.labels[a_next]}, "
                        f"{target.labels[b]} → {'없음' if b_next == NONE else target.labels[b_next]})",
                    )
                if a_next == NONE:
                    continue
                problem = assign(a_next, b_next, arrow)
                if problem:
                    return IsomorphismResult(None, problem, visited=len(mapping))

    total = len(mapping) == source.size == target.size
    return IsomorphismResult(mapping, None, total, len(mapping))


def bfs_order(crystal: CrystalGraph, start: int, colors: Optional[Set[int]] = None) -> List[int]:
    """start 에서 f/e 화살표로 도달 가능한 원소를 너비 우선 순서로 반환"""
    allowed = colors if colors is not None else set(crystal.index_set)
    seen = {start}
    order = [start]
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for i in sorted(allowed):
            for direction in ("f", "e"):
                y = crystal.step(direction, i, x)
                if y != NONE and y not in seen:
                    seen.add(y)
                    order.append(y)
                    queue.append(y)
    return order


class DepthOverflowError(CrystalError):
    """열거 깊이가 설정 상한을 넘는 경우"""
    pass


@dataclass
class CrystalFragment:
    """
    무한 결정의 깊이 제한 조각

    Attributes:
        name: 조각 이름
        nodes: 원소 (너비 우선 순서)
        depths: 원소별 깊이
        weights: 원소별 아핀 가중치
        labels: 원소별 표기
        arrows: (색, 출발 번호, 도착 번호) f 화살표
    """
    name: str
    nodes: List[Any] = field(default_factory=list)
    depths: List[int] = field(default_factory=list)
    weights: List[WeightVector] = field(default_factory=list)
    labels: List[str] = field(default_factory=list)
    arrows: List[Tuple[int, int, int]] = field(default_factory=list)

    def __len__(self) -> int:
        return len(self.nodes)

    @cached_property
    def index(self) -> Dict[Any, int]:
        return {node: k for k, node in enumerate(self.nodes)}

    def weight_counts(self) -> Dict[WeightVector, int]:
        counts: Dict[WeightVector, int] = {}
        for weight in self.weights:
            counts[weight] = counts.get(weight, 0) + 1
        return counts

    def to_json_dict(self) -> Dict[str, Any]:
        return {
            "name": self.name,
            "elements": [
                {
                    "id": k,
                    "label": self.labels[k],
                    "depth": self.depths[k],
                    "weight": {
                        "lambda": list(self.weights[k].lambda_coeffs),
                        "delta": self.weights[k].delta_coeff,
                    },
                }
                for k in range(len(self.nodes))
            ],
            "arrows": [{"color": i, "from": x, "to": y} for i, x, y in self.arrows],
        }


def closure_fragment(
    name: str,
    sources: Sequence[Tuple[Any, int]],
    index_set: Sequence[int],
    step: Callable[[int, Any], Optional[Any]],
    weight: Callable[[Any], WeightVector],
    label: Callable[[Any], str],
    depth: int,
) -> CrystalFragment:
    """
    출발 원소에서 f 연산 닫힘을 깊이 depth 까지 너비 우선으로 수집

    순서는 (깊이, 발견 순서) 이고 같은 원소에서는 색 오름차순으로 진행합니다.

    Args:
        name: 조각 이름
        sources: (원소, 시작 깊이) 목록
        index_set: 색 집합
        step: (색, 원소) → f 적용 결과 또는 None
        weight: 원소 → 아핀 가중치
        label: 원소 → 표기
        depth: 최대 깊이

    Returns:
        CrystalFragment
    """
    fragment = CrystalFragment(name)
    index: Dict[Any, int] = {}

    def add(node: Any, level: int) -> int:
        index[node] = len(fragment.nodes)
        fragment.nodes.append(node)
        fragment.depths.append(level)
        fragment.weights.append(weight(node))
        fragment.labels.append(label(node))
        return index[node]

    for node, level in sorted(sources, key=lambda item: item[1]):
        if level <= depth and node not in index:
            add(node, level)

    cursor = 0
    while cursor < len(fragment.nodes):
        node, level = fragment.nodes[cursor], fragment.depths[cursor]
        for i in index_set:
            target = step(i, node)
            if target is None:
                continue
            if target not in index:
                if level + 1 > depth:
                    continue
                add(target, level + 1)
            fragment.arrows.append((i, cursor, index[target]))
        cursor += 1

    logger.debug(f"{name}: 깊이 {depth} 까지 원소 {len(fragment.nodes)}개, 화살표 {len(fragment.arrows)}개")
    return fragment


def partitions(k: int, largest: Optional[int] = None) -> List[Tuple[int, ...]]:
    """k 의 분할 (비증가 튜플) 목록"""
    if largest is None:
        largest = k
    if k == 0:
        return [()]
    result: List[Tuple[int, ...]] = []
    for first in range(min(k, largest), 0, -1):
        for rest in partitions(k - first, first):
            result.append((first,) + rest)
    return result
