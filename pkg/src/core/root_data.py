"""
E형 아핀 딘킨 데이터 및 유한 근계 모듈

이 모듈은 E6/E7/E8 아핀 카르탄 행렬, 마크, 근 열거, 최고근,
가중치 쌍대 및 Φ±₀/Φ±₁/Φ±₂ 층 분해를 제공합니다.
노드 번호는 부르바키 번호를 그대로 따릅니다.
"""

import logging
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Tuple

# 로거 설정
logger = logging.getLogger(__name__)


class RootDataError(Exception):
    """근계 데이터 관련 예외"""
    pass


class TypeTag(str, Enum):
    """지원하는 아핀 타입"""
    E6 = "E6"
    E7 = "E7"
    E8 = "E8"


# 딘킨 다이어그램 (노드 0은 아핀 노드)
_DYNKIN_EDGES: Dict[TypeTag, Tuple[Tuple[int, int], ...]] = {
    TypeTag.E6: ((1, 3), (3, 4), (4, 5), (5, 6), (2, 4), (0, 2)),
    TypeTag.E7: ((0, 1), (1, 3), (3, 4), (4, 5), (5, 6), (6, 7), (2, 4)),
    TypeTag.E8: ((0, 8), (8, 7), (7, 6), (6, 5), (5, 4), (4, 3), (3, 1), (2, 4)),
}

_MARKS: Dict[TypeTag, Tuple[int, ...]] = {
    TypeTag.E6: (1, 1, 2, 2, 3, 2, 1),
    TypeTag.E7: (1, 2, 2, 3, 4, 3, 2, 1),
    TypeTag.E8: (1, 2, 3, 4, 6, 5, 4, 3, 2),
}

_MINUSCULE: Dict[TypeTag, FrozenSet[int]] = {
    TypeTag.E6: frozenset({0, 1, 6}),
    TypeTag.E7: frozenset({0, 7}),
    TypeTag.E8: frozenset({0}),
}

# 노드 0을 각 극소 노드로 보내는 다이어그램 자기동형
_DIAGRAM_AUTOMORPHISMS: Dict[TypeTag, Dict[int, Dict[int, int]]] = {
    TypeTag.E6: {
        1: {0: 1, 1: 6, 6: 0, 2: 3, 3: 5, 5: 2, 4: 4},
        6: {0: 6, 6: 1, 1: 0, 2: 5, 5: 3, 3: 2, 4: 4},
    },
    TypeTag.E7: {
        7: {0: 7, 7: 0, 1: 6, 6: 1, 3: 5, 5: 3, 2: 2, 4: 4},
    },
    TypeTag.E8: {},
}


def parse_type_tag(value: str) -> TypeTag:
    """
    문자열을 TypeTag로 변환

    Raises:
        RootDataError: 지원되지 않는 타입인 경우
    """
    try:
        return TypeTag(value.upper())
    except ValueError:
        raise RootDataError(f"지원되지 않는 타입: {value} (지원: E6, E7, E8)")


@dataclass(frozen=True)
class Root:
    """
    유한 근 (단순근 α₁..α_n 계수 벡터)

    Attributes:
        coeffs: 단순근 계수
    """
    coeffs: Tuple[int, ...]

    def __add__(self, other: "Root") -> "Root":
        return Root(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "Root") -> "Root":
        return Root(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "Root":
        return Root(tuple(-a for a in self.coeffs))

    def coeff(self, i: int) -> int:
        """단순근 α_i 계수 (i는 1부터 시작)"""
        return self.coeffs[i - 1]

    @property
    def is_positive(self) -> bool:
        return all(c >= 0 for c in self.coeffs) and any(self.coeffs)

    @property
    def height(self) -> int:
        return sum(self.coeffs)

    @property
    def support(self) -> FrozenSet[int]:
        """계수가 0이 아닌 노드 집합"""
        return frozenset(i + 1 for i, c in enumerate(self.coeffs) if c != 0)

    def label(self) -> str:
        return "(" + ",".join(str(c) for c in self.coeffs) + ")"


@dataclass(frozen=True)
class WeightVector:
    """
    아핀 가중치 (기본 가중치 Λ₀..Λ_n 좌표 + δ 계수)

    Attributes:
        lambda_coeffs: 기본 가중치 계수
        delta_coeff: δ 계수
    """
    lambda_coeffs: Tuple[int, ...]
    delta_coeff: int = 0

    def __add__(self, other: "WeightVector") -> "WeightVector":
        return WeightVector(
            tuple(a + b for a, b in zip(self.lambda_coeffs, other.lambda_coeffs)),
            self.delta_coeff + other.delta_coeff,
        )

    def __sub__(self, other: "WeightVector") -> "WeightVector":
        return self + other.scale(-1)

    def __neg__(self) -> "WeightVector":
        return self.scale(-1)

    def scale(self, k: int) -> "WeightVector":
        return WeightVector(tuple(k * a for a in self.lambda_coeffs), k * self.delta_coeff)

    def classical(self) -> "WeightVector":
        """δ 성분을 버린 고전 가중치"""
        return WeightVector(self.lambda_coeffs, 0)

    def permute(self, permutation: Dict[int, int]) -> "WeightVector":
        """노드 치환 π에 따라 Λ_i → Λ_{π(i)}"""
        coeffs = [0] * len(self.lambda_coeffs)
        for i, c in enumerate(self.lambda_coeffs):
            coeffs[permutation.get(i, i)] = c
        return WeightVector(tuple(coeffs), self.delta_coeff)

    def label(self) -> str:
        """사람이 읽을 수 있는 표기 (예: Λ0-Λ6-δ)"""
        parts: List[str] = []
        for i, c in enumerate(self.lambda_coeffs):
            if c == 0:
                continue
            sign = "+" if c > 0 else "-"
            magnitude = "" if abs(c) == 1 else str(abs(c))
            parts.append(f"{sign}{magnitude}Λ{i}")
        if self.delta_coeff:
            sign = "+" if self.delta_coeff > 0 else "-"
            magnitude = "" if abs(self.delta_coeff) == 1 else str(abs(self.delta_coeff))
            parts.append(f"{sign}{magnitude}δ")
        if not parts:
            return "0"
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text


@dataclass(frozen=True)
class CartanSpec:
    """
    아핀 카르탄 데이터

    Attributes:
        type_tag: 타입 (E6/E7/E8)
        index_set: 노드 0..n
        cartan_matrix: 카르탄 행렬 a_ij
        marks: 마크 a_i
        comarks: 코마크 a_i^∨ (단순 레이스 타입이므로 마크와 동일)
        adjacency: 딘킨 변 집합
        tilde_I: 노드 0에 인접한 노드 집합
        minuscule_nodes: 레벨 1 기본 가중치를 주는 노드 집합
    """
    type_tag: TypeTag
    index_set: Tuple[int, ...]
    cartan_matrix: Tuple[Tuple[int, ...], ...]
    marks: Tuple[int, ...]
    comarks: Tuple[int, ...]
    adjacency: FrozenSet[Tuple[int, int]]
    tilde_I: FrozenSet[int]
    minuscule_nodes: FrozenSet[int]

    @property
    def rank(self) -> int:
        """유한 부분계의 랭크 n"""
        return len(self.index_set) - 1

    @property
    def finite_nodes(self) -> Tuple[int, ...]:
        return self.index_set[1:]

    @property
    def null_root_height(self) -> int:
        """Σ a_i (δ 열 하나의 블록 수)"""
        return sum(self.marks)

    def neighbors(self, i: int) -> FrozenSet[int]:
        return frozenset(j for j in self.index_set if self.cartan_matrix[i][j] == -1)

    def level(self, weight: WeightVector) -> int:
        return sum(a * c for a, c in zip(self.comarks, weight.lambda_coeffs))

    def fundamental_weight(self, i: int) -> WeightVector:
        coeffs = [0] * len(self.index_set)
        coeffs[i] = 1
        return WeightVector(tuple(coeffs))

    def zero_weight(self) -> WeightVector:
        return WeightVector(tuple(0 for _ in self.index_set))

    def delta(self) -> WeightVector:
        return WeightVector(tuple(0 for _ in self.index_set), 1)

    def simple_root_weight(self, j: int) -> WeightVector:
        """아핀 단순근 α_j (α₀는 δ 계수 1을 가짐)"""
        coeffs = tuple(self.cartan_matrix[i][j] for i in self.index_set)
        return WeightVector(coeffs, 1 if j == 0 else 0)

    def classical_simple_root_weight(self, j: int) -> WeightVector:
        return self.simple_root_weight(j).classical()

    def root_weight(self, root: Root) -> WeightVector:
        """유한 근 Σ c_k α_k 의 레벨 0 고전 가중치"""
        weight = self.zero_weight()
        for k in self.finite_nodes:
            c = root.coeff(k)
            if c:
                weight = weight + self.classical_simple_root_weight(k).scale(c)
        return weight

    def level_one_weights(self) -> List[WeightVector]:
        """레벨 1 우세 고전 가중치 Λ_i (i 극소 노드)"""
        return [self.fundamental_weight(i) for i in sorted(self.minuscule_nodes)]

    def diagram_automorphism(self, node: int) -> Dict[int, int]:
        """
        노드 0을 주어진 극소 노드로 보내는 다이어그램 자기동형

        Raises:
            RootDataError: 해당 자기동형이 없는 경우
        """
        if node == 0:
            return {i: i for i in self.index_set}
        permutation = _DIAGRAM_AUTOMORPHISMS[self.type_tag].get(node)
        if permutation is None:
            raise RootDataError(f"{self.type_tag.value}: 노드 {node}로 가는 자기동형이 없습니다")
        return dict(permutation)

    @cached_property
    def simple_roots(self) -> Tuple[Root, ...]:
        n = self.rank
        return tuple(Root(tuple(1 if k == i else 0 for k in range(n))) for i in range(n))

    def simple_root(self, i: int) -> Root:
        return self.simple_roots[i - 1]


def build_cartan(type_tag: str | TypeTag) -> CartanSpec:
    """
    하드코딩된 딘킨 데이터로 CartanSpec 생성

    Args:
        type_tag: "E6", "E7", "E8"

    Returns:
        CartanSpec
    """
    tag = type_tag if isinstance(type_tag, TypeTag) else parse_type_tag(type_tag)
    marks = _MARKS[tag]
    size = len(marks)
    matrix = [[2 if i == j else 0 for j in range(size)] for i in range(size)]
    for i, j in _DYNKIN_EDGES[tag]:
        matrix[i][j] = -1
        matrix[j][i] = -1

    edges = frozenset(tuple(sorted(edge)) for edge in _DYNKIN_EDGES[tag])
    tilde_I = frozenset(j for j in range(size) if matrix[0][j] == -1)

    spec = CartanSpec(
        type_tag=tag,
        index_set=tuple(range(size)),
        cartan_matrix=tuple(tuple(row) for row in matrix),
        marks=marks,
        comarks=marks,
        adjacency=edges,
        tilde_I=tilde_I,
        minuscule_nodes=_MINUSCULE[tag],
    )
    logger.debug(f"{tag.value} 카르탄 데이터 생성: 노드 {size}개, Σa_i={spec.null_root_height}")
    return spec


def pairing(weight: WeightVector, i: int) -> int:
    """⟨weight, h_i⟩ (⟨Λ_j,h_i⟩=δ_ij, ⟨δ,h_i⟩=0)"""
    return weight.lambda_coeffs[i]


def _reflect(spec: CartanSpec, root: Root, i: int) -> Root:
    # s_i(α) = α − ⟨α, α_i^∨⟩ α_i
    value = sum(root.coeff(k) * spec.cartan_matrix[i][k] for k in spec.finite_nodes)
    if value == 0:
        return root
    return root - Root(tuple(value * c for c in spec.simple_root(i).coeffs))


def enumerate_roots(spec: CartanSpec) -> FrozenSet[Root]:
    """
    단순근에서 단순 반사 닫힘으로 유한 근계 Φ 열거

    Returns:
        Φ⁺ ⊔ Φ⁻
    """
    found = set(spec.simple_roots)
    frontier = list(spec.simple_roots)
    while frontier:
        root = frontier.pop()
        for i in spec.finite_nodes:
            image = _reflect(spec, root, i)
            if image not in found:
                found.add(image)
                frontier.append(image)
    logger.debug(f"{spec.type_tag.value} 근 {len(found)}개 열거")
    return frozenset(found)


def positive_roots(roots: Iterable[Root]) -> List[Root]:
    """양근을 (높이, 계수) 순으로 정렬해 반환"""
    return sorted((r for r in roots if r.is_positive), key=lambda r: (r.height, r.coeffs))


def highest_root(spec: CartanSpec) -> Root:
    """최고근 θ = Σ_{i∈I₀} a_i α_i"""
    return Root(tuple(spec.marks[i] for i in spec.finite_nodes))


def phi_layer(spec: CartanSpec, root: Root) -> int:
    """Ĩ의 단순근 계수 합 (Φ±₀/Φ±₁/Φ±₂ 층 번호, 부호 포함)"""
    return sum(root.coeff(i) for i in spec.tilde_I)


def sorted_roots(roots: Iterable[Root]) -> List[Root]:
    """높이 내림차순, 계수 내림차순의 결정적 순서"""
    return sorted(roots, key=lambda r: (-r.height, tuple(-c for c in r.coeffs)))


def root_coefficients(spec: CartanSpec, weight: WeightVector) -> Tuple[Fraction, ...]:
    """
    고전 가중치를 유한 단순근 α₁..α_n 의 유리 계수로 표현

    유한 카르탄 행렬 연립방정식 Σ_k c_k a_jk = ⟨weight, h_j⟩ (j∈I₀) 의 해를
    가우스 소거로 구합니다.
    """
    nodes = spec.finite_nodes
    n = len(nodes)
    rows = [
        [Fraction(spec.cartan_matrix[j][k]) for k in nodes] + [Fraction(pairing(weight, j))]
        for j in nodes
    ]
    for col in range(n):
        pivot = next(r for r in range(col, n) if rows[r][col] != 0)
        rows[col], rows[pivot] = rows[pivot], rows[col]
        lead = rows[col][col]
        rows[col] = [v / lead for v in rows[col]]
        for r in range(n):
            if r != col and rows[r][col] != 0:
                factor = rows[r][col]
                rows[r] = [v - factor * p for v, p in zip(rows[r], rows[col])]
    return tuple(rows[k][n] for k in range(n))


def dominates(spec: CartanSpec, upper: WeightVector, lower: WeightVector) -> bool:
    """upper − lower 가 고전 단순근의 음이 아닌 정수 결합인지 여부"""
    coeffs = root_coefficients(spec, upper - lower)
    return all(c.denominator == 1 and c >= 0 for c in coeffs)


def dominant_weights_of_level(spec: CartanSpec, level: int) -> List[WeightVector]:
    """레벨 ℓ 우세 고전 가중치 Σ c_i Λ_i (c_i ≥ 0, Σ a_i c_i = ℓ) 목록"""
    results: List[WeightVector] = []
    size = len(spec.index_set)

    def extend(prefix: List[int], remaining: int) -> None:
        i = len(prefix)
        if i == size:
            if remaining == 0:
                results.append(WeightVector(tuple(prefix)))
            return
        for c in range(remaining // spec.comarks[i] + 1):
            extend(prefix + [c], remaining - c * spec.comarks[i])

    extend([], level)
    return results
