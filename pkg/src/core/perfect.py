"""
레벨 1 완전 결정 모듈

B₆, B₇ 은 극소 기본 가중치의 바일 궤도로 구성하고,
B₈ 은 최고근 θ 를 이용한 균일 구성으로 만듭니다.
완전 결정 공리 검사, b^λ / b_λ, 극값 원소, 라벨 계산을 제공합니다.
"""

import logging
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

from ..models.schemas import CheckResult, CheckStatus, PerfectReport
from .crystal import NONE, CrystalGraph, check_axioms, components, tensor
from .root_data import (
    CartanSpec,
    Root,
    TypeTag,
    WeightVector,
    dominant_weights_of_level,
    dominates,
    enumerate_roots,
    highest_root,
    phi_layer,
    sorted_roots,
)

# 로거 설정
logger = logging.getLogger(__name__)

# 각 타입의 레벨 0 기본 표현을 주는 극소 노드
MINUSCULE_BUILD_NODE: Dict[TypeTag, int] = {TypeTag.E6: 1, TypeTag.E7: 7}

EMPTY_LABEL = "∅"


class PerfectCrystalError(Exception):
    """완전 결정 구성 관련 예외"""
    pass


class NodeNotMinusculeError(PerfectCrystalError):
    """극소 노드가 아닌 경우"""
    pass


class StringsTooLongError(PerfectCrystalError):
    """라벨 표기에 필요한 문자열 길이 ≤ 1 조건 위반"""
    pass


@dataclass(frozen=True)
class LabeledElement:
    """
    들어오는/나가는 화살표 색으로 만든 원소 이름

    Attributes:
        in_set: ε_i = 1 인 색 (윗줄 표기)
        out_set: φ_i = 1 인 색
    """
    in_set: Tuple[int, ...]
    out_set: Tuple[int, ...]

    @property
    def key(self) -> str:
        """데이터 파일용 표기 (예: "6|0")"""
        return "".join(map(str, self.in_set)) + "|" + "".join(map(str, self.out_set))

    @property
    def pretty(self) -> str:
        """윗줄 결합 문자를 사용한 표기 (예: 6̄0)"""
        return "".join(f"{i}̄" for i in self.in_set) + "".join(map(str, self.out_set))

    @classmethod
    def parse(cls, key: str) -> "LabeledElement":
        left, right = key.split("|")
        return cls(tuple(int(c) for c in left), tuple(int(c) for c in right))


def _finite_pairing_of_root(spec: CartanSpec, root: Root) -> Tuple[int, ...]:
    # ⟨root, h_j⟩ (j∈I₀)
    return tuple(
        sum(root.coeff(k) * spec.cartan_matrix[j][k] for k in spec.finite_nodes)
        for j in spec.finite_nodes
    )


def _level_zero_weight(spec: CartanSpec, mu: Tuple[int, ...]) -> WeightVector:
    # Λ₀ 좌표는 레벨 0이 되도록 −Σ a_i μ_i
    lambda0 = -sum(spec.marks[j] * mu[j - 1] for j in spec.finite_nodes)
    return WeightVector((lambda0,) + tuple(mu))


def build_minuscule(spec: CartanSpec, node: Optional[int] = None) -> CrystalGraph:
    """
    극소 기본 가중치 ϖ 의 바일 궤도로 레벨 0 기본 결정 구성

    고전 화살표 μ →ᵢ μ−α_i 는 ⟨μ,h_i⟩ = 1 일 때, 0 화살표 μ →₀ μ+θ 는
    두 가중치가 모두 궤도에 있을 때 놓입니다.

    Args:
        spec: 카르탄 데이터
        node: 극소 노드 (기본값: E6은 1, E7은 7)

    Returns:
        CrystalGraph

    Raises:
        NodeNotMinusculeError: 노드가 0이 아닌 극소 노드가 아닌 경우
    """
    if node is None:
        node = MINUSCULE_BUILD_NODE.get(spec.type_tag, 0)
    if node == 0 or node not in spec.minuscule_nodes:
        raise NodeNotMinusculeError(f"{spec.type_tag.value}: 노드 {node}는 0이 아닌 극소 노드가 아닙니다")

    n = spec.rank
    start = tuple(1 if j == node else 0 for j in spec.finite_nodes)
    index: Dict[Tuple[int, ...], int] = {start: 0}
    orbit: List[Tuple[int, ...]] = [start]
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        for i in spec.finite_nodes:
            if mu[i - 1] != 1:
                continue
            lowered = tuple(mu[j - 1] - spec.cartan_matrix[j][i] for j in spec.finite_nodes)
            if lowered not in index:
                index[lowered] = len(orbit)
                orbit.append(lowered)
                queue.append(lowered)

    theta = _finite_pairing_of_root(spec, highest_root(spec))
    arrows: List[Tuple[int, int, int]] = []
    for source, mu in enumerate(orbit):
        for i in spec.finite_nodes:
            if mu[i - 1] == 1:
                lowered = tuple(mu[j - 1] - spec.cartan_matrix[j][i] for j in spec.finite_nodes)
                arrows.append((i, source, index[lowered]))
        raised = tuple(mu[k] + theta[k] for k in range(n))
        if raised in index:
            arrows.append((0, source, index[raised]))

    weights = [_level_zero_weight(spec, mu) for mu in orbit]
    crystal = CrystalGraph.from_arrows(
        spec, len(orbit), arrows, weights, name=f"B_{spec.type_tag.value[1]}"
    )
    names = labels(crystal)
    crystal.labels = [names[x].key for x in range(crystal.size)]
    logger.info(f"{crystal.name} 구성 완료: 원소 {crystal.size}개")
    return crystal


def root_label(root: Root) -> str:
    return "x" + root.label()


def build_bfkl(spec: CartanSpec) -> CrystalGraph:
    """
    최고근을 이용한 균일 구성 (x_α, y_i, ∅)

    Args:
        spec: 카르탄 데이터 (E8 에서 레벨 1 완전 결정)

    Returns:
        CrystalGraph
    """
    roots = sorted_roots(enumerate_roots(spec))
    theta = highest_root(spec)
    root_id = {root: k for k, root in enumerate(roots)}
    n_roots = len(roots)
    y_id = {i: n_roots + k for k, i in enumerate(spec.finite_nodes)}
    empty = n_roots + spec.rank

    arrows: List[Tuple[int, int, int]] = []
    for root, source in root_id.items():
        for i in spec.finite_nodes:
            simple = spec.simple_root(i)
            if root == simple:
                arrows.append((i, source, y_id[i]))
                continue
            target = root_id.get(root - simple)
            if target is not None:
                arrows.append((i, source, target))
        if phi_layer(spec, root) == -1:
            arrows.append((0, source, root_id[root + theta]))
    for i in spec.finite_nodes:
        arrows.append((i, y_id[i], root_id[-spec.simple_root(i)]))
    arrows.append((0, root_id[-theta], empty))
    arrows.append((0, empty, root_id[theta]))

    weights = [spec.root_weight(root) for root in roots]
    weights += [spec.zero_weight()] * (spec.rank + 1)
    names = [root_label(root) for root in roots]
    names += [f"y{i}" for i in spec.finite_nodes] + [EMPTY_LABEL]

    crystal = CrystalGraph.from_arrows(
        spec, len(weights), arrows, weights, names, name=f"B_{spec.type_tag.value[1]}"
    )
    logger.info(f"{crystal.name} 구성 완료: 원소 {crystal.size}개")
    return crystal


def build_perfect_crystal(spec: CartanSpec) -> CrystalGraph:
    """타입에 맞는 레벨 1 완전 결정 구성"""
    if spec.type_tag == TypeTag.E8:
        return build_bfkl(spec)
    return build_minuscule(spec)


def labels(crystal: CrystalGraph) -> Dict[int, LabeledElement]:
    """
    원소별 in/out 색 라벨

    Raises:
        StringsTooLongError: 길이 2 이상의 문자열이 있는 경우
    """
    result: Dict[int, LabeledElement] = {}
    for x in range(crystal.size):
        in_set: List[int] = []
        out_set: List[int] = []
        for i in crystal.index_set:
            eps, phi = crystal.string_stats(i, x)
            if eps > 1 or phi > 1:
                raise StringsTooLongError(f"{crystal.name}: 색 {i} 문자열 길이가 1을 넘습니다 (원소 {x})")
            if eps:
                in_set.append(i)
            if phi:
                out_set.append(i)
        result[x] = LabeledElement(tuple(in_set), tuple(out_set))
    return result


def extremal_elements(crystal: CrystalGraph) -> List[int]:
    """모든 색에서 i-문자열의 시작 또는 끝에 있는 원소"""
    return [
        x
        for x in range(crystal.size)
        if all(min(crystal.string_stats(i, x)) == 0 for i in crystal.index_set)
    ]


def b_upper(crystal: CrystalGraph, weight: WeightVector) -> List[int]:
    """ε(b^λ) = λ 인 원소 (완전 결정이면 정확히 하나)"""
    return [x for x in range(crystal.size) if crystal.epsilon_weight(x) == weight.classical()]


def b_lower(crystal: CrystalGraph, weight: WeightVector) -> List[int]:
    """φ(b_λ) = λ 인 원소 (완전 결정이면 정확히 하나)"""
    return [x for x in range(crystal.size) if crystal.phi_weight(x) == weight.classical()]


def _status(passed: bool) -> CheckStatus:
    return CheckStatus.PASS if passed else CheckStatus.FAIL


def check_perfect(crystal: CrystalGraph, level: int = 1) -> PerfectReport:
    """
    완전 결정 공리 검사

    모듈 존재 조건은 기계적으로 확인할 수 없으므로
    "유한 + 모든 문자열 유한 + 결정 공리 성립" 으로 대체하고
    보고서에 그 사실을 남깁니다.

    Args:
        crystal: 유한 결정
        level: 레벨 ℓ

    Returns:
        PerfectReport
    """
    spec = crystal.spec
    checks: List[CheckResult] = []

    violations = check_axioms(crystal)
    checks.append(
        CheckResult(
            check_id="perfect.surrogate_axioms",
            status=_status(not violations),
            witness=violations[0] if violations else None,
        )
    )

    square = tensor(crystal, crystal)
    parts = components(square)
    checks.append(
        CheckResult(
            check_id="perfect.tensor_square_connected",
            status=_status(len(parts) == 1),
            witness=None if len(parts) == 1 else f"성분 {len(parts)}개",
        )
    )

    # 고전 최고 가중치 원소 중 가중치가 최대인 것이 유일하게 모든 가중치를 지배
    highest = [
        x
        for x in range(crystal.size)
        if all(crystal.e(i, x) == NONE for i in spec.finite_nodes)
    ]
    top = next(
        (
            x
            for x in highest
            if all(dominates(spec, crystal.weights[x], w) for w in crystal.weights)
        ),
        highest[0],
    )
    top_weight = crystal.weights[top]
    same_weight = [x for x in range(crystal.size) if crystal.weights[x] == top_weight]
    dominated = [x for x in range(crystal.size) if not dominates(spec, top_weight, crystal.weights[x])]
    checks.append(
        CheckResult(
            check_id="perfect.unique_maximal_weight",
            status=_status(len(same_weight) == 1 and not dominated),
            witness=None
            if len(same_weight) == 1 and not dominated
            else f"최대 가중치 {top_weight.label()} 원소 {len(same_weight)}개, 지배되지 않는 원소 {len(dominated)}개",
        )
    )

    low_level = [x for x in range(crystal.size) if spec.level(crystal.epsilon_weight(x)) < level]
    checks.append(
        CheckResult(
            check_id="perfect.epsilon_level_bound",
            status=_status(not low_level),
            witness=None if not low_level else f"⟨c,ε⟩ < {level}: {crystal.labels[low_level[0]]}",
        )
    )

    upper_map: Dict[str, str] = {}
    lower_map: Dict[str, str] = {}
    missing: List[str] = []
    for weight in dominant_weights_of_level(spec, level):
        ups = b_upper(crystal, weight)
        lows = b_lower(crystal, weight)
        if len(ups) != 1 or len(lows) != 1:
            missing.append(f"{weight.label()}: b^λ {len(ups)}개, b_λ {len(lows)}개")
            continue
        upper_map[weight.label()] = crystal.labels[ups[0]]
        lower_map[weight.label()] = crystal.labels[lows[0]]
    checks.append(
        CheckResult(
            check_id="perfect.unique_b_lambda",
            status=_status(not missing),
            witness=missing[0] if missing else None,
        )
    )

    minimal = {x for x in range(crystal.size) if spec.level(crystal.epsilon_weight(x)) == level}
    uppers = {crystal.find_label(label) for label in upper_map.values()}
    checks.append(
        CheckResult(
            check_id="perfect.minimal_elements_bijection",
            status=_status(not missing and minimal == uppers),
            witness=None if not missing and minimal == uppers else f"최소 원소 {len(minimal)}개, b^λ {len(uppers)}개",
        )
    )

    report = PerfectReport(
        crystal=crystal.name,
        level=level,
        checks=checks,
        b_upper=upper_map,
        b_lower=lower_map,
        caveat="모듈 존재 조건은 '유한 + 문자열 유한 + 공리 성립' 대체 검사로 확인했습니다",
    )
    logger.info(f"{crystal.name} 레벨 {level} 완전성 검사: {'통과' if report.passed else '실패'}")
    return report


def ground_state_chain(crystal: CrystalGraph, start: WeightVector, length: int) -> List[Tuple[WeightVector, int]]:
    """
    λ_{r+1} = ε(b_{λ_r}) 반복으로 (λ_r, b_{λ_r}) 나열

    Raises:
        PerfectCrystalError: b_λ 가 유일하지 않은 경우
    """
    chain: List[Tuple[WeightVector, int]] = []
    weight = start.classical()
    for _ in range(length):
        found = b_lower(crystal, weight)
        if len(found) != 1:
            raise PerfectCrystalError(f"{crystal.name}: b_λ({weight.label()}) 가 유일하지 않습니다")
        chain.append((weight, found[0]))
        weight = crystal.epsilon_weight(found[0])
    return chain
