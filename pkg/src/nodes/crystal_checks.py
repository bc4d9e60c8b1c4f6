"""
완전 결정 · 에너지 · 기둥 검사 노드

LangGraph 파이프라인의 perfect, energy, columns 노드와 각 검사를 정의합니다.
"""

import logging
from collections import deque
from typing import Dict, List, Optional, Tuple

from ..core.columns import (
    ColumnClass,
    build_column_crystal,
    color_census,
    compare_sigma,
    load_pattern,
    load_sigma_rows,
    pattern_problems,
    psi,
    sigma_table,
)
from ..core.context import load_perfect, load_type_context, pattern_path
from ..core.energy import (
    classical_component,
    described_component,
    expected_maximal_vectors,
    maximal_vectors,
    zero_arrow_distance,
)
from ..core.perfect import EMPTY_LABEL, check_perfect, root_label
from ..core.paths import ground_state_sequence
from ..core.root_data import CartanSpec, TypeTag, enumerate_roots, highest_root
from ..models.schemas import CheckResult, VerifyState
from .common import PassNote, SkipCheck, Witness, run_check, run_group

# 로거 설정
logger = logging.getLogger(__name__)

EXPECTED_SIZES = {"E6": 27, "E7": 56, "E8": 249}

# λ → (b^λ, b_λ)
EXPECTED_B_LAMBDA: Dict[str, Dict[str, Tuple[str, str]]] = {
    "E6": {"Λ6": ("6|0", "1|6"), "Λ1": ("1|6", "0|1"), "Λ0": ("0|1", "6|0")},
    "E7": {"Λ7": ("7|0", "0|7"), "Λ0": ("0|7", "7|0")},
    "E8": {"Λ0": (EMPTY_LABEL, EMPTY_LABEL)},
}


def weyl_orbit_size(spec: CartanSpec, node: int) -> int:
    """
    유한 기본 가중치 ϖ_node 의 바일 군 궤도 크기 (모든 반사 사용)
    """
    start = tuple(1 if j == node else 0 for j in spec.finite_nodes)
    seen = {start}
    queue = deque([start])
    while queue:
        mu = queue.popleft()
        for i in spec.finite_nodes:
            c = mu[i - 1]
            if c == 0:
                continue
            image = tuple(mu[j - 1] - c * spec.cartan_matrix[j][i] for j in spec.finite_nodes)
            if image not in seen:
                seen.add(image)
                queue.append(image)
    return len(seen)


def independent_size(spec: CartanSpec) -> int:
    """B 의 크기를 구성과 다른 방법으로 계산"""
    if spec.type_tag == TypeTag.E8:
        return len(enumerate_roots(spec)) + spec.rank + 1
    node = max(n for n in spec.minuscule_nodes if n != 0)
    return weyl_orbit_size(spec, node)


# 완전 결정 검사

def perfect_checks(state: VerifyState, type_tag: str) -> List[CheckResult]:
    spec, perfect, _ = load_perfect(type_tag)
    results: List[CheckResult] = []

    def cardinality() -> Witness:
        other = independent_size(spec)
        if perfect.size != EXPECTED_SIZES[type_tag] or other != perfect.size:
            return f"|B| = {perfect.size}, 독립 계산 {other}, 기대값 {EXPECTED_SIZES[type_tag]}"
        return None

    results.append(run_check("perfect.cardinality", type_tag, cardinality))

    report = check_perfect(perfect)
    for check in report.checks:
        results.append(check.model_copy(update={"type_tag": type_tag}))

    def identities() -> Witness:
        for weight, (upper, lower) in EXPECTED_B_LAMBDA[type_tag].items():
            found = (report.b_upper.get(weight), report.b_lower.get(weight))
            if found != (upper, lower):
                return f"{weight}: (b^λ, b_λ) = {found}, 기대값 {(upper, lower)}"
        return None

    results.append(run_check("perfect.b_lambda_identities", type_tag, identities))
    return results


def perfect_node(state: VerifyState) -> VerifyState:
    """
    LangGraph 완전 결정 검사 노드

    Args:
        state: 현재 검증 상태

    Returns:
        업데이트된 검증 상태
    """
    return run_group(state, "perfect", perfect_checks)


# 에너지 검사

def energy_checks(state: VerifyState, type_tag: str) -> List[CheckResult]:
    spec, perfect, table = load_perfect(type_tag)
    results: List[CheckResult] = []

    def ground_tables() -> Witness:
        for lam in spec.level_one_weights():
            ground_state_sequence(perfect, table, lam, check=True)
        return None

    results.append(run_check("energy.ground_state_tables", type_tag, ground_tables))

    def distance_oracle() -> Witness:
        if spec.type_tag == TypeTag.E8:
            raise SkipCheck("E8 은 극대 벡터 검사로 대신합니다")
        dist = zero_arrow_distance(perfect)
        for a in range(perfect.size):
            for b in range(perfect.size):
                if table(a, b) != dist(b, a):
                    return f"H({perfect.labels[a]}⊗{perfect.labels[b]}) = {table(a, b)} ≠ 최소 0-화살표 수 {dist(b, a)}"
        return None

    results.append(run_check("energy.distance_oracle", type_tag, distance_oracle))

    def maximal() -> Witness:
        if spec.type_tag != TypeTag.E8:
            raise SkipCheck("E8 전용 검사")
        found = {(a, b): h for a, b, h in maximal_vectors(perfect, table)}
        expected = expected_maximal_vectors(perfect)
        if found != expected:
            extra = sorted(set(found) - set(expected))[:2]
            return f"극대 벡터 {len(found)}개 (기대 {len(expected)}개), 예: {extra}"
        return None

    results.append(run_check("energy.maximal_vectors", type_tag, maximal))

    def components() -> Witness:
        if spec.type_tag != TypeTag.E8:
            raise SkipCheck("E8 전용 검사")
        theta = highest_root(spec)
        x = lambda root: perfect.find_label(root_label(root))  # noqa: E731
        empty = perfect.find_label(EMPTY_LABEL)
        seeds = [((empty, empty), 1), ((x(theta), x(-theta)), 1), ((empty, x(theta)), 248), ((x(theta), empty), 248)]
        for seed, size in seeds:
            found = len(classical_component(perfect, seed))
            if found != size:
                return f"{perfect.labels[seed[0]]}⊗{perfect.labels[seed[1]]} 성분 크기 {found} ≠ {size}"
        (node,) = tuple(spec.tilde_I)
        described = described_component(perfect, node)
        actual = classical_component(perfect, (x(theta), perfect.find_label(f"y{node}")))
        if described != set(actual):
            return f"𝒞(x_θ⊗y_{node}) 기술 불일치: 기술 {len(described)}개, 실제 {len(actual)}개"
        return None

    results.append(run_check("energy.classical_components", type_tag, components))
    return results


def energy_node(state: VerifyState) -> VerifyState:
    """LangGraph 에너지 함수 검사 노드"""
    return run_group(state, "energy", energy_checks)


# 기둥 검사

def check_psi(type_tag: str, pattern_dir: Optional[str] = None) -> Witness:
    """
    패턴 파일에서 기둥 결정을 새로 만들고 ψ : B → C 존재 확인

    Returns:
        실패 반례 (통과하면 None)
    """
    _, perfect, _ = load_perfect(type_tag)
    pattern = load_pattern(type_tag, pattern_path(type_tag, pattern_dir))
    columns = build_column_crystal(pattern)
    result = psi(perfect, columns)
    if not result.ok:
        return f"{perfect.name} → {columns.crystal.name}: {result.conflict or '전사 실패'} (C 원소 {columns.crystal.size}개)"
    return None


def column_checks(state: VerifyState, type_tag: str) -> List[CheckResult]:
    pattern_dir = state.get("pattern_dir")
    results: List[CheckResult] = []

    def pattern_data() -> Witness:
        pattern = load_pattern(type_tag, pattern_path(type_tag, pattern_dir))
        census = color_census(pattern)
        if [census[i] for i in pattern.spec.index_set] != list(pattern.spec.marks):
            return f"색 개수 {census} 가 마크와 다릅니다"
        problems = pattern_problems(pattern)
        return problems[0] if problems else None

    results.append(run_check("columns.pattern_data", type_tag, pattern_data))
    results.append(run_check("columns.psi_isomorphism", type_tag, lambda: check_psi(type_tag, pattern_dir)))

    def size() -> Witness:
        ctx = load_type_context(type_tag, pattern_dir)
        if ctx.columns.crystal.size != ctx.perfect.size or len(set(ctx.psi.values())) != ctx.perfect.size:
            return f"|C| = {ctx.columns.crystal.size}, |B| = {ctx.perfect.size}"
        return None

    results.append(run_check("columns.size", type_tag, size))

    def sigma() -> Witness:
        ctx = load_type_context(type_tag, pattern_dir)
        move = ctx.wall_model().translation
        labels = ctx.columns.crystal.labels
        computed = sorted((labels[b], labels[c], p) for b, c, p in sigma_table(ctx.columns, move))
        if ctx.spec.type_tag == TypeTag.E8:
            stored = [(label, label, 1) for label in labels]
        else:
            stored = load_sigma_rows(type_tag)
        comparison = compare_sigma(computed, stored)
        if not comparison.matches:
            return f"σ 표 {len(computed)}행 중 불일치 예: {list(comparison.mismatches[:3])}"
        return PassNote(f"σ 표 {len(computed)}행 일치, p 차이 (계산 − 내장) = {comparison.offset:+d}")

    results.append(run_check("columns.sigma_table", type_tag, sigma))

    def anchor() -> Witness:
        ctx = load_type_context(type_tag, pattern_dir)
        ground = ctx.columns.canonicalize(ctx.pattern.ground)
        if ground != ColumnClass(ctx.columns.anchor, 0):
            return f"바닥 상태 기둥의 동치류 {ground}"
        return None

    results.append(run_check("columns.ground_anchor", type_tag, anchor))
    return results


def columns_node(state: VerifyState) -> VerifyState:
    """LangGraph 영 기둥 검사 노드"""
    return run_group(state, "columns", column_checks)
