"""
영 벽 · 경로 모델 검사 노드

LangGraph 파이프라인의 walls, paths 노드와 각 검사를 정의합니다.
경로 모델은 영 벽 모델과 코드를 공유하지 않는 대조 모델로 쓰입니다.
"""

import logging
from functools import lru_cache
from typing import Dict, List, Optional, Tuple

from ..core.context import TypeContext, load_type_context
from ..core.crystal import CrystalFragment, partitions
from ..core.paths import PathModel, embed_highest_weight_crystal
from ..core.perfect import EMPTY_LABEL, root_label
from ..core.root_data import TypeTag, WeightVector, highest_root
from ..core.walls import WallModel, elements_without_self_drop, right_block_exemptions
from ..models.schemas import CheckResult, VerifyState
from ..utils.config import get_config
from .common import PassNote, SkipCheck, Witness, depth_for, fock_depth_for, run_check, run_group

# 로거 설정
logger = logging.getLogger(__name__)


@lru_cache(maxsize=64)
def wall_fragment(
    type_tag: str, pattern_dir: Optional[str], lam_text: str, model: str, depth: int, cap: int
) -> Tuple[WallModel, CrystalFragment]:
    """(벽 모델, 깊이 depth 조각) (검사 사이에서 공유)"""
    ctx = load_type_context(type_tag, pattern_dir)
    walls = ctx.wall_model(ctx.weight(lam_text), model)
    return walls, walls.enumerate(depth, cap, cross_check=False)


@lru_cache(maxsize=64)
def path_fragment(
    type_tag: str, pattern_dir: Optional[str], lam_text: str, fock: bool, depth: int, cap: int
) -> Tuple[PathModel, CrystalFragment]:
    ctx = load_type_context(type_tag, pattern_dir)
    paths = ctx.path_model(ctx.weight(lam_text), fock=fock)
    return paths, paths.enumerate(depth, cap)


def weight_texts(ctx: TypeContext) -> List[str]:
    return [f"Λ{i}" for i in sorted(ctx.spec.minuscule_nodes)]


def fock_enabled(type_tag: str) -> bool:
    return type_tag in get_config().verify.fock_types


def compare_fragments(walls: WallModel, wall_part: CrystalFragment, path_part: CrystalFragment) -> Witness:
    """to_path 로 옮긴 벽 조각과 경로 조각이 원소, 가중치, 화살표까지 같은지 비교"""
    converted = [walls.to_path(wall) for wall in wall_part.nodes]
    if len(converted) != len(path_part.nodes):
        return f"{wall_part.name}: 벽 {len(converted)}개, 경로 {len(path_part.nodes)}개"
    for k, (mine, theirs) in enumerate(zip(converted, path_part.nodes)):
        if mine != theirs:
            return f"{k}번째 원소: 벽 {wall_part.labels[k]} ↔ 경로 {path_part.labels[k]}"
        if wall_part.weights[k] != path_part.weights[k]:
            return f"{wall_part.labels[k]}: 가중치 {wall_part.weights[k].label()} ≠ {path_part.weights[k].label()}"
    if sorted(wall_part.arrows) != sorted(path_part.arrows):
        extra = sorted(set(wall_part.arrows) ^ set(path_part.arrows))[:3]
        return f"화살표 불일치 예: {extra}"
    return None


def closure_problems(walls: WallModel, fragment: CrystalFragment) -> Witness:
    """모델 조건, 바닥 상태 위 쌓임, e∘f = id 점검"""
    for wall, label in zip(fragment.nodes, fragment.labels):
        if not walls.in_model(wall):
            return f"{label}: {walls.model} 모델 조건 위반"
        if walls.model == "reduced" and not walls.built_on_ground(wall):
            return f"{label}: 바닥 상태 벽 위에 쌓이지 않았습니다"
    for i, x, y in fragment.arrows:
        back = walls.step(fragment.nodes[y], "e", i)
        if back != fragment.nodes[x]:
            return f"e_{i} f_{i}({fragment.labels[x]}) ≠ {fragment.labels[x]}"
    return None


def right_block_problems(walls: WallModel, fragment: CrystalFragment, cap: int) -> Witness:
    """오른쪽 블록 성질과 두 여유 (기하 / 에너지) 의 일치 점검"""
    check_sign = walls.spec.type_tag != TypeTag.E8
    for wall, label in zip(fragment.nodes, fragment.labels):
        for pair in walls.right_block_report(wall, cap):
            where = f"{label}: 기둥 {pair.r + 1}→{pair.r} ({pair.upper}⊗{pair.lower}, H_aff={pair.h_aff}"
            if not pair.holds and not pair.exempt:
                return f"{where}, gap={pair.gap})"
            if not pair.gaps_agree:
                return f"{where}): 기하 여유 {pair.gap} ≠ 에너지 여유 {pair.energy_gap}"
            if check_sign and pair.holds != (pair.energy_gap is not None and pair.energy_gap >= 0):
                return f"{where}): 오른쪽 블록 {pair.holds}, 에너지 여유 {pair.energy_gap}"
    return None


# 영 벽 검사

def wall_checks(state: VerifyState, type_tag: str) -> List[CheckResult]:
    pattern_dir = state.get("pattern_dir")
    ctx = load_type_context(type_tag, pattern_dir)
    depth = depth_for(state, type_tag)
    cap = get_config().crystal.depth_cap
    results: List[CheckResult] = []

    def ground_walls() -> Witness:
        for text in weight_texts(ctx):
            walls = ctx.wall_model(ctx.weight(text))
            paths = ctx.path_model(ctx.weight(text))
            ground = walls.ground_wall()
            for r in range(2 * walls.period + 1):
                if walls.h_aff_at(ground, r) != 1:
                    return f"{text}: 바닥 상태 벽 H_aff(r={r}) = {walls.h_aff_at(ground, r)}"
                if walls.ground_element(r) != paths.ground.element(r) or walls.ground_shift(r) != paths.ground.shift(r):
                    return f"{text}: 기둥 {r} 이 바닥 상태 열과 다릅니다"
                if ctx.spec.type_tag == TypeTag.E8 and walls.ground_shift(r) != -r:
                    return f"E8 m_{r} = {walls.ground_shift(r)} ≠ {-r}"
        return None

    results.append(run_check("walls.ground_state", type_tag, ground_walls))

    def ground_signature() -> Witness:
        for text in weight_texts(ctx):
            walls = ctx.wall_model(ctx.weight(text))
            ground = walls.ground_wall()
            for i in ctx.spec.index_set:
                signature = walls.signature(ground, i)
                expected = walls.lam.lambda_coeffs[i]
                if signature.plus_count != expected or signature.minus_count:
                    return f"{text} i={i}: 부호열 {signature.text()} (기대 +{expected})"
            if not walls.is_highest_weight(ground):
                return f"{text}: 바닥 상태 벽에 ẽ_i 가 작용합니다"
        return None

    results.append(run_check("walls.ground_signature", type_tag, ground_signature))

    def depth_one() -> Witness:
        fragment = ctx.wall_model().enumerate(1, cap)
        if len(fragment) != 2:
            return f"깊이 1 의 벽 {len(fragment)}개 (기대 2개)"
        return None

    results.append(run_check("walls.depth_one", type_tag, depth_one))

    def cross_check() -> Witness:
        for text in weight_texts(ctx):
            # 닫힘과 조각 탐색이 다르면 WallError
            ctx.wall_model(ctx.weight(text)).enumerate(depth, cap, cross_check=True)
        return None

    results.append(run_check("walls.enumeration_cross_check", type_tag, cross_check))

    def validity() -> Witness:
        for text in weight_texts(ctx):
            walls, fragment = wall_fragment(type_tag, pattern_dir, text, "reduced", depth, cap)
            problem = closure_problems(walls, fragment)
            if problem:
                return problem
        if fock_enabled(type_tag):
            walls, fragment = wall_fragment(type_tag, pattern_dir, "Λ0", "fock", fock_depth_for(state, type_tag), cap)
            return closure_problems(walls, fragment)
        return None

    results.append(run_check("walls.closure_validity", type_tag, validity))

    def right_block() -> Witness:
        total = 0
        for text in weight_texts(ctx):
            walls, fragment = wall_fragment(type_tag, pattern_dir, text, "reduced", depth, cap)
            problem = right_block_problems(walls, fragment, cap)
            if problem:
                return problem
            total += len(fragment)
        note = f"축약 벽 깊이 {depth} (벽 {total}개)"
        if fock_enabled(type_tag):
            fock_depth = fock_depth_for(state, type_tag)
            walls, fragment = wall_fragment(type_tag, pattern_dir, "Λ0", "fock", fock_depth, cap)
            problem = right_block_problems(walls, fragment, cap)
            if problem:
                return problem
            note += f", 정규 순서 벽 깊이 {fock_depth} (벽 {len(fragment)}개)"
        return PassNote(f"{note} 의 모든 인접 기둥 쌍 확인")

    results.append(run_check("walls.right_block", type_tag, right_block))

    def exemptions() -> Witness:
        if ctx.spec.type_tag != TypeTag.E8:
            raise SkipCheck("E8 전용 검사")
        labels = ctx.perfect.labels
        theta = highest_root(ctx.spec)
        top, bottom = root_label(theta), root_label(-theta)
        expected = {(EMPTY_LABEL, EMPTY_LABEL, 2), (EMPTY_LABEL, top, 2), (bottom, EMPTY_LABEL, 2), (bottom, top, 2)}
        found = {(labels[b], labels[a], h) for b, a, h in right_block_exemptions(ctx.perfect, ctx.table)}
        if found != expected:
            return f"예외 쌍 {sorted(found)[:6]}"
        return None

    results.append(run_check("walls.e8_exemptions", type_tag, exemptions))

    def self_drop() -> Witness:
        if ctx.spec.type_tag != TypeTag.E8:
            raise SkipCheck("E8 전용 검사")
        theta = highest_root(ctx.spec)
        expected = {EMPTY_LABEL, root_label(theta), root_label(-theta)}
        found = {ctx.perfect.labels[a] for a in elements_without_self_drop(ctx.perfect)}
        if found != expected:
            return f"자기 하강이 없는 원소 {sorted(found)}"
        return None

    results.append(run_check("walls.e8_self_drop", type_tag, self_drop))

    def difference_table() -> Witness:
        walls = ctx.wall_model()
        rows = walls.reduced_difference_table()
        keys = {(r, upper, lower) for r, upper, lower, _ in rows}
        expected = walls.period * ctx.perfect.size ** 2
        if len(rows) != expected or len(keys) != expected:
            return f"표 {len(rows)}행, 서로 다른 (r, b, a) {len(keys)}개 (기대 {expected})"
        index = {label: k for k, label in enumerate(ctx.perfect.labels)}
        for r, upper, lower, value in rows:
            if value < 0:
                return f"r={r} {upper}⊗{lower}: |y_r| − |y_(r+1)| = {value}"
            lifted = walls.reduced_difference(r, index[upper], index[lower], lift=1)
            if lifted != value:
                return f"r={r} {upper}⊗{lower}: z 로 옮기면 값이 {value} → {lifted}"
        for r in range(walls.period):
            value = walls.reduced_difference(r, walls.ground_element(r + 1), walls.ground_element(r))
            if value != 0:
                return f"r={r}: 바닥 상태 기둥 쌍의 값 {value} ≠ 0"
        return PassNote(f"{len(rows)}행, 모든 값이 0 이상이고 z 이동에 불변")

    results.append(run_check("walls.difference_table", type_tag, difference_table))

    def zero_level() -> Witness:
        fragments = [wall_fragment(type_tag, pattern_dir, "Λ0", "reduced", depth, cap)]
        if fock_enabled(type_tag):
            fragments.append(wall_fragment(type_tag, pattern_dir, "Λ0", "fock", fock_depth_for(state, type_tag), cap))
        for walls, fragment in fragments:
            for wall, label in zip(fragment.nodes, fragment.labels):
                for r in range(len(wall.head) + 1):
                    expected = walls.ground_shift(r) - walls.column(wall, r).shift
                    if walls.zero_level_at(wall, r) != expected:
                        return f"{label}: |y_{r}|₀ = {walls.zero_level_at(wall, r)} ≠ m_r − n_r = {expected}"
        return None

    results.append(run_check("walls.zero_level_identity", type_tag, zero_level))

    def delta_columns() -> Witness:
        if not fock_enabled(type_tag):
            raise SkipCheck("정규 순서 모델 검사 대상이 아닙니다")
        walls, fragment = wall_fragment(type_tag, pattern_dir, "Λ0", "fock", fock_depth_for(state, type_tag), cap)
        for wall, label in zip(fragment.nodes, fragment.labels):
            removable = walls.removable_delta_columns(wall)
            if (not removable) != walls.is_reduced(wall):
                return f"{label}: 제거 가능한 δ-기둥 {removable}, 축약 여부 {walls.is_reduced(wall)}"
        return None

    results.append(run_check("walls.delta_columns", type_tag, delta_columns))
    return results


def walls_node(state: VerifyState) -> VerifyState:
    """
    LangGraph 영 벽 검사 노드

    Args:
        state: 현재 검증 상태

    Returns:
        업데이트된 검증 상태
    """
    return run_group(state, "walls", wall_checks)


# 경로 모델 대조

def fock_character(
    fock_part: CrystalFragment, reduced_part: CrystalFragment, delta: WeightVector, depth: int
) -> Tuple[Dict[WeightVector, int], Dict[WeightVector, int]]:
    """
    (포크 조각의 가중치별 개수, Σ_k p(k)·#{축약 원소: 가중치 μ+kδ, 깊이 ≤ depth−k})
    """
    fock_counts = fock_part.weight_counts()
    predicted: Dict[WeightVector, int] = {}
    for weight, level in zip(reduced_part.weights, reduced_part.depths):
        for k in range(depth - level + 1):
            shifted = weight - delta.scale(k)
            predicted[shifted] = predicted.get(shifted, 0) + len(partitions(k))
    return fock_counts, predicted


def path_checks(state: VerifyState, type_tag: str) -> List[CheckResult]:
    pattern_dir = state.get("pattern_dir")
    ctx = load_type_context(type_tag, pattern_dir)
    depth = depth_for(state, type_tag)
    cap = get_config().crystal.depth_cap
    results: List[CheckResult] = []

    def master_oracle() -> Witness:
        for text in weight_texts(ctx):
            walls, wall_part = wall_fragment(type_tag, pattern_dir, text, "reduced", depth, cap)
            _, path_part = path_fragment(type_tag, pattern_dir, text, False, depth, cap)
            problem = compare_fragments(walls, wall_part, path_part)
            if problem:
                return f"{text}: {problem}"
        return None

    results.append(run_check("paths.master_oracle", type_tag, master_oracle))

    def fock_oracle() -> Witness:
        if not fock_enabled(type_tag):
            raise SkipCheck("정규 순서 모델 검사 대상이 아닙니다")
        fock_depth = fock_depth_for(state, type_tag)
        walls, wall_part = wall_fragment(type_tag, pattern_dir, "Λ0", "fock", fock_depth, cap)
        _, path_part = path_fragment(type_tag, pattern_dir, "Λ0", True, fock_depth, cap)
        problem = compare_fragments(walls, wall_part, path_part)
        if problem:
            return problem

        _, reduced_part = wall_fragment(type_tag, pattern_dir, "Λ0", "reduced", fock_depth, cap)
        found, predicted = fock_character(wall_part, reduced_part, ctx.spec.delta(), fock_depth)
        if found != predicted:
            diff = sorted(w.label() for w in set(found) | set(predicted) if found.get(w, 0) != predicted.get(w, 0))[:3]
            return f"지표 항등식 불일치: {diff}"

        top = ctx.spec.fundamental_weight(0)
        for k in range(fock_depth + 1):
            weight = top - ctx.spec.delta().scale(k)
            count = sum(
                1 for wall, w in zip(wall_part.nodes, wall_part.weights) if w == weight and walls.is_highest_weight(wall)
            )
            if count != len(partitions(k)):
                return f"가중치 {weight.label()} 최고 가중치 벽 {count}개 ≠ p({k}) = {len(partitions(k))}"
        return None

    results.append(run_check("paths.fock_oracle", type_tag, fock_oracle))

    def embedding() -> Witness:
        if not fock_enabled(type_tag):
            raise SkipCheck("정규 순서 모델 검사 대상이 아닙니다")
        paths, fragment = path_fragment(type_tag, pattern_dir, "Λ0", False, depth, cap)
        fock = ctx.path_model(fock=True)
        images = {}
        for path, label in zip(fragment.nodes, fragment.labels):
            image = embed_highest_weight_crystal(paths, path)
            if image in images:
                return f"{label} 와 {images[image]} 의 상이 같습니다"
            images[image] = label
            if any(value != 1 for value in fock.h_aff_pairs(image)):
                return f"{label}: 상의 H_aff 가 1 이 아닙니다"
        for i, x, y in fragment.arrows:
            moved = fock.step(embed_highest_weight_crystal(paths, fragment.nodes[x]), "f", i)
            if moved != embed_highest_weight_crystal(paths, fragment.nodes[y]):
                return f"f_{i} 가 {fragment.labels[x]} 에서 매장과 교환되지 않습니다"
        return None

    results.append(run_check("paths.embedding", type_tag, embedding))

    def stabilization() -> Witness:
        if not fock_enabled(type_tag):
            raise SkipCheck("정규 순서 모델 검사 대상이 아닙니다")
        paths, fragment = path_fragment(type_tag, pattern_dir, "Λ0", True, fock_depth_for(state, type_tag), cap)
        for path, label in zip(fragment.nodes, fragment.labels):
            if not paths.stabilizes(path):
                return f"{label}: s_k = g_k 인 자리 뒤에 바닥 상태가 아닌 항목이 있습니다"
        return None

    results.append(run_check("paths.stabilization", type_tag, stabilization))
    return results


def paths_node(state: VerifyState) -> VerifyState:
    """LangGraph 경로 모델 대조 노드"""
    return run_group(state, "paths", path_checks)
