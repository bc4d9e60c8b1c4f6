"""
검사 노드 공통 도구

개별 검사 실행과 시간 측정, 그룹 노드의 상태 갱신을 담당합니다.
"""

import logging
import time
from typing import Callable, List, Optional

from ..models.schemas import CheckResult, CheckStatus, VerifyState
from ..utils.config import get_config

# 로거 설정
logger = logging.getLogger(__name__)

Witness = Optional[str]


class PassNote(str):
    """통과하면서 보고서에 남길 메모"""
    pass


class SkipCheck(Exception):
    """해당 타입에 적용되지 않는 검사"""
    pass


def run_check(check_id: str, type_tag: Optional[str], check: Callable[[], Witness]) -> CheckResult:
    """
    검사 하나 실행

    검사 함수는 통과하면 None (또는 PassNote), 실패하면 반례 설명을 돌려줍니다.
    예외는 반례로 기록합니다.
    """
    start_time = time.time()
    try:
        witness = check()
        if isinstance(witness, PassNote):
            witness, status = str(witness), CheckStatus.PASS
        else:
            status = CheckStatus.PASS if witness is None else CheckStatus.FAIL
    except SkipCheck as e:
        witness, status = str(e) or None, CheckStatus.SKIP
    except Exception as e:
        witness, status = f"{type(e).__name__}: {e}", CheckStatus.FAIL
        logger.debug(f"{check_id} ({type_tag}) 예외", exc_info=True)
    duration = time.time() - start_time
    if status == CheckStatus.FAIL:
        logger.warning(f"{check_id} ({type_tag}) 실패: {witness}")
    return CheckResult(check_id=check_id, type_tag=type_tag, status=status, witness=witness, duration=duration)


def depth_for(state: VerifyState, type_tag: str) -> int:
    """대조 검사 깊이 (상태에 지정이 없으면 설정값)"""
    if state.get("depth") is not None:
        return int(state["depth"])  # type: ignore[arg-type]
    return get_config().verify.master_depths.get(type_tag, get_config().crystal.default_depth)


def fock_depth_for(state: VerifyState, type_tag: str) -> int:
    """정규 순서 모델 검사 깊이 (타입의 대조 검사 깊이를 넘지 않음)"""
    if state.get("depth") is not None:
        return int(state["depth"])  # type: ignore[arg-type]
    return min(get_config().verify.fock_depth, depth_for(state, type_tag))


def run_group(
    state: VerifyState,
    group: str,
    checks_for_type: Callable[[VerifyState, str], List[CheckResult]],
) -> VerifyState:
    """
    그룹 노드 본체: 선택된 그룹이면 타입마다 검사를 실행하고 결과를 상태에 추가

    Args:
        state: 현재 검증 상태
        group: 그룹 이름
        checks_for_type: (상태, 타입) → 검사 결과 목록

    Returns:
        업데이트된 상태
    """
    if state["only"] and group not in state["only"]:
        logger.debug(f"{group} 그룹 건너뜀")
        return state

    start_time = time.time()
    logger.info(f"{group} 검사 노드 실행 시작")

    updated_state = state.copy()
    updated_state["checks"] = list(state["checks"])
    updated_state["errors"] = list(state["errors"])
    updated_state["durations"] = dict(state["durations"])

    for type_tag in state["types"]:
        try:
            results = checks_for_type(state, type_tag)
        except Exception as e:
            error_msg = f"{group} 노드 오류 ({type_tag}): {str(e)}"
            logger.error(error_msg)
            updated_state["errors"].append(error_msg)
            continue
        updated_state["checks"].extend(result.model_dump(mode="json") for result in results)

    duration = time.time() - start_time
    updated_state["durations"][group] = duration
    logger.info(f"{group} 검사 노드 완료: {duration:.2f}초")
    return updated_state
