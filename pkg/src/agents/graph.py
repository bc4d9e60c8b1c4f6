"""
LangGraph 기반 검증 파이프라인 그래프 구현

이 모듈은 완전 결정 검사부터 영 벽 · 경로 모델 대조까지의
전체 검증 워크플로우를 LangGraph StateGraph로 구현합니다.
"""

import logging
from datetime import datetime
from typing import Dict, List, Optional

from langgraph.checkpoint.memory import MemorySaver
from langgraph.graph import END, START, StateGraph

from ..models.schemas import CheckResult, CheckStatus, VerifyReport, VerifyState, create_initial_state
from ..nodes.crystal_checks import columns_node, energy_node, perfect_node
from ..nodes.wall_checks import paths_node, walls_node
from ..utils.config import get_config

# 로거 설정
logger = logging.getLogger(__name__)


class GraphError(Exception):
    """그래프 실행 관련 예외"""
    pass


def should_build_walls(state: VerifyState) -> str:
    """
    기둥 검사 후 영 벽 검사 진행 여부 결정하는 조건부 함수

    모든 타입에서 ψ 가 없으면 영 벽과 경로 대조를 건너뜁니다.

    Args:
        state: 현재 상태

    Returns:
        다음 노드명 ("walls" 또는 "blocked")
    """
    if state["only"] and not {"walls", "paths"} & set(state["only"]):
        return "walls"
    failed = {
        check["type_tag"]
        for check in state["checks"]
        if check["check_id"] == "columns.psi_isomorphism" and check["status"] == CheckStatus.FAIL.value
    }
    if failed and failed >= set(state["types"]):
        logger.warning("모든 타입에서 ψ 가 없어 영 벽 검사를 건너뜁니다")
        return "blocked"
    return "walls"


def blocked_node(state: VerifyState) -> VerifyState:
    """
    영 벽 · 경로 검사를 SKIP 으로 기록하는 노드

    Args:
        state: 현재 상태

    Returns:
        업데이트된 상태
    """
    updated_state = state.copy()
    updated_state["checks"] = list(state["checks"])
    for group in ("walls", "paths"):
        if state["only"] and group not in state["only"]:
            continue
        for type_tag in state["types"]:
            skipped = CheckResult(
                check_id=f"{group}.blocked",
                type_tag=type_tag,
                status=CheckStatus.SKIP,
                witness="ψ : B → C 가 없어 실행하지 않았습니다",
            )
            updated_state["checks"].append(skipped.model_dump(mode="json"))
    return updated_state


class VerificationAgent:
    """
    E 타입 결정 검증 에이전트

    LangGraph를 사용하여 perfect → energy → columns → walls → paths
    순서의 검사 워크플로우를 관리합니다.
    """

    def __init__(self, checkpointer: Optional[str] = None, debug: Optional[bool] = None):
        """
        검증 에이전트 초기화

        Args:
            checkpointer: 체크포인터 유형 ("memory", "none"; 기본값: 설정값)
            debug: 디버그 모드 활성화 여부 (기본값: 설정값)
        """
        graph_config = get_config().graph
        checkpointer = checkpointer or graph_config.checkpointer
        self.debug = graph_config.debug if debug is None else debug
        self.thread_prefix = graph_config.thread_id_prefix

        # 체크포인터 설정
        if checkpointer == "memory":
            self.checkpointer = MemorySaver()
            logger.info("메모리 체크포인터 활성화")
        else:
            self.checkpointer = None
            logger.info("체크포인터 비활성화")

        # 그래프 빌드
        self.graph = self._build_graph()
        logger.info("검증 에이전트 초기화 완료")

    def _build_graph(self):
        """
        LangGraph StateGraph 워크플로우 구성

        Returns:
            컴파일된 StateGraph
        """
        logger.info("StateGraph 워크플로우 빌드 시작")

        workflow = StateGraph(VerifyState)

        workflow.add_node("perfect", perfect_node)
        workflow.add_node("energy", energy_node)
        workflow.add_node("columns", columns_node)
        workflow.add_node("walls", walls_node)
        workflow.add_node("paths", paths_node)
        workflow.add_node("blocked", blocked_node)

        workflow.add_edge(START, "perfect")
        workflow.add_edge("perfect", "energy")
        workflow.add_edge("energy", "columns")

        # 조건부 엣지 - 기둥 검사 후
        workflow.add_conditional_edges(
            "columns",
            should_build_walls,
            {
                "walls": "walls",
                "blocked": "blocked",
            },
        )

        workflow.add_edge("walls", "paths")
        workflow.add_edge("paths", END)
        workflow.add_edge("blocked", END)

        compiled_graph = workflow.compile(checkpointer=self.checkpointer, debug=self.debug)

        logger.info("StateGraph 워크플로우 빌드 완료")
        return compiled_graph

    def _get_thread_config(self, thread_id: Optional[str] = None) -> Dict:
        """
        스레드 설정 생성

        Args:
            thread_id: 스레드 ID (없으면 자동 생성)

        Returns:
            스레드 설정 딕셔너리
        """
        if thread_id is None:
            thread_id = f"{self.thread_prefix}_{datetime.now().strftime('%Y%m%d_%H%M%S_%f')}"

        return {"configurable": {"thread_id": thread_id}}

    def run_state(
        self,
        types: Optional[List[str]] = None,
        only: Optional[List[str]] = None,
        depth: Optional[int] = None,
        pattern_dir: Optional[str] = None,
        thread_id: Optional[str] = None,
    ) -> VerifyState:
        """
        검증 그래프 실행 후 최종 상태 반환

        Raises:
            GraphError: 그래프 실행 오류
        """
        start_time = datetime.now()
        logger.info(f"검증 에이전트 실행 시작: {start_time}")

        try:
            initial_state = create_initial_state(types, only, depth, pattern_dir)
            config = self._get_thread_config(thread_id)
            result = self.graph.invoke(initial_state, config)
        except Exception as e:
            duration = (datetime.now() - start_time).total_seconds()
            error_msg = f"검증 에이전트 실행 실패 ({duration:.2f}초): {str(e)}"
            logger.error(error_msg)
            raise GraphError(error_msg) from e

        if not isinstance(result, dict):
            raise GraphError(f"예상하지 못한 결과 타입: {type(result)}")

        duration = (datetime.now() - start_time).total_seconds()
        logger.info(f"검증 에이전트 실행 완료: {duration:.2f}초")
        return result

    def run(
        self,
        types: Optional[List[str]] = None,
        only: Optional[List[str]] = None,
        depth: Optional[int] = None,
        pattern_dir: Optional[str] = None,
        thread_id: Optional[str] = None,
    ) -> VerifyReport:
        """
        검증 실행

        Args:
            types: 검사할 타입 목록 (기본값: 설정값)
            only: 실행할 검사 그룹 (기본값: 전체)
            depth: 열거 검사 깊이 (기본값: 타입별 설정값)
            pattern_dir: 기둥 패턴 디렉토리 (기본값: 내장 데이터)
            thread_id: 스레드 ID (체크포인팅용)

        Returns:
            검증 보고서

        Raises:
            GraphError: 그래프 실행 오류
        """
        types = types or get_config().verify.types
        state = self.run_state(types, only, depth, pattern_dir, thread_id)
        return VerifyReport(
            types=state["types"],
            checks=[CheckResult(**check) for check in state["checks"]],
            errors=state["errors"],
        )

    def get_graph_visualization(self) -> str:
        """
        그래프 구조를 텍스트로 시각화

        Returns:
            그래프 구조 텍스트
        """
        return """
E 타입 결정 검증 워크플로우:

START
  │
  ▼
┌─────────────┐
│   perfect   │  완전 결정 공리, b^λ / b_λ
└─────────────┘
  │
  ▼
┌─────────────┐
│   energy    │  바닥 상태 표, H 대조
└─────────────┘
  │
  ▼
┌─────────────┐
│   columns   │  패턴 데이터, ψ, σ 표
└─────────────┘
  │
  ├── ψ 가 모두 없으면 ──► ┌─────────────┐
  │                        │   blocked   │ ──► END
  ▼                        └─────────────┘
┌─────────────┐
│    walls    │  축약 · 정규 순서 벽, 오른쪽 블록 성질
└─────────────┘
  │
  ▼
┌─────────────┐
│    paths    │  경로 모델 대조, 포크 지표
└─────────────┘
  │
  ▼
END
"""


# 편의 함수들
def create_verification_agent(checkpointer: Optional[str] = None, debug: Optional[bool] = None) -> VerificationAgent:
    """
    검증 에이전트 생성 편의 함수

    Args:
        checkpointer: 체크포인터 유형
        debug: 디버그 모드

    Returns:
        VerificationAgent 인스턴스
    """
    return VerificationAgent(checkpointer=checkpointer, debug=debug)


def run_verification(
    types: Optional[List[str]] = None,
    only: Optional[List[str]] = None,
    depth: Optional[int] = None,
    pattern_dir: Optional[str] = None,
) -> VerifyReport:
    """검증 실행 편의 함수"""
    return create_verification_agent().run(types, only, depth, pattern_dir)
