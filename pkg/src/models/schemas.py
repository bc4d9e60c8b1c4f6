"""
결정 검증 도구 데이터 모델 스키마

이 모듈은 검사 결과, 보고서, LangGraph 검증 파이프라인 상태를 정의합니다.
"""

from datetime import datetime
from enum import Enum
from typing import Annotated, Dict, List, Optional, TypedDict

from pydantic import BaseModel, Field, field_serializer


class CheckStatus(str, Enum):
    """검사 결과 상태"""
    PASS = "PASS"
    FAIL = "FAIL"
    SKIP = "SKIP"


class CheckResult(BaseModel):
    """
    개별 검사 결과

    Attributes:
        check_id: 검사 식별자 (예: "columns.psi_isomorphism")
        type_tag: 검사 대상 타입
        status: PASS / FAIL / SKIP
        witness: 실패 시 최소 반례 설명 (통과 시에는 선택적 메모)
        duration: 소요 시간 (초)
    """
    check_id: str = Field(..., description="검사 식별자")
    type_tag: Optional[str] = Field(None, description="대상 타입 (E6/E7/E8)")
    status: CheckStatus = Field(..., description="검사 결과")
    witness: Optional[str] = Field(None, description="실패 반례 또는 통과 메모")
    duration: float = Field(0.0, description="소요 시간 (초)")

    @property
    def passed(self) -> bool:
        return self.status != CheckStatus.FAIL


class PerfectReport(BaseModel):
    """
    완전 결정 검사 보고서

    Attributes:
        crystal: 결정 이름
        level: 레벨
        checks: 공리별 검사 결과
        b_upper: λ → b^λ 라벨
        b_lower: λ → b_λ 라벨
        caveat: 대체 검사에 대한 안내
    """
    crystal: str = Field(..., description="결정 이름")
    level: int = Field(1, description="레벨")
    checks: List[CheckResult] = Field(default_factory=list, description="공리별 검사 결과")
    b_upper: Dict[str, str] = Field(default_factory=dict, description="ε(b)=λ 인 원소")
    b_lower: Dict[str, str] = Field(default_factory=dict, description="φ(b)=λ 인 원소")
    caveat: str = Field("", description="대체 검사 안내")

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)


class VerifyReport(BaseModel):
    """
    전체 검증 보고서

    Attributes:
        generated_at: 생성 시간
        types: 검사한 타입
        checks: 검사 결과 목록
        errors: 파이프라인 오류
    """
    generated_at: datetime = Field(default_factory=datetime.now, description="보고서 생성 시간")
    types: List[str] = Field(default_factory=list, description="검사한 타입")
    checks: List[CheckResult] = Field(default_factory=list, description="검사 결과 목록")
    errors: List[str] = Field(default_factory=list, description="파이프라인 오류")

    @field_serializer("generated_at")
    def serialize_generated_at(self, value: datetime) -> str:
        return value.isoformat()

    @property
    def passed(self) -> bool:
        return not self.errors and all(check.passed for check in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [check for check in self.checks if check.status == CheckStatus.FAIL]

    def count(self, status: CheckStatus) -> int:
        return sum(1 for check in self.checks if check.status == status)


class ColumnRecord(BaseModel):
    """영 기둥 동치류 한 개의 출력용 기록"""
    class_id: int = Field(..., description="동치류 id")
    label: str = Field(..., description="대응하는 결정 원소 라벨")
    base: int = Field(..., description="가장 낮은 빈 슬롯")
    extras: List[int] = Field(default_factory=list, description="base 위의 채워진 슬롯")
    weight: str = Field(..., description="고전 가중치")


class WallRecord(BaseModel):
    """영 벽 한 개의 출력용 기록"""
    head: List[str] = Field(..., description="기둥 0부터의 (라벨, z 지수) 표기")
    weight: str = Field(..., description="아핀 가중치")
    depth: int = Field(..., description="바닥 상태에서 떨어진 깊이")


class VerifyState(TypedDict):
    """
    LangGraph 검증 파이프라인 상태 스키마

    노드 간에 검사 결과와 오류를 전달합니다.
    """
    # 입력 데이터
    types: List[str]  # 검사할 타입 목록

    only: Annotated[List[str], "실행할 검사 그룹 (비어 있으면 전체)"]
    depth: Annotated[Optional[int], "열거 검사 깊이 (None 이면 설정값)"]
    pattern_dir: Annotated[Optional[str], "기둥 패턴 디렉토리 (None 이면 내장 데이터)"]

    # 처리 결과
    checks: Annotated[List[Dict], "검사 결과 (CheckResult 직렬화)"]

    # 메타데이터
    errors: Annotated[List[str], "에러 메시지 목록"]
    timestamp: Annotated[str, "처리 시작 타임스탬프"]
    durations: Annotated[Dict[str, float], "노드별 소요 시간 (초)"]


# 검사 그룹 (파이프라인 노드 이름과 동일)
CHECK_GROUPS = ["perfect", "energy", "columns", "walls", "paths"]

DEFAULT_TYPES = ["E6", "E7", "E8"]


def create_initial_state(
    types: Optional[List[str]] = None,
    only: Optional[List[str]] = None,
    depth: Optional[int] = None,
    pattern_dir: Optional[str] = None,
) -> VerifyState:
    """
    초기 VerifyState 생성 헬퍼 함수

    Args:
        types: 검사할 타입 목록 (기본값: 전체)
        only: 실행할 검사 그룹
        depth: 열거 검사 깊이 (None 이면 설정값)
        pattern_dir: 기둥 패턴 디렉토리

    Returns:
        초기화된 VerifyState
    """
    if types is None:
        types = DEFAULT_TYPES.copy()

    return VerifyState(
        types=[t.upper() for t in types],
        only=list(only or []),
        depth=depth,
        pattern_dir=pattern_dir,
        checks=[],
        errors=[],
        timestamp=datetime.now().isoformat(),
        durations={},
    )


def validate_group(group: str) -> bool:
    """검사 그룹 이름이 유효한지 확인"""
    return group in CHECK_GROUPS
