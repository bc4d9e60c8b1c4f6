"""
타입별 계산 묶음

한 타입의 완전 결정, 에너지 함수, 기둥 패턴, 기둥 결정, ψ 를 한 번만 만들고
CLI, 파이프라인 노드, 테스트가 함께 씁니다.
"""

import logging
import re
from dataclasses import dataclass
from functools import lru_cache
from pathlib import Path
from typing import Dict, Optional, Tuple

from .columns import ColumnCrystal, ColumnPattern, build_column_crystal, load_pattern, require_psi
from .crystal import CrystalGraph
from .energy import EnergyTable, energy_table
from .paths import PathModel
from .perfect import build_perfect_crystal
from .root_data import CartanSpec, WeightVector, build_cartan, parse_type_tag
from .walls import UnknownWeightError, WallModel

# 로거 설정
logger = logging.getLogger(__name__)

_WEIGHT_TEXT = re.compile(r"^(?:Λ|L|Lambda)?_?(\d+)$", re.IGNORECASE)


def parse_level_one_weight(spec: CartanSpec, text: Optional[str]) -> WeightVector:
    """
    "Λ1", "L1", "Lambda1", "1" 형식의 레벨 1 가중치 해석 (없으면 Λ₀)

    Raises:
        UnknownWeightError: 해석할 수 없거나 레벨 1 우세 가중치가 아닌 경우
    """
    if not text:
        return spec.fundamental_weight(0)
    match = _WEIGHT_TEXT.match(text.strip())
    if not match:
        raise UnknownWeightError(f"가중치 표기를 해석할 수 없습니다: {text}")
    node = int(match.group(1))
    if node not in spec.index_set or spec.marks[node] != 1:
        raise UnknownWeightError(f"{spec.type_tag.value}: Λ{node} 은(는) 레벨 1 가중치가 아닙니다")
    return spec.fundamental_weight(node)


@dataclass
class TypeContext:
    """
    타입 하나의 계산 묶음

    Attributes:
        spec: 카르탄 데이터
        perfect: 완전 결정 B
        table: 에너지 함수 H
        pattern: 기둥 패턴
        columns: 기둥 결정 C (라벨은 B 라벨)
        psi: ψ : B id → C id
    """
    spec: CartanSpec
    perfect: CrystalGraph
    table: EnergyTable
    pattern: ColumnPattern
    columns: ColumnCrystal
    psi: Dict[int, int]

    @property
    def type_tag(self) -> str:
        return self.spec.type_tag.value

    def weight(self, text: Optional[str] = None) -> WeightVector:
        return parse_level_one_weight(self.spec, text)

    def wall_model(self, lam: Optional[WeightVector] = None, model: str = "reduced") -> WallModel:
        return WallModel(
            self.perfect, self.table, self.columns, self.psi, lam or self.spec.fundamental_weight(0), model
        )

    def path_model(self, lam: Optional[WeightVector] = None, fock: bool = False) -> PathModel:
        return PathModel(self.perfect, self.table, lam or self.spec.fundamental_weight(0), fock=fock)


@lru_cache(maxsize=None)
def load_perfect(type_tag: str) -> Tuple[CartanSpec, CrystalGraph, EnergyTable]:
    """타입의 (카르탄 데이터, 완전 결정, 에너지 함수) (캐시됨)"""
    spec = build_cartan(parse_type_tag(type_tag))
    perfect = build_perfect_crystal(spec)
    return spec, perfect, energy_table(perfect)


def pattern_path(type_tag: str, pattern_dir: Optional[str] = None) -> Optional[Path]:
    if not pattern_dir:
        return None
    return Path(pattern_dir) / f"{parse_type_tag(type_tag).value.lower()}.txt"


@lru_cache(maxsize=None)
def load_type_context(type_tag: str, pattern_dir: Optional[str] = None) -> TypeContext:
    """
    타입의 계산 묶음 생성 (같은 인자면 캐시된 결과)

    Args:
        type_tag: "E6", "E7", "E8"
        pattern_dir: 패턴 파일 디렉토리 (기본값: 내장 데이터)

    Raises:
        RootDataError, DataInvalidError, NoIsomorphismError 등 각 단계의 예외
    """
    spec, perfect, table = load_perfect(type_tag.upper())
    pattern = load_pattern(spec.type_tag, pattern_path(type_tag, pattern_dir))
    columns = build_column_crystal(pattern)
    mapping = require_psi(perfect, columns)
    logger.info(f"{spec.type_tag.value} 계산 묶음 준비 완료 (|B| = {perfect.size})")
    return TypeContext(spec, perfect, table, pattern, columns, mapping)
