"""
영 기둥 모델 모듈

주기적 기둥 패턴(지지 관계 DAG), 기둥 유효성, 추가/제거 가능 블록,
E8 연산 규칙(우선순위와 차단 규칙), 동치류 정규화, 기둥 결정 C,
동형 ψ : B → C, 기둥 평행이동 자기동형 σ 를 제공합니다.

슬롯 번호는 절대 번호 g = p·P + r (p 는 주기, r 은 나머지) 입니다.
한 주기 안에서 슬롯은 정육면체 순서로 번호가 매겨져 있습니다.
"""

import logging
import re
from collections import deque
from dataclasses import dataclass, replace
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Iterable, List, Optional, Tuple

from .crystal import NONE, CrystalGraph, Direction, IsomorphismResult, find_isomorphism
from .perfect import b_lower
from .root_data import CartanSpec, TypeTag, WeightVector, build_cartan, parse_type_tag

# 로거 설정
logger = logging.getLogger(__name__)

PATTERN_DIR = Path(__file__).resolve().parent.parent / "data" / "patterns"

Cell = Tuple[int, int]


class ColumnError(Exception):
    """영 기둥 모델 관련 예외"""
    pass


class DataInvalidError(ColumnError):
    """패턴 데이터 파일이 올바르지 않은 경우"""
    pass


class WeightConflictError(ColumnError):
    """기둥 결정의 가중치 전파가 일관되지 않은 경우"""
    pass


class NoIsomorphismError(ColumnError):
    """B 와 C 사이의 앵커 동형이 존재하지 않는 경우"""
    pass


@dataclass(frozen=True)
class PatternSlot:
    """
    패턴의 슬롯 한 개 (한 주기 안의 나머지 r)

    Attributes:
        residue: 나머지 r
        color: 블록 색 i
        cube: 주기 안의 정육면체 번호
        cells: 정육면체 단면에서 차지하는 셀 (짝수 주기 기준)
        supports: (나머지, 주기 차) 지지 슬롯
        rotation_partner: 180° 회전 후 같은 셀을 차지하는 (나머지, 주기 차)
    """
    residue: int
    color: int
    cube: int
    cells: FrozenSet[Cell]
    supports: Tuple[Tuple[int, int], ...]
    rotation_partner: Optional[Tuple[int, int]] = None


@dataclass(frozen=True, order=True)
class YoungColumn:
    """
    영 기둥 (채워진 슬롯 집합)

    base 아래의 슬롯은 모두 채워져 있고, base 자체는 비어 있으며,
    extras 는 base 위의 채워진 슬롯입니다.

    Attributes:
        base: 가장 낮은 빈 슬롯
        extras: base 위의 채워진 슬롯
    """
    base: int
    extras: FrozenSet[int] = frozenset()

    @classmethod
    def normalized(cls, base: int, extras: Iterable[int]) -> "YoungColumn":
        filled = set(s for s in extras if s >= base)
        while base in filled:
            filled.discard(base)
            base += 1
        return cls(base, frozenset(filled))

    @property
    def top(self) -> int:
        """가장 높은 채워진 슬롯"""
        return max(self.extras) if self.extras else self.base - 1

    def filled(self, slot: int) -> bool:
        return slot < self.base or slot in self.extras

    def add(self, slot: int) -> "YoungColumn":
        if self.filled(slot):
            raise ColumnError(f"슬롯 {slot}은(는) 이미 채워져 있습니다")
        return YoungColumn.normalized(self.base, set(self.extras) | {slot})

    def remove(self, slot: int) -> "YoungColumn":
        if not self.filled(slot):
            raise ColumnError(f"슬롯 {slot}은(는) 비어 있습니다")
        if slot >= self.base:
            return YoungColumn(self.base, self.extras - {slot})
        return YoungColumn(slot, frozenset(range(slot + 1, self.base)) | self.extras)

    def translate(self, k: int) -> "YoungColumn":
        """모든 슬롯을 k 만큼 이동"""
        return YoungColumn(self.base + k, frozenset(s + k for s in self.extras))

    def contains(self, other: "YoungColumn") -> bool:
        """other 의 채워진 슬롯이 모두 self 에 채워져 있는지 여부"""
        return other.base <= self.base and all(self.filled(s) for s in other.extras)

    def label(self) -> str:
        extras = ",".join(str(s) for s in sorted(self.extras))
        return f"<{self.base}|{extras}>"


@dataclass(frozen=True)
class ColumnClass:
    """
    기둥 동치류와 z 지수

    Attributes:
        class_id: 기둥 결정 C 의 원소 id
        shift: z 지수 n (구체 기둥은 zⁿ·대표 기둥)
    """
    class_id: int
    shift: int = 0


def _rotate_cells(cells: Iterable[Cell], width: int, height: int) -> FrozenSet[Cell]:
    return frozenset((width - 1 - x, height - 1 - y) for x, y in cells)


@dataclass(frozen=True)
class ColumnPattern:
    """
    주기적 영 기둥 패턴

    Attributes:
        spec: 카르탄 데이터
        period: 주기당 슬롯 수 P = Σa_i
        cubes: 주기당 정육면체 수 C
        width: 단면 격자 너비
        height: 단면 격자 높이
        rotate_odd_periods: 홀수 주기를 180° 회전해 쌓는지 여부
        slots: 나머지별 슬롯
        ground: 바닥 상태 기둥 (앵커)
        exceptional: 중력 닫힘이 아닌 허용 기둥 (이름, 기둥)
    """
    spec: CartanSpec
    period: int
    cubes: int
    width: int
    height: int
    rotate_odd_periods: bool
    slots: Tuple[PatternSlot, ...]
    ground: YoungColumn
    exceptional: Tuple[Tuple[str, YoungColumn], ...] = ()

    @property
    def type_tag(self) -> TypeTag:
        return self.spec.type_tag

    def color(self, g: int) -> int:
        return self.slots[g % self.period].color

    def period_of(self, g: int) -> int:
        return g // self.period

    def cube_of(self, g: int) -> int:
        """절대 정육면체 번호"""
        return self.period_of(g) * self.cubes + self.slots[g % self.period].cube

    def abs_cells(self, g: int) -> FrozenSet[Cell]:
        cells = self.slots[g % self.period].cells
        if self.rotate_odd_periods and self.period_of(g) % 2:
            return _rotate_cells(cells, self.width, self.height)
        return cells

    def supports_of(self, g: int) -> Tuple[int, ...]:
        p = self.period_of(g)
        return tuple((p + offset) * self.period + r for r, offset in self.slots[g % self.period].supports)

    @cached_property
    def _dependents(self) -> Dict[int, Tuple[Tuple[int, int], ...]]:
        # 나머지 r 에 기대는 (나머지, 주기 차)
        found: Dict[int, List[Tuple[int, int]]] = {slot.residue: [] for slot in self.slots}
        for slot in self.slots:
            for r, offset in slot.supports:
                found[r].append((slot.residue, -offset))
        return {r: tuple(items) for r, items in found.items()}

    def dependents_of(self, g: int) -> Tuple[int, ...]:
        p = self.period_of(g)
        return tuple((p + offset) * self.period + r for r, offset in self._dependents[g % self.period])

    @cached_property
    def _cube_start(self) -> Tuple[int, ...]:
        starts = [self.period] * (self.cubes + 1)
        for slot in reversed(self.slots):
            starts[slot.cube] = slot.residue
        return tuple(starts)

    def first_slot_of_cube(self, k: int) -> int:
        p, c = divmod(k, self.cubes)
        return p * self.period + self._cube_start[c]

    def slots_in_cube(self, k: int) -> range:
        return range(self.first_slot_of_cube(k), self.first_slot_of_cube(k + 1))

    def slot_at(self, k: int, cells: FrozenSet[Cell]) -> Optional[int]:
        """절대 정육면체 k 에서 주어진 절대 셀을 차지하는 슬롯"""
        for g in self.slots_in_cube(k):
            if self.abs_cells(g) == cells:
                return g
        return None

    def exceptional_name(self, column: YoungColumn) -> Optional[str]:
        """주기 평행이동까지 같은 예외 기둥의 이름"""
        for name, state in self.exceptional:
            shift = column.base - state.base
            if shift % self.period == 0 and state.translate(shift) == column:
                return name
        return None

    def block_difference(self, column: YoungColumn, reference: YoungColumn) -> Dict[int, int]:
        """색별 블록 수 차이 (column − reference, 음수 가능)"""
        counts = {i: 0 for i in self.spec.index_set}
        lo = min(column.base, reference.base)
        hi = max(column.top, reference.top) + 1
        for g in range(lo, hi):
            counts[self.color(g)] += int(column.filled(g)) - int(reference.filled(g))
        return counts

    def zero_level(self, column: YoungColumn) -> int:
        """|y|₀: 바닥 상태 기둥 대비 채워진 0-블록 수"""
        return self.block_difference(column, self.ground)[0]

    def without_support(self, residue: int, support: Tuple[int, int]) -> "ColumnPattern":
        """지지 관계 한 개를 지운 패턴 (결함 주입 검사용)"""
        slot = self.slots[residue]
        trimmed = replace(slot, supports=tuple(s for s in slot.supports if s != support))
        slots = tuple(trimmed if s.residue == residue else s for s in self.slots)
        return replace(self, slots=slots)


_SLOT_LINE = re.compile(
    r"^slot (\d+) color (\d+) cube (\d+) cells (\S+) supports (\S+) rot (\S+)$"
)
_SUPPORT_ITEM = re.compile(r"^(\d+)([+-]\d+)?$")


def _parse_ints(text: str) -> List[int]:
    return [int(v) for v in text.split(",") if v]


def _parse_slot(match: re.Match) -> PatternSlot:
    residue, color, cube = int(match.group(1)), int(match.group(2)), int(match.group(3))
    cells = frozenset(
        (int(x), int(y)) for x, y in (item.split(",") for item in match.group(4).split(";"))
    )
    supports: List[Tuple[int, int]] = []
    for item in match.group(5).split(","):
        parsed = _SUPPORT_ITEM.match(item)
        if parsed is None:
            raise DataInvalidError(f"슬롯 {residue}: 지지 표기 '{item}'을(를) 읽을 수 없습니다")
        supports.append((int(parsed.group(1)), int(parsed.group(2) or 0)))
    rot_text = match.group(6)
    partner = None
    if rot_text != "-":
        r, offset = rot_text.split(",")
        partner = (int(r), int(offset))
    return PatternSlot(residue, color, cube, cells, tuple(supports), partner)


def load_pattern(type_tag: str | TypeTag, path: Optional[Path] = None) -> ColumnPattern:
    """
    패턴 데이터 파일 로드

    Args:
        type_tag: E6/E7/E8
        path: 데이터 파일 경로 (기본값: 패키지 내장 파일)

    Returns:
        ColumnPattern

    Raises:
        DataInvalidError: 색 개수가 마크와 다르거나 파일 구조가 올바르지 않은 경우
    """
    tag = type_tag if isinstance(type_tag, TypeTag) else parse_type_tag(type_tag)
    path = path or PATTERN_DIR / f"{tag.value.lower()}.txt"
    spec = build_cartan(tag)

    header: Dict[str, str] = {}
    slots: List[PatternSlot] = []
    ground: Optional[YoungColumn] = None
    exceptional: List[Tuple[str, YoungColumn]] = []

    for number, raw in enumerate(path.read_text(encoding="utf-8").splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("slot "):
            match = _SLOT_LINE.match(line)
            if match is None:
                raise DataInvalidError(f"{path.name}:{number}: 슬롯 줄 형식 오류")
            slots.append(_parse_slot(match))
        elif line.startswith("ground "):
            parts = line.split()
            ground = YoungColumn.normalized(int(parts[2]), _parse_ints(parts[4] if len(parts) > 4 else ""))
        elif line.startswith("exceptional "):
            parts = line.split()
            exceptional.append((parts[1], YoungColumn.normalized(int(parts[3]), _parse_ints(parts[5]))))
        else:
            key, _, value = line.partition(" ")
            header[key] = value

    if header.get("type") != tag.value:
        raise DataInvalidError(f"{path.name}: 타입이 {tag.value}가 아닙니다 ({header.get('type')})")
    if ground is None:
        raise DataInvalidError(f"{path.name}: ground 줄이 없습니다")

    width, height = (int(v) for v in header["grid"].split())
    pattern = ColumnPattern(
        spec=spec,
        period=int(header["period"]),
        cubes=int(header["cubes"]),
        width=width,
        height=height,
        rotate_odd_periods=header.get("rotate_odd_periods") == "yes",
        slots=tuple(slots),
        ground=ground,
        exceptional=tuple(exceptional),
    )
    _check_structure(pattern, path.name)
    logger.debug(f"{tag.value} 기둥 패턴 로드: 슬롯 {pattern.period}개, 정육면체 {pattern.cubes}개")
    return pattern


def _check_structure(pattern: ColumnPattern, source: str) -> None:
    spec = pattern.spec
    if pattern.period != spec.null_root_height or len(pattern.slots) != pattern.period:
        raise DataInvalidError(
            f"{source}: 주기 {pattern.period}, 슬롯 {len(pattern.slots)}개 (기대값 {spec.null_root_height})"
        )
    census = color_census(pattern)
    expected = {i: spec.marks[i] for i in spec.index_set}
    if census != expected:
        raise DataInvalidError(f"{source}: 색 개수 {census} ≠ 마크 {expected}")

    previous_cube = 0
    for r, slot in enumerate(pattern.slots):
        if slot.residue != r:
            raise DataInvalidError(f"{source}: 슬롯 번호가 순서대로가 아닙니다 ({slot.residue})")
        if not previous_cube <= slot.cube < pattern.cubes:
            raise DataInvalidError(f"{source}: 슬롯 {r}의 정육면체 번호가 정육면체 순서를 따르지 않습니다")
        previous_cube = slot.cube
        if not slot.supports:
            raise DataInvalidError(f"{source}: 슬롯 {r}에 지지 슬롯이 없습니다")
        for support, offset in slot.supports:
            if not 0 <= support < pattern.period:
                raise DataInvalidError(f"{source}: 슬롯 {r}의 지지 슬롯 {support}이(가) 범위 밖입니다")
            if offset * pattern.cubes + pattern.slots[support].cube != slot.cube - 1:
                raise DataInvalidError(f"{source}: 슬롯 {r}의 지지 슬롯 {support}{offset:+d}이(가) 바로 아래 정육면체가 아닙니다")

    if not validate(pattern, pattern.ground):
        raise DataInvalidError(f"{source}: 바닥 상태 기둥이 유효하지 않습니다")


def color_census(pattern: ColumnPattern) -> Dict[int, int]:
    """주기당 색별 슬롯 수"""
    census = {i: 0 for i in pattern.spec.index_set}
    for slot in pattern.slots:
        census[slot.color] = census.get(slot.color, 0) + 1
    return census


def supports_from_cells(pattern: ColumnPattern, residue: int) -> Tuple[Tuple[int, int], ...]:
    """셀 겹침으로 다시 계산한 지지 슬롯 (나머지, 주기 차)"""
    g = pattern.period + residue
    cells = pattern.abs_cells(g)
    below = pattern.cube_of(g) - 1
    found = []
    for h in pattern.slots_in_cube(below):
        if pattern.abs_cells(h) & cells:
            found.append((h % pattern.period, pattern.period_of(h) - 1))
    return tuple(sorted(found))


def pattern_problems(pattern: ColumnPattern) -> List[str]:
    """
    패턴 기하 자체 점검

    - 지지 관계가 셀 겹침과 일치하는지
    - 정육면체마다 셀이 격자를 정확히 나누는지
    - 회전 짝이 회전된 셀을 차지하는지
    """
    problems: List[str] = []
    full = frozenset((x, y) for x in range(pattern.width) for y in range(pattern.height))
    for cube in range(pattern.cubes):
        cells: List[Cell] = []
        for g in pattern.slots_in_cube(cube):
            cells.extend(pattern.abs_cells(g))
        if len(cells) != len(full) or frozenset(cells) != full:
            problems.append(f"정육면체 {cube}의 셀이 격자를 나누지 않습니다")

    for slot in pattern.slots:
        derived = supports_from_cells(pattern, slot.residue)
        if derived != tuple(sorted(slot.supports)):
            problems.append(f"슬롯 {slot.residue}: 지지 {sorted(slot.supports)} ≠ 셀 겹침 {list(derived)}")
        if slot.rotation_partner is not None:
            r, offset = slot.rotation_partner
            partner = (1 + offset) * pattern.period + r
            g = pattern.period + slot.residue
            same_height = (pattern.cube_of(partner) - pattern.cube_of(g)) % pattern.cubes == 0
            rotated = _rotate_cells(pattern.abs_cells(g), pattern.width, pattern.height)
            if not same_height or pattern.abs_cells(partner) != rotated:
                problems.append(f"슬롯 {slot.residue}: 회전 짝 {r}{offset:+d}이(가) 회전된 셀을 차지하지 않습니다")
    return problems


def validate(pattern: ColumnPattern, column: YoungColumn) -> bool:
    """
    기둥 유효성: 중력 닫힘 (채워진 블록 아래에 빈 지지 슬롯이 없음) 또는 예외 기둥
    """
    if all(column.filled(s) for g in column.extras for s in pattern.supports_of(g)):
        return True
    return pattern.exceptional_name(column) is not None


def addable_removable(pattern: ColumnPattern, column: YoungColumn, i: int) -> Tuple[List[int], List[int]]:
    """
    색 i 의 추가 가능 / 제거 가능 슬롯

    토글한 결과가 유효한 기둥(예외 기둥 포함)이 되는 슬롯입니다.
    """
    addable: List[int] = []
    removable: List[int] = []
    lo = pattern.first_slot_of_cube(pattern.cube_of(column.base) - 1)
    hi = pattern.first_slot_of_cube(pattern.cube_of(max(column.top, column.base)) + 2)
    for g in range(lo, hi):
        if pattern.color(g) != i:
            continue
        if column.filled(g):
            if validate(pattern, column.remove(g)):
                removable.append(g)
        elif validate(pattern, column.add(g)):
            addable.append(g)
    return addable, removable


def _rests_on(pattern: ColumnPattern, g: int, color: int) -> bool:
    return any(pattern.color(s) == color for s in pattern.supports_of(g))


def _raw_step(pattern: ColumnPattern, direction: Direction, i: int, column: YoungColumn) -> Optional[YoungColumn]:
    addable, removable = addable_removable(pattern, column, i)
    candidates = addable if direction == "f" else removable
    if not candidates:
        return None
    if len(candidates) > 1 and pattern.type_tag != TypeTag.E8:
        raise ColumnError(
            f"{pattern.type_tag.value}: {column.label()} 에 색 {i} 블록 후보가 {len(candidates)}개입니다"
        )
    if direction == "f":
        if i == 4:
            preferred = [g for g in candidates if _rests_on(pattern, g, 5)]
            candidates = preferred or candidates
        return column.add(max(candidates))
    if i == 4:
        preferred = [g for g in candidates if _rests_on(pattern, g, 3)]
        candidates = preferred or candidates
    return column.remove(min(candidates))


def blocked_color(pattern: ColumnPattern, column: YoungColumn) -> Optional[int]:
    """
    E8 차단 규칙: i-연산으로 도달했는데 여전히 같은 방향의 i-블록이 남아 있는 색

    Returns:
        차단 색 또는 None
    """
    if pattern.type_tag != TypeTag.E8:
        return None
    for i in pattern.spec.index_set:
        addable, removable = addable_removable(pattern, column, i)
        if not addable or not removable:
            continue
        for g in removable:
            if _raw_step(pattern, "f", i, column.remove(g)) == column:
                return i
        for g in addable:
            if _raw_step(pattern, "e", i, column.add(g)) == column:
                return i
    return None


def column_step(pattern: ColumnPattern, direction: Direction, i: int, column: YoungColumn) -> Optional[YoungColumn]:
    """
    기둥 위의 f̃_i / ẽ_i

    E6/E7 은 유일한 추가(제거) 가능 블록을 토글합니다. E8 은 후보가 둘이면
    f 는 높은 쪽(색 4 는 5-블록 위의 것), e 는 낮은 쪽(색 4 는 3-블록 위의 것)을
    고르고, 차단된 기둥에서는 다른 색 연산이 모두 정의되지 않습니다.

    Returns:
        결과 기둥 또는 None
    """
    blocked = blocked_color(pattern, column)
    if blocked is not None and blocked != i:
        return None
    return _raw_step(pattern, direction, i, column)


def canonical_form(pattern: ColumnPattern, column: YoungColumn) -> Tuple[YoungColumn, int]:
    """
    (대표 기둥, z 지수)

    z 지수 n = −|y|₀ 이고 대표 기둥은 y 를 n·P 슬롯 이동한 것입니다.
    """
    shift = -pattern.zero_level(column)
    return column.translate(shift * pattern.period), shift


@dataclass
class ColumnCrystal:
    """
    기둥 결정 C

    Attributes:
        pattern: 기둥 패턴
        crystal: 동치류 위의 결정 그래프
        reps: 동치류별 대표 기둥 (|y|₀ = 0)
        anchor: 바닥 상태 기둥의 id
    """
    pattern: ColumnPattern
    crystal: CrystalGraph
    reps: List[YoungColumn]
    anchor: int = 0

    @cached_property
    def _index(self) -> Dict[YoungColumn, int]:
        return {rep: k for k, rep in enumerate(self.reps)}

    def canonicalize(self, column: YoungColumn) -> ColumnClass:
        """
        Raises:
            ColumnError: C 에 없는 기둥인 경우
        """
        rep, shift = canonical_form(self.pattern, column)
        if rep not in self._index:
            raise ColumnError(f"{column.label()} 은(는) C 의 원소가 아닙니다")
        return ColumnClass(self._index[rep], shift)

    def realize(self, cls: ColumnClass) -> YoungColumn:
        """zⁿ·대표 기둥 (대표 기둥을 −n·P 슬롯 이동)"""
        return self.reps[cls.class_id].translate(-cls.shift * self.pattern.period)

    def step(self, direction: Direction, i: int, cls: ColumnClass) -> Optional[ColumnClass]:
        """C_aff 위의 연산 (구체 기둥에서 계산 후 정규화)"""
        moved = column_step(self.pattern, direction, i, self.realize(cls))
        return None if moved is None else self.canonicalize(moved)


def build_column_crystal(pattern: ColumnPattern, max_size: int = 2000) -> ColumnCrystal:
    """
    바닥 상태 기둥에서 닫힘으로 기둥 결정 C 구성

    가중치는 앵커 기둥에 Σ(φ_i−ε_i)Λ_i 를 주고 wt(f_i y) = wt(y) − α_i 로 전파합니다.

    Raises:
        WeightConflictError: 가중치 전파가 일관되지 않은 경우
        ColumnError: e/f 연산이 서로 역이 아니거나 닫힘이 너무 큰 경우
    """
    spec = pattern.spec
    anchor_rep, anchor_shift = canonical_form(pattern, pattern.ground)
    reps: List[YoungColumn] = [anchor_rep]
    index: Dict[YoungColumn, int] = {anchor_rep: 0}
    f_arrows: List[Tuple[int, int, int]] = []
    e_moves: Dict[Tuple[int, int], int] = {}
    queue = deque([0])

    while queue:
        k = queue.popleft()
        for i in spec.index_set:
            for direction in ("f", "e"):
                moved = column_step(pattern, direction, i, reps[k])
                if moved is None:
                    continue
                rep, shift = canonical_form(pattern, moved)
                expected = 0 if i != 0 else (-1 if direction == "f" else 1)
                if shift != expected:
                    raise ColumnError(
                        f"{direction}_{i}({reps[k].label()}) 의 z 지수 변화 {shift} ≠ {expected}"
                    )
                if rep not in index:
                    if len(reps) >= max_size:
                        raise ColumnError(f"기둥 닫힘이 {max_size}개를 넘습니다")
                    index[rep] = len(reps)
                    reps.append(rep)
                    queue.append(index[rep])
                if direction == "f":
                    f_arrows.append((i, k, index[rep]))
                else:
                    e_moves[(i, k)] = index[rep]

    size = len(reps)
    shape = CrystalGraph.from_arrows(
        spec, size, f_arrows, [spec.zero_weight()] * size, name=f"C_{spec.type_tag.value[1]}"
    )
    for (i, k), target in e_moves.items():
        if shape.e(i, k) != target:
            raise ColumnError(f"e_{i}({reps[k].label()}) 가 f_{i} 의 역이 아닙니다")
    for i in spec.index_set:
        for k in range(size):
            if shape.e(i, k) != NONE and (i, k) not in e_moves:
                raise ColumnError(f"e_{i}({reps[k].label()}) 가 정의되지 않았지만 f_{i} 화살표가 들어옵니다")

    weights = _propagate_weights(shape, spec)
    crystal = CrystalGraph.from_arrows(
        spec, size, f_arrows, weights, [f"C{k}" for k in range(size)], shape.name
    )
    logger.info(f"{crystal.name} 구성 완료: 동치류 {size}개")
    return ColumnCrystal(pattern, crystal, reps, 0)


def _propagate_weights(shape: CrystalGraph, spec: CartanSpec) -> List[WeightVector]:
    anchor_weight = WeightVector(
        tuple(shape.phi(i, 0) - shape.epsilon(i, 0) for i in spec.index_set)
    )
    weights: List[Optional[WeightVector]] = [None] * shape.size
    weights[0] = anchor_weight
    queue = deque([0])
    while queue:
        k = queue.popleft()
        current = weights[k]
        assert current is not None
        for i in spec.index_set:
            alpha = spec.classical_simple_root_weight(i)
            for target, expected in ((shape.f(i, k), current - alpha), (shape.e(i, k), current + alpha)):
                if target == NONE:
                    continue
                if weights[target] is None:
                    weights[target] = expected
                    queue.append(target)
                elif weights[target] != expected:
                    raise WeightConflictError(
                        f"{shape.name}: C{target} 의 가중치 {weights[target].label()} ≠ {expected.label()}"  # type: ignore[union-attr]
                    )
    missing = [k for k, w in enumerate(weights) if w is None]
    if missing:
        raise WeightConflictError(f"{shape.name}: 가중치가 전파되지 않은 동치류 {len(missing)}개")
    return [w for w in weights if w is not None]


def psi(perfect: CrystalGraph, columns: ColumnCrystal) -> IsomorphismResult:
    """
    앵커 동형 ψ : B → C (b_{Λ₀} ↦ 바닥 상태 기둥)

    Returns:
        IsomorphismResult (ok 가 아니면 충돌 설명 포함)
    """
    spec = perfect.spec
    anchors = b_lower(perfect, spec.fundamental_weight(0))
    if len(anchors) != 1:
        return IsomorphismResult(None, f"b_Λ0 후보가 {len(anchors)}개입니다")
    return find_isomorphism(perfect, columns.crystal, [(anchors[0], columns.anchor)])


def require_psi(perfect: CrystalGraph, columns: ColumnCrystal) -> Dict[int, int]:
    """
    ψ 를 계산하고 결정 라벨을 B 의 라벨로 바꿈

    Raises:
        NoIsomorphismError: 동형이 없는 경우
    """
    result = psi(perfect, columns)
    if not result.ok or result.mapping is None:
        raise NoIsomorphismError(f"{perfect.name} → {columns.crystal.name}: {result.conflict or '전사 실패'}")
    for b, c in result.mapping.items():
        columns.crystal.labels[c] = perfect.labels[b]
    columns.crystal.__dict__.pop("_label_index", None)
    return result.mapping


@dataclass(frozen=True)
class PatternTranslation:
    """
    패턴의 기하 자기동형 T (정육면체 t 칸 이동, 선택적 180° 회전)

    Attributes:
        shift_cubes: 정육면체 이동량 t
        rotate: 단면 180° 회전 여부
        colors: 색 치환 π (π[i] = T 가 i-블록을 보내는 색)
    """
    shift_cubes: int
    rotate: bool
    colors: Tuple[int, ...]

    def color_map(self) -> Dict[int, int]:
        return {i: c for i, c in enumerate(self.colors)}


def _map_slot(pattern: ColumnPattern, shift_cubes: int, rotate: bool, g: int) -> Optional[int]:
    cells = pattern.abs_cells(g)
    if rotate:
        cells = _rotate_cells(cells, pattern.width, pattern.height)
    return pattern.slot_at(pattern.cube_of(g) + shift_cubes, cells)


def find_pattern_translations(pattern: ColumnPattern, reach: int = 3) -> List[PatternTranslation]:
    """
    지지 관계와 색 구조를 보존하는 기하 이동 목록 (|t| 오름차순, 회전 없는 것 먼저)
    """
    found: List[PatternTranslation] = []
    window = range(-pattern.period, 2 * pattern.period)
    shifts = sorted(range(-reach * pattern.cubes, reach * pattern.cubes + 1), key=lambda t: (abs(t), t))
    for t in shifts:
        for rotate in (False, True):
            colors: Dict[int, int] = {}
            ok = True
            for g in window:
                image = _map_slot(pattern, t, rotate, g)
                if image is None or colors.setdefault(pattern.color(g), pattern.color(image)) != pattern.color(image):
                    ok = False
                    break
                mapped = {_map_slot(pattern, t, rotate, s) for s in pattern.supports_of(g)}
                if mapped != set(pattern.supports_of(image)):
                    ok = False
                    break
            if ok and sorted(colors.values()) == sorted(colors.keys()):
                found.append(PatternTranslation(t, rotate, tuple(colors[i] for i in pattern.spec.index_set)))
    return found


def apply_translation(pattern: ColumnPattern, move: PatternTranslation, column: YoungColumn) -> Optional[YoungColumn]:
    """기둥 전체에 T 적용 (대응 슬롯이 없으면 None)"""
    first = pattern.first_slot_of_cube(pattern.cube_of(column.base))
    new_first = pattern.first_slot_of_cube(pattern.cube_of(column.base) + move.shift_cubes)
    images: List[int] = []
    for g in range(first, column.top + 1):
        if not column.filled(g):
            continue
        image = _map_slot(pattern, move.shift_cubes, move.rotate, g)
        if image is None:
            return None
        images.append(image)
    return YoungColumn.normalized(new_first, images)


def sigma_translation(pattern: ColumnPattern, source: YoungColumn, target: YoungColumn) -> PatternTranslation:
    """
    T(source) = target 인 첫 번째 패턴 이동

    Raises:
        ColumnError: 해당 이동이 없는 경우
    """
    for move in find_pattern_translations(pattern):
        if apply_translation(pattern, move, source) == target:
            return move
    raise ColumnError(f"{source.label()} 을(를) {target.label()} 로 보내는 패턴 이동이 없습니다")


def sigma_table(columns: ColumnCrystal, move: PatternTranslation) -> List[Tuple[int, int, int]]:
    """
    σ(zⁿb) = z^{n+p}c 표

    Returns:
        (b id, c id, p) 목록 (id 는 C 의 원소)
    """
    rows: List[Tuple[int, int, int]] = []
    for k in range(columns.crystal.size):
        image = apply_translation(columns.pattern, move, columns.realize(ColumnClass(k, 0)))
        if image is None or not validate(columns.pattern, image):
            raise ColumnError(f"C{k} 의 이동 결과가 유효한 기둥이 아닙니다")
        cls = columns.canonicalize(image)
        rows.append((k, cls.class_id, cls.shift))
    return rows


def column_rows(pattern: ColumnPattern, column: YoungColumn, margin: int = 1) -> List[str]:
    """
    기둥을 정육면체별 텍스트 줄로 표현 (위에서 아래로, 빈 슬롯은 '.')
    """
    low = pattern.cube_of(column.base) - margin
    high = pattern.cube_of(max(column.top, column.base)) + margin
    rows: List[str] = []
    for k in range(high, low - 1, -1):
        cells = []
        for g in pattern.slots_in_cube(k):
            cells.append(str(pattern.color(g)) if column.filled(g) else ".")
        rows.append(f"{k:>5} | " + " ".join(cells))
    return rows


TABLE_DIR = PATTERN_DIR.parent / "tables"


def load_sigma_rows(type_tag: str | TypeTag, path: Optional[Path] = None) -> List[Tuple[str, str, int]]:
    """
    내장 σ 표 로드

    Returns:
        (b 라벨, c 라벨, p) 목록 (파일이 없으면 빈 목록)
    """
    tag = type_tag if isinstance(type_tag, TypeTag) else parse_type_tag(type_tag)
    path = path or TABLE_DIR / f"sigma_{tag.value.lower()}.txt"
    if not path.exists():
        return []
    rows: List[Tuple[str, str, int]] = []
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        b, c, p = line.split()
        rows.append((b, c, int(p)))
    return rows


@dataclass(frozen=True)
class SigmaComparison:
    """계산한 σ 표와 내장 σ 표의 대조 결과"""

    offset: Optional[int]
    mismatches: Tuple[str, ...] = ()

    @property
    def matches(self) -> bool:
        return self.offset is not None and not self.mismatches

    def row_offset(self) -> int:
        return self.offset if self.offset is not None else 0


def compare_sigma(
    computed: Iterable[Tuple[str, str, int]], stored: Iterable[Tuple[str, str, int]]
) -> SigmaComparison:
    """
    σ 표 대조

    c 는 행마다 같아야 하고, p 는 모든 행에서 하나의 상수 (계산값 − 내장값) 만큼만
    달라도 됩니다.
    """
    expected = {b: (c, p) for b, c, p in stored}
    offsets = set()
    mismatches: List[str] = []
    seen = set()
    for b, c, p in computed:
        seen.add(b)
        if b not in expected:
            mismatches.append(f"{b}: 내장 표에 없음")
            continue
        target, stored_p = expected[b]
        if c != target:
            mismatches.append(f"σ({b}) = {c}, 내장 표는 {target}")
            continue
        offsets.add(p - stored_p)
    mismatches.extend(f"{b}: 계산 결과에 없음" for b in sorted(set(expected) - seen))
    if len(offsets) > 1:
        mismatches.append(f"p 차이가 균일하지 않음: {sorted(offsets)}")
    offset = next(iter(offsets)) if len(offsets) == 1 else None
    return SigmaComparison(offset=offset, mismatches=tuple(mismatches))
