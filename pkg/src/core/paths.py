"""
경로 모델 모듈

완전 결정 B 와 에너지 함수 H 만으로 B(λ) 의 λ-경로 실현과
B(F(λ)) 의 정규 순서 수열 모델을 구성합니다.
영 벽 모듈과 코드를 공유하지 않는 독립 대조 모델입니다.

경로는 유한한 머리 (p_0, …, p_{K−1}) 로 저장하며, r ≥ K 인 자리는
바닥 상태 열과 같습니다. 텐서 순서는 … ⊗ p_1 ⊗ p_0 입니다.
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Optional, Tuple

from .crystal import (
    NONE,
    AffineElem,
    CrystalFragment,
    CrystalGraph,
    DepthOverflowError,
    Direction,
    aff_step,
    closure_fragment,
    partitions,
)
from .energy import EnergyTable, h_aff
from .perfect import b_lower
from .root_data import WeightVector

# 로거 설정
logger = logging.getLogger(__name__)

GROUND_TABLE = Path(__file__).resolve().parent.parent / "data" / "tables" / "ground_states.txt"

Entry = Any  # 고전 모델은 int, 포크 모델은 AffineElem


class PathError(Exception):
    """경로 모델 관련 예외"""
    pass


class BadWeightError(PathError):
    """레벨 1 우세 가중치가 아닌 경우"""
    pass


class TableMismatchError(PathError):
    """계산한 바닥 상태 열이 내장 표와 다른 경우"""
    pass


@dataclass
class GroundStateSeq:
    """
    바닥 상태 열 (한 주기분 저장)

    Attributes:
        crystal: 완전 결정 B
        lam: 시작 가중치 λ
        weights: λ_r
        elements: b_r = b_{λ_r}
        energies: H(b_{r+1}⊗b_r)
        shifts: m_r
        drift: m_{r+q} − m_r (q 는 주기)
    """
    crystal: CrystalGraph
    lam: WeightVector
    weights: List[WeightVector]
    elements: List[int]
    energies: List[int]
    shifts: List[int]
    drift: int

    @property
    def period(self) -> int:
        return len(self.elements)

    def weight(self, r: int) -> WeightVector:
        return self.weights[r % self.period]

    def element(self, r: int) -> int:
        return self.elements[r % self.period]

    def energy(self, r: int) -> int:
        return self.energies[r % self.period]

    def shift(self, r: int) -> int:
        return self.shifts[r % self.period] + (r // self.period) * self.drift

    def entry(self, r: int) -> AffineElem:
        """g_r = z^{m_r} b_r"""
        return AffineElem(self.element(r), self.shift(r))

    def rows(self, count: int = 6) -> List[Tuple[int, str, int, int]]:
        """(r, b_r 라벨, H, m_r) 행"""
        return [
            (r, self.crystal.labels[self.element(r)], self.energy(r), self.shift(r))
            for r in range(count)
        ]


def load_ground_table(path: Optional[Path] = None) -> Dict[Tuple[str, str], List[Tuple[int, str, int, int]]]:
    """
    내장 바닥 상태 표 로드

    Returns:
        (타입, λ 표기) → [(r, 원소 라벨, H, m)]
    """
    path = path or GROUND_TABLE
    table: Dict[Tuple[str, str], List[Tuple[int, str, int, int]]] = {}
    for raw in path.read_text(encoding="utf-8").splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        type_tag, lam, r, label, energy, shift = line.split()
        table.setdefault((type_tag, lam), []).append((int(r), label, int(energy), int(shift)))
    return table


def ground_state_sequence(
    crystal: CrystalGraph,
    table: EnergyTable,
    lam: WeightVector,
    check: bool = True,
) -> GroundStateSeq:
    """
    λ_{r+1} = ε(b_{λ_r}), m_{r+1} = m_r + 1 − H(b_{r+1}⊗b_r) 로 바닥 상태 열 계산

    Λ₀ 열을 m_0 = 0 으로 만든 뒤 λ 가 처음 나타나는 자리부터 잘라 씁니다.

    Args:
        crystal: 완전 결정 B
        table: 에너지 함수
        lam: 레벨 1 우세 가중치
        check: 내장 표와 비교 여부

    Raises:
        BadWeightError: λ 가 바닥 상태 순환에 없는 경우
        TableMismatchError: 내장 표와 다른 경우
    """
    spec = crystal.spec
    start = spec.fundamental_weight(0)
    weights: List[WeightVector] = []
    elements: List[int] = []
    weight = start
    while True:
        found = b_lower(crystal, weight)
        if len(found) != 1:
            raise PathError(f"{crystal.name}: b_λ({weight.label()}) 가 유일하지 않습니다")
        weights.append(weight)
        elements.append(found[0])
        weight = crystal.epsilon_weight(found[0])
        if weight == start:
            break
        if len(weights) > crystal.size:
            raise PathError(f"{crystal.name}: 바닥 상태 열이 순환하지 않습니다")

    q = len(elements)
    energies = [table(elements[(r + 1) % q], elements[r]) for r in range(q)]
    shifts = [0]
    for r in range(2 * q):
        shifts.append(shifts[-1] + 1 - energies[r % q])

    target = lam.classical()
    if target not in weights:
        raise BadWeightError(f"{spec.type_tag.value}: {lam.label()} 은(는) 레벨 1 바닥 상태 가중치가 아닙니다")
    k = weights.index(target)
    seq = GroundStateSeq(
        crystal=crystal,
        lam=target,
        weights=weights[k:] + weights[:k],
        elements=elements[k:] + elements[:k],
        energies=energies[k:] + energies[:k],
        shifts=shifts[k : k + q],
        drift=shifts[q] - shifts[0],
    )

    if check:
        rows = load_ground_table().get((spec.type_tag.value, target.label()))
        if rows is None:
            raise TableMismatchError(f"{spec.type_tag.value} {target.label()}: 내장 표에 행이 없습니다")
        for expected in rows:
            computed = seq.rows(expected[0] + 1)[expected[0]]
            if computed != expected:
                raise TableMismatchError(
                    f"{spec.type_tag.value} {target.label()} r={expected[0]}: 계산값 {computed} ≠ 표 {expected}"
                )
    logger.debug(f"{spec.type_tag.value} {target.label()} 바닥 상태 열: 주기 {q}, m 이동 {seq.drift}")
    return seq


class PathModel:
    """
    λ-경로 모델 𝒫(λ) (fock=False) 또는 정규 순서 수열 모델 (fock=True)
    """

    def __init__(
        self,
        crystal: CrystalGraph,
        table: EnergyTable,
        lam: WeightVector,
        fock: bool = False,
        check_table: bool = True,
    ):
        self.crystal = crystal
        self.table = table
        self.fock = fock
        self.spec = crystal.spec
        self.ground = ground_state_sequence(crystal, table, lam, check=check_table)
        logger.debug(f"{self.name} 경로 모델 준비 완료")

    @property
    def name(self) -> str:
        model = "fock" if self.fock else "path"
        return f"{model}:{self.spec.type_tag.value}:{self.ground.lam.label()}"

    def ground_entry(self, r: int) -> Entry:
        return self.ground.entry(r) if self.fock else self.ground.element(r)

    def normalize(self, head: Tuple[Entry, ...]) -> Tuple[Entry, ...]:
        """바닥 상태와 같은 꼬리 항목 제거"""
        end = len(head)
        while end and head[end - 1] == self.ground_entry(end - 1):
            end -= 1
        return tuple(head[:end])

    def _base(self, entry: Entry) -> int:
        return entry.base if self.fock else entry

    def _step_entry(self, direction: Direction, i: int, entry: Entry) -> Optional[Entry]:
        if self.fock:
            return aff_step(self.crystal, direction, i, entry)
        target = self.crystal.step(direction, i, entry)
        return None if target == NONE else target

    def select(self, path: Tuple[Entry, ...], i: int) -> Tuple[Optional[int], Optional[int]]:
        """
        부호 규칙으로 작용할 자리 선택

        꼬리 (자리 K) 는 (+)^{⟨λ_K,h_i⟩} 를 기여하며 왼쪽 끝에 놓입니다.

        Returns:
            (가장 왼쪽 + 의 자리, 가장 오른쪽 − 의 자리)
        """
        size = len(path)
        stack: List[List[int]] = []
        tail_plus = self.ground.weight(size).lambda_coeffs[i]
        if tail_plus:
            stack.append([size, tail_plus])
        rightmost_minus: Optional[int] = None
        for r in range(size - 1, -1, -1):
            eps, phi = self.crystal.string_stats(i, self._base(path[r]))
            remaining = eps
            while remaining and stack:
                take = min(stack[-1][1], remaining)
                stack[-1][1] -= take
                remaining -= take
                if stack[-1][1] == 0:
                    stack.pop()
            if remaining:
                rightmost_minus = r
            if phi:
                stack.append([r, phi])
        leftmost_plus = stack[0][0] if stack else None
        return leftmost_plus, rightmost_minus

    def step(self, path: Tuple[Entry, ...], direction: Direction, i: int) -> Optional[Tuple[Entry, ...]]:
        """경로 위의 f̃_i / ẽ_i (정의되지 않으면 None)"""
        plus, minus = self.select(path, i)
        position = plus if direction == "f" else minus
        if position is None:
            return None
        if position == len(path):
            # 꼬리에서 작용하면 바닥 항목 하나를 머리로 옮긴 뒤 다시 선택
            return self.step(path + (self.ground_entry(len(path)),), direction, i)
        moved = self._step_entry(direction, i, path[position])
        if moved is None:
            return None
        head = list(path)
        head[position] = moved
        return self.normalize(tuple(head))

    def weight(self, path: Tuple[Entry, ...]) -> WeightVector:
        """
        아핀 가중치

        고전 모델: λ_K + Σ wt(p_r) + δ·Σ (r+1)(H(p_{r+1}⊗p_r) − H(b_{r+1}⊗b_r))
        포크 모델: λ + Σ (wt(s_r) − wt(g_r))
        """
        size = len(path)
        if self.fock:
            total = self.ground.lam
            for r in range(size):
                total = total + path[r].weight(self.crystal) - self.ground.entry(r).weight(self.crystal)
            return total

        total = self.ground.weight(size)
        correction = 0
        for r in range(size):
            total = total + self.crystal.weights[path[r]]
            upper = path[r + 1] if r + 1 < size else self.ground.element(r + 1)
            correction += (r + 1) * (self.table(upper, path[r]) - self.ground.energy(r))
        return total + self.spec.delta().scale(correction)

    def h_aff_pairs(self, path: Tuple[Entry, ...]) -> List[int]:
        """포크 모델: r < K 인 쌍의 H_aff(s_{r+1}⊗s_r)"""
        size = len(path)
        values = []
        for r in range(size):
            upper = path[r + 1] if r + 1 < size else self.ground.entry(r + 1)
            values.append(h_aff(self.table, upper, path[r]))
        return values

    def is_valid(self, path: Tuple[Entry, ...]) -> bool:
        if not self.fock:
            return True
        return all(value > 0 for value in self.h_aff_pairs(path))

    def is_highest_weight(self, path: Tuple[Entry, ...]) -> bool:
        """
        포크 모델 최고 가중치 판정: s_r = z^{n_r} g_r, n_0 ≤ n_1 ≤ … ≤ 0
        고전 모델은 바닥 경로만 최고 가중치입니다.
        """
        if not self.fock:
            return path == ()
        offsets = []
        for r, entry in enumerate(path):
            if entry.base != self.ground.element(r):
                return False
            offsets.append(entry.power - self.ground.shift(r))
        offsets.append(0)
        return all(a <= b for a, b in zip(offsets, offsets[1:]))

    def stabilizes(self, path: Tuple[Entry, ...]) -> bool:
        """s_k = g_k 이면 그 뒤도 모두 바닥 상태인지 (정규화된 머리 안에 바닥 항목이 없는지)"""
        return all(entry != self.ground_entry(r) for r, entry in enumerate(path))

    def hw_family(self, depth: int) -> List[Tuple[Tuple[Entry, ...], int]]:
        """
        포크 모델 최고 가중치 원소 (가중치 λ − kδ, k ≤ depth)

        분할 κ 마다 s_r = z^{m_r − κ_r} b_r 입니다.
        """
        if not self.fock:
            return [((), 0)]
        family = []
        for k in range(depth + 1):
            for kappa in partitions(k):
                head = tuple(
                    AffineElem(self.ground.element(r), self.ground.shift(r) - part)
                    for r, part in enumerate(kappa)
                )
                family.append((self.normalize(head), k))
        return family

    def label(self, path: Tuple[Entry, ...]) -> str:
        if not path:
            return "ground"
        names = []
        for entry in reversed(path):
            if self.fock:
                names.append(f"z^{entry.power}·{self.crystal.labels[entry.base]}")
            else:
                names.append(self.crystal.labels[entry])
        return " ⊗ ".join(names)

    def enumerate(self, depth: int, cap: int = 8) -> CrystalFragment:
        """
        최고 가중치 원소에서 f 닫힘으로 깊이 depth 까지 열거

        포크 모델의 깊이는 k + (성분의 최고 가중치 원소에서의 f 단계 수) 입니다.

        Raises:
            DepthOverflowError: depth 가 cap 을 넘는 경우
        """
        if depth > cap:
            raise DepthOverflowError(f"깊이 {depth} 이(가) 상한 {cap} 을(를) 넘습니다")
        return closure_fragment(
            self.name,
            self.hw_family(depth),
            self.spec.index_set,
            lambda i, path: self.step(path, "f", i),
            self.weight,
            self.label,
            depth,
        )


def path_step(model: PathModel, path: Tuple[Entry, ...], direction: Direction, i: int) -> Optional[Tuple[Entry, ...]]:
    return model.step(path, direction, i)


def path_weight(model: PathModel, path: Tuple[Entry, ...]) -> WeightVector:
    return model.weight(path)


def fock_path_valid(model: PathModel, path: Tuple[Entry, ...]) -> bool:
    return model.is_valid(path)


def fock_hw(model: PathModel, path: Tuple[Entry, ...]) -> bool:
    return model.is_highest_weight(path)


def embed_highest_weight_crystal(model: PathModel, path: Tuple[int, ...]) -> Tuple[AffineElem, ...]:
    """
    λ-경로를 포크 수열로 보냄: n_r = n_{r+1} − 1 + H(p_{r+1}⊗p_r)

    머리 바깥에서는 n_r = m_r 이므로 바닥 상태 항목이 됩니다.
    """
    if model.fock:
        raise PathError("고전 경로 모델에서만 사용할 수 있습니다")
    ground = model.ground
    size = len(path)
    power = ground.shift(size)
    entries: List[AffineElem] = []
    for r in range(size - 1, -1, -1):
        upper = path[r + 1] if r + 1 < size else ground.element(r + 1)
        power = power - 1 + model.table(upper, path[r])
        entries.append(AffineElem(path[r], power))
    head = tuple(reversed(entries))
    end = len(head)
    while end and head[end - 1] == ground.entry(end - 1):
        end -= 1
    return head[:end]
