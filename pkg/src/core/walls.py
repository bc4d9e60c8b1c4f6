"""
영 벽 모듈

영 벽을 기둥 동치류 (class_id, z 지수) 수열로 다루고, 부호 규칙으로
결정 구조를 줍니다. 축약 벽 모델 𝒴(λ) 은 B(λ) 를, 정규 순서 벽 모델 𝒵(λ) 은
B(F(λ)) 를 실현합니다.

벽의 머리 (y_0, …, y_{K−1}) 밖의 기둥은 바닥 상태 벽의 기둥과 같습니다.
기둥 순서는 오른쪽이 0 입니다: … y_2 y_1 y_0.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Any, Dict, List, Optional, Set, Tuple

from .columns import (
    ColumnClass,
    ColumnCrystal,
    PatternTranslation,
    YoungColumn,
    apply_translation,
    sigma_table,
    sigma_translation,
)
from .crystal import (
    AffineElem,
    CrystalFragment,
    CrystalGraph,
    DepthOverflowError,
    Direction,
    aff_step,
    closure_fragment,
    partitions,
)
from .energy import EnergyTable, affine_path_exists, zero_arrow_counts, zero_arrow_distance
from .perfect import ground_state_chain
from .root_data import TypeTag, WeightVector

# 로거 설정
logger = logging.getLogger(__name__)

MODELS = ("reduced", "fock")


class WallError(Exception):
    """영 벽 모델 관련 예외"""
    pass


class UnknownWeightError(WallError):
    """바닥 상태 벽이 없는 가중치인 경우"""
    pass


@dataclass(frozen=True)
class YoungWall:
    """
    영 벽

    Attributes:
        model: "reduced" (𝒴) 또는 "fock" (𝒵)
        lam: 바닥 상태 가중치 λ
        head: 바닥 상태와 다른 부분을 포함하는 기둥 0..K−1
    """
    model: str
    lam: WeightVector
    head: Tuple[ColumnClass, ...] = ()

    @property
    def length(self) -> int:
        return len(self.head)


@dataclass
class Signature:
    """
    i-부호열 (상쇄 후)

    Attributes:
        runs: 왼쪽부터 (기둥 r, 남은 − 개수, 남은 + 개수); 꼬리는 r = K
        leftmost_plus: 가장 왼쪽 + 의 기둥
        rightmost_minus: 가장 오른쪽 − 의 기둥
    """
    runs: List[Tuple[int, int, int]] = field(default_factory=list)
    leftmost_plus: Optional[int] = None
    rightmost_minus: Optional[int] = None

    @property
    def plus_count(self) -> int:
        return sum(run[2] for run in self.runs)

    @property
    def minus_count(self) -> int:
        return sum(run[1] for run in self.runs)

    def text(self) -> str:
        return " ".join(f"[{r}]" + "-" * m + "+" * p for r, m, p in self.runs)


@dataclass
class RightBlockPair:
    """
    인접 기둥 (r+1, r) 의 오른쪽 블록 성질 보고

    Attributes:
        r: 오른쪽 기둥 번호
        upper: 기둥 r+1 의 라벨 b
        lower: 기둥 r 의 라벨 a
        geometric: 기둥 r+1 을 기둥 r 자리로 옮긴 블록이 모두 기둥 r 에 있는지
        reachable: C_aff 에서 옮긴 기둥에서 기둥 r 로 가는 경로가 있는지
        h_aff: H_aff(y_{r+1}⊗y_r)
        exempt: E8 에서 H_aff = 2 인 쌍
        gap: 옮긴 기둥 기준 필요한 0-화살표 수 − 최소 0-화살표 수 (도달 불가면 None)
        energy_gap: σ 표와 에너지 함수로 계산한 같은 여유
    """
    r: int
    upper: str
    lower: str
    geometric: bool
    reachable: bool
    h_aff: int
    exempt: bool
    gap: Optional[int]
    energy_gap: Optional[int] = None

    @property
    def holds(self) -> bool:
        return self.geometric

    @property
    def gaps_agree(self) -> bool:
        return self.gap == self.energy_gap


class WallModel:
    """
    영 벽 결정 모델

    Args:
        perfect: 완전 결정 B
        table: B 의 에너지 함수
        columns: 기둥 결정 C (라벨이 B 라벨로 바뀐 상태)
        mapping: ψ : B id → C id
        lam: 레벨 1 우세 가중치
        model: "reduced" 또는 "fock"
    """

    def __init__(
        self,
        perfect: CrystalGraph,
        table: EnergyTable,
        columns: ColumnCrystal,
        mapping: Dict[int, int],
        lam: WeightVector,
        model: str = "reduced",
    ):
        if model not in MODELS:
            raise WallError(f"알 수 없는 모델: {model} (가능: {', '.join(MODELS)})")
        self.perfect = perfect
        self.table = table
        self.columns = columns
        self.pattern = columns.pattern
        self.spec = perfect.spec
        self.model = model
        self.mapping = dict(mapping)
        self.inverse = {c: b for b, c in mapping.items()}
        self._block_cache: Dict[Tuple[int, int, int], int] = {}
        self._setup_ground(lam)

    def _setup_ground(self, lam: WeightVector) -> None:
        # Λ₀ 바닥 상태 열을 한 주기 계산하고 λ 의 위치에서 시작
        start = self.spec.fundamental_weight(0)
        chain = ground_state_chain(self.perfect, start, len(self.spec.index_set) + 1)
        period = next((r for r in range(1, len(chain)) if chain[r][0] == chain[0][0]), None)
        if period is None:
            raise WallError(f"{self.spec.type_tag.value}: 바닥 상태 열의 주기를 찾지 못했습니다")
        self._weights = [w for w, _ in chain[:period]]
        self._elements = [b for _, b in chain[:period]]
        self._energies = [
            self.table(self._elements[(r + 1) % period], self._elements[r]) for r in range(period)
        ]
        shifts = [0]
        for r in range(period):
            shifts.append(shifts[-1] + 1 - self._energies[r])
        self._period = period
        self._shifts = shifts[:period]
        self._drift = shifts[period]

        target = lam.classical()
        if target not in self._weights:
            raise UnknownWeightError(f"{self.spec.type_tag.value}: {lam.label()} 의 바닥 상태 벽이 없습니다")
        self.lam = target
        self.offset = self._weights.index(target)

    # 바닥 상태 벽

    @property
    def name(self) -> str:
        return f"{self.model}:{self.spec.type_tag.value}:{self.lam.label()}"

    @property
    def period(self) -> int:
        return self._period

    def _chain(self, r: int) -> Tuple[int, int]:
        return divmod(r + self.offset, self._period)

    def ground_weight(self, r: int) -> WeightVector:
        """λ_r (기둥 r 이후 꼬리의 우세 가중치)"""
        return self._weights[self._chain(r)[1]]

    def ground_element(self, r: int) -> int:
        return self._elements[self._chain(r)[1]]

    def ground_energy(self, r: int) -> int:
        """H(b_{r+1}⊗b_r)"""
        return self._energies[self._chain(r)[1]]

    def _chain_column(self, k: int) -> ColumnClass:
        # Λ₀ 바닥 상태 열의 k 번째 기둥
        turns, rest = divmod(k, self._period)
        return ColumnClass(self.mapping[self._elements[rest]], self._shifts[rest] + turns * self._drift)

    def ground_shift(self, r: int) -> int:
        return self._chain_column(r + self.offset).shift

    def ground_column(self, r: int) -> ColumnClass:
        """ψ_aff(z^{m_r} b_r)"""
        return ColumnClass(self.mapping[self.ground_element(r)], self.ground_shift(r))

    def ground_wall(self) -> YoungWall:
        return YoungWall(self.model, self.lam, ())

    def column(self, wall: YoungWall, r: int) -> ColumnClass:
        return wall.head[r] if r < len(wall.head) else self.ground_column(r)

    def normalize(self, head: Tuple[ColumnClass, ...]) -> Tuple[ColumnClass, ...]:
        end = len(head)
        while end and head[end - 1] == self.ground_column(end - 1):
            end -= 1
        return tuple(head[:end])

    def make_wall(self, head: Tuple[ColumnClass, ...]) -> YoungWall:
        return YoungWall(self.model, self.lam, self.normalize(tuple(head)))

    # 블록 수준 보기

    def realize(self, cls: ColumnClass) -> YoungColumn:
        return self.columns.realize(cls)

    def block_count(self, cls: ColumnClass, r: int) -> int:
        """|y_r|: 기둥 r 의 바닥 상태 기둥 대비 블록 수 차이"""
        key = (cls.class_id, cls.shift, r)
        if key not in self._block_cache:
            diff = self.pattern.block_difference(self.realize(cls), self.realize(self.ground_column(r)))
            self._block_cache[key] = sum(diff.values())
        return self._block_cache[key]

    def zero_level_at(self, wall: YoungWall, r: int) -> int:
        """|y_r|₀: 기둥 r 의 바닥 상태 기둥 대비 0-블록 수 차이"""
        column = self.realize(self.column(wall, r))
        ground = self.realize(self.ground_column(r))
        return self.pattern.block_difference(column, ground)[0]

    def built_on_ground(self, wall: YoungWall) -> bool:
        """모든 기둥이 바닥 상태 기둥의 블록을 포함하는지"""
        return all(
            self.realize(cls).contains(self.realize(self.ground_column(r)))
            for r, cls in enumerate(wall.head)
        )

    # 에너지

    def energy(self, upper: ColumnClass, lower: ColumnClass) -> int:
        """H(b⊗a), b = ψ⁻¹(upper), a = ψ⁻¹(lower)"""
        return self.table(self.inverse[upper.class_id], self.inverse[lower.class_id])

    def h_aff_at(self, wall: YoungWall, r: int) -> int:
        """H_aff(z^{n_{r+1}}y_{r+1} ⊗ z^{n_r}y_r)"""
        upper = self.column(wall, r + 1)
        lower = self.column(wall, r)
        return self.energy(upper, lower) + upper.shift - lower.shift

    def _block_form(self, wall: YoungWall, r: int) -> int:
        # H(y_{r+1}⊗y_r) − |y_{r+1}|₀ + |y_r|₀ − H(b_{r+1}⊗b_r)
        upper = self.column(wall, r + 1)
        lower = self.column(wall, r)
        value = self.energy(upper, lower) - self.zero_level_at(wall, r + 1) + self.zero_level_at(wall, r)
        return value - self.ground_energy(r)

    def is_reduced(self, wall: YoungWall) -> bool:
        return all(self._block_form(wall, r) == 0 for r in range(len(wall.head)))

    def is_normally_ordered(self, wall: YoungWall) -> bool:
        """
        정규 순서 판정 (H_aff > 0 형태와 0-블록 부등식 형태를 함께 계산)

        Raises:
            WallError: 두 판정이 다른 경우
        """
        by_energy = all(self.h_aff_at(wall, r) > 0 for r in range(len(wall.head)))
        by_blocks = all(self._block_form(wall, r) >= 0 for r in range(len(wall.head)))
        if by_energy != by_blocks:
            raise WallError(f"{self.label(wall)}: H_aff 판정({by_energy})과 블록 판정({by_blocks})이 다릅니다")
        return by_energy

    def in_model(self, wall: YoungWall) -> bool:
        return self.is_reduced(wall) if self.model == "reduced" else self.is_normally_ordered(wall)

    def removable_delta_columns(self, wall: YoungWall) -> List[int]:
        """δ-기둥 하나를 빼도 정규 순서가 유지되는 기둥 번호"""
        found = []
        for r, cls in enumerate(wall.head):
            head = list(wall.head)
            head[r] = replace(cls, shift=cls.shift + 1)
            if self.is_normally_ordered(YoungWall(wall.model, wall.lam, tuple(head))):
                found.append(r)
        return found

    # 부호 규칙

    def signature(self, wall: YoungWall, i: int) -> Signature:
        """
        꼬리 (+)^{⟨λ_K,h_i⟩} 와 기둥 K−1, …, 0 의 (−)^{ε_i}(+)^{φ_i} 를
        왼쪽부터 이어 붙이고 +− 쌍을 상쇄합니다.
        """
        size = len(wall.head)
        factors = [(size, 0, self.ground_weight(size).lambda_coeffs[i])]
        for r in range(size - 1, -1, -1):
            eps, phi = self.columns.crystal.string_stats(i, wall.head[r].class_id)
            factors.append((r, eps, phi))

        pluses: List[List[int]] = []
        minus_left: Dict[int, int] = {}
        for r, eps, phi in factors:
            remaining = eps
            while remaining and pluses:
                take = min(pluses[-1][1], remaining)
                pluses[-1][1] -= take
                remaining -= take
                if pluses[-1][1] == 0:
                    pluses.pop()
            minus_left[r] = remaining
            if phi:
                pluses.append([r, phi])

        plus_left = {r: count for r, count in pluses}
        runs = [
            (r, minus_left.get(r, 0), plus_left.get(r, 0))
            for r, _, _ in factors
            if minus_left.get(r, 0) or plus_left.get(r, 0)
        ]
        minus_columns = [r for r, count in minus_left.items() if count]
        return Signature(
            runs=runs,
            leftmost_plus=pluses[0][0] if pluses else None,
            rightmost_minus=min(minus_columns) if minus_columns else None,
        )

    def step(self, wall: YoungWall, direction: Direction, i: int) -> Optional[YoungWall]:
        """f̃_i 는 가장 왼쪽 + 의 기둥에, ẽ_i 는 가장 오른쪽 − 의 기둥에 작용"""
        signature = self.signature(wall, i)
        position = signature.leftmost_plus if direction == "f" else signature.rightmost_minus
        if position is None:
            return None
        if position == len(wall.head):
            # 꼬리에서 작용하면 바닥 기둥 하나를 머리로 옮긴 뒤 다시 선택
            extended = wall.head + (self.ground_column(len(wall.head)),)
            return self.step(YoungWall(wall.model, wall.lam, extended), direction, i)
        cls = wall.head[position]
        moved = aff_step(self.columns.crystal, direction, i, AffineElem(cls.class_id, cls.shift))
        if moved is None:
            return None
        head = list(wall.head)
        head[position] = ColumnClass(moved.base, moved.power)
        return self.make_wall(tuple(head))

    def weight(self, wall: YoungWall) -> WeightVector:
        """λ − Σ_i k_i α_i (k_i 는 바닥 상태 벽 대비 i-블록 수 차이)"""
        total = self.lam
        for r, cls in enumerate(wall.head):
            diff = self.pattern.block_difference(self.realize(cls), self.realize(self.ground_column(r)))
            for i, k in diff.items():
                if k:
                    total = total - self.spec.simple_root_weight(i).scale(k)
        return total

    def depth(self, wall: YoungWall) -> int:
        """Σ_r |y_r|"""
        return sum(self.block_count(cls, r) for r, cls in enumerate(wall.head))

    # 오른쪽 블록 성질

    @cached_property
    def translation(self) -> PatternTranslation:
        """Λ₀ 바닥 상태 벽의 기둥 1 을 기둥 0 자리로 옮기는 패턴 이동 T"""
        return sigma_translation(
            self.pattern, self.realize(self._chain_column(1)), self.realize(self._chain_column(0))
        )

    @cached_property
    def _distance(self):
        return zero_arrow_distance(self.columns.crystal)

    @cached_property
    def sigma_map(self) -> Dict[int, Tuple[int, int]]:
        """C id → (σ 상의 C id, p)"""
        return {b: (c, p) for b, c, p in sigma_table(self.columns, self.translation)}

    def energy_gap(self, upper: ColumnClass, lower: ColumnClass) -> Optional[int]:
        """
        에너지로 계산한 오른쪽 블록 여유

        E6/E7: p + H_aff − H(b⊗a) − H(a⊗c) (σ(zⁿb) = z^{n+p}c)
        E8: σ = z 이므로 1 + H_aff − H(b⊗a) − (b → a 최소 0-화살표 수)

        H_aff = 1 이면 정규 순서 벽에서 기둥 r 이 내려갈 수 있는 최저 위치와
        오른쪽 블록 성질이 허용하는 최저 위치의 0-블록 수 차이입니다.
        """
        h = self.energy(upper, lower) + upper.shift - lower.shift
        if self.spec.type_tag == TypeTag.E8:
            shortest = self._distance(upper.class_id, lower.class_id)
            if shortest is None:
                return None
            return 1 + h - self.energy(upper, lower) - shortest
        c, p = self.sigma_map[upper.class_id]
        return p + h - self.energy(upper, lower) - self.energy(lower, ColumnClass(c))

    def right_block_report(self, wall: YoungWall, cap: int = 8) -> List[RightBlockPair]:
        """머리 안의 인접 쌍마다 오른쪽 블록 성질 보고"""
        report: List[RightBlockPair] = []
        labels = self.columns.crystal.labels
        for r in range(len(wall.head)):
            upper = self.column(wall, r + 1)
            lower = self.column(wall, r)
            lower_column = self.realize(lower)
            moved = apply_translation(self.pattern, self.translation, self.realize(upper))
            geometric = moved is not None and lower_column.contains(moved)
            reachable = False
            gap: Optional[int] = None
            if moved is not None:
                image = self.columns.canonicalize(moved)
                reachable = affine_path_exists(
                    self.columns.crystal,
                    AffineElem(image.class_id, image.shift),
                    AffineElem(lower.class_id, lower.shift),
                    cap,
                )
                shortest = self._distance(image.class_id, lower.class_id)
                if shortest is not None:
                    gap = (image.shift - lower.shift) - shortest
            h = self.h_aff_at(wall, r)
            report.append(
                RightBlockPair(
                    r=r,
                    upper=labels[upper.class_id],
                    lower=labels[lower.class_id],
                    geometric=geometric,
                    reachable=reachable,
                    h_aff=h,
                    exempt=self.spec.type_tag == TypeTag.E8 and h == 2,
                    gap=gap,
                    energy_gap=self.energy_gap(upper, lower),
                )
            )
        return report

    # 열거

    def hw_family(self, depth: int) -> List[Tuple[YoungWall, int]]:
        """
        최고 가중치 벽 (λ − kδ, k ≤ depth)

        𝒵 에서는 분할 κ 마다 기둥 r 에 δ-기둥 κ_r 개를 더합니다.
        """
        if self.model == "reduced":
            return [(self.ground_wall(), 0)]
        family = []
        for k in range(depth + 1):
            for kappa in partitions(k):
                head = tuple(
                    replace(self.ground_column(r), shift=self.ground_shift(r) - part)
                    for r, part in enumerate(kappa)
                )
                family.append((self.make_wall(head), k))
        return family

    def is_highest_weight(self, wall: YoungWall) -> bool:
        return all(self.step(wall, "e", i) is None for i in self.spec.index_set)

    def weight_slice(self, depth: int) -> Set[YoungWall]:
        """
        Σ|y_r| ≤ depth 인 모델의 벽을 기둥 depth−1 부터 0 까지 제약 탐색

        𝒵 는 depth < Σa_i 에서만 지원하며, 이 범위의 벽은 모두 축약 벽입니다.

        Raises:
            WallError: 𝒵 에서 depth ≥ Σa_i 인 경우
        """
        if self.model == "fock" and depth >= self.spec.null_root_height:
            raise WallError(
                f"정규 순서 모델의 가중치 조각 탐색은 깊이 {self.spec.null_root_height} 미만에서만 지원합니다"
            )
        found: Set[YoungWall] = set()
        size = self.columns.crystal.size

        def extend(r: int, upper: ColumnClass, suffix: Tuple[ColumnClass, ...], budget: int) -> None:
            if r < 0:
                found.add(self.make_wall(suffix))
                return
            for a in range(size):
                candidate = ColumnClass(a, 0)
                shift = upper.shift - 1 + self.energy(upper, candidate)
                cls = ColumnClass(a, shift)
                blocks = self.block_count(cls, r)
                if blocks < 0 or blocks > budget:
                    continue
                extend(r - 1, cls, (cls,) + suffix, budget - blocks)

        extend(depth - 1, self.ground_column(depth), (), depth)
        return found

    def enumerate(self, depth: int, cap: int = 8, cross_check: bool = True) -> CrystalFragment:
        """
        최고 가중치 벽에서 f 닫힘으로 깊이 depth 까지 열거

        Raises:
            DepthOverflowError: depth 가 cap 을 넘는 경우
            WallError: 닫힘과 가중치 조각 탐색 결과가 다른 경우
        """
        if depth > cap:
            raise DepthOverflowError(f"깊이 {depth} 이(가) 상한 {cap} 을(를) 넘습니다")
        fragment = closure_fragment(
            self.name,
            self.hw_family(depth),
            self.spec.index_set,
            lambda i, wall: self.step(wall, "f", i),
            self.weight,
            self.label,
            depth,
        )
        if cross_check and (self.model == "reduced" or depth < self.spec.null_root_height):
            by_closure = {wall for wall in fragment.nodes if self.depth(wall) <= depth}
            by_slice = self.weight_slice(depth)
            if by_closure != by_slice:
                missing = sorted(self.label(w) for w in by_slice - by_closure)[:3]
                extra = sorted(self.label(w) for w in by_closure - by_slice)[:3]
                raise WallError(f"{self.name}: 닫힘과 조각 탐색 불일치 (닫힘에 없음 {missing}, 조각에 없음 {extra})")
        logger.info(f"{self.name} 깊이 {depth}: 벽 {len(fragment)}개")
        return fragment

    # 변환과 출력

    def to_path(self, wall: YoungWall) -> Tuple[Any, ...]:
        """𝒴 → B 원소 수열, 𝒵 → B_aff 원소 수열"""
        if self.model == "reduced":
            return tuple(self.inverse[cls.class_id] for cls in wall.head)
        return tuple(AffineElem(self.inverse[cls.class_id], cls.shift) for cls in wall.head)

    def label(self, wall: YoungWall) -> str:
        if not wall.head:
            return "ground"
        labels = self.columns.crystal.labels
        return " ".join(f"z^{cls.shift}·{labels[cls.class_id]}" for cls in reversed(wall.head))

    def to_json_dict(self, wall: YoungWall) -> Dict[str, Any]:
        labels = self.columns.crystal.labels
        return {
            "model": wall.model,
            "lambda": wall.lam.label(),
            "columns": [
                {"r": r, "class_label": labels[cls.class_id], "shift": cls.shift}
                for r, cls in enumerate(wall.head)
            ],
        }

    def reduced_difference(self, r: int, b: int, a: int, lift: int = 0) -> int:
        """
        축약 인접 쌍 (ψ(b), ψ(a)) 를 기둥 r+1, r 에 놓았을 때 |y_r| − |y_{r+1}|

        n_{r+1} = m_{r+1} + lift, n_r = n_{r+1} − 1 + H(b⊗a) 로 고정합니다.
        """
        upper = ColumnClass(self.mapping[b], self.ground_shift(r + 1) + lift)
        lower = ColumnClass(self.mapping[a], upper.shift - 1 + self.table(b, a))
        return self.block_count(lower, r) - self.block_count(upper, r + 1)

    def reduced_difference_table(self) -> List[Tuple[int, str, str, int]]:
        """
        축약 인접 쌍 (b, a) 와 기둥 번호 r mod 주기마다 |y_r| − |y_{r+1}|

        Returns:
            (r, b 라벨, a 라벨, 값) 목록
        """
        labels = self.perfect.labels
        size = self.perfect.size
        return [
            (r, labels[b], labels[a], self.reduced_difference(r, b, a))
            for r in range(self._period)
            for b in range(size)
            for a in range(size)
        ]


def i_signature(model: WallModel, wall: YoungWall, i: int) -> Signature:
    return model.signature(wall, i)


def wall_step(model: WallModel, wall: YoungWall, direction: Direction, i: int) -> Optional[YoungWall]:
    return model.step(wall, direction, i)


def wall_weight(model: WallModel, wall: YoungWall) -> WeightVector:
    return model.weight(wall)


def right_block_exemptions(
    perfect: CrystalGraph, table: EnergyTable, shift: int = 1, max_h: int = 4
) -> List[Tuple[int, int, int]]:
    """
    σ = z^{shift} 인 결정에서 H_aff = h 인 쌍 b⊗a 중 오른쪽 블록 성질이 깨지는 것

    필요한 0-화살표 수 shift + h − H(b⊗a) 의 경로 b → a 가 없으면 깨집니다.

    Returns:
        (b id, a id, h) 목록
    """
    size = perfect.size
    low = min(table(b, a) for b in range(size) for a in range(size))
    cap = shift + max_h - low
    failures: List[Tuple[int, int, int]] = []
    for b in range(size):
        counts = zero_arrow_counts(perfect, b, cap)
        for a in range(size):
            for h in range(1, max_h + 1):
                needed = shift + h - table(b, a)
                if needed < 0 or needed not in counts[a]:
                    failures.append((b, a, h))
    return failures


def elements_without_self_drop(perfect: CrystalGraph) -> List[int]:
    """B_aff 에서 zⁿa → … → z^{n−1}a 경로가 없는 원소 a"""
    return [a for a in range(perfect.size) if 1 not in zero_arrow_counts(perfect, a, 1)[a]]
