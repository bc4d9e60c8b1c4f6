"""
영 기둥 패턴 · 기둥 결정 · ψ 단위 테스트

결함 주입 테스트는 지지 관계 한 개를 지운 패턴에서
ψ 검사가 반례와 함께 실패하는지 확인합니다.
"""

import shutil
import tempfile
from dataclasses import replace
from pathlib import Path

import pytest

from src.core.columns import (
    PATTERN_DIR,
    ColumnClass,
    ColumnError,
    YoungColumn,
    addable_removable,
    blocked_color,
    build_column_crystal,
    canonical_form,
    color_census,
    column_rows,
    column_step,
    compare_sigma,
    find_pattern_translations,
    load_pattern,
    load_sigma_rows,
    pattern_problems,
    psi,
    sigma_table,
    supports_from_cells,
    validate,
)
from src.core.context import load_perfect, load_type_context
from src.core.crystal import CrystalError
from src.models.schemas import CheckStatus
from src.nodes.common import run_check
from src.nodes.crystal_checks import check_psi


class TestYoungColumn:
    """YoungColumn 기본 연산 테스트"""

    def test_normalized_absorbs_base(self):
        column = YoungColumn.normalized(0, [0, 1, 3])

        assert column.base == 2
        assert column.extras == frozenset({3})

    def test_add_remove(self):
        column = YoungColumn(0, frozenset({1}))

        assert column.add(0) == YoungColumn(2)
        assert column.remove(1) == YoungColumn(0)
        assert YoungColumn(2).remove(0) == YoungColumn(0, frozenset({1}))

    def test_add_filled_rejected(self):
        with pytest.raises(ColumnError):
            YoungColumn(3).add(1)

    def test_translate_and_contains(self):
        column = YoungColumn(0, frozenset({2}))

        assert column.translate(12) == YoungColumn(12, frozenset({14}))
        assert column.translate(12).contains(column)
        assert not column.contains(column.translate(12))

    def test_label(self):
        assert YoungColumn(0, frozenset({3, 1})).label() == "<0|1,3>"


class TestPatternData:
    """패턴 데이터 파일 테스트"""

    @pytest.mark.parametrize("tag", ["E6", "E7", "E8"])
    def test_census_matches_marks(self, tag):
        pattern = load_pattern(tag)
        census = color_census(pattern)

        assert pattern.period == pattern.spec.null_root_height
        assert [census[i] for i in pattern.spec.index_set] == list(pattern.spec.marks)

    @pytest.mark.parametrize("tag", ["E6", "E7", "E8"])
    def test_geometry_consistent(self, tag):
        """지지 관계 · 셀 분할 · 회전 짝이 기하와 일치"""
        assert pattern_problems(load_pattern(tag)) == []

    @pytest.mark.parametrize("tag", ["E6", "E7", "E8"])
    def test_ground_valid(self, tag):
        pattern = load_pattern(tag)
        assert validate(pattern, pattern.ground)

    def test_supports_from_cells(self):
        pattern = load_pattern("E6")

        assert supports_from_cells(pattern, 2) == ((0, 0), (1, 0))
        assert supports_from_cells(pattern, 0) == ((11, -1),)

    def test_zero_level_of_ground(self):
        pattern = load_pattern("E6")
        assert pattern.zero_level(pattern.ground) == 0
        assert pattern.zero_level(pattern.ground.translate(-pattern.period)) == -1

    def test_column_rows(self):
        pattern = load_pattern("E6")
        rows = column_rows(pattern, pattern.ground)

        assert rows
        assert all(" | " in row for row in rows)

    def test_translations_include_period_shift(self):
        pattern = load_pattern("E6")
        moves = find_pattern_translations(pattern)

        assert moves[0].shift_cubes == 0
        assert moves[0].colors == tuple(pattern.spec.index_set)


class TestColumnCrystal:
    """기둥 결정과 ψ 테스트"""

    @pytest.mark.parametrize("tag", ["E6", "E7"])
    def test_psi_exists(self, tag):
        _, perfect, _ = load_perfect(tag)
        columns = build_column_crystal(load_pattern(tag))
        result = psi(perfect, columns)

        assert result.ok
        assert columns.crystal.size == perfect.size

    @pytest.mark.slow
    def test_psi_exists_e8(self):
        _, perfect, _ = load_perfect("E8")
        result = psi(perfect, build_column_crystal(load_pattern("E8")))

        assert result.ok

    def test_context_relabels_columns(self):
        ctx = load_type_context("E6")

        assert sorted(ctx.columns.crystal.labels) == sorted(ctx.perfect.labels)
        for b, c in ctx.psi.items():
            assert ctx.columns.crystal.weights[c] == ctx.perfect.weights[b]

    def test_ground_is_anchor(self):
        ctx = load_type_context("E6")

        assert ctx.columns.canonicalize(ctx.pattern.ground) == ColumnClass(ctx.columns.anchor, 0)
        assert ctx.columns.crystal.labels[ctx.columns.anchor] == "6|0"

    def test_realize_shift(self):
        ctx = load_type_context("E6")
        cls = ColumnClass(ctx.columns.anchor, 2)
        column = ctx.columns.realize(cls)

        assert ctx.columns.canonicalize(column) == cls

    def test_non_member_rejected(self):
        ctx = load_type_context("E6")

        with pytest.raises(ColumnError):
            ctx.columns.canonicalize(YoungColumn(0, frozenset({7})))

    def test_sigma_table_e6(self):
        ctx = load_type_context("E6")
        labels = ctx.columns.crystal.labels
        computed = sorted((labels[b], labels[c], p) for b, c, p in sigma_table(ctx.columns, ctx.wall_model().translation))

        assert computed == sorted(load_sigma_rows("E6"))
        assert compare_sigma(computed, load_sigma_rows("E6")).offset == 0

    def test_sigma_table_e7_uniform_offset(self):
        """E7 계산 σ 는 내장 표와 c 가 모두 같고 p 는 모든 행에서 1 만큼 크다"""
        ctx = load_type_context("E7")
        labels = ctx.columns.crystal.labels
        computed = [(labels[b], labels[c], p) for b, c, p in sigma_table(ctx.columns, ctx.wall_model().translation)]
        stored = load_sigma_rows("E7")
        comparison = compare_sigma(computed, stored)

        assert len(stored) == 56
        assert comparison.matches
        assert comparison.offset == 1
        assert ("0|7", "7|0", 1) in stored
        assert ("0|7", "7|0", 2) in computed
        assert sorted(p for _, _, p in stored) == sorted(p - 1 for _, _, p in computed)

    def test_compare_sigma_rejects_mixed_offsets(self):
        stored = [("a", "b", 0), ("b", "a", 1)]

        assert compare_sigma([("a", "b", 2), ("b", "a", 3)], stored).offset == 2
        mixed = compare_sigma([("a", "b", 2), ("b", "a", 2)], stored)
        assert not mixed.matches
        assert mixed.offset is None
        assert any("균일" in line for line in mixed.mismatches)

    def test_compare_sigma_rejects_wrong_image(self):
        comparison = compare_sigma([("a", "a", 0), ("b", "a", 1)], [("a", "b", 0), ("b", "a", 1)])

        assert not comparison.matches
        assert comparison.mismatches == ("σ(a) = a, 내장 표는 b",)

    @pytest.mark.slow
    def test_sigma_table_e8_is_shift(self):
        ctx = load_type_context("E8")
        rows = sigma_table(ctx.columns, ctx.wall_model().translation)

        assert all(b == c and p == 1 for b, c, p in rows)


def rotate_column(pattern, column):
    """수직축 둘레 180° 회전 (슬롯별 회전 짝으로 옮김)"""

    def partner(g):
        r, offset = pattern.slots[g % pattern.period].rotation_partner
        return (pattern.period_of(g) + offset) * pattern.period + r

    return YoungColumn.normalized(partner(column.base), [partner(g) for g in column.extras])


class TestColumnOperators:
    """추가/제거 가능 블록과 기둥 연산 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.ctx = load_type_context("E6")
        self.pattern = self.ctx.pattern

    def test_ground_has_single_addable_zero_block(self):
        addable, removable = addable_removable(self.pattern, self.pattern.ground, 0)

        assert len(addable) == 1
        assert removable == []
        assert self.pattern.color(addable[0]) == 0
        assert validate(self.pattern, self.pattern.ground.add(addable[0]))

    def test_top_block_removable(self):
        top = self.pattern.ground.top
        _, removable = addable_removable(self.pattern, self.pattern.ground, self.pattern.color(top))

        assert top in removable

    def test_block_counts_match_string_lengths(self):
        """E6 기둥의 추가/제거 가능 i-블록 수는 B₆ 의 φ_i / ε_i 와 같다"""
        for b, c in self.ctx.psi.items():
            column = self.ctx.columns.realize(ColumnClass(c, 0))
            for i in self.ctx.spec.index_set:
                addable, removable = addable_removable(self.pattern, column, i)

                assert len(addable) == self.ctx.perfect.phi(i, b)
                assert len(removable) == self.ctx.perfect.epsilon(i, b)
                assert all(self.pattern.color(g) == i for g in addable + removable)

    def test_step_round_trip(self):
        for k in range(self.ctx.columns.crystal.size):
            column = self.ctx.columns.realize(ColumnClass(k, 0))
            assert blocked_color(self.pattern, column) is None
            for i in self.ctx.spec.index_set:
                moved = column_step(self.pattern, "f", i, column)
                if moved is None:
                    assert not addable_removable(self.pattern, column, i)[0]
                    continue
                assert column_step(self.pattern, "e", i, moved) == column

    def test_floating_block_rejected(self):
        """지지 슬롯이 비어 있는 블록을 올린 기둥은 유효하지 않다"""
        ground = self.pattern.ground
        floating = ground.add(ground.top + self.pattern.period)

        assert validate(self.pattern, ground)
        assert not validate(self.pattern, floating)

    @pytest.mark.parametrize("tag", ["E6", "E8"])
    def test_rotation_is_equivalent(self, tag):
        pattern = load_pattern(tag)
        columns = [pattern.ground] + [state for _, state in pattern.exceptional]

        for column in columns:
            rotated = rotate_column(pattern, column)

            assert rotated != column
            assert validate(pattern, rotated)
            assert canonical_form(pattern, rotated)[0] == canonical_form(pattern, column)[0]

    def test_exceptional_states_not_gravity_closed(self):
        pattern = load_pattern("E8")
        plain = replace(pattern, exceptional=())

        assert [name for name, _ in pattern.exceptional] == ["L", "R"]
        for name, state in pattern.exceptional:
            assert validate(pattern, state)
            assert pattern.exceptional_name(state.translate(pattern.period)) == name
            assert not validate(plain, state)


@pytest.mark.slow
class TestE8ColumnRules:
    """E8 기둥 연산 규칙 (순서 규칙, 차단 규칙, 예외 기둥)"""

    def setup_method(self):
        """테스트 설정"""
        self.ctx = load_type_context("E8")
        self.pattern = self.ctx.pattern
        self.labels = self.ctx.perfect.labels

    def column_of(self, label):
        return self.ctx.columns.realize(ColumnClass(self.ctx.psi[self.labels.index(label)], 0))

    def test_f2_from_alpha2_plus_alpha4(self):
        """f₂ 는 x_{α₂+α₄} 의 기둥에 2-블록을 올려 x_{α₄} 의 기둥을 만든다"""
        source = self.labels.index("x(0,1,0,1,0,0,0,0)")
        target = self.labels.index("x(0,0,0,1,0,0,0,0)")
        column = self.column_of("x(0,1,0,1,0,0,0,0)")

        assert addable_removable(self.pattern, column, 2)[0]
        assert addable_removable(self.pattern, column, 4)[0]
        moved = column_step(self.pattern, "f", 2, column)
        assert moved is not None
        assert self.ctx.columns.canonicalize(moved).class_id == self.ctx.psi[target]
        assert self.ctx.perfect.f(2, source) == target

    def test_y_columns_blocked(self):
        """y_i 의 기둥은 색 i 로 차단되어 다른 색 연산이 모두 정의되지 않는다"""
        for i in self.ctx.spec.finite_nodes:
            column = self.column_of(f"y{i}")

            assert blocked_color(self.pattern, column) == i
            assert column_step(self.pattern, "f", i, column) is not None
            assert column_step(self.pattern, "e", i, column) is not None
            for j in self.ctx.spec.index_set:
                if j == i:
                    continue
                assert column_step(self.pattern, "f", j, column) is None
                assert column_step(self.pattern, "e", j, column) is None

    def test_two_candidate_ordering(self):
        """추가 후보가 둘 이상이면 높은 블록, 색 4 는 5-블록 위의 블록을 고른다"""
        cases = 0
        for k in range(self.ctx.columns.crystal.size):
            column = self.ctx.columns.realize(ColumnClass(k, 0))
            for i in self.ctx.spec.index_set:
                addable, _ = addable_removable(self.pattern, column, i)
                if len(addable) < 2:
                    continue
                moved = column_step(self.pattern, "f", i, column)
                if moved is None:
                    continue
                cases += 1
                on_five = [g for g in addable if any(self.pattern.color(s) == 5 for s in self.pattern.supports_of(g))]
                expected = max(on_five) if i == 4 and on_five else max(addable)
                assert moved == column.add(expected)
        assert cases > 0

    def test_exceptional_classes_in_c8(self):
        names = {self.pattern.exceptional_name(rep) for rep in self.ctx.columns.reps} - {None}

        assert names == {"L", "R"}
        for _, state in self.pattern.exceptional:
            self.ctx.columns.canonicalize(state)


class TestFaultInjection:
    """지지 관계를 지운 패턴에서 ψ 검사 실패 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.temp_dir = tempfile.mkdtemp()
        text = (PATTERN_DIR / "e6.txt").read_text(encoding="utf-8")
        broken = text.replace("cells 0,0;0,1 supports 0,1 ", "cells 0,0;0,1 supports 1 ")
        assert broken != text
        Path(self.temp_dir, "e6.txt").write_text(broken, encoding="utf-8")

    def teardown_method(self):
        """테스트 정리"""
        shutil.rmtree(self.temp_dir, ignore_errors=True)

    def test_pattern_problems_reported(self):
        pattern = load_pattern("E6").without_support(2, (0, 0))
        problems = pattern_problems(pattern)

        assert any("슬롯 2" in problem for problem in problems)

    def test_psi_check_fails_with_witness(self):
        result = run_check("columns.psi_isomorphism", "E6", lambda: check_psi("E6", self.temp_dir))

        assert result.status == CheckStatus.FAIL
        assert result.witness

    def test_psi_in_memory(self):
        """메모리 안에서 지지를 지운 패턴도 ψ 가 없다"""
        _, perfect, _ = load_perfect("E6")
        pattern = load_pattern("E6").without_support(2, (0, 0))
        try:
            result = psi(perfect, build_column_crystal(pattern))
        except (ColumnError, CrystalError):
            return
        assert not result.ok
