"""
경로 모델 단위 테스트

λ-경로 모델과 정규 순서 수열 모델을 영 벽 모델과 대조하는
독립 모델로서 검증합니다.
"""

import pytest

from src.core.context import load_perfect, load_type_context
from src.core.crystal import AffineElem
from src.core.paths import (
    BadWeightError,
    PathError,
    PathModel,
    embed_highest_weight_crystal,
    fock_hw,
    fock_path_valid,
    ground_state_sequence,
    load_ground_table,
    path_step,
    path_weight,
)
from src.models.schemas import CheckStatus, create_initial_state
from src.nodes.wall_checks import compare_fragments, fock_character, path_checks


class TestGroundStateSequence:
    """바닥 상태 열 테스트"""

    def test_table_loaded(self):
        table = load_ground_table()

        assert ("E6", "Λ0") in table
        assert table[("E6", "Λ0")][0] == (0, "6|0", 2, 0)

    @pytest.mark.parametrize("tag", ["E6", "E7"])
    def test_matches_table(self, tag):
        spec, perfect, energy = load_perfect(tag)
        for lam in spec.level_one_weights():
            seq = ground_state_sequence(perfect, energy, lam, check=True)
            expected = load_ground_table()[(tag, lam.label())]

            assert seq.rows(len(expected)) == expected

    def test_e6_rotation(self):
        spec, perfect, energy = load_perfect("E6")
        seq = ground_state_sequence(perfect, energy, spec.fundamental_weight(6))

        assert seq.period == 3
        assert seq.rows(3) == [(0, "1|6", 2, -1), (1, "0|1", 0, -2), (2, "6|0", 2, -1)]

    def test_entry(self):
        spec, perfect, energy = load_perfect("E6")
        seq = ground_state_sequence(perfect, energy, spec.fundamental_weight(0))

        assert seq.entry(4) == AffineElem(perfect.find_label("1|6"), -2)

    def test_bad_weight(self):
        spec, perfect, energy = load_perfect("E6")

        with pytest.raises(BadWeightError):
            ground_state_sequence(perfect, energy, spec.fundamental_weight(2), check=False)


class TestPathModel:
    """λ-경로 모델 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.ctx = load_type_context("E6")
        self.paths = self.ctx.path_model()

    def test_ground_path(self):
        assert path_weight(self.paths, ()) == self.ctx.spec.fundamental_weight(0)
        assert self.paths.is_highest_weight(())
        assert self.paths.label(()) == "ground"

    def test_f0_on_ground(self):
        moved = path_step(self.paths, (), "f", 0)

        assert moved is not None
        assert len(moved) == 1
        assert path_weight(self.paths, moved) == (
            self.ctx.spec.fundamental_weight(0) - self.ctx.spec.simple_root_weight(0)
        )
        assert path_step(self.paths, moved, "e", 0) == ()

    def test_depth_one(self):
        assert len(self.paths.enumerate(1)) == 2

    @pytest.mark.parametrize("text", ["Λ0", "Λ1", "Λ6"])
    def test_matches_walls(self, text):
        """축약 벽 조각과 경로 조각이 원소, 가중치, 화살표까지 일치"""
        lam = self.ctx.weight(text)
        walls = self.ctx.wall_model(lam)
        paths = self.ctx.path_model(lam)

        assert compare_fragments(walls, walls.enumerate(3), paths.enumerate(3)) is None

    def test_embedding(self):
        fock = self.ctx.path_model(fock=True)
        fragment = self.paths.enumerate(3)
        images = [embed_highest_weight_crystal(self.paths, path) for path in fragment.nodes]

        assert len(set(images)) == len(images)
        for image in images:
            assert all(value == 1 for value in fock.h_aff_pairs(image))
            assert fock_path_valid(fock, image)
        for i, x, y in fragment.arrows:
            assert fock.step(images[x], "f", i) == images[y]

    def test_embedding_requires_classical_model(self):
        with pytest.raises(PathError):
            embed_highest_weight_crystal(self.ctx.path_model(fock=True), ())


class TestFockPaths:
    """정규 순서 수열 모델 테스트"""

    def setup_method(self):
        """테스트 설정"""
        self.ctx = load_type_context("E6")
        self.fock = self.ctx.path_model(fock=True)

    def test_hw_family(self):
        family = self.fock.hw_family(4)

        assert len(family) == 1 + 1 + 2 + 3 + 5
        assert all(fock_hw(self.fock, path) for path, _ in family)

    def test_hw_weights(self):
        delta = self.ctx.spec.delta()
        for path, k in self.fock.hw_family(3):
            assert self.fock.weight(path) == self.ctx.spec.fundamental_weight(0) - delta.scale(k)

    def test_stabilization(self):
        fragment = self.fock.enumerate(3)
        assert all(self.fock.stabilizes(path) for path in fragment.nodes)
        assert all(self.fock.is_valid(path) for path in fragment.nodes)

    def test_matches_fock_walls(self):
        walls = self.ctx.wall_model(model="fock")
        assert compare_fragments(walls, walls.enumerate(3, cross_check=False), self.fock.enumerate(3)) is None

    def test_character_identity(self):
        """Fock(μ, ≤d) = Σ_k p(k)·#축약(μ+kδ, 깊이 ≤ d−k)"""
        walls = self.ctx.wall_model(model="fock")
        reduced = self.ctx.wall_model()
        found, predicted = fock_character(
            walls.enumerate(4, cross_check=False), reduced.enumerate(4), self.ctx.spec.delta(), 4
        )

        assert found == predicted


class TestPathChecks:
    """paths 그룹 검사 통합 테스트"""

    def test_e6_shallow(self):
        state = create_initial_state(["E6"], depth=2)
        results = path_checks(state, "E6")

        assert [result for result in results if result.status == CheckStatus.FAIL] == []
        assert {result.check_id for result in results} == {
            "paths.master_oracle",
            "paths.fock_oracle",
            "paths.embedding",
            "paths.stabilization",
        }
