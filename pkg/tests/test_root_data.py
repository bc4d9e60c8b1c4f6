"""
카르탄 데이터 · 근계 모듈 단위 테스트
"""

import pytest

from src.core.root_data import (
    RootDataError,
    TypeTag,
    WeightVector,
    build_cartan,
    dominant_weights_of_level,
    enumerate_roots,
    highest_root,
    parse_type_tag,
    positive_roots,
)


class TestTypeTag:
    """타입 표기 해석 테스트"""

    def test_parse_case_insensitive(self):
        assert parse_type_tag("e6") == TypeTag.E6
        assert parse_type_tag("E8") == TypeTag.E8

    def test_parse_invalid(self):
        with pytest.raises(RootDataError):
            parse_type_tag("E9")


class TestCartanSpec:
    """카르탄 데이터 테스트"""

    @pytest.mark.parametrize(
        "tag, rank, height, tilde",
        [("E6", 6, 12, {2}), ("E7", 7, 18, {1}), ("E8", 8, 30, {8})],
    )
    def test_shape(self, tag, rank, height, tilde):
        """랭크, Σa_i, 노드 0 의 이웃"""
        spec = build_cartan(tag)

        assert spec.rank == rank
        assert spec.null_root_height == height
        assert set(spec.tilde_I) == tilde

    def test_cartan_matrix_symmetric(self):
        spec = build_cartan("E7")
        for i in spec.index_set:
            assert spec.cartan_matrix[i][i] == 2
            for j in spec.index_set:
                assert spec.cartan_matrix[i][j] == spec.cartan_matrix[j][i]

    def test_delta_pairs_to_zero(self):
        """δ = Σ a_i α_i 는 모든 h_i 와 짝지으면 0"""
        spec = build_cartan("E6")
        total = spec.zero_weight()
        for i in spec.index_set:
            total = total + spec.simple_root_weight(i).scale(spec.marks[i])

        assert total == spec.delta()

    def test_alpha_zero_carries_delta(self):
        spec = build_cartan("E8")

        assert spec.simple_root_weight(0).delta_coeff == 1
        assert spec.simple_root_weight(3).delta_coeff == 0

    def test_level_one_weights(self):
        assert [w.label() for w in build_cartan("E6").level_one_weights()] == ["Λ0", "Λ1", "Λ6"]
        assert [w.label() for w in build_cartan("E7").level_one_weights()] == ["Λ0", "Λ7"]
        assert [w.label() for w in build_cartan("E8").level_one_weights()] == ["Λ0"]

    def test_dominant_weights_of_level_one(self):
        spec = build_cartan("E6")
        assert set(dominant_weights_of_level(spec, 1)) == set(spec.level_one_weights())

    def test_diagram_automorphism(self):
        spec = build_cartan("E6")
        permutation = spec.diagram_automorphism(1)

        assert permutation[0] == 1
        assert sorted(permutation.values()) == list(spec.index_set)

    def test_diagram_automorphism_missing(self):
        with pytest.raises(RootDataError):
            build_cartan("E8").diagram_automorphism(1)


class TestRoots:
    """근계 열거 테스트"""

    @pytest.mark.parametrize("tag, count", [("E6", 72), ("E7", 126), ("E8", 240)])
    def test_root_count(self, tag, count):
        roots = enumerate_roots(build_cartan(tag))

        assert len(roots) == count
        assert len(positive_roots(roots)) == count // 2

    def test_highest_root_is_root(self):
        for tag in ("E6", "E7", "E8"):
            spec = build_cartan(tag)
            theta = highest_root(spec)

            assert theta in enumerate_roots(spec)
            assert theta.height == spec.null_root_height - 1
            assert -theta in enumerate_roots(spec)


class TestWeightVector:
    """가중치 표기 테스트"""

    def test_label(self):
        weight = WeightVector((1, 0, 0, 0, 0, 0, -1), -2)
        assert weight.label() == "Λ0-Λ6-2δ"

    def test_zero_label(self):
        assert WeightVector((0, 0, 0)).label() == "0"

    def test_arithmetic(self):
        a = WeightVector((1, 0), 1)
        b = WeightVector((0, 1), 0)

        assert (a - b) + b == a
        assert a.scale(2).delta_coeff == 2
        assert a.classical().delta_coeff == 0
