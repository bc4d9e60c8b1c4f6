"""
레벨 1 완전 결정 구성 단위 테스트
"""

import pytest

from src.core.context import load_perfect
from src.core.perfect import (
    EMPTY_LABEL,
    LabeledElement,
    NodeNotMinusculeError,
    StringsTooLongError,
    b_lower,
    b_upper,
    build_minuscule,
    check_perfect,
    ground_state_chain,
    labels,
    root_label,
)
from src.core.root_data import build_cartan, highest_root
from src.models.schemas import CheckStatus
from src.nodes.crystal_checks import EXPECTED_B_LAMBDA, EXPECTED_SIZES, independent_size, weyl_orbit_size


class TestConstruction:
    """B 구성 테스트"""

    @pytest.mark.parametrize("tag", ["E6", "E7", "E8"])
    def test_size(self, tag):
        spec, perfect, _ = load_perfect(tag)

        assert perfect.size == EXPECTED_SIZES[tag]
        assert independent_size(spec) == perfect.size

    def test_weyl_orbit_sizes(self):
        assert weyl_orbit_size(build_cartan("E6"), 1) == 27
        assert weyl_orbit_size(build_cartan("E7"), 7) == 56

    def test_minuscule_requires_nonzero_node(self):
        with pytest.raises(NodeNotMinusculeError):
            build_minuscule(build_cartan("E6"), node=0)

    def test_minuscule_rejects_non_minuscule(self):
        with pytest.raises(NodeNotMinusculeError):
            build_minuscule(build_cartan("E7"), node=3)

    def test_minuscule_strings_short(self):
        """극소 결정은 모든 문자열 길이가 1 이하"""
        _, perfect, _ = load_perfect("E6")
        names = labels(perfect)

        assert [names[x].key for x in range(perfect.size)] == perfect.labels

    def test_e8_labels(self):
        spec, perfect, _ = load_perfect("E8")
        theta = highest_root(spec)

        assert perfect.labels[-1] == EMPTY_LABEL
        assert perfect.find_label(root_label(theta)) < perfect.find_label(root_label(-theta))
        assert perfect.find_label("y8") >= 240

    def test_e8_has_long_zero_string(self):
        """x_{-θ} → ∅ → x_θ 의 0-문자열 때문에 in/out 라벨을 만들 수 없다"""
        _, perfect, _ = load_perfect("E8")

        with pytest.raises(StringsTooLongError):
            labels(perfect)


class TestLabeledElement:
    """in/out 색 라벨 테스트"""

    def test_parse_roundtrip(self):
        element = LabeledElement.parse("16|5")

        assert element.in_set == (1, 6)
        assert element.out_set == (5,)
        assert element.key == "16|5"

    def test_pretty(self):
        assert LabeledElement((6,), (0,)).pretty == "6̄0"


class TestPerfectness:
    """완전성 검사 테스트"""

    @pytest.mark.parametrize("tag", ["E6", "E7"])
    def test_check_perfect_passes(self, tag):
        _, perfect, _ = load_perfect(tag)
        report = check_perfect(perfect)

        assert report.passed
        assert report.caveat
        assert {check.status for check in report.checks} == {CheckStatus.PASS}

    @pytest.mark.slow
    def test_check_perfect_e8(self):
        _, perfect, _ = load_perfect("E8")
        assert check_perfect(perfect).passed

    @pytest.mark.parametrize("tag", ["E6", "E7"])
    def test_b_lambda_identities(self, tag):
        _, perfect, _ = load_perfect(tag)
        report = check_perfect(perfect)

        for weight, (upper, lower) in EXPECTED_B_LAMBDA[tag].items():
            assert report.b_upper[weight] == upper
            assert report.b_lower[weight] == lower

    def test_e8_b_lambda_is_empty_element(self):
        spec, perfect, _ = load_perfect("E8")
        lam = spec.fundamental_weight(0)
        empty = perfect.find_label(EMPTY_LABEL)

        assert b_upper(perfect, lam) == [empty]
        assert b_lower(perfect, lam) == [empty]


class TestGroundStateChain:
    """λ_{r+1} = ε(b_{λ_r}) 반복 테스트"""

    def test_e6_period_three(self):
        spec, perfect, _ = load_perfect("E6")
        chain = ground_state_chain(perfect, spec.fundamental_weight(0), 4)

        assert [perfect.labels[x] for _, x in chain] == ["6|0", "1|6", "0|1", "6|0"]
        assert [w.label() for w, _ in chain] == ["Λ0", "Λ6", "Λ1", "Λ0"]

    def test_e7_period_two(self):
        spec, perfect, _ = load_perfect("E7")
        chain = ground_state_chain(perfect, spec.fundamental_weight(0), 3)

        assert [perfect.labels[x] for _, x in chain] == ["7|0", "0|7", "7|0"]

    def test_e8_constant(self):
        spec, perfect, _ = load_perfect("E8")
        chain = ground_state_chain(perfect, spec.fundamental_weight(0), 3)

        assert {perfect.labels[x] for _, x in chain} == {EMPTY_LABEL}
