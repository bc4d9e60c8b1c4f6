"""
Hypothesis 기반 성질 테스트

결정 공리, 텐서곱 규칙, 아핀 에너지, 벽 연산자의 불변식을 무작위 표본으로 확인합니다.
"""

from functools import lru_cache

from hypothesis import given, settings, strategies as st

from src.core.context import load_perfect, load_type_context
from src.core.crystal import NONE, AffineElem, pair_step, partitions, split_tensor, tensor
from src.core.energy import h_aff
from src.core.root_data import WeightVector

PROPERTY_SETTINGS = settings(max_examples=60, deadline=None)

E6_SIZE = 27
Colors = st.integers(min_value=0, max_value=6)
Elements = st.integers(min_value=0, max_value=E6_SIZE - 1)


@lru_cache(maxsize=None)
def e6_square():
    _, perfect, _ = load_perfect("E6")
    return tensor(perfect, perfect)


@lru_cache(maxsize=None)
def e6_fragment():
    walls = load_type_context("E6").wall_model()
    return walls, walls.enumerate(3)


@PROPERTY_SETTINGS
@given(Elements, Colors)
def test_e_inverts_f(x, i):
    """
    ``f_i`` 가 정의되면 ``e_i`` 가 되돌리고 가중치는 α_i 만큼 내려간다.
    """
    spec, perfect, _ = load_perfect("E6")
    y = perfect.f(i, x)
    if y == NONE:
        assert perfect.phi(i, x) == 0
        return
    assert perfect.e(i, y) == x
    assert perfect.weights[y] == perfect.weights[x] - spec.simple_root_weight(i)


@PROPERTY_SETTINGS
@given(Elements, Colors)
def test_string_lengths_match_weight(x, i):
    """
    φ_i − ε_i = ⟨h_i, wt⟩
    """
    _, perfect, _ = load_perfect("E6")
    assert perfect.phi(i, x) - perfect.epsilon(i, x) == perfect.weights[x].lambda_coeffs[i]


@PROPERTY_SETTINGS
@given(Elements, Elements, Colors, st.sampled_from(["e", "f"]))
def test_pair_step_agrees_with_tensor(a, b, i, direction):
    """
    텐서곱 결정을 만들지 않는 ``pair_step`` 과 ``tensor`` 의 화살표가 같다.
    """
    _, perfect, _ = load_perfect("E6")
    square = e6_square()
    moved = pair_step(perfect, perfect, direction, i, a, b)
    target = square.step(direction, i, a * perfect.size + b)

    if moved is None:
        assert target == NONE
    else:
        assert split_tensor(perfect, target) == moved[:2]


@PROPERTY_SETTINGS
@given(Elements, Elements, st.integers(-5, 5), st.integers(-5, 5), st.integers(-5, 5))
def test_h_aff_shift_invariant(a, b, m, n, k):
    """
    두 z 지수를 함께 옮겨도 H_aff 는 변하지 않는다.
    """
    _, _, table = load_perfect("E6")
    first = h_aff(table, AffineElem(a, m), AffineElem(b, n))

    assert h_aff(table, AffineElem(a, m + k), AffineElem(b, n + k)) == first
    assert first == table(a, b) + m - n


@given(st.integers(min_value=0, max_value=12))
def test_partitions(k):
    """
    ``partitions(k)`` 는 합이 k 인 서로 다른 비증가 튜플이다.
    """
    found = partitions(k)

    assert len(set(found)) == len(found)
    for part in found:
        assert sum(part) == k
        assert list(part) == sorted(part, reverse=True)
        assert all(p > 0 for p in part)


Weights = st.builds(
    WeightVector,
    st.tuples(*[st.integers(-4, 4) for _ in range(7)]),
    st.integers(-4, 4),
)


@given(Weights, Weights, st.integers(-3, 3))
def test_weight_arithmetic(u, v, k):
    assert (u + v) - v == u
    assert (u + v).scale(k) == u.scale(k) + v.scale(k)
    assert -u == u.scale(-1)
    assert (u + v).classical() == u.classical() + v.classical()


@PROPERTY_SETTINGS
@given(st.data())
def test_wall_operators_invert(data):
    """
    깊이 3 조각의 벽에서 ``f_i`` 다음 ``e_i`` 는 항등이다.
    """
    walls, fragment = e6_fragment()
    wall = fragment.nodes[data.draw(st.integers(0, len(fragment.nodes) - 1))]
    i = data.draw(Colors)

    moved = walls.step(wall, "f", i)
    if moved is not None:
        assert walls.step(moved, "e", i) == wall
        assert walls.weight(moved) == walls.weight(wall) - walls.spec.simple_root_weight(i)
    back = walls.step(wall, "e", i)
    if back is not None:
        assert walls.step(back, "f", i) == wall
