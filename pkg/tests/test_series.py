from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclodmr.series import (
    X0,
    Embedding,
    GroupAut,
    NonInvertibleError,
    ParameterError,
    SeriesX,
    Tensor,
    act_groupaut,
    act_scale,
    act_tg,
    exp_series,
    inverse,
    is_grouplike,
    is_primitive,
    log_series,
    q_inverse,
    q_map,
    shuffle_coproduct,
)

from .conftest import grouplikes, series_x


def test_truncation_drops_long_words():
    a = SeriesX.letter(1, 2, X0)
    assert a * a * a == SeriesX(1, 2, {})
    assert (a * a).coeff((X0, X0)) == 1


def test_letters_are_validated():
    with pytest.raises(ParameterError):
        SeriesX(2, 3, {(5,): 1})


def test_inverse_of_non_unit():
    with pytest.raises(NonInvertibleError):
        inverse(SeriesX.letter(1, 3, 0))


@given(series_x())
def test_inverse_roundtrip(a):
    u = a - a.constant + 1
    one = SeriesX.one(u.N, u.D)
    assert u * inverse(u) == one
    assert inverse(u) * u == one


@given(series_x())
def test_exp_log_roundtrip(a):
    L = a - a.constant
    assert log_series(exp_series(L)) == L


def test_exp_x0_coefficients():
    e = exp_series(SeriesX.letter(1, 4, X0))
    assert [e.coeff((X0,) * k) for k in range(5)] == [1, 1, Fraction(1, 2), Fraction(1, 6), Fraction(1, 24)]


def test_shuffle_coproduct_of_word():
    t = shuffle_coproduct(SeriesX.word(1, 2, (X0, 0)))
    assert t.terms == {
        ((X0, 0), ()): 1,
        ((X0,), (0,)): 1,
        ((0,), (X0,)): 1,
        ((), (X0, 0)): 1,
    }


def test_letters_primitive_and_exp_grouplike():
    for a in (X0, 0, 1):
        x = SeriesX.letter(2, 4, a)
        assert is_primitive(x)
        assert is_grouplike(exp_series(x))
    assert not is_grouplike(SeriesX.one(2, 3) + SeriesX.letter(2, 3, 0) * SeriesX.letter(2, 3, 1))


@given(grouplikes(), grouplikes())
def test_grouplikes_form_a_group(a, b):
    assert is_grouplike(a * b)
    assert is_grouplike(inverse(a))


@given(series_x(), series_x())
def test_shuffle_coproduct_is_multiplicative(a, b):
    assert shuffle_coproduct(a * b) == shuffle_coproduct(a) * shuffle_coproduct(b)


@given(series_x(N=3), st.integers(0, 2))
def test_q_roundtrip(a, g):
    assert q_inverse(q_map(a)) == a
    assert q_map(q_inverse(a)) == a


def test_q_on_a_word():
    # x0 x_2 x0 x_1 at N = 3: letters record successive differences
    a = SeriesX.word(3, 4, (X0, 2, X0, 1))
    assert q_map(a) == SeriesX.word(3, 4, (X0, 2, X0, 2))


@given(series_x(N=3), st.sampled_from([1, 2]))
def test_group_actions(a, u):
    phi = GroupAut(u, 3)
    assert act_groupaut(phi.inverse(), act_groupaut(phi, a)) == a
    assert act_tg(1, act_tg(2, a)) == a


@given(series_x(), st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool))
def test_scaling_is_multiplicative(a, lam):
    b = SeriesX.letter(a.N, a.D, X0) + 1
    assert act_scale(lam, a * b) == act_scale(lam, a) * act_scale(lam, b)
    assert act_scale(1 / lam, act_scale(lam, a)) == a


def test_scaling_zero_rejected():
    with pytest.raises(ParameterError):
        act_scale(0, SeriesX.one(1, 2))


def test_embedding_and_group_aut():
    with pytest.raises(ParameterError):
        Embedding(2, 4)
    with pytest.raises(ParameterError):
        GroupAut(3, 6)
    iota = Embedding(1, 5)
    phi = GroupAut(2, 5)
    assert iota.precompose_inverse(phi).generator == 2
    assert Embedding(3, 5).aut_from_reference() == GroupAut(3, 5)
    assert phi.compose(phi.inverse()) == GroupAut.identity(5)


def test_tensor_outer_and_product():
    a = SeriesX.letter(1, 4, X0)
    b = SeriesX.letter(1, 4, 0)
    t = Tensor.outer(a, b)
    assert t.terms == {((X0,), (0,)): 1}
    assert (t * t).terms == {((X0, X0), (0, 0)): 1}
    # truncation is by total weight of both legs
    assert not (t * t * t)
