import random
from fractions import Fraction
from functools import lru_cache

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclodmr.dmr import TorsorPoint, dmr_check, dmr_solve, in_dmr0, torsor_act, _parse_policy
from cyclodmr.lie import lyndon_bracket
from cyclodmr.magnus import SemidirectElem, circledast
from cyclodmr.series import X0, Embedding, GroupAut, ParameterError, SeriesX, act_groupaut, act_scale, exp_series


@lru_cache(maxsize=None)
def solved(N, lam, D, policy=None, giota=1):
    return dmr_solve(N, Embedding(giota, N), Fraction(lam), D, policy)


def test_trivial_solution_at_lambda_zero():
    # degree 1 is killed by (i); the only degree-2 Lie element [x0, x1] is killed by (iii)
    assert solved(1, 0, 2) == SeriesX.one(1, 2)
    assert solved(1, 0, 2, "probe 0") == SeriesX.one(1, 2)


def test_degree_two_solution_at_lambda_one():
    expected = exp_series(lyndon_bracket((X0, 0), 1, 2).scale(Fraction(-1, 24)))
    assert solved(1, 1, 2) == expected


@pytest.mark.parametrize("N", [1, 2])
def test_x0x1_anchor(N):
    for lam in (1, 2, Fraction(-1, 2)):
        psi = solved(N, lam, 4)
        assert psi.coeff((X0, 0)) == -Fraction(lam) ** 2 / 24


def test_difference_anchor_at_N3():
    for g in (1, 2):
        rep = dmr_check(Embedding(g, 3), 1, solved(3, 1, 3, giota=g))
        assert rep.passed
        assert rep.values["iv"] == Fraction(1, 2)
    psi = solved(3, 1, 3)
    assert psi.coeff((1,)) - psi.coeff((2,)) == Fraction(1, 2)


def test_report_marks_high_conditions_not_applicable():
    rep = dmr_check(Embedding(1, 1), 1, SeriesX.one(1, 1))
    assert rep.conditions["iii"] is None
    assert rep.conditions["i"] is True
    assert rep.passed
    assert rep.to_json()["lambda"] == "1"


def test_non_grouplike_rejected():
    with pytest.raises(ParameterError):
        dmr_check(Embedding(1, 1), 0, SeriesX.one(1, 2) + SeriesX.letter(1, 2, 0))


def test_policy_parsing():
    assert _parse_policy(None) is None
    assert _parse_policy("zero") is None
    assert _parse_policy("probe 2") == 2
    assert _parse_policy("probe:3") == 3
    assert _parse_policy(1) == 1
    with pytest.raises(ParameterError):
        _parse_policy("random")


def test_probe_changes_the_solution():
    a, b = solved(1, 1, 4), solved(1, 1, 4, "probe 0")
    assert a != b
    assert dmr_check(Embedding(1, 1), 1, b).passed


def test_perturbation_breaks_membership():
    psi = solved(2, 1, 3)
    bad = psi * exp_series(lyndon_bracket((X0, 0, 1), 2, 3))
    assert not dmr_check(Embedding(1, 2), 1, bad).passed


def _pool(N, D):
    return [solved(N, lam, D, pol) for lam in (1, 2) for pol in (None, "probe 0")]


@given(st.integers(1, 3), st.fractions(min_value=-3, max_value=3, max_denominator=3).filter(bool), st.integers(0, 3))
def test_scaling_transfers_membership(N, mu, k):
    D = 3
    psi = _pool(N, D)[k]
    lam = [1, 1, 2, 2][k]
    assert dmr_check(Embedding(1, N), mu * lam, act_scale(mu, psi)).passed


@given(st.integers(0, 3), st.sampled_from([1, 2]))
def test_group_automorphisms_transfer_membership(k, u):
    N, D = 3, 3
    psi = _pool(N, D)[k]
    lam = [1, 1, 2, 2][k]
    phi = GroupAut(u, N)
    iota = Embedding(1, N).precompose_inverse(phi)
    assert dmr_check(iota, lam, act_groupaut(phi, psi)).passed


@given(st.integers(1, 3), st.integers(0, 3), st.integers(0, 3))
def test_dmr0_closed_under_twisted_product(N, i, j):
    D = 3
    zero = [solved(N, 0, D, pol) for pol in (None, "probe 0", "probe 1", "probe 2")]
    assert in_dmr0(circledast(zero[i], zero[j]))


def test_torsor_act_rejects_non_dmr0():
    N, D = 1, 3
    p = TorsorPoint(Embedding(1, N), 1, solved(N, 1, D))
    e = SemidirectElem(GroupAut.identity(N), 1, solved(N, 1, D))
    with pytest.raises(ParameterError):
        torsor_act(e, p)
    with pytest.raises(ParameterError):
        TorsorPoint(Embedding(1, N), 0, solved(N, 0, D))


def test_torsor_act_identity():
    N, D = 2, 3
    p = TorsorPoint(Embedding(1, N), 2, solved(N, 2, D))
    assert torsor_act(SemidirectElem.identity(N, D), p) == p


def test_torsor_act_on_random_cases():
    rng = random.Random(7)
    N, D = 3, 3
    for _ in range(5):
        e = SemidirectElem(GroupAut(rng.choice([1, 2]), N), Fraction(rng.choice([-2, 1, 3])), solved(N, 0, D, rng.choice([None, "probe 0"])))
        p = TorsorPoint(Embedding(1, N), 1, solved(N, 1, D, rng.choice([None, "probe 1"])))
        q = torsor_act(e, p)
        assert q.check().passed
