from fractions import Fraction

import sympy
from hypothesis import given
from hypothesis import strategies as st

from cyclodmr.linalg import IncrementalRank, InconsistentSystem, rank, rref, solve_affine

import pytest

small = st.fractions(min_value=-4, max_value=4, max_denominator=3)
matrices = st.integers(1, 5).flatmap(lambda c: st.lists(st.lists(small, min_size=c, max_size=c), min_size=1, max_size=5))


def test_rref_known():
    R, piv, ker = rref([[1, 2], [2, 4]])
    assert R == [[1, 2], [0, 0]]
    assert piv == [0]
    assert ker == [[-2, 1]]


@given(matrices)
def test_rref_matches_sympy(rows):
    R, piv, ker = rref(rows)
    S, spiv = sympy.Matrix(rows).rref()
    assert piv == list(spiv)
    assert [[sympy.Rational(x.numerator, x.denominator) for x in r] for r in R] == S.tolist()
    for v in ker:
        assert all(sum(a * b for a, b in zip(r, v)) == 0 for r in rows)
    assert len(ker) == len(rows[0]) - rank(rows)


@given(matrices)
def test_incremental_rank_matches(rows):
    ir = IncrementalRank()
    for r in rows:
        ir.add({j: c for j, c in enumerate(r)})
    assert len(ir) == rank(rows)


@given(matrices, st.data())
def test_solve_affine(rows, data):
    x0 = data.draw(st.lists(small, min_size=len(rows[0]), max_size=len(rows[0])))
    b = [sum(a * x for a, x in zip(r, x0)) for r in rows]
    x, free = solve_affine(rows, b, {0: 1})
    assert [sum(a * y for a, y in zip(r, x)) for r in rows] == b
    if free:
        assert x[free[0]] == 1


def test_inconsistent():
    with pytest.raises(InconsistentSystem):
        solve_affine([[1, 1], [2, 2]], [1, 3])
    assert solve_affine([[1, 1]], [Fraction(1, 2)]) == ([Fraction(1, 2), 0], [1])
