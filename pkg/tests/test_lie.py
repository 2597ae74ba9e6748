from hypothesis import given
from hypothesis import strategies as st
from sympy import divisors, mobius

from cyclodmr.lie import lie_alphabet, lie_basis, lyndon_bracket, lyndon_words, standard_factorization
from cyclodmr.series import X0, SeriesX, commutator, is_primitive


def necklace(k, n):
    return sum(mobius(d) * k ** (n // d) for d in divisors(n)) // n


def test_lyndon_counts_match_necklace_formula():
    for k in (2, 3, 4):
        for n in range(1, 6):
            assert len(lyndon_words(list(range(k)), n)) == necklace(k, n)


def test_small_lyndon_words():
    assert lyndon_words([0, 1], 3) == [(0, 0, 1), (0, 1, 1)]
    assert lie_alphabet(2) == [X0, 0, 1]


def test_standard_factorization():
    assert standard_factorization((0, 0, 1)) == ((0,), (0, 1))
    assert standard_factorization((0, 1, 1)) == ((0, 1), (1,))


def test_bracket_of_pair():
    N, D = 1, 3
    assert lyndon_bracket((X0, 0), N, D) == commutator(SeriesX.letter(N, D, X0), SeriesX.letter(N, D, 0))


@given(st.integers(1, 3), st.integers(1, 4))
def test_brackets_are_primitive_with_lyndon_leading_word(N, d):
    for w in lie_basis(N, d):
        b = lyndon_bracket(w, N, d)
        assert is_primitive(b)
        assert b.coeff(w) == 1
        assert all(len(k) == d for k in b.terms)
