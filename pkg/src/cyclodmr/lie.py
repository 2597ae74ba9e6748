"""Lyndon words and the bracketed Lie basis of the free Lie algebra on X."""

from __future__ import annotations

from functools import lru_cache

from .series import X0, SeriesX


def lyndon_words(alphabet: list[int], n: int) -> list[tuple]:
    """Lyndon words of length exactly n over the ordered alphabet (Duval's generator)."""
    k = len(alphabet)
    out = []
    w = [-1]
    while w:
        w[-1] += 1
        m = len(w)
        if m == n:
            out.append(tuple(alphabet[i] for i in w))
        while len(w) < n:
            w.append(w[len(w) - m])
        while w and w[-1] == k - 1:
            w.pop()
    return out


def standard_factorization(w: tuple) -> tuple[tuple, tuple]:
    """w = uv with v the longest proper Lyndon suffix."""
    for i in range(1, len(w)):
        if _is_lyndon(w[i:]):
            return w[:i], w[i:]
    raise ValueError("single letters have no standard factorization")


def _is_lyndon(w: tuple) -> bool:
    return all(w < w[i:] + w[:i] for i in range(1, len(w))) if len(w) > 1 else len(w) == 1


def lie_alphabet(N: int) -> list[int]:
    return [X0] + list(range(N))


@lru_cache(maxsize=None)
def _bracket_terms(w: tuple) -> tuple:
    if len(w) == 1:
        return ((w, 1),)
    u, v = standard_factorization(w)
    pu, pv = dict(_bracket_terms(u)), dict(_bracket_terms(v))
    out: dict = {}
    for a, ca in pu.items():
        for b, cb in pv.items():
            out[a + b] = out.get(a + b, 0) + ca * cb
            out[b + a] = out.get(b + a, 0) - ca * cb
    return tuple((k, c) for k, c in out.items() if c)


def lyndon_bracket(w: tuple, N: int, D: int) -> SeriesX:
    """The Lie polynomial attached to a Lyndon word by standard bracketing."""
    return SeriesX(N, D, dict(_bracket_terms(tuple(w))))


def lie_basis(N: int, d: int) -> list[tuple]:
    return lyndon_words(lie_alphabet(N), d)
