"""The Y-algebra, harmonic coproducts and the Gamma-corrected series Psi_star.

A Y-word is a tuple of pairs ``(n, g)`` standing for y_{n,g} = x0^{n-1} x_g;
its weight is the sum of the ``n``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import factorial

from .series import (
    X0,
    ParameterError,
    SeriesX,
    Tensor,
    _frac,
    _Sparse,
    q_map,
)


def y_weight(key) -> int:
    return sum(n for n, _ in key)


def _y_sort_key(key):
    return (y_weight(key), len(key), key)


class SeriesY(_Sparse):
    """Truncated series in the free algebra on the y_{n,g}."""

    __slots__ = ()
    weight = staticmethod(y_weight)
    _sort_key = staticmethod(_y_sort_key)

    def _validate_key(self, key) -> None:
        for p in key:
            if len(p) != 2:
                raise ParameterError(f"bad Y-letter {p!r}")
            n, g = p
            if n < 1 or not 0 <= g < self.N:
                raise ParameterError(f"bad Y-letter {p!r} for N={self.N}")

    def __init__(self, N, D, terms=(), *, _trusted=False):
        if not _trusted:
            items = terms.items() if hasattr(terms, "items") else terms
            terms = [(tuple(tuple(p) for p in k), c) for k, c in items]
        super().__init__(N, D, terms, _trusted=_trusted)

    @classmethod
    def one(cls, N: int, D: int):
        return cls(N, D, {(): 1})

    @classmethod
    def gen(cls, N: int, D: int, n: int, g: int):
        return cls(N, D, {((n, g % N),): 1})


class ModClassY(SeriesY):
    """A class in k<<X>>/k<<X>>x0, stored by its unique Y-word normal form."""

    __slots__ = ()


def as_class(a: SeriesY) -> ModClassY:
    return ModClassY(a.N, a.D, a._terms, _trusted=True)


def as_series_y(a: SeriesY) -> SeriesY:
    return SeriesY(a.N, a.D, a._terms, _trusted=True)


def yword_to_word(yw) -> tuple:
    out = []
    for n, g in yw:
        out.extend([X0] * (n - 1))
        out.append(g)
    return tuple(out)


def word_to_yword(w) -> tuple | None:
    """Parse an X-word as a Y-word; None when the word ends in x0."""
    out = []
    run = 0
    for a in w:
        if a == X0:
            run += 1
        else:
            out.append((run + 1, a))
            run = 0
    if run:
        return None
    return tuple(out)


def y_to_x(a: SeriesY) -> SeriesX:
    return SeriesX(a.N, a.D, {yword_to_word(k): c for k, c in a.items()}, _trusted=True)


def pi_Y(a: SeriesX) -> ModClassY:
    out = {}
    for w, c in a.items():
        yw = word_to_yword(w)
        if yw is not None:
            out[yw] = c
    return ModClassY(a.N, a.D, out, _trusted=True)


@lru_cache(maxsize=None)
def _gen_coproduct(n: int, g: int, N: int) -> tuple:
    """Terms of the harmonic coproduct of y_{n,g} as ((left, right), coeff)."""
    terms = [((((n, g),), ()), 1), (((), ((n, g),)), 1)]
    for k in range(1, n):
        for h in range(N):
            terms.append(((((k, h),), ((n - k, (g - h) % N),)), 1))
    return tuple(terms)


@lru_cache(maxsize=200000)
def _word_coproduct(yw: tuple, N: int, D: int) -> tuple:
    if not yw:
        return (((), ()), Fraction(1)),
    head = _word_coproduct(yw[:-1], N, D)
    n, g = yw[-1]
    out: dict = {}
    for (a, b), c in head:
        wab = y_weight(a) + y_weight(b)
        for (l, r), c2 in _gen_coproduct(n, g, N):
            if wab + y_weight(l) + y_weight(r) <= D:
                k = (a + l, b + r)
                out[k] = out.get(k, 0) + c * c2
    return tuple((k, c) for k, c in out.items() if c)


def harmonic_coproduct_alg(a: SeriesY) -> Tensor:
    """Algebra-morphism coproduct on the Y-algebra (stuffle type, twisted by G)."""
    out: dict = {}
    for yw, c in a.items():
        for k, c2 in _word_coproduct(yw, a.N, a.D):
            out[k] = out.get(k, 0) + c * c2
    return Tensor(SeriesY, a.N, a.D, {k: v for k, v in out.items() if v}, _trusted=True)


def lift_class(m: ModClassY) -> SeriesY:
    """The canonical Y-algebra representative of a class."""
    return as_series_y(m)


def harmonic_coproduct_mod(m: ModClassY) -> Tensor:
    """Coproduct on classes: lift, apply the algebra coproduct, project both legs."""
    t = harmonic_coproduct_alg(lift_class(m))
    N, D = m.N, m.D

    def proj(yw):
        return pi_Y(y_to_x(SeriesY(N, D, {yw: 1}, _trusted=True)))

    return Tensor(ModClassY, N, D, t.map_legs(proj)._terms, _trusted=True)


class UniSeries:
    """Truncated power series in one commuting variable."""

    __slots__ = ("D", "coeffs")

    def __init__(self, D: int, coeffs):
        self.D = D
        c = [Fraction(0)] * (D + 1)
        for i, v in (coeffs.items() if hasattr(coeffs, "items") else enumerate(coeffs)):
            if i <= D:
                c[i] = _frac(v)
        self.coeffs = tuple(c)

    def __eq__(self, other):
        return isinstance(other, UniSeries) and (self.D, self.coeffs) == (other.D, other.coeffs)

    __hash__ = None

    def __repr__(self):
        return f"UniSeries({list(self.coeffs)})"

    def __getitem__(self, i: int) -> Fraction:
        return self.coeffs[i] if i <= self.D else Fraction(0)

    def __mul__(self, other: UniSeries) -> UniSeries:
        D = min(self.D, other.D)
        c = [Fraction(0)] * (D + 1)
        for i, a in enumerate(self.coeffs[: D + 1]):
            if a:
                for j in range(D + 1 - i):
                    c[i + j] += a * other.coeffs[j]
        return UniSeries(D, c)

    def exp(self) -> UniSeries:
        if self.coeffs[0]:
            raise ParameterError("exp needs zero constant term")
        out = UniSeries(self.D, [1])
        power = UniSeries(self.D, [1])
        for k in range(1, self.D + 1):
            power = power * self
            out = UniSeries(self.D, [a + b / factorial(k) for a, b in zip(out.coeffs, power.coeffs)])
        return out

    def neg(self) -> UniSeries:
        return UniSeries(self.D, [-a for a in self.coeffs])

    def inverse(self) -> UniSeries:
        c0 = self.coeffs[0]
        if not c0:
            raise ParameterError("non-invertible univariate series")
        inv = [Fraction(0)] * (self.D + 1)
        inv[0] = 1 / c0
        for n in range(1, self.D + 1):
            s = sum(self.coeffs[k] * inv[n - k] for k in range(1, n + 1))
            inv[n] = -s / c0
        return UniSeries(self.D, inv)

    def substitute(self, x: _Sparse) -> _Sparse:
        """Evaluate at an element x of a (not necessarily commutative) algebra."""
        out = x.scalar(self.coeffs[0])
        power = x.scalar(1)
        for k in range(1, self.D + 1):
            power = power * x
            if self.coeffs[k]:
                out = out + power.scale(self.coeffs[k])
        return out


def gamma_exponent(psi: SeriesX) -> UniSeries:
    """sum_{n>=2} (-1)^{n-1}/n (psi | x0^{n-1} x_1) x^n, with x_1 the letter of residue 0."""
    c = {}
    for n in range(2, psi.D + 1):
        c[n] = Fraction((-1) ** (n - 1), n) * psi.coeff((X0,) * (n - 1) + (0,))
    return UniSeries(psi.D, c)


def gamma_series(psi: SeriesX) -> UniSeries:
    return gamma_exponent(psi).exp()


def gamma_inverse_series(psi: SeriesX) -> UniSeries:
    return gamma_exponent(psi).neg().exp()


def gamma_correction(psi: SeriesX) -> UniSeries:
    """The regularizing factor placed in front of psi when forming Psi_star.

    This is Gamma_psi itself, not its inverse: with the inverse, the harmonic
    coproduct condition forces (psi | x0 x1) = 0 in degree 2, so no point with
    lambda != 0 could exist.
    """
    return gamma_series(psi)


def psi_star(psi: SeriesX) -> ModClassY:
    """pi_Y o q (Gamma_psi(x_1) psi)."""
    corr = gamma_correction(psi).substitute(SeriesX.letter(psi.N, psi.D, 0))
    return pi_Y(q_map(corr * psi))


def is_grouplike_mod(m: ModClassY) -> bool:
    return harmonic_coproduct_mod(m) == Tensor.outer(m, m)
