"""Truncated noncommutative series over Q on the alphabet {x0} + {x_g : g in Z/N}.

Words are tuples of integer letter codes: ``X0 = -1`` stands for x0 and a
code ``g >= 0`` stands for x_g.  All series carry the group order ``N`` and a
truncation degree ``D``; products silently drop words longer than ``D``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import factorial, gcd
from typing import Callable, Iterable, Iterator, Mapping

X0 = -1

Word = tuple


class ParameterError(ValueError):
    """Inputs violate an operation's precondition."""


class NonInvertibleError(ArithmeticError):
    """Inverse requested for an element without invertible constant part."""


class WindowError(ValueError):
    """A coefficient was requested outside the truncation window."""


def _frac(c) -> Fraction:
    return c if isinstance(c, Fraction) else Fraction(c)


@dataclass(frozen=True)
class GroupAut:
    """Automorphism g -> unit * g of Z/N."""

    unit: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ParameterError("group order must be positive")
        object.__setattr__(self, "unit", self.unit % self.N)
        if gcd(self.unit, self.N) != 1:
            raise ParameterError(f"{self.unit} is not a unit mod {self.N}")

    def __call__(self, g: int) -> int:
        return (self.unit * g) % self.N

    def inverse(self) -> GroupAut:
        return GroupAut(pow(self.unit, -1, self.N) if self.N > 1 else 0, self.N)

    def compose(self, other: GroupAut) -> GroupAut:
        """self o other."""
        return GroupAut(self.unit * other.unit, self.N)

    @classmethod
    def identity(cls, N: int) -> GroupAut:
        return cls(1, N)


@dataclass(frozen=True)
class Embedding:
    """Embedding of Z/N into the roots of unity, recorded by the residue sent to exp(2 pi i / N)."""

    generator: int
    N: int

    def __post_init__(self):
        if self.N < 1:
            raise ParameterError("group order must be positive")
        object.__setattr__(self, "generator", self.generator % self.N)
        if gcd(self.generator, self.N) != 1:
            raise ParameterError(f"{self.generator} does not generate Z/{self.N}")

    def precompose_inverse(self, phi: GroupAut) -> Embedding:
        """The embedding iota o phi^{-1}; its generator is phi(g_iota)."""
        return Embedding(phi(self.generator), self.N)

    def aut_from_reference(self) -> GroupAut:
        """The automorphism phi with self = iota_0 o phi^{-1}, iota_0 having generator 1."""
        return GroupAut(self.generator, self.N)


def _check_letters(word: Word, N: int) -> None:
    for a in word:
        if a != X0 and not 0 <= a < N:
            raise ParameterError(f"letter {a} outside alphabet for N={N}")


def word_key(word: Word) -> tuple:
    """Length-then-lex sort key."""
    return (len(word), word)


class _Sparse:
    """Finitely supported map key -> Fraction with a weight-based truncation."""

    __slots__ = ("N", "D", "_terms")

    @staticmethod
    def weight(key) -> int:
        raise NotImplementedError

    def __init__(self, N: int, D: int, terms: Mapping | Iterable = (), *, _trusted: bool = False):
        if N < 1 or D < 0:
            raise ParameterError("need N >= 1 and D >= 0")
        self.N = N
        self.D = D
        if _trusted:
            self._terms = terms
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        for k, c in items:
            k = tuple(k)
            self._validate_key(k)
            if self.weight(k) > D:
                continue
            c = _frac(c)
            if c:
                out[k] = out.get(k, 0) + c
        self._terms = {k: c for k, c in out.items() if c}

    def _validate_key(self, key) -> None:
        pass

    def _new(self, terms: dict):
        return type(self)(self.N, self.D, terms, _trusted=True)

    def _same(self, other) -> None:
        if type(other) is not type(self) or other.N != self.N or other.D != self.D:
            raise ParameterError("operands must share type, N and D")

    # -- container protocol -------------------------------------------------
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self) -> Iterator:
        return iter(self._terms.items())

    def sorted_items(self) -> list:
        return sorted(self._terms.items(), key=lambda kv: self._sort_key(kv[0]))

    @staticmethod
    def _sort_key(key):
        return word_key(key)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, _Sparse):
            return NotImplemented
        return type(self) is type(other) and (self.N, self.D) == (other.N, other.D) and self._terms == other._terms

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{k}" for k, c in self.sorted_items()[:8]) or "0"
        more = " + ..." if len(self._terms) > 8 else ""
        return f"{type(self).__name__}(N={self.N}, D={self.D}: {body}{more})"

    def coeff(self, key) -> Fraction:
        key = tuple(key)
        if self.weight(key) > self.D:
            raise WindowError(f"degree {self.weight(key)} exceeds truncation {self.D}")
        return self._terms.get(key, Fraction(0))

    @property
    def constant(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    # -- linear structure ---------------------------------------------------
    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.scalar(other)
        self._same(other)
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.scalar(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> _Sparse:
        c = _frac(c)
        if not c:
            return self._new({})
        return self._new({k: v * c for k, v in self._terms.items()})

    def scalar(self, c):
        return type(self)(self.N, self.D, {(): c})

    def homogeneous(self, d: int):
        """Weight-d component."""
        return self._new({k: c for k, c in self._terms.items() if self.weight(k) == d})

    def truncate(self, d: int):
        """Drop terms of weight > d (same D)."""
        return self._new({k: c for k, c in self._terms.items() if self.weight(k) <= d})

    def with_degree(self, D: int):
        """Same element viewed at truncation D (terms above D are dropped)."""
        return type(self)(self.N, D, {k: c for k, c in self._terms.items() if self.weight(k) <= D}, _trusted=True)

    def map_keys(self, f: Callable) -> _Sparse:
        out: dict = {}
        for k, c in self._terms.items():
            k2 = f(k)
            v = out.get(k2, 0) + c
            if v:
                out[k2] = v
            else:
                out.pop(k2, None)
        return self._new(out)

    def min_weight(self) -> int | None:
        return min((self.weight(k) for k in self._terms), default=None)

    # -- multiplicative structure (concatenation) ---------------------------
    def _buckets(self) -> dict[int, list]:
        b: dict[int, list] = {}
        for k, c in self._terms.items():
            b.setdefault(self.weight(k), []).append((k, c))
        return b

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same(other)
        D = self.D
        right = other._buckets()
        out: dict = {}
        for u, cu in self._terms.items():
            room = D - self.weight(u)
            for w, items in right.items():
                if w > room:
                    continue
                for v, cv in items:
                    k = u + v
                    out[k] = out.get(k, 0) + cu * cv
        return self._new({k: c for k, c in out.items() if c})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return inverse(self) ** (-n)
        out = self.scalar(1)
        for _ in range(n):
            out = out * self
        return out


class SeriesX(_Sparse):
    """Truncated series in k<<X>>; weight of a word is its length."""

    __slots__ = ()

    @staticmethod
    def weight(key) -> int:
        return len(key)

    def _validate_key(self, key) -> None:
        _check_letters(key, self.N)

    @classmethod
    def one(cls, N: int, D: int) -> SeriesX:
        return cls(N, D, {(): 1})

    @classmethod
    def zero(cls, N: int, D: int) -> SeriesX:
        return cls(N, D, {})

    @classmethod
    def letter(cls, N: int, D: int, a: int) -> SeriesX:
        return cls(N, D, {(a,): 1})

    @classmethod
    def word(cls, N: int, D: int, w: Iterable[int], c=1) -> SeriesX:
        return cls(N, D, {tuple(w): c})


class Tensor:
    """Element of A (x) A for a sparse series type A, truncated in total weight."""

    __slots__ = ("base", "N", "D", "_terms")

    def __init__(self, base: type, N: int, D: int, terms: Mapping | Iterable = (), *, _trusted: bool = False):
        self.base, self.N, self.D = base, N, D
        if _trusted:
            self._terms = terms
            return
        items = terms.items() if isinstance(terms, Mapping) else terms
        out: dict = {}
        w = base.weight
        for (a, b), c in items:
            a, b = tuple(a), tuple(b)
            if w(a) + w(b) > D:
                continue
            c = _frac(c)
            if c:
                out[(a, b)] = out.get((a, b), 0) + c
        self._terms = {k: c for k, c in out.items() if c}

    def _new(self, terms: dict) -> Tensor:
        return Tensor(self.base, self.N, self.D, terms, _trusted=True)

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return iter(self._terms.items())

    def sorted_items(self) -> list:
        key = self.base._sort_key
        return sorted(self._terms.items(), key=lambda kv: (key(kv[0][0]), key(kv[0][1])))

    def __len__(self) -> int:
        return len(self._terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Tensor):
            return NotImplemented
        return (self.base, self.N, self.D, self._terms) == (other.base, other.N, other.D, other._terms)

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{a}|{b}" for (a, b), c in self.sorted_items()[:6]) or "0"
        return f"Tensor[{self.base.__name__}](N={self.N}, D={self.D}: {body}{' + ...' if len(self) > 6 else ''})"

    def __add__(self, other: Tensor) -> Tensor:
        out = dict(self._terms)
        for k, c in other._terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return self._new(out)

    def __neg__(self) -> Tensor:
        return self._new({k: -c for k, c in self._terms.items()})

    def __sub__(self, other: Tensor) -> Tensor:
        return self + (-other)

    def scale(self, c) -> Tensor:
        c = _frac(c)
        return self._new({k: v * c for k, v in self._terms.items()} if c else {})

    def __mul__(self, other: Tensor) -> Tensor:
        """Componentwise product (a (x) b)(c (x) d) = ac (x) bd."""
        w = self.base.weight
        D = self.D
        out: dict = {}
        right = [(a, b, w(a) + w(b), c) for (a, b), c in other._terms.items()]
        for (a, b), c in self._terms.items():
            room = D - w(a) - w(b)
            for a2, b2, wt, c2 in right:
                if wt <= room:
                    k = (a + a2, b + b2)
                    out[k] = out.get(k, 0) + c * c2
        return self._new({k: c for k, c in out.items() if c})

    def homogeneous(self, d: int) -> Tensor:
        w = self.base.weight
        return self._new({k: c for k, c in self._terms.items() if w(k[0]) + w(k[1]) == d})

    def with_degree(self, D: int) -> Tensor:
        w = self.base.weight
        return Tensor(self.base, self.N, D, {k: c for k, c in self._terms.items() if w(k[0]) + w(k[1]) <= D}, _trusted=True)

    @classmethod
    def outer(cls, a: _Sparse, b: _Sparse) -> Tensor:
        """a (x) b, truncated at total weight a.D."""
        w = a.weight
        out: dict = {}
        D = a.D
        for u, cu in a._terms.items():
            wu = w(u)
            for v, cv in b._terms.items():
                if wu + w(v) <= D:
                    out[(u, v)] = cu * cv
        return cls(type(a), a.N, D, out, _trusted=True)

    def map_legs(self, f: Callable, g: Callable | None = None) -> Tensor:
        """Apply linear maps leg-wise; f and g send a key to a series of the same base type."""
        g = g or f
        w = self.base.weight
        D = self.D
        out: dict = {}
        cache_f: dict = {}
        cache_g: dict = {}
        for (a, b), c in self._terms.items():
            fa = cache_f.get(a)
            if fa is None:
                fa = cache_f[a] = f(a)
            gb = cache_g.get(b)
            if gb is None:
                gb = cache_g[b] = g(b)
            for u, cu in fa.items():
                room = D - w(u)
                for v, cv in gb.items():
                    if w(v) <= room:
                        k = (u, v)
                        out[k] = out.get(k, 0) + c * cu * cv
        return self._new({k: c for k, c in out.items() if c})


# ---------------------------------------------------------------------------
# elementary operations


def mul(a: SeriesX, b: SeriesX) -> SeriesX:
    return a * b


def inverse(a: _Sparse):
    c0 = a.constant
    if not c0:
        raise NonInvertibleError("constant term is zero")
    r = a.scale(1 / c0) - 1
    neg = -r
    out = a.scalar(1)
    power = a.scalar(1)
    for _ in range(a.D):
        power = power * neg
        if not power:
            break
        out = out + power
    return out.scale(1 / c0)


def exp_series(a: _Sparse):
    if a.constant:
        raise ParameterError("exp needs a series without constant term")
    out = a.scalar(1)
    power = a.scalar(1)
    for k in range(1, a.D + 1):
        power = power * a
        if not power:
            break
        out = out + power.scale(Fraction(1, factorial(k)))
    return out


def log_series(a: _Sparse):
    if a.constant != 1:
        raise ParameterError("log needs constant term 1")
    r = a - 1
    out = a.scalar(0)
    power = a.scalar(1)
    for k in range(1, a.D + 1):
        power = power * r
        if not power:
            break
        out = out + power.scale(Fraction((-1) ** (k + 1), k))
    return out


def shuffle_word_coproduct(word: Word) -> Iterator[tuple[Word, Word]]:
    """All (subword, complementary subword) splittings of a word."""
    n = len(word)
    idx = range(n)
    for r in range(n + 1):
        for left in combinations(idx, r):
            ls = set(left)
            yield tuple(word[i] for i in left), tuple(word[i] for i in idx if i not in ls)


def shuffle_coproduct(a: SeriesX) -> Tensor:
    out: dict = {}
    for w, c in a.items():
        for u, v in shuffle_word_coproduct(w):
            k = (u, v)
            out[k] = out.get(k, 0) + c
    return Tensor(SeriesX, a.N, a.D, {k: c for k, c in out.items() if c}, _trusted=True)


def is_grouplike(a: SeriesX) -> bool:
    if a.constant != 1:
        return False
    return shuffle_coproduct(a) == Tensor.outer(a, a)


def is_primitive(a: SeriesX) -> bool:
    one = SeriesX.one(a.N, a.D)
    return shuffle_coproduct(a) == Tensor.outer(a, one) + Tensor.outer(one, a)


def relabel(a: SeriesX, f: Callable[[int], int]) -> SeriesX:
    """Apply a letter substitution g -> f(g) on the x_g letters, fixing x0."""
    return a.map_keys(lambda w: tuple(l if l == X0 else f(l) for l in w))


def act_tg(g: int, a: SeriesX) -> SeriesX:
    N = a.N
    return relabel(a, lambda h: (g + h) % N)


def act_scale(lam, a: _Sparse):
    lam = _frac(lam)
    if not lam:
        raise ParameterError("scaling factor must be nonzero")
    w = a.weight
    return a._new({k: c * lam ** w(k) for k, c in a.items()})


def act_groupaut(phi: GroupAut, a: SeriesX) -> SeriesX:
    if phi.N != a.N:
        raise ParameterError("automorphism and series disagree on N")
    return relabel(a, phi)


def q_word(word: Word, N: int) -> Word:
    out = []
    prev = 0
    for a in word:
        if a == X0:
            out.append(a)
        else:
            out.append((a - prev) % N)
            prev = a
    return tuple(out)


def q_inverse_word(word: Word, N: int) -> Word:
    out = []
    acc = 0
    for a in word:
        if a == X0:
            out.append(a)
        else:
            acc = (acc + a) % N
            out.append(acc)
    return tuple(out)


def q_map(a: SeriesX) -> SeriesX:
    N = a.N
    return a.map_keys(lambda w: q_word(w, N))


def q_inverse(a: SeriesX) -> SeriesX:
    N = a.N
    return a.map_keys(lambda w: q_inverse_word(w, N))


def coeff(a: SeriesX, w: Word) -> Fraction:
    return a.coeff(w)


def all_words(N: int, length: int) -> Iterator[Word]:
    """Every word of the given length in length-then-lex order."""
    letters = [X0] + list(range(N))

    def rec(n):
        if n == 0:
            yield ()
            return
        for w in rec(n - 1):
            for a in letters:
                yield w + (a,)

    yield from sorted(rec(length))


def commutator(a: _Sparse, b: _Sparse):
    return a * b - b * a
