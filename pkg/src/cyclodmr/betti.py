"""The Betti side: group algebra of F2, the ideal I, the kernel subgroup and the comparison maps.

Letters of F2 are encoded as 1 = X0, -1 = X0^{-1}, 2 = X1, -2 = X1^{-1}.
Kernel letters of F_{N+1} = ker(F2 -> mu_N) are ("T0", e) for X0^N and
(n, e) for X0^n X1 X0^{-n}, with e = +-1.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import reduce as _fold

from .crossed import (
    CrossedElem,
    act_groupaut_V,
    gen_e0,
    gen_e1,
    gen_g,
    reduce_to_M,
    w_decompose,
)
from .harmonic import ModClassY, SeriesY
from .linalg import IncrementalRank
from .series import Embedding, ParameterError, _frac, exp_series

A0, A1 = 1, 2
T0 = "T0"
TOKENS = {1: "A", -1: "a", 2: "B", -2: "b"}
FROM_TOKEN = {v: k for k, v in TOKENS.items()}


class NotInWB(ValueError):
    pass


def free_reduce(word) -> tuple:
    out: list = []
    for a in word:
        if out and out[-1] == -a:
            out.pop()
        else:
            out.append(a)
    return tuple(out)


def word_inverse(word) -> tuple:
    return tuple(-a for a in reversed(word))


def word_to_str(word) -> str:
    return "".join(TOKENS[a] for a in word)


def word_from_str(s: str) -> tuple:
    try:
        return free_reduce(FROM_TOKEN[c] for c in s)
    except KeyError as exc:
        raise ParameterError(f"bad group word {s!r}") from exc


class GAElem:
    """Finitely supported element of the group algebra Q F2."""

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        out: dict = {}
        for w, c in (terms or {}).items():
            w = free_reduce(w)
            c = _frac(c)
            if c:
                out[w] = out.get(w, 0) + c
        self._terms = {w: c for w, c in out.items() if c}

    @classmethod
    def word(cls, w, c=1) -> GAElem:
        return cls({tuple(w): c})

    @classmethod
    def one(cls) -> GAElem:
        return cls({(): 1})

    @classmethod
    def letter(cls, a: int) -> GAElem:
        return cls({(a,): 1})

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = GAElem({(): other})
        return isinstance(other, GAElem) and self._terms == other._terms

    __hash__ = None

    def __bool__(self):
        return bool(self._terms)

    def __repr__(self):
        if not self._terms:
            return "GAElem(0)"
        parts = [f"{c}*{word_to_str(w) or '1'}" for w, c in sorted(self._terms.items(), key=lambda kv: (len(kv[0]), kv[0]))]
        return "GAElem(" + " + ".join(parts) + ")"

    def _coerce(self, other) -> GAElem:
        if isinstance(other, GAElem):
            return other
        return GAElem({(): other})

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self._terms)
        for w, c in other._terms.items():
            out[w] = out.get(w, 0) + c
        return GAElem(out)

    __radd__ = __add__

    def __neg__(self):
        return GAElem({w: -c for w, c in self._terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def scale(self, c) -> GAElem:
        return GAElem({w: c * v for w, v in self._terms.items()})

    def __mul__(self, other):
        if not isinstance(other, GAElem):
            return self.scale(other)
        out: dict = {}
        for u, cu in self._terms.items():
            for v, cv in other._terms.items():
                w = free_reduce(u + v)
                out[w] = out.get(w, 0) + cu * cv
        return GAElem(out)

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, n: int):
        return _fold(lambda a, b: a * b, [self] * n, GAElem.one())


def X0pow(n: int) -> tuple:
    return (A0,) * n if n >= 0 else (-A0,) * (-n)


def x0_exponent(word) -> int:
    return sum(1 if a == A0 else -1 if a == -A0 else 0 for a in word)


def project_mu(a: GAElem, N: int) -> dict:
    """Image in Q mu_N, as residue -> coefficient (X0 -> generator, X1 -> 1)."""
    out: dict = {}
    for w, c in a.items():
        r = x0_exponent(w) % N
        out[r] = out.get(r, 0) + c
    return {r: c for r, c in out.items() if c}


def ns_generators(N: int) -> list[tuple]:
    """Free generators X0^N, X0^n X1 X0^{-n} (0 <= n < N) of the kernel subgroup."""
    if N < 1:
        raise ParameterError("N must be positive")
    return [X0pow(N)] + [free_reduce(X0pow(n) + (A1,) + X0pow(-n)) for n in range(N)]


def kernel_letter_word(letter, N: int) -> tuple:
    k, e = letter
    base = X0pow(N) if k == T0 else free_reduce(X0pow(k) + (A1,) + X0pow(-k))
    return base if e == 1 else word_inverse(base)


def kernel_to_word(kw, N: int) -> tuple:
    return free_reduce(a for letter in kw for a in kernel_letter_word(letter, N))


def rewrite(word, N: int) -> tuple[tuple, int]:
    """Scan left to right: word = (kernel word) . X0^r with 0 <= r < N."""
    out: list = []
    r = 0
    for a in word:
        if a == A0:
            if r + 1 < N:
                r += 1
            else:
                out.append((T0, 1))
                r = 0
        elif a == -A0:
            if r > 0:
                r -= 1
            else:
                out.append((T0, -1))
                r = N - 1
        else:
            out.append((r, 1 if a == A1 else -1))
    return _reduce_kernel(out), r


def _reduce_kernel(kw) -> tuple:
    out: list = []
    for k, e in kw:
        if out and out[-1] == (k, -e):
            out.pop()
        else:
            out.append((k, e))
    return tuple(out)


def sigma_decompose(word, N: int) -> tuple[int, tuple]:
    """word = X0^zeta . (kernel word)."""
    zeta = x0_exponent(word) % N
    kw, r = rewrite(free_reduce(X0pow(-zeta) + tuple(word)), N)
    assert r == 0
    return zeta, kw


def sigma_assemble(zeta: int, kw, N: int) -> tuple:
    return free_reduce(X0pow(zeta) + kernel_to_word(kw, N))


# ---------------------------------------------------------------------------
# filtration model: kernel letter T -> 1 + u_T, T^{-1} -> sum (-u_T)^k


def _letter_key(letter) -> int:
    k = letter[0]
    return 0 if k == T0 else k + 1


def _kernel_expand(kw, m: int) -> dict:
    """Image of a kernel word in Q<u_0..u_N> truncated above degree m."""
    cur = {(): Fraction(1)}
    for letter in kw:
        u = _letter_key(letter)
        if letter[1] == 1:
            factor = {(): 1, (u,): 1}
        else:
            factor = {(u,) * k: (-1) ** k for k in range(m + 1)}
        nxt: dict = {}
        for w, c in cur.items():
            for f, cf in factor.items():
                if len(w) + len(f) <= m:
                    nxt[w + f] = nxt.get(w + f, 0) + c * cf
        cur = {w: c for w, c in nxt.items() if c}
    return cur


def filtration_image(a: GAElem, N: int, m: int) -> dict:
    """(zeta, u-word) -> coeff, truncated above degree m."""
    out: dict = {}
    for w, c in a.items():
        zeta, kw = sigma_decompose(w, N)
        for uw, cu in _kernel_expand(kw, m).items():
            k = (zeta, uw)
            out[k] = out.get(k, 0) + c * cu
    return {k: v for k, v in out.items() if v}


def filtration_member(a: GAElem, N: int, m: int) -> bool:
    """Whether a lies in I^m."""
    if m <= 0:
        return True
    return all(len(uw) >= m for (_, uw) in filtration_image(a, N, m - 1))


def filtration_order(a: GAElem, N: int, cap: int) -> int:
    """Largest m <= cap with a in I^m."""
    img = filtration_image(a, N, cap)
    return min((len(uw) for (_, uw) in img), default=cap)


def ideal_generators(N: int) -> list[GAElem]:
    """X0^zeta (k - 1) for zeta in Z/N and k a free generator of the kernel."""
    out = []
    for z in range(N):
        for k in ns_generators(N):
            out.append(GAElem.word(X0pow(z)) * (GAElem.word(k) - 1))
    return out


def gr_dimension(N: int, m: int) -> int:
    """dim I^m / I^{m+1}, from products of m ideal generators multiplied in Q F2."""
    gens = ideal_generators(N)
    rk = IncrementalRank()
    layer = [GAElem.word(X0pow(z)) for z in range(N)] if m == 0 else [GAElem.one()]
    for _ in range(m):
        layer = [p * g for p in layer for g in gens]
    for p in layer:
        top = {k: c for k, c in filtration_image(p, N, m).items() if len(k[1]) == m}
        rk.add({(k[0],) + k[1]: c for k, c in top.items()})
    return len(rk)


def random_word(rng: random.Random, length: int) -> tuple:
    w: list = []
    while len(w) < length:
        a = rng.choice((1, -1, 2, -2))
        if not w or w[-1] != -a:
            w.append(a)
    return tuple(w)


def random_gaelem(rng: random.Random, nterms: int = 3, maxlen: int = 4) -> GAElem:
    return GAElem({random_word(rng, rng.randint(0, maxlen)): rng.randint(-3, 3) for _ in range(nterms)})


# ---------------------------------------------------------------------------
# W^B and M^B


def wb_decompose(a: GAElem) -> tuple[Fraction, GAElem, GAElem]:
    """a = c + v (X1 - 1) + u (X0 - 1), by telescoping each w - 1 along its letters."""
    c = Fraction(0)
    v: dict = {}
    u: dict = {}
    for w, coef in a.items():
        c += coef
        for i, l in enumerate(w):
            target = v if abs(l) == A1 else u
            if l > 0:
                key, s = w[:i], coef
            else:
                key, s = w[: i + 1], -coef
            target[key] = target.get(key, 0) + s
    return c, GAElem(v), GAElem(u)


def in_WB(a: GAElem) -> bool:
    return not wb_decompose(a)[2]


def mB_reduce(a: GAElem, N: int) -> dict:
    """Class of a in Q F2 / Q F2 (X0 - 1), as kernel words modulo trailing X0^N letters."""
    out: dict = {}
    for w, c in a.items():
        kw, _ = rewrite(w, N)
        kw = list(kw)
        while kw and kw[-1][0] == T0:
            kw.pop()
        k = tuple(kw)
        out[k] = out.get(k, 0) + c
    return {k: v for k, v in out.items() if v}


def mB_lift(cls: dict, N: int) -> GAElem:
    return GAElem({kernel_to_word(kw, N): c for kw, c in cls.items()})


# ---------------------------------------------------------------------------
# comparison isomorphisms


class IsoV:
    """iso^{V,iota}: X0 -> exp(e0/N) g_iota, X1 -> exp(e1), truncated at D."""

    def __init__(self, iota: Embedding, D: int):
        self.iota, self.N, self.D = iota, iota.N, D
        N = self.N
        e0n = gen_e0(N, D).scale(Fraction(1, N))
        g = gen_g(N, D, iota.generator)
        ginv = gen_g(N, D, -iota.generator)
        e1 = gen_e1(N, D)
        self.images = {
            A0: exp_series(e0n) * g,
            -A0: ginv * exp_series(-e0n),
            A1: exp_series(e1),
            -A1: exp_series(-e1),
        }
        self._prefix = {(): gen_g(N, D, 0)}

    def word(self, w) -> CrossedElem:
        w = tuple(w)
        r = self._prefix.get(w)
        if r is None:
            r = self._prefix[w] = self.word(w[:-1]) * self.images[w[-1]]
        return r

    def __call__(self, a: GAElem) -> CrossedElem:
        out = CrossedElem(self.N, self.D, {})
        for w, c in a.items():
            out = out + self.word(w).scale(c)
        return out


def iso_V(iota: Embedding, a: GAElem, D: int) -> CrossedElem:
    return IsoV(iota, D)(a)


def iso_W(iota: Embedding, a: GAElem, D: int) -> SeriesY:
    """iso_V restricted to Q + Q F2 (X1 - 1), read in z-coordinates."""
    if not in_WB(a):
        raise NotInWB("element has a nonzero (X0 - 1) component")
    return w_decompose(iso_V(iota, a, D))


def iso_M(iota: Embedding, a: GAElem, D: int) -> ModClassY:
    return reduce_to_M(iso_V(iota, a, D))


def eta_V(phi, a: CrossedElem) -> CrossedElem:
    return act_groupaut_V(phi, a)
