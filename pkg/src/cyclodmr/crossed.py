"""The crossed-product algebra V = k<<X>> x| Z/N, its subalgebra W and quotient module M.

Elements are stored in crossed normal form: a finitely supported map
``(word, g) -> coeff`` with product ``(a, g)(b, h) = (a t_g(b), g + h)``.
Elements of W are read in the free generators ``z_{n,g} = -e0^{n-1} g e1``,
which expand to the single basis term ``(x0^{n-1} x_g, g)``; coordinates in
these generators are stored as Y-words ``((n, g), ...)``.
"""

from __future__ import annotations

from fractions import Fraction

from .harmonic import (
    ModClassY,
    SeriesY,
    harmonic_coproduct_alg,
    pi_Y,
    word_to_yword,
    yword_to_word,
)
from .linalg import InconsistentSystem, solve_affine
from .series import (
    X0,
    GroupAut,
    NonInvertibleError,
    ParameterError,
    SeriesX,
    Tensor,
    _check_letters,
    _frac,
    _Sparse,
    q_inverse_word,
    q_word,
)


class NotInW(ValueError):
    """Element is not in K + V e1."""


def _shift(word: tuple, g: int, N: int) -> tuple:
    if not g:
        return word
    return tuple(a if a == X0 else (a + g) % N for a in word)


class CrossedElem(_Sparse):
    __slots__ = ()

    @staticmethod
    def weight(key) -> int:
        return len(key[0])

    @staticmethod
    def _sort_key(key):
        return (len(key[0]), key[0], key[1])

    def _validate_key(self, key) -> None:
        if len(key) != 2:
            raise ParameterError(f"bad crossed key {key!r}")
        _check_letters(key[0], self.N)
        if not 0 <= key[1] < self.N:
            raise ParameterError(f"group component {key[1]} outside Z/{self.N}")

    def __init__(self, N, D, terms=(), *, _trusted=False):
        if not _trusted:
            items = terms.items() if hasattr(terms, "items") else terms
            terms = [((tuple(k[0]), k[1] % N), c) for k, c in items]
        super().__init__(N, D, terms, _trusted=_trusted)

    def scalar(self, c):
        return CrossedElem(self.N, self.D, {((), 0): c})

    @property
    def constant(self) -> Fraction:
        return self._terms.get(((), 0), Fraction(0))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        self._same(other)
        N, D = self.N, self.D
        right = other._buckets()
        out: dict = {}
        for (a, g), ca in self._terms.items():
            room = D - len(a)
            for wt, items in right.items():
                if wt > room:
                    continue
                for (b, h), cb in items:
                    k = (a + _shift(b, g, N), (g + h) % N)
                    out[k] = out.get(k, 0) + ca * cb
        return self._new({k: c for k, c in out.items() if c})

    def degree_zero(self) -> dict[int, Fraction]:
        return {g: c for (w, g), c in self._terms.items() if not w}


# -- generators -------------------------------------------------------------


def gen_e0(N: int, D: int) -> CrossedElem:
    return CrossedElem(N, D, {((X0,), 0): 1})


def gen_e1(N: int, D: int) -> CrossedElem:
    return CrossedElem(N, D, {((0,), 0): -1})


def gen_g(N: int, D: int, g: int) -> CrossedElem:
    return CrossedElem(N, D, {((), g % N): 1})


def one(N: int, D: int) -> CrossedElem:
    return gen_g(N, D, 0)


def beta(a: SeriesX) -> CrossedElem:
    """Image of a (x) 1; the identification is the identity on crossed normal form."""
    return CrossedElem(a.N, a.D, {(w, 0): c for w, c in a.items()}, _trusted=True)


def beta_inverse_degree0(a: CrossedElem) -> SeriesX:
    """Inverse of beta on elements supported in group component 0."""
    if any(g for (_, g) in a._terms):
        raise ParameterError("element has nonzero group components")
    return SeriesX(a.N, a.D, {w: c for (w, _), c in a.items()}, _trusted=True)


def z_gen(N: int, D: int, n: int, g: int) -> CrossedElem:
    """z_{n,g} = -e0^{n-1} g e1."""
    return CrossedElem(N, D, {((X0,) * (n - 1) + (g % N,), g % N): 1})


def crossed_mul(a: CrossedElem, b: CrossedElem) -> CrossedElem:
    return a * b


def _group_algebra_inverse(coeffs: dict[int, Fraction], N: int) -> dict[int, Fraction]:
    # solve (sum_g c_g g)(sum_h x_h h) = 1 as an N x N circulant system
    A = [[coeffs.get((k - h) % N, Fraction(0)) for h in range(N)] for k in range(N)]
    b = [Fraction(1 if k == 0 else 0) for k in range(N)]
    try:
        x, free = solve_affine(A, b)
    except InconsistentSystem as exc:
        raise NonInvertibleError("degree-0 part is not invertible in Q[Z/N]") from exc
    if free:
        raise NonInvertibleError("degree-0 part is not invertible in Q[Z/N]")
    return {h: v for h, v in enumerate(x) if v}


def crossed_inverse(a: CrossedElem) -> CrossedElem:
    N, D = a.N, a.D
    a0 = CrossedElem(N, D, {((), g): c for g, c in a.degree_zero().items()})
    if not a0:
        raise NonInvertibleError("degree-0 part vanishes")
    inv0 = CrossedElem(N, D, {((), h): c for h, c in _group_algebra_inverse(a0.degree_zero(), N).items()})
    s = inv0 * a - 1
    out = one(N, D)
    power = one(N, D)
    for _ in range(D):
        power = power * (-s)
        if not power:
            break
        out = out + power
    return out * inv0


def crossed_exp(a: CrossedElem) -> CrossedElem:
    from .series import exp_series

    return exp_series(a)


# -- W: z-word coordinates --------------------------------------------------


def z_monomial_term(yw: tuple, N: int) -> tuple:
    """The single crossed basis term of a z-monomial."""
    word = q_inverse_word(yword_to_word(yw), N)
    return (word, sum(g for _, g in yw) % N)


def from_z(a: SeriesY) -> CrossedElem:
    """Embed z-coordinates into V."""
    N = a.N
    return CrossedElem(N, a.D, {z_monomial_term(k, N): c for k, c in a.items()}, _trusted=True)


def w_decompose(a: CrossedElem) -> SeriesY:
    """Unique expansion of an element of W in z-monomials (raises NotInW otherwise)."""
    N = a.N
    out = {}
    for (w, g), c in a.items():
        if not w:
            if g:
                raise NotInW(f"group element {g} with coefficient {c} is not in K + V e1")
            out[()] = c
            continue
        if w[-1] == X0 or w[-1] != g:
            raise NotInW(f"basis term {(w, g)} is not a z-monomial")
        out[word_to_yword(q_word(w, N))] = c
    return SeriesY(N, a.D, out, _trusted=True)


def in_W(a: CrossedElem) -> bool:
    try:
        w_decompose(a)
    except NotInW:
        return False
    return True


def _crossed_tensor_mul(s: Tensor, t: Tensor) -> Tensor:
    N, D = s.N, s.D
    out: dict = {}
    for ((a1, g1), (b1, h1)), c1 in s.items():
        room = D - len(a1) - len(b1)
        for ((a2, g2), (b2, h2)), c2 in t.items():
            if len(a2) + len(b2) <= room:
                k = ((a1 + _shift(a2, g1, N), (g1 + g2) % N), (b1 + _shift(b2, h1, N), (h1 + h2) % N))
                out[k] = out.get(k, 0) + c1 * c2
    return Tensor(CrossedElem, N, D, {k: c for k, c in out.items() if c}, _trusted=True)


def _z_coproduct_crossed(n: int, g: int, N: int, D: int) -> Tensor:
    terms: dict = {}
    z = lambda k, h: z_monomial_term(((k, h % N),), N)
    unit = ((), 0)
    terms[(z(n, g), unit)] = 1
    terms[(unit, z(n, g))] = 1
    for k in range(1, n):
        for h in range(N):
            key = (z(k, h), z(n - k, g - h))
            terms[key] = terms.get(key, 0) + 1
    return Tensor(CrossedElem, N, D, terms)


def deltaW_DR(a: CrossedElem) -> Tensor:
    """Coproduct of W computed inside V (x) V by multiplying generator coproducts."""
    N, D = a.N, a.D
    coords = w_decompose(a)
    unit_t = Tensor(CrossedElem, N, D, {(((), 0), ((), 0)): 1})
    gen_cache: dict = {}
    prefix_cache: dict = {(): unit_t}

    def image(yw):
        if yw in prefix_cache:
            return prefix_cache[yw]
        head = image(yw[:-1])
        n, g = yw[-1]
        gt = gen_cache.get((n, g))
        if gt is None:
            gt = gen_cache[(n, g)] = _z_coproduct_crossed(n, g, N, D)
        res = prefix_cache[yw] = _crossed_tensor_mul(head, gt)
        return res

    out = Tensor(CrossedElem, N, D, {})
    for yw, c in coords.items():
        out = out + image(yw).scale(c)
    return out


def tensor_w_decompose(t: Tensor) -> Tensor:
    """Read both legs of a V (x) V tensor in z-coordinates."""
    N = t.N
    out = {}
    for ((a, b)), c in t.items():
        la = next(iter(w_decompose(CrossedElem(N, t.D, {a: 1}, _trusted=True)).items()))[0]
        lb = next(iter(w_decompose(CrossedElem(N, t.D, {b: 1}, _trusted=True)).items()))[0]
        out[(la, lb)] = c
    return Tensor(SeriesY, N, t.D, out, _trusted=True)


def deltaW_z(a: SeriesY) -> Tensor:
    """The W coproduct in z-coordinates (same generator formula as the harmonic coproduct)."""
    return harmonic_coproduct_alg(a)


# -- M ------------------------------------------------------------------------


def reduce_to_M(a: CrossedElem) -> ModClassY:
    """Class of a . 1_DR in Y-normal form."""
    N = a.N
    out: dict = {}
    for (w, _), c in a.items():
        yw = word_to_yword(q_word(w, N))
        if yw is not None:
            out[yw] = out.get(yw, 0) + c
    return ModClassY(N, a.D, {k: v for k, v in out.items() if v}, _trusted=True)


def reduce_tensor(t: Tensor) -> Tensor:
    N, D = t.N, t.D
    out: dict = {}
    for ((a, _g), (b, _h)), c in t.items():
        ya = word_to_yword(q_word(a, N))
        yb = word_to_yword(q_word(b, N))
        if ya is None or yb is None:
            continue
        k = (ya, yb)
        out[k] = out.get(k, 0) + c
    return Tensor(ModClassY, N, D, {k: v for k, v in out.items() if v}, _trusted=True)


def lift_M(m: ModClassY) -> CrossedElem:
    """The unique w in W with w . 1_DR = m."""
    return from_z(m)


def deltaM_DR(m: ModClassY) -> Tensor:
    return reduce_tensor(deltaW_DR(lift_M(m)))


def unit_M(N: int, D: int) -> ModClassY:
    return ModClassY(N, D, {(): 1})


# -- scaling and group automorphisms ------------------------------------------


def act_scale_V(lam, a: CrossedElem) -> CrossedElem:
    lam = _frac(lam)
    if not lam:
        raise ParameterError("scaling factor must be nonzero")
    return a._new({k: c * lam ** len(k[0]) for k, c in a.items()})


def act_groupaut_V(phi: GroupAut, a: CrossedElem) -> CrossedElem:
    if phi.N != a.N:
        raise ParameterError("automorphism and element disagree on N")
    return a.map_keys(lambda k: (tuple(l if l == X0 else phi(l) for l in k[0]), phi(k[1])))


def act_scale_W(lam, a: SeriesY) -> SeriesY:
    lam = _frac(lam)
    if not lam:
        raise ParameterError("scaling factor must be nonzero")
    return a._new({k: c * lam ** sum(n for n, _ in k) for k, c in a.items()})


def act_groupaut_W(phi: GroupAut, a: SeriesY):
    return a.map_keys(lambda k: tuple((n, phi(g)) for n, g in k))


def act_scale_M(lam, m: ModClassY) -> ModClassY:
    return reduce_to_M(act_scale_V(lam, lift_M(m)))


def act_groupaut_M(phi: GroupAut, m: ModClassY) -> ModClassY:
    return reduce_to_M(act_groupaut_V(phi, lift_M(m)))


def z_basis(N: int, D: int) -> list[tuple]:
    """All z-words (equivalently Y-words) of weight <= D, sorted by weight then lex."""
    out = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for yw in frontier:
            wt = sum(n for n, _ in yw)
            for n in range(1, D - wt + 1):
                for g in range(N):
                    nxt.append(yw + ((n, g),))
        out.extend(nxt)
        frontier = nxt
    return sorted(out, key=lambda k: (sum(n for n, _ in k), len(k), k))
