"""Verification suites: coalgebra axioms, diagram commutation, filtration and comparison checks.

Each check returns a bool; suites return ``{name: bool}``.
"""

from __future__ import annotations

import random
from math import gcd

from .betti import (
    A0,
    A1,
    GAElem,
    IsoV,
    filtration_member,
    gr_dimension,
    iso_M,
    mB_lift,
    mB_reduce,
    ns_generators,
    project_mu,
    random_gaelem,
    random_word,
    sigma_assemble,
    sigma_decompose,
)
from .crossed import (
    CrossedElem,
    act_groupaut_V,
    deltaW_DR,
    from_z,
    gen_e0,
    gen_g,
    reduce_tensor,
    reduce_to_M,
    tensor_w_decompose,
    z_basis,
    z_gen,
)
from .harmonic import (
    ModClassY,
    SeriesY,
    harmonic_coproduct_alg,
    harmonic_coproduct_mod,
    pi_Y,
    y_to_x,
)
from .series import Embedding, GroupAut, SeriesX, Tensor, all_words, exp_series, q_map, shuffle_coproduct
from .transport import BettiCoproducts, sample_points


def _add(d: dict, k, c) -> None:
    v = d.get(k, 0) + c
    if v:
        d[k] = v
    else:
        d.pop(k, None)


def coassociative(basis, cop_basis, weight=None, D=None) -> bool:
    """(Delta (x) id) Delta = (id (x) Delta) Delta on each basis key.

    For filtered (non-graded) coproducts pass ``weight`` and ``D``: triple
    terms above total weight D are truncation artifacts and are dropped.
    """

    def keep(t):
        return weight is None or sum(weight(x) for x in t) <= D

    for k in basis:
        left: dict = {}
        right: dict = {}
        for (a, b), c in cop_basis(k).items():
            for (a1, a2), c2 in cop_basis(a).items():
                if keep((a1, a2, b)):
                    _add(left, (a1, a2, b), c * c2)
            for (b1, b2), c2 in cop_basis(b).items():
                if keep((a, b1, b2)):
                    _add(right, (a, b1, b2), c * c2)
        if left != right:
            return False
    return True


def counital(basis, cop_basis, empty=()) -> bool:
    for k in basis:
        t = cop_basis(k)
        l = {a: c for (a, b), c in t.items() if b == empty}
        r = {b: c for (a, b), c in t.items() if a == empty}
        if l != {k: 1} or r != {k: 1}:
            return False
    return True


def multiplicative(basis, weight, D, elem, cop) -> bool:
    """cop(ab) = cop(a) cop(b) for basis pairs of total weight <= D."""
    ks = [k for k in basis if k]
    cache = {k: cop(elem(k)) for k in ks}
    for a in ks:
        for b in ks:
            if weight(a) + weight(b) > D:
                continue
            if cop(elem(a) * elem(b)) != cache[a] * cache[b]:
                return False
    return True


# ---------------------------------------------------------------------------
# individual coproducts


def x_words(N: int, D: int) -> list:
    return [w for n in range(D + 1) for w in all_words(N, n)]


def shuffle_suite(N: int, D: int) -> dict:
    words = x_words(N, D)
    cache: dict = {}

    def cb(w):
        r = cache.get(w)
        if r is None:
            r = cache[w] = shuffle_coproduct(SeriesX(N, D, {w: 1}, _trusted=True))
        return r

    return {
        "shuffle.coassociative": coassociative(words, cb),
        "shuffle.counital": counital(words, cb),
        "shuffle.multiplicative": multiplicative(
            words, len, D, lambda w: SeriesX(N, D, {w: 1}, _trusted=True), shuffle_coproduct
        ),
    }


def harmonic_suite(N: int, D: int) -> dict:
    basis = z_basis(N, D)

    def elem(k):
        return SeriesY(N, D, {k: 1}, _trusted=True)

    def cb(k):
        return harmonic_coproduct_alg(elem(k))

    return {
        "harmonic.coassociative": coassociative(basis, cb),
        "harmonic.counital": counital(basis, cb),
        "harmonic.multiplicative": multiplicative(basis, SeriesY.weight, D, elem, lambda a: harmonic_coproduct_alg(a)),
    }


def deltaW_DR_suite(N: int, D: int) -> dict:
    """The coproduct on W computed inside V (products of generator coproducts)."""
    basis = z_basis(N, D)
    cache: dict = {}

    def cb(k):
        r = cache.get(k)
        if r is None:
            r = cache[k] = tensor_w_decompose(deltaW_DR(from_z(SeriesY(N, D, {k: 1}, _trusted=True))))
        return r

    routes = all(cb(k) == harmonic_coproduct_alg(SeriesY(N, D, {k: 1}, _trusted=True)) for k in basis)
    gens = [(n, g) for n in range(1, D + 1) for g in range(N)]

    def elem(k):
        return from_z(SeriesY(N, D, {k: 1}, _trusted=True))

    mult = True
    for a in gens:
        for b in basis:
            if a[0] + SeriesY.weight(b) > D or not b:
                continue
            lhs = tensor_w_decompose(deltaW_DR(elem((a,)) * elem(b)))
            if lhs != cb((a,)) * cb(b):
                mult = False
    return {
        "deltaW_DR.coassociative": coassociative(basis, cb),
        "deltaW_DR.counital": counital(basis, cb),
        "deltaW_DR.multiplicative": mult,
        "deltaW_DR.matches_harmonic": routes,
    }


def betti_suite(N: int, D: int, points=None) -> dict:
    points = points or sample_points(N, D, lams=(1,), policies=("probe 0",))
    B = BettiCoproducts(points[0])
    basis = z_basis(N, D)

    def cb(k):
        return B.W(SeriesY(N, D, {k: 1}, _trusted=True))

    def cbm(k):
        return B.M(ModClassY(N, D, {k: 1}, _trusted=True))

    mult = multiplicative(basis, SeriesY.weight, D, lambda k: SeriesY(N, D, {k: 1}, _trusted=True), B.W)
    module = True
    for a in basis:
        for b in basis:
            if not a or SeriesY.weight(a) + SeriesY.weight(b) > D:
                continue
            prod = ModClassY(N, D, {a + b: 1}, _trusted=True)
            if B.M(prod) != Tensor(ModClassY, N, D, (cb(a) * Tensor(SeriesY, N, D, cbm(b)._terms, _trusted=True))._terms, _trusted=True):
                module = False
    one = ModClassY.one(N, D)
    return {
        "deltaW_B.coassociative": coassociative(basis, cb, SeriesY.weight, D),
        "deltaW_B.multiplicative": mult,
        "deltaM_B.coassociative": coassociative(basis, cbm, SeriesY.weight, D),
        "deltaM_B.module_compatible": module,
        "deltaM_B.unit": B.M(one) == Tensor.outer(one, one),
    }


# ---------------------------------------------------------------------------
# diagrams


def _rand_crossed(rng, N, D, maxlen, nterms=4) -> CrossedElem:
    terms = {}
    for _ in range(nterms):
        n = rng.randint(0, maxlen)
        w = tuple(rng.choice([-1] + list(range(N))) for _ in range(n))
        terms[(w, rng.randrange(N))] = rng.randint(-3, 3)
    return CrossedElem(N, D, terms)


def diagram_suite(N: int, D: int, seed: int = 0) -> dict:
    rng = random.Random(seed)
    basis = z_basis(N, D)
    out = {}
    # harmonic_coproduct_M: Delta_mod o pi_Y = pi_Y^{(x)2} o Delta_alg on Y-words
    ok = True
    for k in basis:
        y = SeriesY(N, D, {k: 1}, _trusted=True)
        lhs = harmonic_coproduct_mod(pi_Y(y_to_x(y)))
        rhs = harmonic_coproduct_alg(y).map_legs(lambda yw: pi_Y(y_to_x(SeriesY(N, D, {yw: 1}, _trusted=True))))
        ok &= lhs == Tensor(ModClassY, N, D, rhs._terms, _trusted=True)
    out["diagram.harmonic_coproduct_M"] = ok
    # diag_iso_MG: the reduction kills V e0 + sum V (g - 1), and matches pi_Y o q on beta(k<<X>>)
    ok = True
    for _ in range(25):
        v = _rand_crossed(rng, N, D, D - 1)
        ok &= not reduce_to_M(v * gen_e0(N, D))
        for g in range(N):
            ok &= not reduce_to_M(v * (gen_g(N, D, g) - 1))
    for w in x_words(N, D):
        a = SeriesX(N, D, {w: 1}, _trusted=True)
        ok &= reduce_to_M(CrossedElem(N, D, {(w, 0): 1})) == pi_Y(q_map(a))
    out["diagram.iso_MG"] = ok
    # diag_projections: products of z generators, reduced, give pi_Y of the Y-word
    ok = True
    for k in basis:
        prod = CrossedElem(N, D, {((), 0): 1})
        for n, g in k:
            prod = prod * z_gen(N, D, n, g)
        ok &= prod == from_z(SeriesY(N, D, {k: 1}, _trusted=True))
        ok &= reduce_to_M(prod) == pi_Y(y_to_x(SeriesY(N, D, {k: 1}, _trusted=True)))
    out["diagram.projections"] = ok
    # diag_DeltaW_DeltaM: reduce after the V-level coproduct = coproduct on M after reducing
    ok = True
    for k in basis:
        y = SeriesY(N, D, {k: 1}, _trusted=True)
        lhs = reduce_tensor(deltaW_DR(from_z(y)))
        ok &= lhs == harmonic_coproduct_mod(reduce_to_M(from_z(y)))
    out["diagram.DeltaW_DeltaM"] = ok
    # diag_isoM: iso_M is well defined on V^B / V^B (X0 - 1) and agrees with the kernel-word reduction
    ok = True
    iota = Embedding(1, N)
    X0m1 = GAElem.letter(A0) - 1
    for _ in range(25):
        a = random_gaelem(rng)
        ok &= not iso_M(iota, a * X0m1, D)
        ok &= iso_M(iota, a, D) == iso_M(iota, mB_lift(mB_reduce(a, N), N), D)
    out["diagram.isoM"] = ok
    return out


def hopf_suite(N: int, D: int, *, betti: bool = True) -> dict:
    out = {}
    out.update(shuffle_suite(N, D))
    out.update(harmonic_suite(N, D))
    out.update(deltaW_DR_suite(N, D))
    out.update(diagram_suite(N, D))
    if betti:
        out.update(betti_suite(N, D))
    return out


# ---------------------------------------------------------------------------
# Betti side


def filtration_suite(N: int, m_max: int) -> dict:
    out = {}
    dims = [gr_dimension(N, m) for m in range(m_max + 1)]
    out["gr_dimensions"] = dims
    out["gr_dimensions_match"] = dims == [N * (N + 1) ** m for m in range(m_max + 1)]
    return out


def kernel_suite(N: int, max_len: int = 6) -> dict:
    gens_ok = all(project_mu(GAElem.word(g), N) == {0: 1} for g in ns_generators(N))
    rt = True
    for n in range(max_len + 1):
        for w in reduced_words(n):
            z, kw = sigma_decompose(w, N)
            rt &= sigma_assemble(z, kw, N) == w
    return {"ns_generators_in_kernel": gens_ok, "sigma_round_trip": rt}


def reduced_words(n: int):
    if n == 0:
        yield ()
        return
    for w in reduced_words(n - 1):
        for a in (1, -1, 2, -2):
            if not w or w[-1] != -a:
                yield w + (a,)


def comparison_suite(N: int, D: int, samples: int = 50, seed: int = 0) -> dict:
    rng = random.Random(seed)
    out = {}
    eta_ok = True
    units = [u for u in range(N) if gcd(u, N) == 1]
    for g in units:
        iota = Embedding(g, N)
        a_ = IsoV(iota, D)
        for u in units:
            phi = GroupAut(u, N)
            b_ = IsoV(iota.precompose_inverse(phi), D)
            for letter in (A0, -A0, A1, -A1):
                eta_ok &= b_.word((letter,)) == act_groupaut_V(phi, a_.word((letter,)))
            for _ in range(samples // len(units) ** 2 + 1):
                a = random_gaelem(rng)
                eta_ok &= b_(a) == act_groupaut_V(phi, a_(a))
    out["eta_phi_iso"] = eta_ok
    out["iso_X0^N"] = IsoV(Embedding(1, N), D)(GAElem.word((A0,) * N)) == exp_series(gen_e0(N, D))
    filt_ok = True
    iso = IsoV(Embedding(1, N), D)
    gens = [GAElem.word((A0,) * z) * (GAElem.word(k) - 1) for z in range(N) for k in ns_generators(N)]
    for m in range(1, 4):
        for _ in range(10):
            p = GAElem.one()
            for _ in range(m):
                p = p * gens[rng.randrange(len(gens))]
            p = p * GAElem.word(random_word(rng, rng.randint(0, 2)))
            if not filtration_member(p, N, m):
                filt_ok = False
            img = iso(p)
            filt_ok &= all(CrossedElem.weight(k) >= m for k in img.terms)
    out["filtration_to_degree"] = filt_ok
    return out
