"""Twisted Magnus group, its semidirect extension, and the Gamma-twisted automorphisms.

``GammaTwist`` packages the algebra automorphism of V attached to a grouplike
series Psi together with its restriction to W and its descent to M.  The
restriction and descent are also available in z-coordinates, where they are
cheap enough to run over full spanning sets.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

from .crossed import (
    CrossedElem,
    NotInW,
    act_groupaut_V,
    act_groupaut_W,
    act_scale_V,
    act_scale_W,
    beta,
    gen_e0,
    gen_e1,
    gen_g,
    lift_M,
    reduce_to_M,
    w_decompose,
    z_basis,
    z_gen,
)
from .harmonic import (
    ModClassY,
    SeriesY,
    as_class,
    as_series_y,
    gamma_correction,
    harmonic_coproduct_alg,
)
from .series import (
    X0,
    GroupAut,
    ParameterError,
    SeriesX,
    Tensor,
    _frac,
    _Sparse,
    act_groupaut,
    act_scale,
    act_tg,
    inverse,
    is_grouplike,
)


def substitute_letters(a: _Sparse, images: dict) -> _Sparse:
    """Apply the algebra morphism sending each letter (key element) to images[letter]."""
    prefix = {(): a.scalar(1)}

    def image(w):
        r = prefix.get(w)
        if r is None:
            r = prefix[w] = image(w[:-1]) * images[w[-1]]
        return r

    out = a.scalar(0)
    for w, c in sorted(a.items(), key=lambda kv: len(kv[0])):
        out = out + image(w).scale(c)
    return out


def _require_grouplike(psi: SeriesX) -> None:
    if not is_grouplike(psi):
        raise ParameterError("series is not grouplike")


def aut_psi(psi: SeriesX, a: SeriesX, *, check: bool = True) -> SeriesX:
    """x0 -> x0, x_g -> Ad_{t_g(psi^{-1})}(x_g)."""
    if check:
        _require_grouplike(psi)
    N, D = psi.N, psi.D
    pinv = inverse(psi)
    images = {X0: SeriesX.letter(N, D, X0)}
    for g in range(N):
        images[g] = act_tg(g, pinv) * SeriesX.letter(N, D, g) * act_tg(g, psi)
    return substitute_letters(a, images)


def circledast(psi: SeriesX, phi: SeriesX, *, check: bool = True) -> SeriesX:
    if check:
        _require_grouplike(psi)
        _require_grouplike(phi)
    out = psi * aut_psi(psi, phi, check=False)
    if check and not is_grouplike(out):
        raise ArithmeticError("twisted Magnus product left the grouplike set")
    return out


def circledast_inverse(psi: SeriesX) -> SeriesX:
    """The inverse for the twisted Magnus product, solved degree by degree."""
    N, D = psi.N, psi.D
    cand = SeriesX.one(N, D)
    for _ in range(D):
        err = circledast(psi, cand, check=False) - 1
        if not err:
            break
        cand = cand - err
    return cand


@dataclass(frozen=True)
class SemidirectElem:
    phi: GroupAut
    lam: Fraction
    psi: SeriesX

    def __post_init__(self):
        object.__setattr__(self, "lam", _frac(self.lam))
        if not self.lam:
            raise ParameterError("lambda must be nonzero")
        if self.phi.N != self.psi.N:
            raise ParameterError("phi and psi disagree on N")

    @classmethod
    def identity(cls, N: int, D: int) -> SemidirectElem:
        return cls(GroupAut.identity(N), Fraction(1), SeriesX.one(N, D))

    def __eq__(self, other):
        return isinstance(other, SemidirectElem) and (self.phi, self.lam, self.psi) == (other.phi, other.lam, other.psi)

    __hash__ = None


def semidirect_mul(a: SemidirectElem, b: SemidirectElem) -> SemidirectElem:
    if (a.psi.N, a.psi.D) != (b.psi.N, b.psi.D):
        raise ParameterError("operands disagree on N or D")
    twisted = act_groupaut(a.phi, act_scale(a.lam, b.psi))
    return SemidirectElem(a.phi.compose(b.phi), a.lam * b.lam, circledast(a.psi, twisted))


# ---------------------------------------------------------------------------
# Gamma-twisted automorphisms


class GammaTwist:
    """The automorphisms attached to a grouplike series psi at truncation (N, D)."""

    def __init__(self, psi: SeriesX, *, check: bool = True):
        if check:
            _require_grouplike(psi)
        self.psi = psi
        self.N, self.D = psi.N, psi.D
        N, D = self.N, self.D
        minus_e1 = -gen_e1(N, D)
        corr = gamma_correction(psi)
        self.gamma_m = corr.substitute(minus_e1)  # the left correction factor at -e1
        self.gamma_p = corr.inverse().substitute(minus_e1)
        self.right_factor = self.gamma_m * beta(psi)
        self.right_factor_inv = beta(inverse(psi)) * self.gamma_p
        C, Ci = self.right_factor, self.right_factor_inv
        e1 = gen_e1(N, D)
        self.image_e0 = C * gen_e0(N, D) * Ci
        self.image_e1 = self.gamma_m * e1 * self.gamma_p
        self.image_g = {g: C * gen_g(N, D, g) * Ci for g in range(N)}
        self._letter = {X0: self.image_e0}
        for h in range(N):
            self._letter[h] = -(self.image_g[h] * self.image_e1 * self.image_g[(-h) % N])
        self._prefix = {(): gen_g(N, D, 0)}

    def _word_image(self, w: tuple) -> CrossedElem:
        r = self._prefix.get(w)
        if r is None:
            r = self._prefix[w] = self._word_image(w[:-1]) * self._letter[w[-1]]
        return r

    # -- V ---------------------------------------------------------------
    def V1(self, a: CrossedElem) -> CrossedElem:
        """The algebra automorphism of V."""
        out = CrossedElem(self.N, self.D, {})
        for (w, g), c in sorted(a.items(), key=lambda kv: len(kv[0][0])):
            out = out + (self._word_image(w) * self.image_g[g]).scale(c)
        return out

    def V10(self, a: CrossedElem) -> CrossedElem:
        """The module automorphism v -> V1(v) . C, with C the correction factor at -e1 times beta(psi)."""
        return self.V1(a) * self.right_factor

    # -- W and M through V -----------------------------------------------
    def W1(self, a: CrossedElem) -> CrossedElem:
        w_decompose(a)
        out = self.V1(a)
        w_decompose(out)  # raises NotInW loudly if the restriction fails
        return out

    def M10(self, m: ModClassY) -> ModClassY:
        return reduce_to_M(self.V10(lift_M(m)))

    # -- z-coordinates ---------------------------------------------------
    @cached_property
    def z_images(self) -> dict:
        out = {}
        for n in range(1, self.D + 1):
            for g in range(self.N):
                img = self.V1(z_gen(self.N, self.D, n, g))
                try:
                    out[(n, g)] = w_decompose(img)
                except NotInW as exc:
                    raise NotInW(f"image of z_{n},{g} left W") from exc
        return out

    @cached_property
    def star(self) -> SeriesY:
        """Psi^star in z-coordinates (the image of 1_DR)."""
        return as_series_y(reduce_to_M(self.right_factor))

    def W_z(self, a: SeriesY) -> SeriesY:
        return substitute_letters(a, self.z_images)

    def M_z(self, m: ModClassY) -> ModClassY:
        return as_class(self.W_z(as_series_y(m)) * self.star)


class TwistedAction:
    """The (phi, lam, psi) automorphisms in z-coordinates, with inverses."""

    def __init__(self, phi: GroupAut, lam, psi: SeriesX, *, check: bool = True):
        self.phi, self.lam = phi, _frac(lam)
        if not self.lam:
            raise ParameterError("lambda must be nonzero")
        self.twist = GammaTwist(psi, check=check)
        self.N, self.D = psi.N, psi.D
        self._phi_inv = phi.inverse()
        self._lam_inv = 1 / self.lam
        self._cache_w: dict = {}
        self._cache_w_inv: dict = {}

    @classmethod
    def of(cls, e: SemidirectElem, *, check: bool = True) -> TwistedAction:
        return cls(e.phi, e.lam, e.psi, check=check)

    def _graded(self, a: SeriesY) -> SeriesY:
        return act_scale_W(self.lam, act_groupaut_W(self.phi, a))

    def _graded_inv(self, a: SeriesY) -> SeriesY:
        return act_groupaut_W(self._phi_inv, act_scale_W(self._lam_inv, a))

    @cached_property
    def _unipotent_inv_images(self) -> dict:
        # solve U(u) = z for each generator by fixed-point iteration; U - id raises weight
        out = {}
        for key in self.twist.z_images:
            z = SeriesY(self.N, self.D, {(key,): 1})
            u = z
            for _ in range(self.D):
                u = z - (self.twist.W_z(u) - u)
            out[key] = u
        return out

    def W_basis(self, yw: tuple) -> SeriesY:
        r = self._cache_w.get(yw)
        if r is None:
            a = SeriesY(self.N, self.D, {yw: 1}, _trusted=True)
            r = self._cache_w[yw] = self.twist.W_z(self._graded(a))
        return r

    def W_inv_basis(self, yw: tuple) -> SeriesY:
        r = self._cache_w_inv.get(yw)
        if r is None:
            a = SeriesY(self.N, self.D, {yw: 1}, _trusted=True)
            r = self._cache_w_inv[yw] = self._graded_inv(substitute_letters(a, self._unipotent_inv_images))
        return r

    def W(self, a: SeriesY) -> SeriesY:
        out = SeriesY(self.N, self.D, {})
        for k, c in a.items():
            out = out + self.W_basis(k).scale(c)
        return out

    def W_inv(self, a: SeriesY) -> SeriesY:
        out = SeriesY(self.N, self.D, {})
        for k, c in a.items():
            out = out + self.W_inv_basis(k).scale(c)
        return out

    @cached_property
    def _star_inv(self) -> SeriesY:
        return inverse(self.twist.star)

    def M(self, m: ModClassY) -> ModClassY:
        return as_class(self.W(as_series_y(m)) * self.twist.star)

    def M_inv(self, m: ModClassY) -> ModClassY:
        return as_class(self.W_inv(as_series_y(m) * self._star_inv))

    def M_basis(self, yw: tuple) -> ModClassY:
        return as_class(self.W_basis(yw) * self.twist.star)

    def M_inv_basis(self, yw: tuple) -> ModClassY:
        return self.M_inv(ModClassY(self.N, self.D, {yw: 1}, _trusted=True))

    # -- V-level composites, used to cross-check the coordinate forms ------
    def V1(self, a: CrossedElem) -> CrossedElem:
        return self.twist.V1(act_scale_V(self.lam, act_groupaut_V(self.phi, a)))

    def V10(self, a: CrossedElem) -> CrossedElem:
        return self.twist.V10(act_scale_V(self.lam, act_groupaut_V(self.phi, a)))

    def M10(self, m: ModClassY) -> ModClassY:
        return reduce_to_M(self.V10(lift_M(m)))


def gamma_aut_V1(lam, psi: SeriesX, a: CrossedElem, phi: GroupAut | None = None) -> CrossedElem:
    phi = phi or GroupAut.identity(psi.N)
    return TwistedAction(phi, lam, psi).V1(a)


def gamma_aut_V10(lam, psi: SeriesX, a: CrossedElem, phi: GroupAut | None = None) -> CrossedElem:
    phi = phi or GroupAut.identity(psi.N)
    return TwistedAction(phi, lam, psi).V10(a)


def gamma_aut_W1(lam, psi: SeriesX, a: CrossedElem, phi: GroupAut | None = None) -> CrossedElem:
    w_decompose(a)
    out = gamma_aut_V1(lam, psi, a, phi)
    w_decompose(out)
    return out


def gamma_aut_M10(lam, psi: SeriesX, m: ModClassY, phi: GroupAut | None = None) -> ModClassY:
    phi = phi or GroupAut.identity(psi.N)
    return TwistedAction(phi, lam, psi).M10(m)


# ---------------------------------------------------------------------------
# stabilizers


def _coproduct_in(base):
    def cop(a):
        t = harmonic_coproduct_alg(as_series_y(a))
        return Tensor(base, a.N, a.D, t._terms, _trusted=True)

    return cop


def stab_check(e: SemidirectElem, which: str, action: TwistedAction | None = None) -> bool:
    """Whether the (phi, lam, psi) automorphism of W ("W") or M ("M") commutes with the coproduct."""
    act = action or TwistedAction.of(e)
    N, D = e.psi.N, e.psi.D
    if which == "W":
        fwd, fwd_basis, base = act.W, act.W_basis, SeriesY
    elif which == "M":
        fwd, fwd_basis, base = act.M, act.M_basis, ModClassY
    else:
        raise ParameterError("which must be 'W' or 'M'")
    cop = _coproduct_in(base)
    for yw in z_basis(N, D):
        b = base(N, D, {yw: 1}, _trusted=True)
        lhs = cop(fwd(b))
        rhs = Tensor(base, N, D, cop(b).map_legs(fwd_basis)._terms, _trusted=True)
        if lhs != rhs:
            return False
    return True


def stab_checkW(e: SemidirectElem, action: TwistedAction | None = None) -> bool:
    return stab_check(e, "W", action)


def stab_checkM(e: SemidirectElem, action: TwistedAction | None = None) -> bool:
    return stab_check(e, "M", action)
