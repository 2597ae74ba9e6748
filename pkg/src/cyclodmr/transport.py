"""Comparison maps and the Betti coproducts obtained by transport along them.

Betti elements are represented by their images under the reference comparison
iso^{iota_0} (iota_0 has generator 1), so both coproducts act on z-coordinates.
For a torsor point p = (iota, lam, Psi) with iota = iota_0 o phi^{-1} the
comparison map is A_p o iso^{iota_0} with A_p the (phi, lam, Psi) automorphism,
hence Delta^B = (A_p (x) A_p)^{-1} o Delta^DR o A_p in these coordinates.
"""

from __future__ import annotations

from fractions import Fraction

from .betti import A0, A1, GAElem, iso_M, iso_W
from .crossed import z_basis
from .dmr import TorsorPoint
from .harmonic import ModClassY, SeriesY, as_series_y, harmonic_coproduct_alg
from .magnus import TwistedAction
from .series import Embedding, GroupAut, ParameterError, Tensor, WindowError


def reference_embedding(N: int) -> Embedding:
    return Embedding(1, N)


def point_action(p: TorsorPoint) -> TwistedAction:
    return TwistedAction(p.iota.aut_from_reference(), p.lam, p.psi, check=False)


def comp_W1(p: TorsorPoint, a: GAElem) -> SeriesY:
    N, D = p.psi.N, p.psi.D
    return TwistedAction(GroupAut.identity(N), p.lam, p.psi, check=False).W(iso_W(p.iota, a, D))


def comp_M10(p: TorsorPoint, a: GAElem) -> ModClassY:
    N, D = p.psi.N, p.psi.D
    return TwistedAction(GroupAut.identity(N), p.lam, p.psi, check=False).M(iso_M(p.iota, a, D))


def _coproduct(a: SeriesY, base) -> Tensor:
    t = harmonic_coproduct_alg(as_series_y(a))
    return Tensor(base, a.N, a.D, t._terms, _trusted=True)


class BettiCoproducts:
    """Delta^{W,B} and Delta^{M,B} at a torsor point, in reference z-coordinates."""

    def __init__(self, p: TorsorPoint, *, check: bool = True):
        if check and not p.check().passed:
            raise ParameterError("torsor point fails the DMR conditions")
        self.p = p
        self.N, self.D = p.psi.N, p.psi.D
        self.A = point_action(p)
        self._w: dict = {}
        self._m: dict = {}

    def _W_basis(self, yw) -> Tensor:
        r = self._w.get(yw)
        if r is None:
            img = self.A.W_basis(yw)
            t = _coproduct(img, SeriesY)
            r = self._w[yw] = Tensor(SeriesY, self.N, self.D, t.map_legs(self.A.W_inv_basis)._terms, _trusted=True)
        return r

    def _M_basis(self, yw) -> Tensor:
        r = self._m.get(yw)
        if r is None:
            img = self.A.M_basis(yw)
            t = _coproduct(img, ModClassY)
            r = self._m[yw] = Tensor(ModClassY, self.N, self.D, t.map_legs(self.A.M_inv_basis)._terms, _trusted=True)
        return r

    def W(self, a: SeriesY) -> Tensor:
        out = Tensor(SeriesY, self.N, self.D, {})
        for k, c in a.items():
            out = out + self._W_basis(k).scale(c)
        return out

    def M(self, m: ModClassY) -> Tensor:
        out = Tensor(ModClassY, self.N, self.D, {})
        for k, c in m.items():
            out = out + self._M_basis(k).scale(c)
        return out

    def table_W(self) -> dict:
        return {yw: self._W_basis(yw) for yw in z_basis(self.N, self.D)}

    def table_M(self) -> dict:
        return {yw: self._M_basis(yw) for yw in z_basis(self.N, self.D)}


def betti_coproduct_W(p: TorsorPoint, w: SeriesY) -> Tensor:
    return BettiCoproducts(p).W(w)


def betti_coproduct_M(p: TorsorPoint, m: ModClassY) -> Tensor:
    return BettiCoproducts(p).M(m)


def independence_verdict(points: list[TorsorPoint]) -> dict:
    """Compare the W and M operator tables of several torsor points."""
    if not points:
        raise ParameterError("need at least one point")
    tables = [BettiCoproducts(p) for p in points]
    ref_w, ref_m = tables[0].table_W(), tables[0].table_M()
    agree_w = all(t.table_W() == ref_w for t in tables[1:])
    agree_m = all(t.table_M() == ref_m for t in tables[1:])
    return {
        "theorem": "betti_coproduct_independence",
        "points": [{"N": p.psi.N, "lambda": str(p.lam), "giota": p.iota.generator, "terms": len(p.psi)} for p in points],
        "agree": agree_w and agree_m,
        "agree_W": agree_w,
        "agree_M": agree_m,
        "degree": points[0].psi.D,
        "spanning_set_size": len(ref_w),
    }


# ---------------------------------------------------------------------------
# the N = 1 reference formulas


def y_pm_generator(n: int, sign: int) -> GAElem:
    """Y_n^+ = -(X0 - 1)^{n-1} X0 (X1 - 1); Y_n^- uses X0^{-1}, X1^{-1}."""
    if n < 1 or sign not in (1, -1):
        raise ParameterError("need n >= 1 and sign +-1")
    x0 = GAElem.letter(sign * A0)
    x1 = GAElem.letter(sign * A1)
    return -((x0 - 1) ** (n - 1) * x0 * (x1 - 1))


def ef_reference_check(p: TorsorPoint, n: int) -> bool:
    """Delta^{W,B}(Y_n^s) = Y_n^s (x) 1 + 1 (x) Y_n^s + sum_{k+l=n} Y_k^s (x) Y_l^s, and X1^{+-1} grouplike."""
    N, D = p.psi.N, p.psi.D
    if N != 1:
        raise ParameterError("the reference formulas are stated for N = 1")
    if n + 1 > D:
        raise WindowError(f"need D >= {n + 1} for n = {n}")
    iota = reference_embedding(1)
    B = BettiCoproducts(p)

    def iw(a):
        return iso_W(iota, a, D)

    one = SeriesY.one(1, D)
    for s in (1, -1):
        y = {k: iw(y_pm_generator(k, s)) for k in range(1, n + 1)}
        expected = Tensor.outer(y[n], one) + Tensor.outer(one, y[n])
        for k in range(1, n):
            expected = expected + Tensor.outer(y[k], y[n - k])
        if B.W(y[n]) != expected:
            return False
        x1 = iw(GAElem.letter(s * A1))
        if B.W(x1) != Tensor.outer(x1, x1):
            return False
    return True


def unit_check(p: TorsorPoint) -> bool:
    """Delta^{M,B}(1_B) = 1_B (x) 1_B."""
    N, D = p.psi.N, p.psi.D
    one = iso_M(reference_embedding(N), GAElem.one(), D)
    return BettiCoproducts(p).M(one) == Tensor.outer(one, one)


def sample_points(N: int, D: int, lams=(1, 2), policies=(None, "probe 0"), giota: int = 1) -> list[TorsorPoint]:
    from .dmr import dmr_solve

    iota = Embedding(giota, N)
    return [TorsorPoint(iota, Fraction(lam), dmr_solve(N, iota, lam, D, pol)) for lam, pol in zip(lams, policies)]
