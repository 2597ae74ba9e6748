"""Membership in DMR_lambda^iota at a truncation, a constructive solver, and the torsor action."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .harmonic import harmonic_coproduct_mod, psi_star
from .lie import lie_basis, lyndon_bracket
from .linalg import InconsistentSystem, solve_affine
from .magnus import SemidirectElem, circledast
from .series import (
    X0,
    Embedding,
    ParameterError,
    SeriesX,
    Tensor,
    _frac,
    act_groupaut,
    act_scale,
    exp_series,
    is_grouplike,
)

CONDITIONS = ("i", "ii", "iii", "iv", "v")


class SolverObstruction(ArithmeticError):
    def __init__(self, degree: int, message: str = ""):
        super().__init__(message or f"no solution at degree {degree}")
        self.degree = degree


def _coeff(psi: SeriesX, w: tuple) -> Fraction:
    return psi.coeff(w) if len(w) <= psi.D else Fraction(0)


def _scalar_defects(iota: Embedding, lam: Fraction, psi: SeriesX) -> dict:
    """Scalar conditions as label -> (degree, defect); zero defect means satisfied."""
    N = psi.N
    out = {}
    out[("i", "x0")] = (1, _coeff(psi, (X0,)))
    out[("i", "x1")] = (1, _coeff(psi, (0,)))
    if N <= 2:
        out[("iii",)] = (2, _coeff(psi, (X0, 0)) + lam * lam / 24)
    else:
        g = iota.generator

        def diff(k):
            return _coeff(psi, ((k * g) % N,)) - _coeff(psi, ((-k * g) % N,))

        out[("iv",)] = (1, diff(1) - Fraction(N - 2, 2) * lam)
        for k in range(1, N // 2 + 1):
            out[("v", k)] = (1, diff(k) - Fraction(N - 2 * k, N - 2) * diff(1))
    return out


def _coproduct_defect(psi: SeriesX) -> Tensor:
    ps = psi_star(psi)
    return harmonic_coproduct_mod(ps) - Tensor.outer(ps, ps)


@dataclass
class DMRReport:
    N: int
    degree: int
    lam: Fraction
    giota: int
    conditions: dict = field(default_factory=dict)  # name -> True / False / None (not applicable)
    values: dict = field(default_factory=dict)  # the coefficients the scalar conditions constrain

    @property
    def passed(self) -> bool:
        return all(v is not False for v in self.conditions.values())

    def to_json(self) -> dict:
        return {
            "conditions": dict(self.conditions),
            "degree": self.degree,
            "N": self.N,
            "lambda": str(self.lam),
            "giota": self.giota,
            "values": {k: str(v) for k, v in self.values.items()},
        }


def dmr_check(iota: Embedding, lam, psi: SeriesX) -> DMRReport:
    """Evaluate conditions (i)-(v) on psi up to its truncation degree."""
    if not is_grouplike(psi):
        raise ParameterError("series is not grouplike")
    if iota.N != psi.N:
        raise ParameterError("embedding and series disagree on N")
    lam = _frac(lam)
    N, D = psi.N, psi.D
    conds: dict = {c: None for c in CONDITIONS}
    for label, (deg, val) in _scalar_defects(iota, lam, psi).items():
        if deg > D:
            continue
        ok = val == 0
        conds[label[0]] = ok if conds[label[0]] is None else conds[label[0]] and ok
    conds["ii"] = not _coproduct_defect(psi)
    if N >= 3 and conds["v"] is None:
        conds["v"] = True
    values = {}
    if D >= 1:
        values["x0"] = _coeff(psi, (X0,))
        values["x1"] = _coeff(psi, (0,))
    if N <= 2 and D >= 2:
        values["iii"] = _coeff(psi, (X0, 0))
    if N >= 3 and D >= 1:
        g = iota.generator
        values["iv"] = _coeff(psi, (g,)) - _coeff(psi, ((-g) % N,))
    return DMRReport(N, D, lam, iota.generator, conds, values)


def _parse_policy(policy) -> int | None:
    if policy in (None, "zero", "default"):
        return None
    if isinstance(policy, int):
        return policy
    if isinstance(policy, str) and policy.startswith("probe"):
        return int(policy.split()[1] if " " in policy else policy.split(":")[1])
    raise ParameterError(f"unknown free-variable policy {policy!r}")


def _defect_vector(iota, lam, psi: SeriesX, d: int) -> dict:
    vec = {}
    for label, (deg, val) in _scalar_defects(iota, lam, psi).items():
        if deg <= d and val:
            vec[label] = val
    for key, c in _coproduct_defect(psi).items():
        vec[("ii", key)] = c
    return vec


def dmr_solve(N: int, iota: Embedding | None, lam, D: int, policy=None) -> SeriesX:
    """A grouplike exp(psi) satisfying (i)-(v) up to degree D, built one degree at a time.

    At degree d the unknowns are the coordinates of psi_d in the Lyndon basis.
    The degree-d defect is affine in them, so the linear map is read off by
    probing each basis direction.  ``policy`` "probe k" sets the k-th free
    variable (counted across all degrees) to 1; otherwise free variables are 0.
    """
    if N < 1 or D < 0:
        raise ParameterError("need N >= 1 and D >= 0")
    iota = iota or Embedding(1, N)
    if iota.N != N:
        raise ParameterError("embedding and N disagree")
    lam = _frac(lam)
    target = _parse_policy(policy)
    lie = SeriesX(N, D, {})
    free_seen = 0
    for d in range(1, D + 1):
        low = lie.with_degree(d)
        basis = [lyndon_bracket(w, N, d) for w in lie_basis(N, d)]
        base_vec = _defect_vector(iota, lam, exp_series(low), d)
        probes = [_defect_vector(iota, lam, exp_series(low + b), d) for b in basis]
        keys = sorted(set(base_vec).union(*probes), key=repr)
        A = [[p.get(k, 0) - base_vec.get(k, 0) for p in probes] for k in keys]
        rhs = [-base_vec.get(k, 0) for k in keys]
        free_values = {}
        if target is not None and free_seen <= target:
            free_values = {target - free_seen: 1}
        try:
            x, free = solve_affine(A, rhs, free_values) if keys else ([Fraction(0)] * len(basis), list(range(len(basis))))
        except InconsistentSystem as exc:
            raise SolverObstruction(d) from exc
        if not keys and target is not None and 0 <= target - free_seen < len(basis):
            x[target - free_seen] = Fraction(1)
        free_seen += len(free)
        for c, w in zip(x, lie_basis(N, d)):
            if c:
                lie = lie + lyndon_bracket(w, N, D).scale(c)
    psi = exp_series(lie)
    if not dmr_check(iota, lam, psi).passed:
        raise SolverObstruction(D, "solution failed the final membership check")
    return psi


@dataclass(frozen=True)
class TorsorPoint:
    iota: Embedding
    lam: Fraction
    psi: SeriesX

    def __post_init__(self):
        object.__setattr__(self, "lam", _frac(self.lam))
        if not self.lam:
            raise ParameterError("torsor points need lambda != 0")

    def check(self) -> DMRReport:
        return dmr_check(self.iota, self.lam, self.psi)

    def __eq__(self, other):
        return isinstance(other, TorsorPoint) and (self.iota, self.lam, self.psi) == (other.iota, other.lam, other.psi)

    __hash__ = None


def in_dmr0(psi: SeriesX) -> bool:
    return dmr_check(Embedding(1, psi.N), 0, psi).passed


def torsor_act(e: SemidirectElem, p: TorsorPoint, *, check: bool = True) -> TorsorPoint:
    """(phi, lam, Psi) . (iota, nu, Phi) = (iota o phi^{-1}, lam nu, Psi (*) eta_phi(lam . Phi))."""
    if check:
        if not in_dmr0(e.psi):
            raise ParameterError("acting series is not in DMR_0")
        if not p.check().passed:
            raise ParameterError("point does not satisfy the DMR conditions")
    psi = circledast(e.psi, act_groupaut(e.phi, act_scale(e.lam, p.psi)))
    return TorsorPoint(p.iota.precompose_inverse(e.phi), e.lam * p.lam, psi)
