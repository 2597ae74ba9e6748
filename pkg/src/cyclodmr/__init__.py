"""Double shuffle torsors for cyclic groups, Gamma-twisted automorphisms and transported Betti coproducts."""

from .betti import GAElem, gr_dimension, iso_M, iso_V, iso_W, mB_reduce, ns_generators, sigma_decompose, wb_decompose
from .crossed import CrossedElem, deltaM_DR, deltaW_DR
from .dmr import SolverObstruction, TorsorPoint, dmr_check, dmr_solve, torsor_act
from .harmonic import ModClassY, SeriesY, harmonic_coproduct_alg, harmonic_coproduct_mod, psi_star
from .magnus import SemidirectElem, aut_psi, circledast, semidirect_mul, stab_checkM, stab_checkW
from .series import Embedding, GroupAut, SeriesX, Tensor
from .transport import BettiCoproducts, ef_reference_check, independence_verdict

__all__ = [
    "BettiCoproducts",
    "CrossedElem",
    "Embedding",
    "GAElem",
    "GroupAut",
    "ModClassY",
    "SemidirectElem",
    "SeriesX",
    "SeriesY",
    "SolverObstruction",
    "Tensor",
    "TorsorPoint",
    "aut_psi",
    "circledast",
    "deltaM_DR",
    "deltaW_DR",
    "dmr_check",
    "dmr_solve",
    "ef_reference_check",
    "gr_dimension",
    "harmonic_coproduct_alg",
    "harmonic_coproduct_mod",
    "independence_verdict",
    "iso_M",
    "iso_V",
    "iso_W",
    "mB_reduce",
    "ns_generators",
    "psi_star",
    "semidirect_mul",
    "sigma_decompose",
    "stab_checkM",
    "stab_checkW",
    "torsor_act",
    "wb_decompose",
]
