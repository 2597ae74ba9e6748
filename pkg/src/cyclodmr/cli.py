"""Command-line driver.

Exit codes: 0 success, 1 verification failure, 2 usage or parameter error,
3 solver obstruction.
"""

from __future__ import annotations

import json
import os
import sys
from fractions import Fraction
from pathlib import Path

import click

from . import serialize
from .betti import GAElem, NotInWB, iso_M, iso_W
from .crossed import CrossedElem, NotInW, deltaW_DR, reduce_to_M, tensor_w_decompose, w_decompose, z_basis
from .dmr import SolverObstruction, TorsorPoint, dmr_check, dmr_solve
from .harmonic import ModClassY, SeriesY, as_class, harmonic_coproduct_alg, harmonic_coproduct_mod
from .series import Embedding, ParameterError, SeriesX, WindowError, shuffle_coproduct

DEFAULT_CAP = 6
CAP_ENV = "CYCLODMR_MAX_DEGREE"

EXIT_FAIL, EXIT_USAGE, EXIT_OBSTRUCTION = 1, 2, 3


def _rational(ctx, param, value):
    if value is None:
        return None
    try:
        return Fraction(value)
    except (ValueError, ZeroDivisionError):
        raise click.BadParameter(f"not a rational: {value!r}")


def _degree_cap(override: int | None) -> int:
    if override is not None:
        return override
    raw = os.environ.get(CAP_ENV)
    if raw is None:
        return DEFAULT_CAP
    try:
        return int(raw)
    except ValueError:
        raise click.UsageError(f"{CAP_ENV} must be an integer")


def _check_config(N: int, D: int, giota: int, cap: int) -> Embedding:
    if N < 1:
        raise click.BadParameter("N must be at least 1", param_hint="--N")
    if not 0 <= D <= cap:
        raise click.BadParameter(f"D must lie in [0, {cap}] (raise the cap with --max-degree or {CAP_ENV})", param_hint="--D")
    try:
        return Embedding(giota, N)
    except ParameterError as exc:
        raise click.BadParameter(str(exc), param_hint="--giota")


def _emit(payload, out: str | None) -> None:
    text = json.dumps(payload, indent=2, ensure_ascii=False)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        click.echo(text)


def _estimate(N: int, D: int) -> dict:
    n = len(z_basis(N, D))
    return {"N": N, "D": D, "spanning_set": n, "tensor_square_bound": n * n}


class _Group(click.Group):
    def invoke(self, ctx):
        try:
            return super().invoke(ctx)
        except SolverObstruction as exc:
            click.echo(f"solver obstruction at degree {exc.degree}: {exc}", err=True)
            sys.exit(EXIT_OBSTRUCTION)
        except (ParameterError, WindowError, NotInW, NotInWB) as exc:
            click.echo(f"error: {exc}", err=True)
            sys.exit(EXIT_USAGE)


common = [
    click.option("--N", "N", type=int, required=True, help="Order of the cyclic group."),
    click.option("--giota", type=int, default=1, show_default=True, help="Residue sent to exp(2 pi i / N)."),
    click.option("--max-degree", type=int, default=None, help=f"Degree cap (default {DEFAULT_CAP}, or ${CAP_ENV})."),
]


def _common(f):
    for opt in reversed(common):
        f = opt(f)
    return f


@click.group(cls=_Group)
def main():
    """Double shuffle torsors and transported Betti coproducts at truncated degree."""


@main.command()
@_common
@click.option("--D", "D", type=int, required=True, help="Truncation degree.")
@click.option("--lambda", "lam", callback=_rational, default="1", show_default=True)
@click.option("--policy", default="zero", show_default=True, help='Free-variable policy: "zero" or "probe K".')
@click.option("--out", default="psi.json", show_default=True, help="Where to write the series.")
@click.option("--report", default=None, help="Where to write the condition report (default: stdout).")
@click.option("--dry-run", is_flag=True, help="Print the size estimate and stop.")
def solve(N, giota, max_degree, D, lam, policy, out, report, dry_run):
    """Solve the DMR conditions degree by degree and write the series."""
    iota = _check_config(N, D, giota, _degree_cap(max_degree))
    if dry_run:
        _emit(_estimate(N, D), None)
        return
    psi = dmr_solve(N, iota, lam, D, None if policy == "zero" else policy)
    _emit(serialize.dump(psi), out)
    _emit(dmr_check(iota, lam, psi).to_json(), report)


SUITES = ("hopf", "independence", "betti-filtration", "kernel", "comparison")


@main.command()
@_common
@click.option("--suite", type=click.Choice(SUITES), required=True)
@click.option("--D", "D", type=int, default=4, show_default=True)
@click.option("--m", "m", type=int, default=3, show_default=True, help="Top filtration degree (betti-filtration).")
@click.option("--out", default=None, help="Where to write the report (default: stdout).")
@click.option("--dry-run", is_flag=True, help="Print the size estimate and stop.")
def verify(N, giota, max_degree, suite, D, m, out, dry_run):
    """Run a named verification suite; exit 0 iff every check passes."""
    from . import checks
    from .transport import independence_verdict, sample_points

    _check_config(N, D, giota, _degree_cap(max_degree))
    if dry_run:
        _emit(_estimate(N, D), None)
        return
    if suite == "hopf":
        results = checks.hopf_suite(N, D)
        payload = {"suite": suite, "N": N, "degree": D, "checks": results}
        ok = all(results.values())
    elif suite == "independence":
        points = sample_points(N, D, giota=giota)
        payload = independence_verdict(points)
        ok = payload["agree"]
    elif suite == "betti-filtration":
        results = checks.filtration_suite(N, m)
        payload = {"suite": suite, "N": N, "m": m, **results}
        ok = results["gr_dimensions_match"]
    elif suite == "kernel":
        results = checks.kernel_suite(N)
        payload = {"suite": suite, "N": N, "checks": results}
        ok = all(results.values())
    else:
        results = checks.comparison_suite(N, D)
        payload = {"suite": suite, "N": N, "degree": D, "checks": results}
        ok = all(results.values())
    payload["passed"] = ok
    _emit(payload, out)
    if not ok:
        sys.exit(EXIT_FAIL)


COPRODUCTS = ("W-B", "M-B", "W-DR", "M-DR", "shuffle", "harmonic")


def _as_W(elem, iota, D) -> SeriesY:
    if isinstance(elem, GAElem):
        return iso_W(iota, elem, D)
    if isinstance(elem, CrossedElem):
        return w_decompose(elem)
    if isinstance(elem, SeriesY) and not isinstance(elem, ModClassY):
        return elem
    raise ParameterError("element cannot be read in W")


def _as_M(elem, iota, D) -> ModClassY:
    if isinstance(elem, GAElem):
        return iso_M(iota, elem, D)
    if isinstance(elem, CrossedElem):
        return reduce_to_M(elem)
    if isinstance(elem, SeriesY):
        return as_class(elem)
    raise ParameterError("element cannot be read in M")


@main.command()
@_common
@click.option("--kind", type=click.Choice(COPRODUCTS), required=True)
@click.option("--input", "input_", type=click.Path(exists=True, dir_okay=False), required=True)
@click.option("--D", "D", type=int, default=None, help="Truncation (default: the input's, or 4 for group-algebra input).")
@click.option("--lambda", "lam", callback=_rational, default="1", show_default=True, help="Torsor point for Betti kinds.")
@click.option("--policy", default="zero", show_default=True)
@click.option("--out", default=None)
def coproduct(N, giota, max_degree, kind, input_, D, lam, policy, out):
    """Apply a coproduct to a serialized element and write the tensor."""
    try:
        raw = json.loads(Path(input_).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise ParameterError(f"input is not JSON: {exc}")
    elem = serialize.load(raw)
    D = D if D is not None else getattr(elem, "D", 4)
    iota = _check_config(N, D, giota, _degree_cap(max_degree))
    if hasattr(elem, "N") and elem.N != N:
        raise ParameterError("input N disagrees with --N")
    if hasattr(elem, "D") and elem.D != D:
        elem = elem.with_degree(D)
    if kind == "shuffle":
        if not isinstance(elem, SeriesX):
            raise ParameterError("shuffle coproduct needs a series in x")
        t = shuffle_coproduct(elem)
    elif kind == "harmonic":
        t = harmonic_coproduct_alg(_as_W(elem, iota, D))
    elif kind == "W-DR":
        if isinstance(elem, CrossedElem):
            t = tensor_w_decompose(deltaW_DR(elem))
        else:
            t = harmonic_coproduct_alg(_as_W(elem, iota, D))
    elif kind == "M-DR":
        t = harmonic_coproduct_mod(_as_M(elem, iota, D))
    else:
        from .transport import BettiCoproducts

        ref = Embedding(1, N)
        psi = dmr_solve(N, iota, lam, D, None if policy == "zero" else policy)
        B = BettiCoproducts(TorsorPoint(iota, lam, psi))
        t = B.W(_as_W(elem, ref, D)) if kind == "W-B" else B.M(_as_M(elem, ref, D))
    _emit(serialize.dump(t), out)


if __name__ == "__main__":
    main()
