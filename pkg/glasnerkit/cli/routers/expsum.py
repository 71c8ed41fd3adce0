import click

from glasnerkit.cli.dependencies import emit, emit_csv, format_option, parse_int_list, threads_option
from glasnerkit.schemas.ExpSumModules.expsum import SumSpec
from glasnerkit.services.ArithModules.factorization import factorize
from glasnerkit.services.ExpSumModules.bounds import bound_report
from glasnerkit.services.ExpSumModules.expsum import eval_crt, eval_direct, eval_sum
from glasnerkit.services.ExpSumModules.extremal import extremal_search

router = click.Group(help="Complete exponential sums S_{e,q}(f).")

EXTREMAL_COLUMNS = ["q", "e", "mode", "candidates", "max_abs", "argmax", "hua", "refined", "ratio_to_refined"]


@router.command("eval")
@click.option("--e", "degree", type=int, required=True, help="Degree e.")
@click.option("--q", "modulus", type=int, required=True, help="Modulus q.")
@click.option("--f", "coeffs", type=str, required=True, help="Coefficients f_1,...,f_e.")
@click.option("--method", type=click.Choice(["auto", "direct", "crt"]), default="auto", show_default=True)
@click.pass_context
def eval_command(ctx, degree, modulus, coeffs, method):
    """Evaluate S_{e,q}(f) and set it beside the bound envelopes."""
    f = parse_int_list(coeffs, "--f")
    spec = SumSpec(degree_e=degree, modulus_q=modulus, coeffs=f)
    if method == "direct":
        value = eval_direct(spec)
    elif method == "crt":
        value = eval_crt(spec, factorize(modulus))
    else:
        value = eval_sum(spec)
    value, report = bound_report(spec, value)
    results = report.dict()
    results["abs"] = results.pop("abs_sum")
    results["value"] = value
    return emit(ctx, "expsum eval", {"e": degree, "q": modulus, "f": list(f), "method": method}, results)


@router.command("extremal")
@click.option("--q", "modulus", type=int, required=True)
@click.option("--e", "degree", type=int, required=True)
@click.option("--q-max", type=int, default=None, help="Sweep every modulus from --q to --q-max.")
@click.option("--mode", type=click.Choice(["exhaustive", "random"]), default="exhaustive", show_default=True)
@click.option("--samples", type=click.IntRange(min=1), default=None)
@click.option("--seed", type=int, default=0, show_default=True)
@threads_option
@format_option
@click.pass_context
def extremal_command(ctx, modulus, degree, q_max, mode, samples, seed, threads, fmt):
    """Largest |S_{e,q}(f)| over q-primitive f."""
    last = q_max if q_max is not None else modulus
    if last < modulus:
        raise click.BadParameter(f"--q-max {last} is below --q {modulus}", param_hint="--q-max")
    sweep = [
        extremal_search(q, degree, mode=mode, samples=samples, seed=seed, threads=threads)
        for q in range(modulus, last + 1)
    ]
    if fmt == "csv":
        rows = []
        for r in sweep:
            hua = r.report.hua if r.report else None
            refined = r.report.refined if r.report else None
            ratio = r.max_abs / refined if refined else None
            rows.append([r.q, r.e, r.mode, r.candidates, r.max_abs, r.argmax, hua, refined, ratio])
        emit_csv(EXTREMAL_COLUMNS, rows)
        return None
    inputs = {"q": modulus, "e": degree, "q_max": q_max, "mode": mode, "samples": samples, "seed": seed}
    if q_max is None:
        return emit(ctx, "expsum extremal", inputs, sweep[0].dict())
    return emit(ctx, "expsum extremal", inputs, {"sweep": [r.dict() for r in sweep]})
