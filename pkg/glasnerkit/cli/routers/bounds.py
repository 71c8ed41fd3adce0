import click

from glasnerkit.cli.dependencies import emit
from glasnerkit.services.GlasnerModules.bounds import exponent_table, k_bound_report, proof_pipeline_report, r_opt

router = click.Group(help="Reference envelopes for the threshold k_{d,A}(eps).")


def _common(func):
    func = click.option("--eps", type=float, required=True)(func)
    func = click.option("--H", "height", type=float, required=True, help="Height H of A(X).")(func)
    func = click.option("--e", "degree", type=int, required=True)(func)
    func = click.option("--d", "dim", type=int, required=True)(func)
    return func


@router.command("k")
@_common
@click.option("--C", "c_const", type=float, default=1.0, show_default=True, help="Constant in R = C H eps^{-2de-1}.")
@click.pass_context
def k_command(ctx, dim, degree, height, eps, c_const):
    """Prior and new thresholds side by side."""
    report = k_bound_report(dim, degree, height, eps, c_const)
    results = report.dict()
    table = exponent_table(dim, degree)
    results["exponents"] = table.dict()
    inputs = {"d": dim, "e": degree, "H": height, "eps": eps, "C": c_const}
    return emit(ctx, "bounds k", inputs, results)


@router.command("pipeline")
@_common
@click.option("--k", "size", type=click.IntRange(min=1), required=True, help="Set size k.")
@click.option("--R", "split_r", type=float, default=None, help="Split point R.")
@click.option("--C", "c_const", type=float, default=None, help="Use R = C H eps^{-2de-1} instead of --R.")
@click.pass_context
def pipeline_command(ctx, dim, degree, height, eps, size, split_r, c_const):
    """Envelope values of the proof's head and tail sums at one R."""
    if (split_r is None) == (c_const is None):
        raise click.UsageError("give exactly one of --R and --C")
    R = split_r if split_r is not None else r_opt(dim, degree, height, eps, c_const)
    report = proof_pipeline_report(dim, degree, height, eps, R, size)
    inputs = {"d": dim, "e": degree, "H": height, "eps": eps, "k": size, "R": split_r, "C": c_const}
    return emit(ctx, "bounds pipeline", inputs, report.dict())
