import click

from glasnerkit.cli.dependencies import emit, emit_csv, format_option
from glasnerkit.services.ArithModules.powerfull import enumerate_power_full, power_full_count

router = click.Group(help="nu-th power full integers.")


@router.command("list")
@click.option("--nu", type=int, required=True)
@click.option("--lo", type=int, default=1, show_default=True)
@click.option("--hi", type=int, required=True)
@format_option
@click.pass_context
def list_command(ctx, nu, lo, hi, fmt):
    """Every nu-full integer in [lo, hi]."""
    found = enumerate_power_full(nu, lo, hi)
    if fmt == "csv":
        emit_csv(["n"], ([m] for m in found.members))
        return None
    return emit(ctx, "powerfull list", {"nu": nu, "lo": lo, "hi": hi},
                {"count": found.count, "members": found.members})


@router.command("count")
@click.option("--nu", type=int, required=True)
@click.option("--x", "limit", type=int, required=True)
@click.pass_context
def count_command(ctx, nu, limit):
    """#F_nu(x), its ratio to x^{1/nu}, and the dyadic shell (x/2, x]."""
    return emit(ctx, "powerfull count", {"nu": nu, "x": limit}, power_full_count(nu, limit).dict())
