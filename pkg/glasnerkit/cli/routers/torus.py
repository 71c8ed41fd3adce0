import click

from glasnerkit.cli.dependencies import emit, get_torus_service, threads_option

router = click.Group(help="Rational point sets on the d-torus.")


@router.command("density")
@click.option("--set", "set_path", type=click.Path(dir_okay=False), required=True)
@click.option("--eps", type=float, required=True)
@click.option("--mesh", type=float, default=None, help="Grid spacing for d >= 2 (default eps/4).")
@threads_option
@click.pass_context
def density_command(ctx, set_path, eps, mesh, threads):
    """Certify whether the set is eps-dense."""
    response = get_torus_service(ctx).density(set_path, eps, mesh, threads)
    return emit(ctx, "torus density", {"set": set_path, "eps": eps, "mesh": mesh}, response["data"])
