import click

from glasnerkit.cli.dependencies import emit, get_glasner_service, threads_option
from glasnerkit.services.GlasnerModules.functional import STRATEGIES

router = click.Group(help="Dilations A(n)X and the bad-set functional.")

matrix_option = click.option("--matrix", "matrix_path", type=click.Path(dir_okay=False), required=True)
set_option = click.option("--set", "set_path", type=click.Path(dir_okay=False), required=True)


@router.command("search")
@matrix_option
@set_option
@click.option("--eps", type=float, required=True)
@click.option("--n-max", type=click.IntRange(min=1), required=True)
@click.option("--mesh", type=float, default=None)
@threads_option
@click.pass_context
def search_command(ctx, matrix_path, set_path, eps, n_max, mesh, threads):
    """Least n for which A(n)X is eps-dense."""
    response = get_glasner_service(ctx).search(matrix_path, set_path, eps, n_max, threads, mesh)
    inputs = {"matrix": matrix_path, "set": set_path, "eps": eps, "n_max": n_max, "mesh": mesh}
    return emit(ctx, "glasner search", inputs, response["data"].dict())


@router.command("hq")
@set_option
@click.pass_context
def hq_command(ctx, set_path):
    response = get_glasner_service(ctx).histogram(set_path)
    return emit(ctx, "glasner hq", {"set": set_path}, response["data"].dict())


@router.command("functional")
@matrix_option
@set_option
@click.option("--eps", type=float, required=True)
@click.option("--strategy", type=click.Choice(STRATEGIES), default=STRATEGIES[0], show_default=True)
@click.option("--R", "split_r", type=click.IntRange(min=1), default=None, help="Split the q-sum at q <= R.")
@click.pass_context
def functional_command(ctx, matrix_path, set_path, eps, strategy, split_r):
    """Both sides of the bad-set functional with implied constant 1."""
    response = get_glasner_service(ctx).functional(matrix_path, set_path, eps, strategy, split_r)
    inputs = {"matrix": matrix_path, "set": set_path, "eps": eps, "strategy": strategy, "R": split_r}
    return emit(ctx, "glasner functional", inputs, response["data"].dict())


@router.command("check-matrix")
@matrix_option
@click.option("--box", type=click.IntRange(min=1), default=None, help="Search box B (default GLASNER_NONDEGENERACY_BOX).")
@click.pass_context
def check_matrix_command(ctx, matrix_path, box):
    """Bounded search for u, v with u^t A(X) v = 0."""
    response = get_glasner_service(ctx).check_matrix(matrix_path, box)
    report = response["data"]
    results = report.dict()
    results["degenerate"] = report.degenerate
    return emit(ctx, "glasner check-matrix", {"matrix": matrix_path, "box": box}, results)
