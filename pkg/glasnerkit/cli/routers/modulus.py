import click

from glasnerkit.cli.dependencies import emit
from glasnerkit.services.ArithModules.factorization import factorize
from glasnerkit.services.ExpSumModules.bounds import decompose_modulus, hua_bound, refined_bound

router = click.Group(help="Factorization and power-structure decomposition of moduli.")


@router.command("decompose")
@click.option("--q", "modulus", type=int, required=True)
@click.option("--e", "degree", type=int, required=True)
@click.pass_context
def decompose_command(ctx, modulus, degree):
    """q = q_2 ... q_e, routed by prime exponents."""
    dec = decompose_modulus(modulus, degree)
    results = dec.as_labels()
    results["hua"] = hua_bound(modulus, degree)
    results["refined"] = refined_bound(dec)
    return emit(ctx, "modulus decompose", {"q": modulus, "e": degree}, results)


@router.command("factor")
@click.option("--n", "number", type=int, required=True)
@click.pass_context
def factor_command(ctx, number):
    fact = factorize(number)
    return emit(ctx, "modulus factor", {"n": number}, {"factors": [list(pair) for pair in fact.factors]})
