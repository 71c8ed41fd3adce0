import logging
import math
from math import gcd
from typing import Optional, Tuple

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.ExpSumModules.expsum import BoundReport, ModulusDecomposition, SumSpec
from glasnerkit.services.ArithModules.factorization import factorize, is_prime
from glasnerkit.services.ExpSumModules.expsum import eval_sum, q_content, reduced_degree

logger = logging.getLogger(__name__)


def decompose_modulus(q: int, e: int) -> ModulusDecomposition:
    """Route each p^a || q: a <= 2 to q_2, a = i (3 <= i < e) to q_i, a >= e to q_e.

    For e = 2 the cube-free part is q_2 and the cube-full part is kept in
    ``cube_full_part``.
    """
    if e < 2:
        raise ValidationException(f"decompose_modulus expects e >= 2, got {e}")
    if q < 1:
        raise ValidationException(f"decompose_modulus expects q >= 1, got {q}")

    parts = {i: 1 for i in range(2, e + 1)}
    cube_full = 1
    for p, a in factorize(q).factors:
        if a <= 2:
            parts[2] *= p ** a
        elif e == 2:
            cube_full *= p ** a
        elif a < e:
            parts[a] *= p ** a
        else:
            parts[e] *= p ** a
    return check_decomposition(ModulusDecomposition(q=q, e=e, parts=parts, cube_full_part=cube_full))


def check_decomposition(dec: ModulusDecomposition) -> ModulusDecomposition:
    """Every prime exponent of q_i must match the part it was routed to."""
    labelled = dec.labelled_parts()
    for idx, (i, value) in enumerate(labelled):
        exponents = [a for _, a in factorize(value).factors]
        if dec.e == 2 and idx == len(labelled) - 1:
            ok = all(a >= 3 for a in exponents)
        elif i == 2:
            ok = all(a <= 2 for a in exponents)
        elif i < dec.e:
            ok = all(a == i for a in exponents)
        else:
            ok = all(a >= dec.e for a in exponents)
        if not ok:
            raise ValidationException(f"part q_{i} = {value} violates its power structure")
    return dec


def hua_bound(q: int, e: int) -> float:
    """q^{1-1/e}, the Hua envelope without its q^{o(1)} factor."""
    if q < 1 or e < 1:
        raise ValidationException(f"hua_bound expects q >= 1 and e >= 1, got q={q}, e={e}")
    return q ** (1.0 - 1.0 / e)


def hua_bound_gcd(q: int, e: int, s: int) -> float:
    """q^{1-1/e} s^{1/e} for polynomials of q-content s."""
    return hua_bound(q, e) * s ** (1.0 / e)


def refined_bound(dec: ModulusDecomposition) -> float:
    """prod_{i=2}^{e} q_i^{1-1/i}."""
    result = 1.0
    for i, q_i in dec.labelled_parts():
        result *= q_i ** (1.0 - 1.0 / i)
    return result


def refined_bound_gcd(dec: ModulusDecomposition, s: int) -> float:
    """q prod_{i=2}^{e} (q_i / gcd(q_i, s))^{-1/i}, for polynomials of q-content s."""
    if s < 1 or dec.q % s != 0:
        raise ValidationException(f"s = {s} does not divide q = {dec.q}")
    result = float(dec.q)
    for i, q_i in dec.labelled_parts():
        result *= (q_i // gcd(q_i, s)) ** (-1.0 / i)
    return result


def content_exp_sum_bound(dec: ModulusDecomposition, s: int) -> float:
    """s^{1/2} q prod q_i^{-1/i}: the refined bound weakened by the content."""
    if s < 1:
        raise ValidationException(f"content must be positive, got {s}")
    result = math.sqrt(s) * dec.q
    for i, q_i in dec.labelled_parts():
        result *= q_i ** (-1.0 / i)
    return result


def weil_bound(q: int, m: int) -> Optional[float]:
    """(m-1) sqrt(q) when q is prime and 1 <= m < q; None otherwise."""
    if q >= 2 and 1 <= m < q and is_prime(q):
        return (m - 1) * math.sqrt(q)
    return None


def bound_report(spec: SumSpec, value: Optional[complex] = None) -> Tuple[complex, BoundReport]:
    """Evaluate the sum (unless given) and set it beside every envelope."""
    if value is None:
        value = eval_sum(spec)
    q, e = spec.modulus_q, spec.degree_e
    s = q_content(spec.coeffs, q)
    m = reduced_degree(spec.coeffs, q)

    if e >= 2:
        dec = decompose_modulus(q, e)
        refined = refined_bound(dec)
        refined_gcd = refined_bound_gcd(dec, s)
    else:
        # linear sums: the envelopes collapse to q^0 = 1 (q-primitive sums vanish)
        refined = 1.0
        refined_gcd = float(s)

    report = BoundReport(
        abs_sum=abs(value),
        hua=hua_bound(q, e),
        refined=refined,
        weil=weil_bound(q, m),
        content=s,
        reduced_degree=m,
        hua_gcd=hua_bound_gcd(q, e, s),
        refined_gcd=refined_gcd,
    )
    logger.debug(f"bounds for q={q}, e={e}: {report.dict()}")
    return value, report
