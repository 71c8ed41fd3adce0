"""Complete rational exponential sums S_{e,q}(f).

The polynomial f(n) = f_1 n + ... + f_e n^e is always reduced mod q in exact
integer arithmetic before it is turned into a phase, so the only rounding is
one division r / q per term.
"""
import logging
import math
from typing import Optional, Sequence

import numpy as np

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.ArithModules.arith import Factorization
from glasnerkit.schemas.ExpSumModules.expsum import SumSpec
from glasnerkit.services.ArithModules.factorization import check_factorization, factorize, gcd_vec

logger = logging.getLogger(__name__)

CHUNK = 1 << 20
# int64 products acc * n stay below 2^63 for q below this
INT64_SAFE_Q = 3_000_000_000


def q_content(f: Sequence[int], q: int) -> int:
    """cont_q(f) = gcd(f_1, ..., f_e, q); f lists the non-constant coefficients."""
    return gcd_vec(f, q)


def reduced_degree(f: Sequence[int], q: int) -> int:
    """Largest k with f_k not divisible by q (1-based), 0 if none."""
    for k in range(len(f), 0, -1):
        if f[k - 1] % q != 0:
            return k
    return 0


def _residues(coeffs: Sequence[int], q: int, start: int, stop: int) -> np.ndarray:
    """f(n) mod q for n in [start, stop), by Horner in int64."""
    n = np.arange(start, stop, dtype=np.int64) % q
    acc = np.zeros(stop - start, dtype=np.int64)
    for f_k in reversed(coeffs):
        acc = (acc + f_k) % q
        acc = (acc * n) % q
    return acc


def eval_direct(spec: SumSpec, budget: Optional[int] = None) -> complex:
    """sum_{n=1}^{q} exp(2 pi i f(n) / q) with exactly rounded partial sums."""
    budget = budget if budget is not None else config.DIRECT_BUDGET
    q = spec.modulus_q
    if q > budget:
        raise BudgetExceededException(
            "direct summation", q, budget, "Use eval_crt to split the modulus into prime powers."
        )
    if q >= INT64_SAFE_Q:
        raise BudgetExceededException("int64 residue", q, INT64_SAFE_Q - 1, "Use eval_crt.")

    coeffs = [f % q for f in spec.coeffs]
    re_parts, im_parts = [], []
    for start in range(1, q + 1, CHUNK):
        stop = min(q + 1, start + CHUNK)
        phase = (2.0 * np.pi) * (_residues(coeffs, q, start, stop) / q)
        re_parts.append(math.fsum(np.cos(phase)))
        im_parts.append(math.fsum(np.sin(phase)))
    return complex(math.fsum(re_parts), math.fsum(im_parts))


def _twist(coeffs: Sequence[int], q_part: int, q_other: int):
    """g_k = f_k (q_other)^{k-1} mod q_part."""
    return tuple((f * pow(q_other, k, q_part)) % q_part for k, f in enumerate(coeffs))


def _eval_split(coeffs: Sequence[int], q: int, prime_powers: Sequence[int], budget: Optional[int]) -> complex:
    e = len(coeffs)
    if len(prime_powers) <= 1:
        return eval_direct(SumSpec(degree_e=e, modulus_q=q, coeffs=tuple(coeffs)), budget)
    q_first = prime_powers[0]
    q_rest = q // q_first
    first = eval_direct(
        SumSpec(degree_e=e, modulus_q=q_first, coeffs=_twist(coeffs, q_first, q_rest)), budget
    )
    if first == 0:
        return 0j
    return first * _eval_split(_twist(coeffs, q_rest, q_first), q_rest, prime_powers[1:], budget)


def eval_crt(spec: SumSpec, fact: Factorization, budget: Optional[int] = None) -> complex:
    """S_{e,q'q''}(f) = S_{e,q'}(g') S_{e,q''}(g''), recursing down to prime powers."""
    if fact.n != spec.modulus_q:
        raise ValidationException(
            f"factorization is of {fact.n}, but the modulus is {spec.modulus_q}"
        )
    check_factorization(fact)
    prime_powers = fact.prime_powers()
    logger.debug(f"CRT split of q={spec.modulus_q} into {prime_powers}")
    return _eval_split(list(spec.coeffs), spec.modulus_q, prime_powers, budget)


def eval_sum(spec: SumSpec, budget: Optional[int] = None) -> complex:
    """Direct summation when affordable, otherwise the CRT product."""
    limit = budget if budget is not None else config.DIRECT_BUDGET
    if spec.modulus_q <= limit:
        return eval_direct(spec, limit)
    return eval_crt(spec, factorize(spec.modulus_q), limit)


def power_table(q: int, e: int) -> np.ndarray:
    """Row k holds n^{k+1} mod q for n = 1..q."""
    n = np.arange(1, q + 1, dtype=np.int64) % q
    table = np.empty((e, q), dtype=np.int64)
    current = np.ones(q, dtype=np.int64) % q
    for k in range(e):
        current = (current * n) % q
        table[k] = current
    return table


def batch_abs_sums(q: int, rows: np.ndarray, table: Optional[np.ndarray] = None) -> np.ndarray:
    """|S_{e,q}(f)| for every coefficient row f (shape N x e) sharing the modulus q."""
    rows = np.asarray(rows)
    if rows.ndim != 2:
        raise ValidationException("coefficient rows must form a 2-d array")
    if rows.dtype.kind in "iu":
        rows = (rows % q).astype(np.int64)
    else:
        # coefficients beyond int64 arrive as Python ints
        rows = np.array([[int(c) % q for c in row] for row in rows.tolist()], dtype=np.int64).reshape(rows.shape)
    count, e = rows.shape
    if table is None:
        table = power_table(q, e)
    unit = np.exp(2j * np.pi * (np.arange(q) / q))
    out = np.empty(count, dtype=float)
    step = max(1, CHUNK // max(q, 1))
    for start in range(0, count, step):
        block = rows[start:start + step]
        acc = np.zeros((block.shape[0], q), dtype=np.int64)
        for k in range(e):
            acc = (acc + block[:, k:k + 1] * table[k][None, :]) % q
        out[start:start + step] = np.abs(unit[acc].sum(axis=1))
    return out
