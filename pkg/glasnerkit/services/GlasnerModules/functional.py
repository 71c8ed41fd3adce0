"""The bad-set functional

    eps^{-d} sum_{m in B(M)} sum_q (h_q / q) |sum_{n<=q} e_q(m^t A(n) b_q)| + eps^{-d} M^d k

with M = floor(d / eps) and implied constant 1. Both sides are returned;
no inequality between them is asserted.
"""
import itertools
import logging
import math
from typing import Dict, List, Optional, Tuple

import numpy as np

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.GlasnerModules.glasner import FunctionalReport, FunctionalTerm
from glasnerkit.schemas.GlasnerModules.polymatrix import PolyMatrix
from glasnerkit.schemas.TorusModules.torus import PointSet
from glasnerkit.services.ExpSumModules.bounds import content_exp_sum_bound, decompose_modulus
from glasnerkit.services.ExpSumModules.expsum import batch_abs_sums, power_table
from glasnerkit.services.GlasnerModules.bounds import frequency_radius
from glasnerkit.services.GlasnerModules.pairs import bvectors_by_denominator, hq_histogram

logger = logging.getLogger(__name__)

FIRST_PAIR = "first-pair"
MAX_OVER_PAIRS = "max-over-pairs"
STRATEGIES = (FIRST_PAIR, MAX_OVER_PAIRS)


def frequency_box(d: int, M: int) -> np.ndarray:
    """B(M): nonzero integer vectors of [-M, M]^d in lexicographic order."""
    if M < 1:
        return np.zeros((0, d), dtype=np.int64)
    grid = np.array(list(itertools.product(range(-M, M + 1), repeat=d)), dtype=np.int64)
    return grid[(grid != 0).any(axis=1)]


def _form_rows(freqs: np.ndarray, a: PolyMatrix, b: Tuple[int, ...], e: int, q: int) -> np.ndarray:
    """Coefficient rows (m^t A_1 b, ..., m^t A_e b) mod q for every m.

    A_k b is reduced mod q in Python ints, so any height fits in int64.
    """
    columns = []
    for k in range(1, e + 1):
        a_k_b = [sum(c * b_s for c, b_s in zip(row, b)) % q for row in a.coefficient_matrix(k)]
        columns.append((freqs @ np.array(a_k_b, dtype=np.int64)) % q)
    return np.stack(columns, axis=1)


def _content_ratios(rows: np.ndarray, values: np.ndarray, q: int, e: int) -> np.ndarray:
    """|S| divided by the content-weakened refined bound of each row."""
    dec = decompose_modulus(q, max(2, e))
    contents = np.gcd.reduce(np.concatenate([rows % q, np.full((rows.shape[0], 1), q, dtype=np.int64)], axis=1), axis=1)
    cache: Dict[int, float] = {}
    bounds = np.empty(rows.shape[0], dtype=float)
    for idx, s in enumerate(contents.tolist()):
        if s not in cache:
            cache[s] = content_exp_sum_bound(dec, s)
        bounds[idx] = cache[s]
    return values / bounds


def bad_set_functional(
    s: PointSet,
    a: PolyMatrix,
    eps: float,
    strategy: str = FIRST_PAIR,
    split_R: Optional[int] = None,
) -> FunctionalReport:
    if eps is None or eps <= 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    if strategy not in STRATEGIES:
        raise ValidationException(f"unknown strategy '{strategy}', expected one of {', '.join(STRATEGIES)}")
    if a.dim != s.dim:
        raise ValidationException(f"matrix is {a.dim}x{a.dim} but the point set has dimension {s.dim}")
    if split_R is not None and split_R < 1:
        raise ValidationException(f"R must be at least 1, got {split_R}")

    d, k = s.dim, s.k
    e = max(1, a.degree_e)
    M = frequency_radius(d, eps)
    hist = hq_histogram(s)
    candidates = bvectors_by_denominator(s)
    if strategy == FIRST_PAIR:
        candidates = {q: bs[:1] for q, bs in candidates.items()}

    n_freq = (2 * M + 1) ** d - 1 if M >= 1 else 0
    work = n_freq * sum(q * len(bs) for q, bs in candidates.items())
    if work > config.ELEMENTARY_BUDGET:
        raise BudgetExceededException(
            "bad-set functional", work, config.ELEMENTARY_BUDGET, "Use a larger eps or a smaller point set."
        )

    freqs = frequency_box(d, M)
    terms: List[FunctionalTerm] = []
    for q in hist.support:
        h_q = hist.entries[q]
        if freqs.shape[0] == 0:
            terms.append(FunctionalTerm(
                q=q, h_q=h_q, b_q=candidates[q][0] if strategy == FIRST_PAIR else None,
                contribution=0.0, max_abs_sum=0.0, max_ratio_to_content_bound=0.0,
            ))
            continue
        table = power_table(q, e)
        best = np.full(freqs.shape[0], -1.0)
        best_ratio = 0.0
        for b in candidates[q]:
            rows = _form_rows(freqs, a, b, e, q)
            values = batch_abs_sums(q, rows, table)
            best = np.maximum(best, values)
            best_ratio = max(best_ratio, float(_content_ratios(rows, values, q, e).max()))
        terms.append(FunctionalTerm(
            q=q,
            h_q=h_q,
            b_q=candidates[q][0] if strategy == FIRST_PAIR else None,
            contribution=(h_q / q) * math.fsum(best.tolist()),
            max_abs_sum=float(best.max()),
            max_ratio_to_content_bound=best_ratio,
        ))

    scale = eps ** (-d)
    raw = math.fsum(t.contribution for t in terms)
    sum_part = scale * raw
    trailing = scale * M ** d * k
    s1 = s2 = None
    if split_R is not None:
        s1 = math.fsum(t.contribution for t in terms if t.q <= split_R)
        s2 = math.fsum(t.contribution for t in terms if t.q > split_R)

    logger.info(
        f"bad-set functional: k={k}, M={M}, |B(M)|={n_freq}, support {hist.support}, "
        f"rhs={sum_part + trailing:.6g} vs k^2={k * k}"
    )
    return FunctionalReport(
        M=M,
        eps=eps,
        k=k,
        strategy=strategy,
        frequencies=n_freq,
        lhs_value=k * k,
        rhs_value=sum_part + trailing,
        sum_part=sum_part,
        trailing_part=trailing,
        terms=terms,
        split_R=split_R,
        s1=s1,
        s2=s2,
    )
