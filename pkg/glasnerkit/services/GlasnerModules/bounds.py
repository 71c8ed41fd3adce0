"""Reference envelopes for the Glasner threshold k_{d,A}(eps).

Constants c(d, e) and q^{o(1)} factors are dropped throughout. Products are
accumulated as log10 sums, so a value that leaves the float range comes back
as infinity while its log10 stays finite.
"""
import logging
import math
import sys
from typing import Iterable, Tuple

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.GlasnerModules.glasner import ExponentTable, KBoundReport, PipelineReport, TwoTermBound

logger = logging.getLogger(__name__)

LOG10_FLOAT_MAX = math.log10(sys.float_info.max)
# d / eps is rounded up by this much before flooring so that 3 / 0.3 gives 10
FLOOR_SLACK = 1e-9


def _check_args(d: int, e: int, H: float, eps: float):
    if d < 1:
        raise ValidationException(f"d must be at least 1, got {d}")
    if e < 2:
        raise ValidationException(f"e must be at least 2, got {e}")
    if H < 1:
        raise ValidationException(f"H must be at least 1, got {H}")
    if not 0 < eps <= 1:
        raise ValidationException(f"eps must lie in (0, 1], got {eps}")


def frequency_radius(d: int, eps: float) -> int:
    """M = floor(d / eps)."""
    if eps <= 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    return math.floor(d / eps + FLOOR_SLACK)


def log10_product(factors: Iterable[Tuple[float, float]]) -> float:
    """log10 of prod base^exponent; -inf when a zero base has a positive exponent."""
    total = 0.0
    for base, exponent in factors:
        if exponent == 0:
            continue
        if base == 0:
            if exponent > 0:
                return -math.inf
            raise ValidationException("zero raised to a negative power")
        total += exponent * math.log10(base)
    return total


def from_log10(value: float) -> float:
    if value == -math.inf:
        return 0.0
    if value > LOG10_FLOAT_MAX:
        return math.inf
    return 10.0 ** value


def exponent_table(d: int, e: int) -> ExponentTable:
    """H- and eps-exponents of the prior and the new threshold."""
    if d < 1 or e < 2:
        raise ValidationException(f"exponent_table expects d >= 1 and e >= 2, got d={d}, e={e}")
    return ExponentTable(
        d=d,
        e=e,
        prior_H=d * (d + 1),
        new_H=(3 * d + 1) / 2,
        prior_eps=d * (d + 1) * (2 * e + 1),
        new_eps=d * (2 * d + 1) * e + (7 * d + 1) / 2,
    )


def log10_k_bound_prior(d: int, e: int, H: float, eps: float) -> float:
    _check_args(d, e, H, eps)
    table = exponent_table(d, e)
    return log10_product([(H, table.prior_H), (eps, -table.prior_eps)])


def log10_k_bound_new(d: int, e: int, H: float, eps: float) -> float:
    _check_args(d, e, H, eps)
    table = exponent_table(d, e)
    return log10_product([(H, table.new_H), (eps, -table.new_eps)])


def k_bound_prior(d: int, e: int, H: float, eps: float) -> float:
    """H^{d(d+1)} eps^{-d(d+1)(2e+1)}."""
    return from_log10(log10_k_bound_prior(d, e, H, eps))


def k_bound_new(d: int, e: int, H: float, eps: float) -> float:
    """H^{(3d+1)/2} eps^{-d(2d+1)e-(7d+1)/2}."""
    return from_log10(log10_k_bound_new(d, e, H, eps))


def log10_r_opt(d: int, e: int, H: float, eps: float, C: float = 1.0) -> float:
    _check_args(d, e, H, eps)
    if C <= 0:
        raise ValidationException(f"C must be positive, got {C}")
    return log10_product([(C, 1), (H, 1), (eps, -(2 * d * e + 1))])


def r_opt(d: int, e: int, H: float, eps: float, C: float = 1.0) -> float:
    """C H eps^{-2de-1}."""
    return from_log10(log10_r_opt(d, e, H, eps, C))


def k_bound_report(d: int, e: int, H: float, eps: float, C: float = 1.0) -> KBoundReport:
    log_prior = log10_k_bound_prior(d, e, H, eps)
    log_new = log10_k_bound_new(d, e, H, eps)
    log_r = log10_r_opt(d, e, H, eps, C)
    return KBoundReport(
        d=d,
        e=e,
        H=H,
        eps=eps,
        prior=from_log10(log_prior),
        new=from_log10(log_new),
        log10_prior=log_prior,
        log10_new=log_new,
        r_opt=from_log10(log_r),
        log10_r_opt=log_r,
        M=frequency_radius(d, eps),
    )


def _check_pipeline_args(d: int, e: int, H: float, eps: float, R: float, k: int):
    _check_args(d, e, H, eps)
    if R <= 0:
        raise ValidationException(f"R must be positive, got {R}")
    if k < 1:
        raise ValidationException(f"k must be at least 1, got {k}")


def k_bound_two_term(d: int, e: int, H: float, eps: float, R: float, k: int) -> TwoTermBound:
    """k H^{d/2} eps^{-5d/2} R^{d+1/2} and k^2 H^{1/e} eps^{-2d-1/e} R^{-1/e}."""
    _check_pipeline_args(d, e, H, eps, R, k)
    log_first = log10_product([(k, 1), (H, d / 2), (eps, -5 * d / 2), (R, d + 0.5)])
    log_second = log10_product([(k, 2), (H, 1 / e), (eps, -2 * d - 1 / e), (R, -1 / e)])
    return TwoTermBound(
        d=d, e=e, H=H, eps=eps, R=R, k=k,
        first=from_log10(log_first),
        second=from_log10(log_second),
        log10_first=log_first,
        log10_second=log_second,
    )


def proof_pipeline_report(d: int, e: int, H: float, eps: float, R: float, k: int) -> PipelineReport:
    """Envelope values of the head sum, the tail sum and the trailing term at one R."""
    _check_pipeline_args(d, e, H, eps, R, k)
    M = frequency_radius(d, eps)
    s1 = from_log10(log10_product([(k, 1), (H, d / 2), (M, 3 * d / 2), (R, d + 0.5)]))
    s2 = from_log10(log10_product([(k, 2), (H, 1 / e), (M, d + 1 / e), (R, -1 / e)]))
    scale = from_log10(log10_product([(eps, -d)]))
    trailing = scale * M ** d * k
    two_term = k_bound_two_term(d, e, H, eps, R, k)
    report = PipelineReport(
        d=d,
        e=e,
        H=H,
        eps=eps,
        R=R,
        k=k,
        M=M,
        s1_envelope=s1,
        s2_envelope=s2,
        trailing_term=trailing,
        combined=scale * (s1 + s2) + trailing,
        lhs=k * k,
        two_term_first=two_term.first,
        two_term_second=two_term.second,
    )
    logger.debug(f"pipeline d={d} e={e} R={R}: S1={s1:.6g} S2={s2:.6g} trailing={trailing:.6g}")
    return report
