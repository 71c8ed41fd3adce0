import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Optional

import numpy as np

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.ExpSumModules.expsum import ExtremalResult, SumSpec
from glasnerkit.services.ExpSumModules.bounds import bound_report
from glasnerkit.services.ExpSumModules.expsum import batch_abs_sums, power_table

logger = logging.getLogger(__name__)

ROWS_PER_CHUNK = 1 << 14
TIE_TOL = 1e-9


def _rows_from_indices(indices: np.ndarray, q: int, e: int) -> np.ndarray:
    """Base-q digits, most significant first, so index order is lexicographic order."""
    rows = np.empty((indices.shape[0], e), dtype=np.int64)
    rest = indices.copy()
    for j in range(e - 1, -1, -1):
        rows[:, j] = rest % q
        rest //= q
    return rows


def _primitive(rows: np.ndarray, q: int) -> np.ndarray:
    g = np.gcd.reduce(np.concatenate([rows, np.full((rows.shape[0], 1), q, dtype=np.int64)], axis=1), axis=1)
    return rows[g == 1]


def _best(rows: np.ndarray, values: np.ndarray):
    """Largest value; among near-ties the lexicographically smallest row."""
    if rows.shape[0] == 0:
        return None, -1.0
    top = float(values.max())
    tied = rows[values >= top - TIE_TOL * max(1.0, top)]
    order = np.lexsort(tied.T[::-1])
    return tuple(int(x) for x in tied[order[0]]), top


def extremal_search(
    q: int,
    e: int,
    mode: str = "exhaustive",
    samples: Optional[int] = None,
    seed: int = 0,
    threads: int = 1,
) -> ExtremalResult:
    """Largest |S_{e,q}(f)| over q-primitive f, exhaustively or over a seeded sample."""
    if q < 1 or e < 1:
        raise ValidationException(f"extremal_search expects q >= 1 and e >= 1, got q={q}, e={e}")
    table = power_table(q, e)

    if mode == "exhaustive":
        total = q ** e
        if total > config.EXHAUSTIVE_BUDGET:
            raise BudgetExceededException(
                "exhaustive search", total, config.EXHAUSTIVE_BUDGET, "Use --mode random."
            )
        starts = range(0, total, ROWS_PER_CHUNK)

        def chunk_rows(start):
            stop = min(total, start + ROWS_PER_CHUNK)
            return _primitive(_rows_from_indices(np.arange(start, stop, dtype=np.int64), q, e), q)

    elif mode == "random":
        if not samples or samples < 1:
            raise ValidationException("random mode needs samples >= 1")
        rng = np.random.default_rng(seed)
        drawn = rng.integers(0, q, size=(samples, e), dtype=np.int64)
        starts = range(0, samples, ROWS_PER_CHUNK)

        def chunk_rows(start):
            return _primitive(drawn[start:start + ROWS_PER_CHUNK], q)

    else:
        raise ValidationException(f"unknown mode '{mode}', expected exhaustive or random")

    def work(start):
        rows = chunk_rows(start)
        if rows.shape[0] == 0:
            return 0, None, -1.0
        values = batch_abs_sums(q, rows, table)
        argmax, top = _best(rows, values)
        return rows.shape[0], argmax, top

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        results = list(pool.map(work, starts))

    candidates = sum(r[0] for r in results)
    best_f, best_val = None, -1.0
    # near-ties go to the lexicographically smallest coefficient vector
    for _, argmax, top in results:
        if argmax is None:
            continue
        if best_f is None or top > best_val + TIE_TOL * max(1.0, best_val):
            best_f, best_val = argmax, top
        elif abs(top - best_val) <= TIE_TOL * max(1.0, best_val) and argmax < best_f:
            best_f = argmax

    report = None
    if best_f is not None:
        value, report = bound_report(SumSpec(degree_e=e, modulus_q=q, coeffs=best_f))
        best_val = abs(value)
    else:
        best_val = 0.0

    logger.info(f"extremal search q={q} e={e} mode={mode}: {candidates} primitive candidates, max |S| = {best_val}")
    return ExtremalResult(
        q=q,
        e=e,
        mode=mode,
        samples=samples if mode == "random" else None,
        seed=seed if mode == "random" else None,
        candidates=candidates,
        max_abs=best_val,
        argmax=best_f,
        report=report,
    )
