import logging
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.GlasnerModules.glasner import GlasnerSearchResult, TraceEntry
from glasnerkit.schemas.GlasnerModules.polymatrix import PolyMatrix
from glasnerkit.schemas.TorusModules.torus import PointSet, Verdict, rat_str
from glasnerkit.services.GlasnerModules.polymatrix import eval_matrix
from glasnerkit.services.TorusModules.density import certify_density
from glasnerkit.services.TorusModules.torus import dilate

logger = logging.getLogger(__name__)


def _trace_entry(a: PolyMatrix, s: PointSet, n: int, eps: float, mesh, max_refinements) -> TraceEntry:
    image = dilate(s, eval_matrix(a, n))
    cert = certify_density(image, eps, mesh, max_refinements)
    if cert.covering_radius is not None:
        value = rat_str(cert.covering_radius)
    elif cert.max_probe_distance is not None:
        value = repr(cert.max_probe_distance)
    else:
        value = "inf"
    return TraceEntry(
        n=n, verdict=cert.verdict, value=value, support_size=image.k, refinements=cert.refinements
    )


def glasner_search(
    a: PolyMatrix,
    s: PointSet,
    eps: float,
    n_max: int,
    threads: int = 1,
    mesh: Optional[float] = None,
    max_refinements: Optional[int] = None,
) -> GlasnerSearchResult:
    """Scan n = 1..n_max for an eps-dense dilation A(n)X.

    The scan stops at the first Dense n. It is reported as minimal_n only
    when every smaller n was certified NotDense; smaller Unknown n are
    listed in ``unresolved``.
    """
    if a.dim != s.dim:
        raise ValidationException(f"matrix is {a.dim}x{a.dim} but the point set has dimension {s.dim}")
    if eps is None or eps <= 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    if n_max < 1:
        raise ValidationException(f"n_max must be at least 1, got {n_max}")

    batch = max(1, threads)
    trace: List[TraceEntry] = []
    first_dense = None
    with ThreadPoolExecutor(max_workers=batch) as pool:
        for start in range(1, n_max + 1, batch):
            ns = range(start, min(n_max, start + batch - 1) + 1)
            entries = list(pool.map(lambda n: _trace_entry(a, s, n, eps, mesh, max_refinements), ns))
            # merged in n order, so the result does not depend on the worker count
            for entry in entries:
                trace.append(entry)
                logger.debug(f"n={entry.n}: {entry.verdict.value} ({entry.value})")
                if entry.verdict == Verdict.DENSE:
                    first_dense = entry.n
                    break
            if first_dense is not None:
                break

    unresolved = [t.n for t in trace if t.verdict == Verdict.UNKNOWN]
    minimal = first_dense if first_dense is not None and not unresolved else None
    if first_dense is None:
        logger.info(f"no eps-dense dilation for n <= {n_max} ({len(unresolved)} unresolved)")
    elif minimal is None:
        logger.warning(f"n={first_dense} is Dense but smaller n {unresolved} stayed Unknown")
    else:
        logger.info(f"minimal n = {minimal}")
    return GlasnerSearchResult(
        minimal_n=minimal,
        first_dense_n=first_dense,
        unresolved=unresolved,
        trace=trace,
        eps=eps,
        n_max=n_max,
    )
