"""epsilon-density certificates for finite rational subsets of the torus.

For d = 1 the verdict is exact. For d >= 2 the torus is probed at the
vertices of a cubic grid with spacing h <= mesh; every point of the torus
lies within h sqrt(d) / 2 of a probe, which turns probe distances into a
two-sided certificate with an Unknown band in between.
"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Optional

import numpy as np

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.TorusModules.torus import DensityCertificate, PointSet, TorusPoint, Verdict
from glasnerkit.services.TorusModules.torus import covering_radius_1d, largest_gap_midpoint, wrap_sq_distance

logger = logging.getLogger(__name__)

PROBE_CELLS_PER_CHUNK = 1 << 22


def _grid_chunk(start: int, stop: int, n: int, d: int) -> np.ndarray:
    """Integer grid coordinates (i_1, ..., i_d) of probes start..stop-1."""
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, d), dtype=np.int64)
    for j in range(d - 1, -1, -1):
        out[:, j] = idx % n
        idx //= n
    return out


def _nearest_distances(grid: np.ndarray, n: int, pts: np.ndarray) -> np.ndarray:
    probes = grid / n
    diff = np.abs(probes[:, None, :] - pts[None, :, :])
    wrapped = np.minimum(diff, 1.0 - diff)
    return np.sqrt((wrapped ** 2).sum(axis=2).min(axis=1))


def _exact_nearest_sq(point, s: PointSet) -> Fraction:
    return min(wrap_sq_distance(point, p.coords) for p in s.points)


def is_eps_dense(s: PointSet, eps: float, mesh: Optional[float] = None, threads: int = 1) -> DensityCertificate:
    """Certify whether every point of the torus lies within eps of the set."""
    if eps is None or eps <= 0:
        raise ValidationException(f"eps must be positive, got {eps}")
    mesh = mesh if mesh is not None else eps / 4
    if mesh <= 0:
        raise ValidationException(f"mesh must be positive, got {mesh}")
    if mesh > eps:
        raise ValidationException(f"mesh = {mesh} must not exceed eps = {eps}")
    d = s.dim
    eps_exact = Fraction(eps)

    if not s.points:
        origin = TorusPoint(coords=(Fraction(0),) * d)
        return DensityCertificate(
            verdict=Verdict.NOT_DENSE, witness=origin, witness_distance=math.inf, mesh=mesh,
            covering_radius=None, max_probe_distance=math.inf,
        )

    if d == 1:
        radius = covering_radius_1d(s)
        dense = radius <= eps_exact
        return DensityCertificate(
            verdict=Verdict.DENSE if dense else Verdict.NOT_DENSE,
            witness=None if dense else TorusPoint(coords=(largest_gap_midpoint(s),)),
            witness_distance=None if dense else float(radius),
            mesh=mesh,
            covering_radius=radius,
            max_probe_distance=None,
        )

    n = math.ceil(1.0 / mesh)
    h = 1.0 / n
    margin = h * math.sqrt(d) / 2
    total = n ** d
    if total * s.k > config.ELEMENTARY_BUDGET:
        raise BudgetExceededException("grid probing", total * s.k, config.ELEMENTARY_BUDGET, "Use a coarser mesh.")

    pts = np.array([[float(c) for c in p.coords] for p in s.points])
    step = max(1, PROBE_CELLS_PER_CHUNK // (s.k * d))

    def work(start):
        stop = min(total, start + step)
        dist = _nearest_distances(_grid_chunk(start, stop, n, d), n, pts)
        j = int(np.argmax(dist))
        return float(dist[j]), start + j

    with ThreadPoolExecutor(max_workers=max(1, threads)) as pool:
        chunks = list(pool.map(work, range(0, total, step)))
    # first chunk wins ties, so the witness does not depend on scheduling
    worst, worst_idx = max(chunks, key=lambda c: (c[0], -c[1]))

    witness = None
    witness_distance = None
    if worst <= eps - margin:
        verdict = Verdict.DENSE
    elif worst > eps + margin:
        coords = tuple(Fraction(int(i), n) for i in _grid_chunk(worst_idx, worst_idx + 1, n, d)[0])
        exact_sq = _exact_nearest_sq(coords, s)
        if exact_sq > eps_exact * eps_exact:
            verdict = Verdict.NOT_DENSE
            witness = TorusPoint(coords=coords)
            witness_distance = math.sqrt(exact_sq.numerator / exact_sq.denominator)
        else:
            logger.warning(f"probe {coords} failed the exact distance check; reporting Unknown")
            verdict = Verdict.UNKNOWN
    else:
        verdict = Verdict.UNKNOWN

    logger.debug(f"grid {n}^{d}: max probe distance {worst:.6f}, margin {margin:.6f} -> {verdict.value}")
    return DensityCertificate(
        verdict=verdict, witness=witness, witness_distance=witness_distance, mesh=mesh,
        covering_radius=None, max_probe_distance=worst,
    )


def certify_density(
    s: PointSet,
    eps: float,
    mesh: Optional[float] = None,
    max_refinements: Optional[int] = None,
    threads: int = 1,
) -> DensityCertificate:
    """is_eps_dense, halving the mesh while the verdict stays Unknown."""
    max_refinements = config.MAX_REFINEMENTS if max_refinements is None else max_refinements
    cert = is_eps_dense(s, eps, mesh, threads)
    mesh = cert.mesh
    rounds = 0
    while cert.verdict == Verdict.UNKNOWN and rounds < max_refinements:
        mesh /= 2
        try:
            refined = is_eps_dense(s, eps, mesh, threads)
        except BudgetExceededException as exc:
            logger.warning(f"stopping mesh refinement at round {rounds}: {exc.detail}")
            break
        rounds += 1
        cert = refined
        logger.debug(f"refinement {rounds}: mesh {mesh} -> {cert.verdict.value}")
    cert.refinements = rounds
    return cert
