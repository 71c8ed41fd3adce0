import logging
from collections import Counter, OrderedDict
from math import lcm
from typing import Dict, List, Tuple

import numpy as np

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.GlasnerModules.glasner import HqHistogram
from glasnerkit.schemas.TorusModules.torus import PointSet, TorusPoint

logger = logging.getLogger(__name__)

INT64_HEADROOM = 1 << 62


def pair_bvector(x: TorusPoint, y: TorusPoint) -> Tuple[int, Tuple[int, ...]]:
    """(q, b): q the least integer with q (x - y) in Z^d and b = q (x - y) mod q."""
    if x.dim != y.dim:
        raise ValidationException(f"dimension mismatch in pair_bvector: {x.dim} != {y.dim}")
    diff = [a - c for a, c in zip(x.coords, y.coords)]
    q = 1
    for t in diff:
        q = lcm(q, t.denominator)
    b = tuple(int(t * q) % q for t in diff)
    return q, b


def _scaled(s: PointSet) -> np.ndarray:
    """Coordinates times lcm_den, as integers."""
    den = s.lcm_den
    return np.array(
        [[c.numerator * (den // c.denominator) for c in p.coords] for p in s.points], dtype=np.int64
    )


def hq_histogram(s: PointSet) -> HqHistogram:
    """h_q over all k^2 ordered pairs, diagonal included (it lands in q = 1)."""
    if s.k < 1:
        raise ValidationException("hq_histogram needs a non-empty point set")
    den = s.lcm_den
    if den < INT64_HEADROOM:
        # q = L / gcd(L, L (x_i - x_j)) with L the common denominator
        scaled = _scaled(s)
        diff = (scaled[:, None, :] - scaled[None, :, :]) % den
        g = np.gcd.reduce(diff, axis=2)
        q = den // np.gcd(g, den)
        values, counts = np.unique(q, return_counts=True)
        entries = {int(v): int(c) for v, c in zip(values, counts)}
    else:
        counter = Counter(pair_bvector(x, y)[0] for x in s.points for y in s.points)
        entries = dict(sorted(counter.items()))
    logger.debug(f"h_q support for k={s.k}: {sorted(entries)}")
    return HqHistogram(entries=entries, k=s.k, dim=s.dim)


def bvectors_by_denominator(s: PointSet) -> Dict[int, List[Tuple[int, ...]]]:
    """For each q, the b-vectors of the ordered pairs (i, j) with denominator q,
    in (i, j) order, without repeats."""
    grouped: Dict[int, "OrderedDict[Tuple[int, ...], None]"] = {}
    for x in s.points:
        for y in s.points:
            q, b = pair_bvector(x, y)
            grouped.setdefault(q, OrderedDict())[b] = None
    return {q: list(bs) for q, bs in sorted(grouped.items())}

