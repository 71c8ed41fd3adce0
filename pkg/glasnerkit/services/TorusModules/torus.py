import logging
import math
from fractions import Fraction
from typing import List, Sequence

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.TorusModules.torus import PointSet, TorusPoint

logger = logging.getLogger(__name__)


def _frac_part(x: Fraction) -> Fraction:
    return x - (x.numerator // x.denominator)


def _check_dims(d1: int, d2: int, what: str):
    if d1 != d2:
        raise ValidationException(f"dimension mismatch in {what}: {d1} != {d2}")


def wrap_sq_distance(x: Sequence[Fraction], y: Sequence[Fraction]) -> Fraction:
    """Exact squared torus distance."""
    total = Fraction(0)
    for a, b in zip(x, y):
        delta = abs(a - b)
        delta = min(delta, 1 - delta)
        total += delta * delta
    return total


def torus_distance(x: TorusPoint, y: TorusPoint) -> float:
    """sqrt of sum_i min(|a_i - b_i|, 1 - |a_i - b_i|)^2."""
    _check_dims(x.dim, y.dim, "torus_distance")
    sq = wrap_sq_distance(x.coords, y.coords)
    # sqrt of the exact rational, correctly rounded for perfect squares
    num, den = sq.numerator, sq.denominator
    root_num, root_den = math.isqrt(num), math.isqrt(den)
    if root_num * root_num == num and root_den * root_den == den:
        return root_num / root_den
    return math.sqrt(num / den)


def covering_radius_1d(s: PointSet) -> Fraction:
    """Half the largest circular gap between consecutive points."""
    if s.dim != 1:
        raise ValidationException(f"covering_radius_1d needs d = 1, got d = {s.dim}")
    if not s.points:
        raise ValidationException("covering radius of an empty set is undefined")
    xs = sorted(p.coords[0] for p in s.points)
    largest = 1 - xs[-1] + xs[0]
    for left, right in zip(xs, xs[1:]):
        largest = max(largest, right - left)
    return largest / 2


def largest_gap_midpoint(s: PointSet) -> Fraction:
    """Midpoint of the largest circular gap: the point farthest from the set (d = 1)."""
    xs = sorted(p.coords[0] for p in s.points)
    best_gap, best_mid = 1 - xs[-1] + xs[0], _frac_part(xs[-1] + (1 - xs[-1] + xs[0]) / 2)
    for left, right in zip(xs, xs[1:]):
        if right - left > best_gap:
            best_gap, best_mid = right - left, (left + right) / 2
    return best_mid


def _image(point: TorusPoint, m: Sequence[Sequence[int]]) -> tuple:
    return tuple(
        _frac_part(sum((m_rs * c for m_rs, c in zip(row, point.coords)), Fraction(0)))
        for row in m
    )


def _check_matrix(s: PointSet, m: Sequence[Sequence[int]]):
    if len(m) != s.dim or any(len(row) != s.dim for row in m):
        raise ValidationException(f"matrix must be {s.dim}x{s.dim} to act on the set")


def dilate_multiset(s: PointSet, m: Sequence[Sequence[int]]) -> List[TorusPoint]:
    """Images m x mod 1 of every point, keeping repeats."""
    _check_matrix(s, m)
    return [TorusPoint(coords=_image(p, m)) for p in s.points]


def dilate(s: PointSet, m: Sequence[Sequence[int]]) -> PointSet:
    """m X mod 1 with repeated images collapsed (first occurrence kept)."""
    _check_matrix(s, m)
    seen = set()
    images = []
    for p in s.points:
        coords = _image(p, m)
        if coords not in seen:
            seen.add(coords)
            images.append(coords)
    collapsed = s.k - len(images)
    if collapsed:
        logger.debug(f"dilation collapsed {collapsed} of {s.k} images")
    return PointSet.from_coords(s.dim, images)


def translate(s: PointSet, t: Sequence[Fraction]) -> PointSet:
    """X + t mod 1."""
    _check_dims(s.dim, len(t), "translate")
    shift = [Fraction(c) for c in t]
    return PointSet.from_coords(
        s.dim, [tuple(_frac_part(c + u) for c, u in zip(p.coords, shift)) for p in s.points]
    )
