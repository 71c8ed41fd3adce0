import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Any, Union

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.TorusModules.torus import PointSet, TorusPoint

RATIONAL_RE = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


def parse_rational(text: Any, where: str) -> Fraction:
    """Parse "p/q" (or "p") insisting on lowest terms and a value in [0, 1)."""
    if not isinstance(text, str):
        raise ValidationException(f"{where}: expected a rational string like \"1/3\", got {text!r}")
    match = RATIONAL_RE.match(text)
    if not match:
        raise ValidationException(f"{where}: '{text}' is not a rational of the form p/q")
    num = int(match.group(1))
    den = int(match.group(2)) if match.group(2) is not None else 1
    if den == 0:
        raise ValidationException(f"{where}: '{text}' has a zero denominator")
    value = Fraction(num, den)
    if value.denominator != den:
        raise ValidationException(f"{where}: '{text}' is not in lowest terms")
    if not 0 <= value < 1:
        raise ValidationException(f"{where}: '{text}' is outside [0, 1)")
    return value


class PointSetRepository:
    """Reads and writes point set files: {"dim": d, "points": [["p/q", ...], ...]}."""

    def __init__(self, base_dir: Union[str, Path, None] = None):
        self.base_dir = Path(base_dir) if base_dir else None

    def _resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if self.base_dir and not path.is_absolute():
            path = self.base_dir / path
        return path

    def from_dict(self, payload: Any) -> PointSet:
        if not isinstance(payload, dict):
            raise ValidationException("point set: top level must be an object with 'dim' and 'points'")
        dim = payload.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValidationException(f"dim: expected a positive integer, got {dim!r}")
        rows = payload.get("points")
        if not isinstance(rows, list):
            raise ValidationException("points: expected a list of points")

        seen = {}
        points = []
        for i, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                raise ValidationException(f"points[{i}]: expected a list of {dim} rationals")
            coords = tuple(parse_rational(c, f"points[{i}][{j}]") for j, c in enumerate(row))
            if coords in seen:
                raise ValidationException(f"points[{i}]: duplicates points[{seen[coords]}]")
            seen[coords] = i
            points.append(TorusPoint(coords=coords))
        return PointSet(dim=dim, points=points)

    def load(self, path: Union[str, Path]) -> PointSet:
        path = self._resolve(path)
        try:
            payload = json.loads(path.read_text())
        except FileNotFoundError:
            raise ValidationException(f"point set file '{path}' not found")
        except json.JSONDecodeError as exc:
            raise ValidationException(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        return self.from_dict(payload)

    def to_dict(self, s: PointSet) -> dict:
        return {"dim": s.dim, "points": s.as_strings()}

    def save(self, s: PointSet, path: Union[str, Path]) -> Path:
        path = self._resolve(path)
        path.write_text(json.dumps(self.to_dict(s), indent=2))
        return path
