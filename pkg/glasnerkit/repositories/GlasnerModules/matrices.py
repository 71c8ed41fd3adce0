import json
from pathlib import Path
from typing import Any, Union

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.GlasnerModules.polymatrix import PolyMatrix


class MatrixRepository:
    """Reads and writes polynomial matrix files:
    {"dim": d, "entries": [[[c0, c1, ..., ce], ...], ...]}, row-major, ascending coefficients.
    """

    def __init__(self, base_dir: Union[str, Path, None] = None):
        self.base_dir = Path(base_dir) if base_dir else None

    def _resolve(self, path: Union[str, Path]) -> Path:
        path = Path(path)
        if self.base_dir and not path.is_absolute():
            path = self.base_dir / path
        return path

    def from_dict(self, payload: Any) -> PolyMatrix:
        if not isinstance(payload, dict):
            raise ValidationException("matrix: top level must be an object with 'dim' and 'entries'")
        dim = payload.get("dim")
        if not isinstance(dim, int) or isinstance(dim, bool) or dim < 1:
            raise ValidationException(f"dim: expected a positive integer, got {dim!r}")
        rows = payload.get("entries")
        if not isinstance(rows, list) or len(rows) != dim:
            raise ValidationException(f"entries: expected {dim} rows")

        for r, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != dim:
                raise ValidationException(f"entries[{r}]: expected {dim} polynomials")
            for s, coeffs in enumerate(row):
                where = f"entries[{r}][{s}]"
                if not isinstance(coeffs, list) or not coeffs:
                    raise ValidationException(f"{where}: expected a non-empty coefficient list [c0, c1, ...]")
                for k, c in enumerate(coeffs):
                    if not isinstance(c, int) or isinstance(c, bool):
                        raise ValidationException(f"{where}[{k}]: coefficient {c!r} is not an integer")
                if coeffs[0] != 0:
                    raise ValidationException(
                        f"{where}[0]: constant term {coeffs[0]} must be 0 (entries must satisfy a_rs(0) = 0)"
                    )
        return PolyMatrix.from_coeffs(rows)

    def load(self, path: Union[str, Path]) -> PolyMatrix:
        path = self._resolve(path)
        try:
            payload = json.loads(path.read_text())
        except FileNotFoundError:
            raise ValidationException(f"matrix file '{path}' not found")
        except json.JSONDecodeError as exc:
            raise ValidationException(f"{path}: invalid JSON at line {exc.lineno} column {exc.colno}: {exc.msg}")
        return self.from_dict(payload)

    def to_dict(self, a: PolyMatrix) -> dict:
        return {"dim": a.dim, "entries": a.as_lists()}

    def save(self, a: PolyMatrix, path: Union[str, Path]) -> Path:
        path = self._resolve(path)
        path.write_text(json.dumps(self.to_dict(a), indent=2))
        return path
