from pydantic import BaseModel, Field, validator, root_validator
from typing import List, Optional, Tuple
from fractions import Fraction
from enum import Enum
from math import lcm

# Rat: exact rational with gcd(num, den) = 1 and den >= 1. Fraction keeps
# this normal form by construction.
Rat = Fraction


def rat_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


class TorusPoint(BaseModel):
    coords: Tuple[Fraction, ...]

    @validator("coords", pre=True)
    def to_fractions(cls, coords):
        converted = []
        for c in coords:
            if isinstance(c, float):
                raise ValueError("torus coordinates must be exact rationals, not floats")
            converted.append(c if isinstance(c, Fraction) else Fraction(c))
        return tuple(converted)

    @validator("coords")
    def check_range(cls, coords):
        if not coords:
            raise ValueError("a torus point needs at least one coordinate")
        for i, c in enumerate(coords):
            if not 0 <= c < 1:
                raise ValueError(f"coordinate {i} = {rat_str(c)} is outside [0, 1)")
        return coords

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __hash__(self):
        return hash(self.coords)

    def __eq__(self, other):
        return isinstance(other, TorusPoint) and self.coords == other.coords

    def as_strings(self) -> List[str]:
        return [rat_str(c) for c in self.coords]

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False
        json_encoders = {Fraction: rat_str}


class PointSet(BaseModel):
    dim: int = Field(..., ge=1)
    points: List[TorusPoint]
    lcm_den: int = 1

    @root_validator(skip_on_failure=True)
    def check_points(cls, values):
        d, points = values["dim"], values["points"]
        seen = set()
        den = 1
        for idx, point in enumerate(points):
            if point.dim != d:
                raise ValueError(f"points[{idx}] has dimension {point.dim}, expected {d}")
            if point.coords in seen:
                raise ValueError(f"points[{idx}] duplicates an earlier point")
            seen.add(point.coords)
            for c in point.coords:
                den = lcm(den, c.denominator)
        values["lcm_den"] = den
        return values

    @classmethod
    def from_coords(cls, dim: int, rows) -> "PointSet":
        return cls(dim=dim, points=[TorusPoint(coords=tuple(row)) for row in rows])

    @property
    def k(self) -> int:
        return len(self.points)

    def as_strings(self) -> List[List[str]]:
        return [p.as_strings() for p in self.points]

    class Config:
        arbitrary_types_allowed = True
        allow_mutation = False
        json_encoders = {Fraction: rat_str}


class Verdict(str, Enum):
    DENSE = "Dense"
    NOT_DENSE = "NotDense"
    UNKNOWN = "Unknown"


class DensityCertificate(BaseModel):
    verdict: Verdict
    witness: Optional[TorusPoint]
    witness_distance: Optional[float]
    mesh: float = Field(..., gt=0)
    covering_radius: Optional[Fraction]
    max_probe_distance: Optional[float]
    refinements: int = 0

    @root_validator(skip_on_failure=True)
    def check_witness(cls, values):
        if values["verdict"] == Verdict.NOT_DENSE and values.get("witness") is None:
            raise ValueError("a NotDense verdict needs a witness point")
        return values

    class Config:
        arbitrary_types_allowed = True
        json_encoders = {Fraction: rat_str}
