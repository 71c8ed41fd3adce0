from pydantic import BaseModel, Field, validator, root_validator
from typing import List, Optional, Tuple


# Integer polynomial a_0 + a_1 X + ... + a_e X^e, ascending coefficients
class IntPolynomial(BaseModel):
    coeffs: Tuple[int, ...] = (0,)

    @validator("coeffs")
    def non_empty(cls, coeffs):
        return coeffs if coeffs else (0,)

    @property
    def degree(self) -> int:
        """Actual degree; -1 for the zero polynomial."""
        for k in range(len(self.coeffs) - 1, -1, -1):
            if self.coeffs[k] != 0:
                return k
        return -1

    def is_zero(self) -> bool:
        return self.degree < 0

    def __call__(self, n: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * n + c
        return acc

    def coefficient(self, k: int) -> int:
        return self.coeffs[k] if k < len(self.coeffs) else 0

    class Config:
        allow_mutation = False


# A(X) = (a_{r,s}(X)) with a_{r,s}(0) = 0
class PolyMatrix(BaseModel):
    dim: int = Field(..., ge=1)
    entries: List[List[IntPolynomial]]

    @root_validator(skip_on_failure=True)
    def check_entries(cls, values):
        d, entries = values["dim"], values["entries"]
        if len(entries) != d or any(len(row) != d for row in entries):
            raise ValueError(f"entries must form a {d}x{d} array")
        for r, row in enumerate(entries):
            for s, poly in enumerate(row):
                if poly.coeffs[0] != 0:
                    raise ValueError(
                        f"entries[{r}][{s}] has constant term {poly.coeffs[0]}; "
                        "every entry must vanish at X = 0"
                    )
        return values

    @classmethod
    def from_coeffs(cls, rows) -> "PolyMatrix":
        return cls(
            dim=len(rows),
            entries=[[IntPolynomial(coeffs=tuple(c)) for c in row] for row in rows],
        )

    @property
    def degree_e(self) -> int:
        return max(0, max(p.degree for row in self.entries for p in row))

    @property
    def height_H(self) -> int:
        return max(abs(c) for row in self.entries for p in row for c in p.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.entries for p in row)

    def coefficient_matrix(self, k: int) -> List[List[int]]:
        """The integer matrix A_k with A(X) = sum_k A_k X^k."""
        return [[p.coefficient(k) for p in row] for row in self.entries]

    def as_lists(self) -> List[List[List[int]]]:
        return [[list(p.coeffs) for p in row] for row in self.entries]

    class Config:
        allow_mutation = False


class NondegeneracyReport(BaseModel):
    box_B: int
    degree_e: int
    height_H: int
    constant_terms_zero: bool
    pairs_checked: int
    witness_u: Optional[Tuple[int, ...]]
    witness_v: Optional[Tuple[int, ...]]

    @property
    def degenerate(self) -> bool:
        return self.witness_u is not None
