from pydantic import BaseModel, Field, validator, root_validator
from typing import Dict, List, Optional, Tuple
from math import gcd

EPS_REL = 1e-12


# S_{e,q}(f) = sum_{n=1}^{q} e_q(f_1 n + ... + f_e n^e)
class SumSpec(BaseModel):
    degree_e: int = Field(..., ge=1)
    modulus_q: int = Field(..., ge=1)
    coeffs: Tuple[int, ...]

    @root_validator(skip_on_failure=True)
    def check_length(cls, values):
        if len(values["coeffs"]) != values["degree_e"]:
            raise ValueError(
                f"coeffs has {len(values['coeffs'])} entries, expected degree_e={values['degree_e']}"
            )
        return values

    class Config:
        allow_mutation = False


# q = q_2 ... q_e routed by prime exponents
class ModulusDecomposition(BaseModel):
    q: int = Field(..., ge=1)
    e: int = Field(..., ge=2)
    parts: Dict[int, int]
    # For e = 2 only: primes with exponent >= 3, the part q_e collects.
    cube_full_part: int = 1

    @validator("parts")
    def check_parts(cls, parts):
        for i, value in parts.items():
            if value < 1:
                raise ValueError(f"q_{i} must be positive")
        return parts

    @root_validator(skip_on_failure=True)
    def check_structure(cls, values):
        q, e, parts = values["q"], values["e"], values["parts"]
        tail = values["cube_full_part"]
        if sorted(parts) != list(range(2, e + 1)):
            raise ValueError(f"parts must be indexed 2..{e}")
        if e > 2 and tail != 1:
            raise ValueError("cube_full_part is only used when e = 2")

        product = tail
        for value in parts.values():
            product *= value
        if product != q:
            raise ValueError(f"parts multiply to {product}, not {q}")

        labelled = list(parts.items()) + ([(e, tail)] if e == 2 else [])
        for idx, (_, value) in enumerate(labelled):
            for _, other in labelled[idx + 1:]:
                if gcd(value, other) != 1:
                    raise ValueError(f"parts {value} and {other} are not coprime")
        return values

    def labelled_parts(self) -> List[Tuple[int, int]]:
        """(i, q_i) pairs including the e = 2 cube-full part under index 2."""
        pairs = sorted(self.parts.items())
        if self.e == 2:
            pairs.append((2, self.cube_full_part))
        return pairs

    def as_labels(self) -> Dict[str, int]:
        labels = {f"q{i}": value for i, value in sorted(self.parts.items())}
        if self.e == 2:
            labels["qe"] = self.cube_full_part
        return labels

    class Config:
        allow_mutation = False


class BoundReport(BaseModel):
    abs_sum: float = Field(..., ge=0)
    hua: float = Field(..., ge=0)
    refined: float = Field(..., ge=0)
    weil: Optional[float]
    content: int = 1
    reduced_degree: int = 0
    hua_gcd: Optional[float]
    refined_gcd: Optional[float]

    @root_validator(skip_on_failure=True)
    def check_order(cls, values):
        if values["refined"] > values["hua"] * (1 + EPS_REL):
            raise ValueError("refined bound exceeds the Hua bound")
        return values


class ExtremalResult(BaseModel):
    q: int
    e: int
    mode: str
    samples: Optional[int]
    seed: Optional[int]
    candidates: int
    max_abs: float
    argmax: Optional[Tuple[int, ...]]
    report: Optional[BoundReport]
