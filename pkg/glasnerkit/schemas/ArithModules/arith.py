from pydantic import BaseModel, Field, validator, root_validator
from typing import List, Tuple


# Prime factorization of a positive integer
class Factorization(BaseModel):
    n: int = Field(..., ge=1)
    factors: List[Tuple[int, int]] = []

    @validator("factors")
    def check_factors(cls, factors):
        previous = 1
        for prime, exponent in factors:
            if prime <= previous:
                raise ValueError("primes must be strictly increasing")
            if exponent < 1:
                raise ValueError(f"exponent of {prime} must be >= 1")
            previous = prime
        return factors

    @root_validator(skip_on_failure=True)
    def check_product(cls, values):
        product = 1
        for prime, exponent in values["factors"]:
            product *= prime ** exponent
        if product != values["n"]:
            raise ValueError(f"factors multiply to {product}, not {values['n']}")
        return values

    def prime_powers(self) -> List[int]:
        return [p ** a for p, a in self.factors]

    class Config:
        allow_mutation = False


# nu-th power full integers in a range
class PowerFullSet(BaseModel):
    nu: int = Field(..., ge=2)
    lo: int = Field(1, ge=1)
    limit: int = Field(..., ge=1)
    members: List[int] = []

    @validator("members")
    def check_sorted(cls, members):
        for left, right in zip(members, members[1:]):
            if left >= right:
                raise ValueError("members must be strictly increasing")
        return members

    @root_validator(skip_on_failure=True)
    def check_range(cls, values):
        members = values["members"]
        if members and (members[0] < values["lo"] or members[-1] > values["limit"]):
            raise ValueError("members must lie in [lo, limit]")
        if values["lo"] == 1 and (not members or members[0] != 1):
            raise ValueError("1 is nu-th power full and must be listed")
        return values

    @property
    def count(self) -> int:
        return len(self.members)


class PowerFullCount(BaseModel):
    nu: int
    x: int
    count: int
    ratio: float  # count / x^(1/nu)
    shell_count: int  # #G_nu(x) = #F_nu(x) - #F_nu(x/2)
