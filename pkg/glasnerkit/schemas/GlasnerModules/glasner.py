from pydantic import BaseModel, Field, root_validator
from typing import Dict, List, Optional, Tuple
from glasnerkit.schemas.TorusModules.torus import Verdict


# h_q: ordered pairs (i, j) whose difference has minimal denominator q
class HqHistogram(BaseModel):
    entries: Dict[int, int]
    k: int = Field(..., ge=0)
    dim: int = Field(1, ge=1)

    @root_validator(skip_on_failure=True)
    def check_identities(cls, values):
        entries, k, d = values["entries"], values["k"], values["dim"]
        total = sum(entries.values())
        if total != k * k:
            raise ValueError(f"sum of h_q is {total}, expected k^2 = {k * k}")
        for q, h in entries.items():
            if h <= 0:
                raise ValueError(f"h_{q} must be positive when listed")
            if h > k * q ** d:
                raise ValueError(f"h_{q} = {h} exceeds k q^d = {k * q ** d}")
        return values

    @property
    def support(self) -> List[int]:
        return sorted(self.entries)


class TraceEntry(BaseModel):
    n: int
    verdict: Verdict
    # exact covering radius as "p/q" for d = 1, the largest probe distance otherwise
    value: str
    support_size: int
    refinements: int = 0


class GlasnerSearchResult(BaseModel):
    minimal_n: Optional[int]
    first_dense_n: Optional[int]
    unresolved: List[int] = []
    trace: List[TraceEntry] = []
    eps: float
    n_max: int

    @root_validator(skip_on_failure=True)
    def check_minimality(cls, values):
        n = values["minimal_n"]
        if n is not None:
            for entry in values["trace"]:
                if entry.n < n and entry.verdict != Verdict.NOT_DENSE:
                    raise ValueError(f"n = {entry.n} < minimal_n is not certified NotDense")
                if entry.n == n and entry.verdict != Verdict.DENSE:
                    raise ValueError("minimal_n must be certified Dense")
        return values


class FunctionalTerm(BaseModel):
    q: int
    h_q: int
    b_q: Optional[Tuple[int, ...]]  # None with max-over-pairs (chosen per m)
    contribution: float  # sum over m of (h_q / q) |S|
    max_abs_sum: float
    max_ratio_to_content_bound: float


class FunctionalReport(BaseModel):
    M: int
    eps: float
    k: int
    strategy: str
    frequencies: int  # #B(M)
    lhs_value: int  # k^2
    rhs_value: float
    sum_part: float  # eps^-d * sum_m sum_q (h_q/q)|S|
    trailing_part: float  # eps^-d M^d k
    terms: List[FunctionalTerm] = []
    split_R: Optional[int]
    s1: Optional[float]
    s2: Optional[float]


class KBoundReport(BaseModel):
    d: int
    e: int
    H: float
    eps: float
    prior: float
    new: float
    log10_prior: float
    log10_new: float
    r_opt: float
    log10_r_opt: float
    M: int


class ExponentTable(BaseModel):
    d: int
    e: int
    prior_H: float
    new_H: float
    prior_eps: float
    new_eps: float

    @property
    def H_dominated(self) -> bool:
        return self.new_H <= self.prior_H

    @property
    def eps_dominated(self) -> bool:
        return self.new_eps <= self.prior_eps


class PipelineReport(BaseModel):
    d: int
    e: int
    H: float
    eps: float
    R: float
    k: int
    M: int
    s1_envelope: float
    s2_envelope: float
    trailing_term: float
    combined: float  # eps^-d (S1 + S2) + eps^-d M^d k
    lhs: int  # k^2
    two_term_first: float  # k H^{d/2} eps^{-5d/2} R^{d+1/2}
    two_term_second: float  # k^2 H^{1/e} eps^{-2d-1/e} R^{-1/e}


# the two terms whose balance fixes R
class TwoTermBound(BaseModel):
    d: int
    e: int
    H: float
    eps: float
    R: float
    k: int
    first: float  # k H^{d/2} eps^{-5d/2} R^{d+1/2}
    second: float  # k^2 H^{1/e} eps^{-2d-1/e} R^{-1/e}
    log10_first: float
    log10_second: float
