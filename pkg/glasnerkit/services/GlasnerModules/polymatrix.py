import itertools
import logging
from typing import List, Optional, Sequence

import numpy as np

from glasnerkit.core.config import config
from glasnerkit.core.exceptions import BudgetExceededException, ValidationException
from glasnerkit.schemas.GlasnerModules.polymatrix import IntPolynomial, NondegeneracyReport, PolyMatrix
from glasnerkit.services.ExpSumModules.expsum import q_content

logger = logging.getLogger(__name__)

# u-vectors scanned per numpy block in check_nondegenerate
PAIR_CELLS_PER_BLOCK = 1 << 22
INT64_HEADROOM = 1 << 62


def eval_matrix(a: PolyMatrix, n: int) -> List[List[int]]:
    """A(n), entrywise exact."""
    return [[p(n) for p in row] for row in a.entries]


def _check_vector(v: Sequence[int], d: int, name: str):
    if len(v) != d:
        raise ValidationException(f"{name} has {len(v)} entries, the matrix is {d}x{d}")


def form_polynomial(m: Sequence[int], a: PolyMatrix, b: Sequence[int]) -> IntPolynomial:
    """The integer polynomial m^t A(X) b, coefficients c_k = m^t A_k b."""
    _check_vector(m, a.dim, "m")
    _check_vector(b, a.dim, "b")
    top = max(1, a.degree_e)
    coeffs = []
    for k in range(top + 1):
        a_k = a.coefficient_matrix(k)
        coeffs.append(sum(m[r] * a_k[r][s] * b[s] for r in range(a.dim) for s in range(a.dim)))
    return IntPolynomial(coeffs=tuple(coeffs))


def content_of_form(m: Sequence[int], a: PolyMatrix, b: Sequence[int], q: int) -> int:
    """cont_q(m^t A(X) b)."""
    poly = form_polynomial(m, a, b)
    return q_content(poly.coeffs[1:], q)


def canonical_vectors(d: int, box: int) -> np.ndarray:
    """Nonzero vectors of [-box, box]^d with first nonzero entry positive,
    ordered by sup norm and then lexicographically."""
    grid = np.array(list(itertools.product(range(-box, box + 1), repeat=d)), dtype=np.int64)
    nonzero = grid != 0
    lead = grid[np.arange(grid.shape[0]), nonzero.argmax(axis=1)]
    vecs = grid[nonzero.any(axis=1) & (lead > 0)]
    keys = tuple(vecs.T[::-1]) + (np.abs(vecs).max(axis=1),)
    return vecs[np.lexsort(keys)]


def check_nondegenerate(a: PolyMatrix, box_B: Optional[int] = None) -> NondegeneracyReport:
    """Search nonzero u, v in [-B, B]^d for u^t A(X) v identically zero.

    u and v are taken up to sign, since (u, v), (-u, v), (u, -v) give the
    same polynomial up to sign. The first witness in (u, v) order is
    returned; no witness means the condition holds on the box only.
    """
    box_B = config.NONDEGENERACY_BOX if box_B is None else box_B
    if box_B < 1:
        raise ValidationException(f"box_B must be at least 1, got {box_B}")
    d, e = a.dim, a.degree_e
    constant_zero = all(p.coefficient(0) == 0 for row in a.entries for p in row)

    per_axis = ((2 * box_B + 1) ** d - 1) // 2
    total = per_axis * per_axis
    if total * max(1, e) > config.ELEMENTARY_BUDGET:
        raise BudgetExceededException(
            "nondegeneracy search", total * max(1, e), config.ELEMENTARY_BUDGET, "Use a smaller --box."
        )

    vecs = canonical_vectors(d, box_B)
    exact = a.height_H * box_B * box_B * d * d >= INT64_HEADROOM
    dtype = object if exact else np.int64
    vecs = vecs.astype(dtype)
    # (e, d, d) stack of A_1, ..., A_e
    stack = [np.array(a.coefficient_matrix(k), dtype=dtype) for k in range(1, e + 1)]

    witness_u = witness_v = None
    checked = total
    step = max(1, PAIR_CELLS_PER_BLOCK // max(1, per_axis * max(1, e)))
    for start in range(0, per_axis, step):
        block = vecs[start:start + step]
        if stack:
            # rows u^t A_k, then every v at once
            values = np.stack([(block @ a_k) @ vecs.T for a_k in stack])
            zero = ~(values != 0).any(axis=0)
        else:
            zero = np.ones((block.shape[0], per_axis), dtype=bool)
        hits = np.argwhere(zero)
        if hits.size:
            i, j = (int(x) for x in hits[0])
            witness_u = tuple(int(x) for x in block[i])
            witness_v = tuple(int(x) for x in vecs[j])
            checked = (start + i) * per_axis + j + 1
            break

    if witness_u is not None:
        logger.info(f"degenerate matrix: u={witness_u}, v={witness_v} gives u^t A(X) v = 0")
    else:
        logger.info(f"no degeneracy witness in [-{box_B}, {box_B}]^{d} ({total} pairs)")
    return NondegeneracyReport(
        box_B=box_B,
        degree_e=e,
        height_H=a.height_H,
        constant_terms_zero=constant_zero,
        pairs_checked=checked,
        witness_u=witness_u,
        witness_v=witness_v,
    )
