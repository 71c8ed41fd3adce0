import logging
from typing import Optional

from glasnerkit.core.config import Config
from glasnerkit.core.exceptions import ValidationException
from glasnerkit.repositories.GlasnerModules.matrices import MatrixRepository
from glasnerkit.repositories.TorusModules.pointsets import PointSetRepository
from glasnerkit.services.GlasnerModules.functional import bad_set_functional
from glasnerkit.services.GlasnerModules.pairs import hq_histogram
from glasnerkit.services.GlasnerModules.polymatrix import check_nondegenerate
from glasnerkit.services.GlasnerModules.search import glasner_search

logger = logging.getLogger(__name__)


class GlasnerService:
    def __init__(self, pointset_repository: PointSetRepository, matrix_repository: MatrixRepository, settings: Config):
        self.pointset_repository = pointset_repository
        self.matrix_repository = matrix_repository
        self.settings = settings

    def _load_pair(self, matrix_path: str, set_path: str):
        matrix = self.matrix_repository.load(matrix_path)
        points = self.pointset_repository.load(set_path)
        if matrix.dim != points.dim:
            raise ValidationException(
                f"matrix '{matrix_path}' is {matrix.dim}x{matrix.dim} but set '{set_path}' has dimension {points.dim}"
            )
        return matrix, points

    def search(self, matrix_path: str, set_path: str, eps: float, n_max: int,
               threads: int = 1, mesh: Optional[float] = None):
        """Find the least n with A(n)X eps-dense."""
        matrix, points = self._load_pair(matrix_path, set_path)
        result = glasner_search(
            matrix, points, eps, n_max, threads=threads, mesh=mesh,
            max_refinements=self.settings.MAX_REFINEMENTS,
        )
        if result.minimal_n is not None:
            message = f"Minimal dense dilation at n = {result.minimal_n}."
        elif result.first_dense_n is not None:
            message = f"Dense at n = {result.first_dense_n}, but smaller n remain unresolved."
        else:
            message = f"No dense dilation found for n <= {n_max}."
        return {"status": "success", "message": message, "data": result}

    def histogram(self, set_path: str):
        """h_q of a point set file."""
        points = self.pointset_repository.load(set_path)
        return {
            "status": "success",
            "message": "Pair denominator histogram computed.",
            "data": hq_histogram(points),
        }

    def functional(self, matrix_path: str, set_path: str, eps: float,
                   strategy: str, split_R: Optional[int] = None):
        """Both sides of the bad-set functional."""
        matrix, points = self._load_pair(matrix_path, set_path)
        report = bad_set_functional(points, matrix, eps, strategy, split_R)
        return {"status": "success", "message": "Bad-set functional evaluated.", "data": report}

    def check_matrix(self, matrix_path: str, box: Optional[int] = None):
        matrix = self.matrix_repository.load(matrix_path)
        report = check_nondegenerate(matrix, box if box is not None else self.settings.NONDEGENERACY_BOX)
        message = (
            "Degenerate: witness pair found."
            if report.degenerate
            else f"No degeneracy witness up to box {report.box_B}."
        )
        return {"status": "success", "message": message, "data": report}
