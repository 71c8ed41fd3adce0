import logging
from typing import Optional

from glasnerkit.core.config import Config
from glasnerkit.repositories.TorusModules.pointsets import PointSetRepository
from glasnerkit.services.TorusModules.density import certify_density

logger = logging.getLogger(__name__)


class TorusService:
    def __init__(self, pointset_repository: PointSetRepository, settings: Config):
        self.pointset_repository = pointset_repository
        self.settings = settings

    def density(self, set_path: str, eps: float, mesh: Optional[float] = None, threads: int = 1):
        """eps-density certificate for a point set file, refining the mesh on Unknown."""
        points = self.pointset_repository.load(set_path)
        cert = certify_density(points, eps, mesh, self.settings.MAX_REFINEMENTS, threads)
        logger.info(f"{set_path}: k={points.k}, d={points.dim}, verdict {cert.verdict.value}")
        return {
            "status": "success",
            "message": f"Verdict {cert.verdict.value} after {cert.refinements} refinements.",
            "data": {"k": points.k, "dim": points.dim, "certificate": cert},
        }
