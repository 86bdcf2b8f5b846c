"""Star-product private information retrieval over coded storage."""

from . import algebra, bounds, codes, families, pir
from .codes import DistanceCertificate, LinearCode, dual, min_distance, star_product
from .errors import *  # noqa: F401,F403
from .report import Report, report_emit

__version__ = "0.1.0"
