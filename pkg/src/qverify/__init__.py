"""Exact verification of q-series identities and their weighted partition analogues."""

from .errors import QVerifyError
from .identities import REGISTRY, build_F, build_side, verify, verify_all
from .partitions import Partition, PartitionClass, enumerate_partitions, stats, table_report, weighted_gf
from .qseries import (PochBase, QSeries, first_mismatch, poch_finite, poch_infinite, series_reciprocal,
                      series_specialize)
from .symcoeff import SymbolicCoefficient, coeff_substitute

__version__ = "0.1.0"

__all__ = [
    "QVerifyError", "REGISTRY", "build_F", "build_side", "verify", "verify_all",
    "Partition", "PartitionClass", "enumerate_partitions", "stats", "table_report", "weighted_gf",
    "PochBase", "QSeries", "first_mismatch", "poch_finite", "poch_infinite", "series_reciprocal",
    "series_specialize", "SymbolicCoefficient", "coeff_substitute",
]
