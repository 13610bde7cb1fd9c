"""Exact q-series arithmetic and certified Radu-Sellers congruence checks."""

from .qseries import (ExponentVector, TruncatedSeries, eta_quotient_series,
                      euler_factor, pk_oracle, pk_series)
from .radu import Certificate, RaduTuple, verify_congruence
from .congruences import PAPER_CASES, paper_case, verify_theorem

__all__ = [
    "ExponentVector", "TruncatedSeries", "eta_quotient_series", "euler_factor",
    "pk_oracle", "pk_series", "Certificate", "RaduTuple", "verify_congruence",
    "PAPER_CASES", "paper_case", "verify_theorem",
]
__version__ = "0.1.0"
