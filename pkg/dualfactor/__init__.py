from .algorithms import (
    FactorOutcome,
    OutcomeStatus,
    ShorParams,
    dc_fermat,
    dc_shor,
    dc_shor_factorize,
    fermat_representations,
    naive_factorize,
)
from .runner import Runner

__all__ = [
    "FactorOutcome",
    "OutcomeStatus",
    "ShorParams",
    "dc_fermat",
    "dc_shor",
    "dc_shor_factorize",
    "fermat_representations",
    "naive_factorize",
    "Runner",
]
