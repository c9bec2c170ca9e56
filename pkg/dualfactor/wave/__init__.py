from .state import BasisLabel, DualityState, RegisterSpec, SubWaveBundle
from .oracles import (
    OracleFn,
    OracleKind,
    divisibility_oracle,
    fermat_oracle,
    marked_unfound_oracle,
    modexp_oracle,
    period_marker_oracle,
)
from .primitives import (
    Readout,
    apply_function,
    apply_sign,
    combine,
    divide,
    init_uniform,
    norm_sq,
    readout,
    sample,
    support,
)

__all__ = [
    "BasisLabel",
    "DualityState",
    "RegisterSpec",
    "SubWaveBundle",
    "OracleFn",
    "OracleKind",
    "divisibility_oracle",
    "fermat_oracle",
    "marked_unfound_oracle",
    "modexp_oracle",
    "period_marker_oracle",
    "Readout",
    "apply_function",
    "apply_sign",
    "combine",
    "divide",
    "init_uniform",
    "norm_sq",
    "readout",
    "sample",
    "support",
]
