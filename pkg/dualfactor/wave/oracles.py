from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import AbstractSet, Callable, Optional, Union

import numpy as np

from .. import arith


class OracleKind(str, Enum):
    FUNCTION = "function-evaluation"
    SIGN = "sign"


FunctionBody = Callable[[int], int]
SignBody = Callable[[int, int], int]
# Array forms of the same bodies, used when present: reg1 -> values, or (reg1, reg2) -> signs.
BatchBody = Callable[..., np.ndarray]


@dataclass(frozen=True)
class OracleFn:
    kind: OracleKind
    body: Union[FunctionBody, SignBody]
    name: str = "oracle"
    batch: Optional[BatchBody] = None

    @classmethod
    def function(cls, body: FunctionBody, name: str = "f", batch: Optional[BatchBody] = None) -> "OracleFn":
        return cls(OracleKind.FUNCTION, body, name, batch)

    @classmethod
    def sign(cls, body: SignBody, name: str = "sign", batch: Optional[BatchBody] = None) -> "OracleFn":
        return cls(OracleKind.SIGN, body, name, batch)


def divisibility_oracle(n: int) -> OracleFn:
    return OracleFn.function(lambda i: arith.divides_indicator(n, i), name=f"divides[{n}]")


def modexp_oracle(a: int, n: int) -> OracleFn:
    batch = (lambda xs: arith.modexp_many(a, xs, n)) if n < arith.MODEXP_MANY_LIMIT else None
    return OracleFn.function(lambda x: arith.modexp(a, x, n), name=f"modexp[{a},{n}]", batch=batch)


def marked_unfound_oracle(foundlist: AbstractSet[int]) -> OracleFn:
    """Keep the sign of divisor-marked terms not yet found; flip everything else."""
    found = frozenset(foundlist)
    return OracleFn.sign(
        lambda reg1, reg2: 1 if reg2 == 1 and reg1 not in found else -1,
        name="marked-unfound",
    )


def period_marker_oracle() -> OracleFn:
    return OracleFn.sign(
        lambda reg1, reg2: 1 if reg2 == 1 and reg1 != 0 else -1,
        name="unit-residue",
        batch=lambda reg1, reg2: np.where((reg2 == 1) & (reg1 != 0), 1, -1),
    )


def fermat_oracle(n: int) -> OracleFn:
    return OracleFn.sign(lambda x, _reg2: arith.fermat_sign(x, n), name=f"fermat[{n}]")
