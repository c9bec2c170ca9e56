class DualityError(ValueError):
    """Base class for every domain error raised by dualfactor."""


class EmptyRegisterError(DualityError):
    def __init__(self) -> None:
        super().__init__("empty register range")


class InvalidParameterError(DualityError):
    pass


class DividerError(DualityError):
    def __init__(self) -> None:
        super().__init__("divider coefficients must sum to one")


class OracleKindError(DualityError):
    pass


class OracleEvaluationError(DualityError):
    def __init__(self, value: int) -> None:
        super().__init__(f"oracle evaluation failed at basis value {value}")
        self.value = value


class SignOracleError(DualityError):
    def __init__(self) -> None:
        super().__init__("sign oracle must return ±1")


class IncompatibleWavesError(DualityError):
    def __init__(self) -> None:
        super().__init__("incompatible sub-waves")


class InputTooSmallError(DualityError):
    def __init__(self) -> None:
        super().__init__("input too small")


class EvenInputError(DualityError):
    def __init__(self) -> None:
        super().__init__("Fermat method requires odd input")


class BelowRootError(DualityError):
    def __init__(self) -> None:
        super().__init__("x below √N")


class NotCoprimeError(DualityError):
    pass


class NoRepresentationError(DualityError):
    def __init__(self, steps: int = 0) -> None:
        super().__init__("prime or no representation")
        self.steps = steps


class UsageError(DualityError):
    pass
