class DunklBoseException(Exception):
    pass


class DomainError(DunklBoseException, ValueError):
    pass


class DivergenceError(DomainError):
    pass


class PhaseError(DunklBoseException):
    pass


class NumericalError(DunklBoseException, ArithmeticError):
    pass


class TruncationError(NumericalError):
    def __init__(self, message: str, suggested_n_max: int | None = None) -> None:
        super().__init__(message)
        self.suggested_n_max = suggested_n_max
