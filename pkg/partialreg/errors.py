"""Exception hierarchy.

Every error raised on purpose by partialreg derives from ``PartialRegError``
and carries the process exit code the CLI reports for it.
"""


class PartialRegError(Exception):
    """Base class for partialreg errors."""

    exit_code = 1


class InputValidationError(PartialRegError, ValueError):
    """The input is malformed or violates a precondition."""

    exit_code = 2


class DegeneracyError(PartialRegError, ArithmeticError):
    """The input is well formed but numerically degenerate."""

    exit_code = 3


class EmptyDatasetError(InputValidationError):
    pass


class NonFiniteValueError(InputValidationError):
    def __init__(self, column: str, row: int, detail: str = "holds a non-finite value") -> None:
        self.column = column
        self.row = row
        super().__init__(f"Column '{column}' {detail} at row {row}")


class DuplicateColumnError(InputValidationError):
    def __init__(self, column: str) -> None:
        self.column = column
        super().__init__(f"Duplicate column name '{column}'")


class UnknownColumnError(InputValidationError):
    def __init__(self, column: str, available: list[str]) -> None:
        self.column = column
        super().__init__(f"Unknown column '{column}' (available: {', '.join(available)})")


class ResponseInRegressorsError(InputValidationError):
    def __init__(self, response: str) -> None:
        self.response = response
        super().__init__(f"Response '{response}' is also listed among the regressors")


class NotCenteredError(InputValidationError):
    pass


class CsvFormatError(InputValidationError):
    """A CSV cell or row could not be ingested; ``row`` is the 1-based file line."""

    def __init__(self, message: str, row: int, column: str | None = None) -> None:
        self.row = row
        self.column = column
        where = f"row {row}" if column is None else f"row {row}, column '{column}'"
        super().__init__(f"{where}: {message}")


class CovarianceError(InputValidationError):
    pass


class ScenarioInputError(InputValidationError):
    pass


class RankDeficiencyError(DegeneracyError):
    def __init__(self, column: str, condition: float) -> None:
        self.column = column
        self.condition = condition
        super().__init__(
            f"Design is rank deficient: column '{column}' is (nearly) a linear combination "
            f"of the others (condition estimate {condition:.3e})"
        )


class DegenerateColumnError(DegeneracyError):
    def __init__(self, column: str) -> None:
        self.column = column
        super().__init__(f"Column '{column}' is constant after centering")


class DegenerateResponseError(DegeneracyError):
    def __init__(self, column: str) -> None:
        self.column = column
        super().__init__(f"Response '{column}' has zero total sum of squares")


class DegenerateResidualError(DegeneracyError):
    def __init__(self, target: str, controls: list[str]) -> None:
        self.target = target
        self.controls = list(controls)
        super().__init__(
            f"'{target}' has no variance left after partialling out {', '.join(controls) or 'nothing'}"
        )


class SingularMatrixError(DegeneracyError):
    pass


class DegenerateCorrelationError(DegeneracyError):
    def __init__(self, rho_sq: float) -> None:
        self.rho_sq = rho_sq
        super().__init__(f"Regressors are perfectly correlated (rho^2 = {rho_sq!r}); need rho^2 < 1")


class EquivalenceError(DegeneracyError):
    pass
