from src.exception.base_exceptions import DataException


class EmptyDatasetException(DataException):
    def __init__(self, detail: str = "Dataset has no rows"):
        super().__init__(detail=detail)


class InsufficientSamplesException(DataException):
    def __init__(self, detail: str = "Not enough samples for the requested statistic"):
        super().__init__(detail=detail)


class NonNumericColumnException(DataException):
    def __init__(self, column: str):
        super().__init__(detail=f"Column is not numeric: {column}")


class ColumnMismatchException(DataException):
    def __init__(self, missing):
        super().__init__(detail=f"Columns missing from dataset: {sorted(missing)}")


class SchemaMismatchException(DataException):
    def __init__(self, detail: str = "Covariate schema does not match"):
        super().__init__(detail=detail)


class MissingOutcomeException(DataException):
    def __init__(self, detail: str = "Dataset has no treatment/outcome columns"):
        super().__init__(detail=detail)


class DegenerateTreatmentException(DataException):
    def __init__(self, detail: str = "Treatment column has a single class"):
        super().__init__(detail=detail)


class LengthMismatchException(DataException):
    def __init__(self, left: int, right: int):
        super().__init__(detail=f"Length mismatch: {left} != {right}")


class EmptyInputException(DataException):
    def __init__(self, detail: str = "Input is empty"):
        super().__init__(detail=detail)


class DataFileNotFoundException(DataException):
    def __init__(self, path):
        super().__init__(detail=f"File not found: {path}")


class NonFiniteValuesException(DataException):
    def __init__(self, detail: str = "Values must be finite"):
        super().__init__(detail=detail)
