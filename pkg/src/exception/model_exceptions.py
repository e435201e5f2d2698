from src.exception.base_exceptions import ConfigException, DataException


class SingleArmDataException(DataException):
    def __init__(self, detail: str = "Training data must contain both treatment arms"):
        super().__init__(detail=detail)


class MissingStructureException(ConfigException):
    def __init__(self, detail: str = "Oracle families need the weighted causal graph"):
        super().__init__(detail=detail)


class UnknownFamilyException(ConfigException):
    def __init__(self, family: str):
        super().__init__(detail=f"Unknown model family: {family}")


class UnknownLossException(ConfigException):
    def __init__(self, loss: str):
        super().__init__(detail=f"No validation loss registered under: {loss}")


class TooFewModelsException(DataException):
    def __init__(self, detail: str = "At least two models are required"):
        super().__init__(detail=detail)
