from src.exception.base_exceptions import ConfigException, DataException


class InvalidGraphException(DataException):
    def __init__(self, detail: str = "Graph is malformed"):
        super().__init__(detail=detail)


class CycleDetectedException(DataException):
    def __init__(self, detail: str = "Graph contains a directed cycle"):
        super().__init__(detail=detail)


class UnknownNodeException(DataException):
    def __init__(self, node: int | str):
        super().__init__(detail=f"Unknown node: {node}")


class RoleAssignmentException(DataException):
    def __init__(self, detail: str = "Graph needs exactly one treatment and one outcome node"):
        super().__init__(detail=detail)


class InvalidCiStatementException(DataException):
    def __init__(self, detail: str = "Queried nodes must differ and lie outside the conditioning set"):
        super().__init__(detail=detail)


class NotMutilatedException(DataException):
    def __init__(self, detail: str = "Treatment node still has incoming edges"):
        super().__init__(detail=detail)


class NodeSetMismatchException(DataException):
    def __init__(self, detail: str = "Graphs are defined over different node sets"):
        super().__init__(detail=detail)


class MissingWeightsException(DataException):
    def __init__(self, detail: str = "Every edge needs a weight"):
        super().__init__(detail=detail)


class InfeasibleRolesException(ConfigException):
    def __init__(self, detail: str = "Graph is too small to place treatment and outcome roles"):
        super().__init__(detail=detail)


class InvalidPerturbSetException(DataException):
    def __init__(self, detail: str = "Perturbed nodes must be feature ancestors of the outcome"):
        super().__init__(detail=detail)


class NoAcyclicCompletionException(DataException):
    def __init__(self, detail: str = "No acyclic mutation found within the retry budget"):
        super().__init__(detail=detail)
