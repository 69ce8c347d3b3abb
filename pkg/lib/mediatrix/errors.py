class MediatrixError(Exception):
    pass


class ArgumentError(MediatrixError, ValueError):
    pass


class ResourceError(MediatrixError):
    pass


class ConstructionError(MediatrixError):
    pass


class SearchBudgetExceeded(MediatrixError):
    """The search hit its node or time limit: the answer is unknown."""

    def __init__(self, message: str, nodes: int = 0) -> None:
        super().__init__(message)
        self.nodes = nodes


class BudgetError(MediatrixError):
    pass


class UsageError(MediatrixError):
    pass


class CertificateError(MediatrixError):
    pass
