"""Exception hierarchy shared by every module of the package."""


class DispsetError(Exception):
    """Base class for all errors raised by dispset."""


class NetworkError(DispsetError):
    pass


class InvalidNetwork(NetworkError):
    """A network violates the structural axioms of a phylogenetic network."""

    def __init__(self, report, message=None):
        self.report = report
        if message is None:
            message = "invalid network: " + "; ".join(str(v) for v in report.violations)
        super().__init__(message)


class UnknownLeaf(NetworkError, KeyError):
    def __str__(self):
        return Exception.__str__(self)


class WouldEmptyNetwork(NetworkError):
    pass


class NoSuchArc(NetworkError):
    pass


class NotReticulationArc(NetworkError):
    pass


class NotTreeChild(NetworkError):
    pass


class NotNormal(NetworkError):
    pass


class LeafSetMismatch(NetworkError):
    pass


class TooManyReticulations(DispsetError):
    def __init__(self, reticulations, bound):
        self.reticulations = reticulations
        self.bound = bound
        super().__init__(
            f"network has {reticulations} reticulations, enumeration bound is {bound}"
        )


class IncompleteSwitching(DispsetError):
    pass


class GenerationExhausted(DispsetError):
    pass


class NoEligibleArc(DispsetError):
    pass


class NewickError(DispsetError):
    pass


class NewickSyntaxError(NewickError):
    def __init__(self, message, position=None):
        self.position = position
        if position is not None:
            message = f"{message} (at position {position})"
        super().__init__(message)


class HybridArityError(NewickError):
    pass
