"""Exception hierarchy shared by every module of the package."""


class DgSepError(Exception):
    pass


class FormatError(DgSepError, ValueError):
    """Structurally malformed presentation or JSON input."""


class DivisionByZero(DgSepError, ZeroDivisionError):
    pass


class NoSolution(DgSepError):
    """A linear system is inconsistent.

    ``witness`` is a row combination ``y`` with ``y A = 0`` and ``y b != 0``,
    which proves infeasibility independently of the elimination that found it.
    """

    def __init__(self, rank, augmented_rank, witness, message="linear system has no solution"):
        super().__init__(f"{message} (rank {rank}, augmented rank {augmented_rank})")
        self.rank = rank
        self.augmented_rank = augmented_rank
        self.witness = witness


class ClosureEscape(DgSepError):
    pass


class AutomorphismOrderError(DgSepError):
    pass


class ConsistencyError(DgSepError):
    pass


class FreenessError(DgSepError):
    def __init__(self, degree, message=None):
        super().__init__(message or f"left basis is not a free basis in degree {degree}")
        self.degree = degree


class WindowTooSmall(DgSepError):
    pass


class HypothesisUnverified(DgSepError):
    pass


class CertificateInvalid(DgSepError):
    pass
