"""Exception hierarchy shared by all modules."""


class HyperdualError(Exception):
    """Base class for errors raised by this package."""


class InvalidInputError(HyperdualError, ValueError):
    """Non-finite, malformed or out-of-contract argument."""


class DomainError(HyperdualError, ValueError):
    """A tensor function was evaluated outside its domain.

    ``eigenvalue`` holds the offending eigenvalue when one is known.
    """

    def __init__(self, message, eigenvalue=None):
        super().__init__(message)
        self.eigenvalue = eigenvalue


class DegenerateDeformationError(DomainError):
    """Deformation gradient too close to singular."""


class CoaxialityViolationError(HyperdualError, ArithmeticError):
    """The two forms of sigma/rho disagree: the law is not isotropic."""


class UnboundedConjugateError(HyperdualError, ArithmeticError):
    """The conjugate supremum escaped the search bound."""


class NotConvergedError(HyperdualError, ArithmeticError):
    """An iterative solver stopped before meeting its tolerance."""
