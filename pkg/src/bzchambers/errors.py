"""Exception hierarchy shared by every module of the package."""


class BZError(Exception):
    """Base class for all errors raised by bzchambers."""


class InputError(BZError, ValueError):
    """Malformed input: wrong dimensions, bad indices, violated preconditions."""


class SingularSystem(BZError, ArithmeticError):
    """A linear system that was required to be nonsingular is singular."""


class NotDecomposable(BZError):
    """The class has no Boucksom-Zariski decomposition relative to the declared primes."""


class NotBig(BZError):
    """An operation defined only on big classes received a class that is not big."""


class Unsupported(BZError):
    """The request has no meaning for this spec, for example a slice of a rank-3 lattice."""
