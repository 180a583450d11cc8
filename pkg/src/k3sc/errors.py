"""Exception hierarchy shared by all modules."""


class K3SCError(ValueError):
    """Base class for every validation or contract failure raised by k3sc."""


class IncompatibleCongruences(K3SCError):
    pass


class NotInvertible(K3SCError):
    pass


class NotPrime(K3SCError):
    pass


class PrimitivityError(K3SCError):
    pass


class DivisibilityError(K3SCError):
    pass


class GammaError(K3SCError):
    pass


class NoLiftError(K3SCError):
    pass


class InvalidLattice(K3SCError):
    pass


class NotInLattice(K3SCError):
    pass


class NotInDual(K3SCError):
    pass


class ZeroElement(K3SCError):
    pass


class ContextError(K3SCError):
    pass


class EquationMismatch(K3SCError):
    pass


class AlphaNotSquareFree(K3SCError):
    pass


class NonIntegralSubstitution(K3SCError):
    pass


class NonIntegralImage(K3SCError):
    pass


class WrongGamma(K3SCError):
    pass


class PredicateContract(K3SCError):
    pass


class DegenerateWitness(K3SCError):
    pass
