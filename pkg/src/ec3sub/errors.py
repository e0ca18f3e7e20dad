"""Exception hierarchy shared by every module."""


class Ec3Error(ValueError):
    """Base class for all input and precondition errors."""


class NotPrime(Ec3Error):
    pass


class PrimeTooSmall(Ec3Error):
    pass


class SingularCurve(Ec3Error):
    pass


class BadIndex(Ec3Error):
    pass


class ZeroPolynomial(Ec3Error):
    pass


class NotSquarefree(Ec3Error):
    pass


class UnsupportedDegree(Ec3Error):
    pass


class PointNotOnCurve(Ec3Error):
    pass


class PointNotRational(Ec3Error):
    pass


class WrongOrder(Ec3Error):
    pass


class WrongFieldClass(Ec3Error):
    """The operation needs the other residue class of p mod 3."""


class ExcludedParameter(Ec3Error):
    pass


class FieldTooLarge(Ec3Error):
    """Brute-force enumeration bound exceeded."""


class NoDecomposition(Ec3Error):
    pass
