"""Exception hierarchy shared by every module of the package."""


class StringArtError(ValueError):
    """Base class for all domain errors raised by :mod:`stringart`."""


# algebra
class ZeroPolynomial(StringArtError):
    pass


class BothConstantInV(StringArtError):
    pass


class InexactDivision(StringArtError):
    pass


# family
class NonPositiveD(StringArtError):
    pass


class NonPositiveL(StringArtError):
    pass


class DegenerateMember(StringArtError):
    """Both line coefficients vanish at the requested parameter value."""

    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


class VerticalLine(StringArtError):
    pass


class NotLinearInXY(StringArtError):
    pass


class OutOfRange(StringArtError):
    pass


# envelope
class LinearInParameter(StringArtError):
    pass


class ConstraintDegenerate(StringArtError):
    pass


class NoUniqueContact(StringArtError):
    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


# conic
class NotDegreeTwo(StringArtError):
    pass


class NotParabola(StringArtError):
    pass


class DegenerateLine(StringArtError):
    def __init__(self, message, parameter=None):
        super().__init__(message)
        self.parameter = parameter


# proofs
class NotQuadraticAfterSubstitution(StringArtError):
    pass


class PoleCoincidence(StringArtError):
    pass
