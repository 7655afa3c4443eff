"""Exception hierarchy.

Every domain error raised by the package derives from :class:`UnivalentError`,
which the command line maps to exit status 3.
"""


class UnivalentError(ValueError):
    """Base class for domain errors."""


# series arithmetic
class ZeroConstantTerm(UnivalentError):
    pass


class ConstantTermNotOne(UnivalentError):
    pass


class ConstantTermNotZero(UnivalentError):
    pass


class NonzeroConstantTerm(UnivalentError):
    pass


class InnerConstantTermNotZero(UnivalentError):
    pass


# function families
class PoleAtPoint(UnivalentError):
    pass


class VanishingDenominator(UnivalentError):
    pass


class PsiUnbounded(UnivalentError):
    pass


class InvalidMeasure(UnivalentError):
    pass


class NotUnitModulus(UnivalentError):
    pass


# membership oracles and geometry
class ZeroOfF(UnivalentError):
    pass


class WIsZero(UnivalentError):
    pass


class ThetaAtSingularity(UnivalentError):
    pass


class DenominatorZero(UnivalentError):
    pass


class LambdaIsOne(UnivalentError):
    pass


# transforms
class NotNormalized(UnivalentError):
    pass


class VanishingDerivative(UnivalentError):
    pass


# extremal problems
class NearZeroIntegrand(UnivalentError):
    pass


class NearZeroModulus(UnivalentError):
    pass


# meromorphic companion class
class AreaNegative(UnivalentError):
    pass


class NotSigmaZeroNormalized(UnivalentError):
    pass


class TOutOfRange(UnivalentError):
    pass
