"""Exception hierarchy shared by every subpackage."""


class StarPIRError(Exception):
    """Base class for all errors raised by this package."""


# algebra
class AlgebraError(StarPIRError):
    pass


class NonPrimeCharacteristic(AlgebraError):
    pass


class ReducibleModulus(AlgebraError):
    pass


class ZeroInverse(AlgebraError, ZeroDivisionError):
    pass


class FieldMismatch(AlgebraError):
    pass


class DivisionByZeroPolynomial(AlgebraError, ZeroDivisionError):
    pass


class NotCoprime(AlgebraError):
    pass


class NotInExtensionTower(AlgebraError):
    pass


class InconsistentSystem(AlgebraError):
    pass


class DimensionMismatch(AlgebraError):
    pass


# codes
class CodeError(StarPIRError):
    pass


class ZeroCode(CodeError):
    pass


class LengthMismatch(CodeError):
    pass


class EmptyResult(CodeError):
    pass


class ZeroScalar(CodeError):
    pass


class UndefinedDistance(CodeError):
    pass


# families
class FamilyError(CodeError):
    pass


class RepeatedEvaluationPoint(FamilyError):
    pass


class LengthExceedsField(FamilyError):
    pass


class DegreeOutOfRange(FamilyError):
    pass


class NotADivisor(FamilyError):
    pass


class DeltaTooLarge(FamilyError):
    pass


class SingularCurve(FamilyError):
    pass


class RankDeficiency(FamilyError):
    pass


# bounds
class BoundsError(StarPIRError):
    pass


class UndefinedDualDistance(BoundsError):
    pass


class InfeasibleDegrees(BoundsError):
    pass


class ParamOutOfRange(BoundsError):
    pass


class InfeasibleRates(BoundsError):
    pass


# pir
class PIRError(StarPIRError):
    pass


class ShapeMismatch(PIRError):
    pass


class ZeroRetrievalRate(PIRError):
    pass


class InsufficientDistanceForRobustness(PIRError):
    pass


class NoFeasibleSchedule(PIRError):
    pass


class DecodingAmbiguity(PIRError):
    pass


class BudgetExceeded(PIRError):
    pass


class InsufficientSymbols(PIRError):
    pass


class CorruptedSymbols(PIRError):
    """Recovered symbols of a file row are not consistent with any codeword."""


# netsim
class ProtocolError(StarPIRError):
    pass


class ProtocolVersionMismatch(ProtocolError):
    pass


class UnknownTag(ProtocolError):
    pass


class Timeout(ProtocolError):
    pass


# cli
class ConfigError(StarPIRError):
    def __init__(self, location, message):
        super().__init__(f"{location}: {message}")
        self.location = location
