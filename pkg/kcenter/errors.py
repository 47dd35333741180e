class KCenterError(Exception):
    pass


class ValidationError(KCenterError, ValueError):
    pass


class InstanceParseError(KCenterError, ValueError):
    pass


class ResourceGuardError(KCenterError, RuntimeError):
    pass


class NumericalError(KCenterError, RuntimeError):
    pass


## gauge
class UnboundedSet(ValidationError):
    pass

class OriginNotInterior(ValidationError):
    pass

class DimensionMismatch(ValidationError):
    pass

class NegativeRadius(ValidationError):
    pass

class DegenerateFacets(NumericalError):
    pass


## one center
class WrongGaugeKind(ValidationError):
    pass

class WrongDimension(ValidationError):
    pass

class DimensionTooLarge(ValidationError):
    pass

class NonConvergence(NumericalError):
    def __init__(self, message : str, result = None):
        super().__init__(message)
        self.result = result


## k center
class BadIndex(ValidationError):
    pass

class DuplicatePoints(ValidationError):
    def __init__(self, first : int, second : int):
        # 1-based, as printed to users
        super().__init__("demand points %d and %d coincide" % (first + 1, second + 1))
        self.pair = (first, second)

class TooLarge(ResourceGuardError):
    pass

class WitnessNotFound(NumericalError):
    pass

class DegenerateRadius(NumericalError):
    pass


## analysis
class CenterIsAttractive(ValidationError):
    pass

class HypothesisViolated(ValidationError):
    pass
