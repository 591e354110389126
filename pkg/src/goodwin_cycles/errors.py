"""Exception hierarchy shared by every module in the package."""


class GoodwinError(Exception):
    """Base class for all errors raised by goodwin_cycles."""


# time series
class NonPositiveValue(GoodwinError, ValueError):
    pass


class SeriesTooShort(GoodwinError, ValueError):
    pass


class NoOverlap(GoodwinError, ValueError):
    pass


class NonFiniteValue(GoodwinError, ValueError):
    pass


# ingestion
class MissingColumn(GoodwinError, KeyError):
    def __str__(self) -> str:  # KeyError quotes its message otherwise
        return str(self.args[0]) if self.args else ""


class MalformedRow(GoodwinError, ValueError):
    pass


class GapInYears(GoodwinError, ValueError):
    pass


class EmptyWindow(GoodwinError, ValueError):
    pass


class NonPositiveProfit(GoodwinError, ValueError):
    pass


class DivisionDomain(GoodwinError, ZeroDivisionError):
    pass


# econometrics
class RankDeficient(GoodwinError, ValueError):
    pass


class TooFewObservations(GoodwinError, ValueError):
    pass


class WrongModelShape(GoodwinError, ValueError):
    pass


# model
class ZeroRho(GoodwinError, ZeroDivisionError):
    pass


class ComplexPeriod(GoodwinError, ValueError):
    pass


class DriftToleranceUnmet(GoodwinError, RuntimeError):
    pass


class NonPositiveState(GoodwinError, RuntimeError):
    pass


# evaluation
class ZeroMse(GoodwinError, ZeroDivisionError):
    pass


class LengthMismatch(GoodwinError, ValueError):
    pass


# reporting
class IoFailure(GoodwinError, OSError):
    pass
