"""Exception types raised by the q-series kernel and the harness."""


class QSeriesError(Exception):
    """Base class for every error raised by qharness."""


class DivisionByZero(QSeriesError, ZeroDivisionError):
    """A negative-index pochhammer hit a vanishing factor."""


class TruncationBudgetExceeded(QSeriesError):
    """An infinite object needed more than ``max_terms`` terms."""


class Divergent(QSeriesError):
    """A non-terminating series was evaluated outside its disc of convergence."""


class ZeroDenominator(QSeriesError, ZeroDivisionError):
    """A lower parameter produced a zero factor inside the summation range."""


class ZeroConstantTerm(QSeriesError, ZeroDivisionError):
    """Series division by a series whose constant term vanishes."""


class NearZeroPoint(QSeriesError):
    """Pointwise q-derivative requested too close to the origin."""


class NonFinite(QSeriesError):
    """An evaluator produced NaN or infinity."""


class NotQPDESolution(QSeriesError):
    """The oracle does not satisfy the q-partial differential equation."""


class IllConditionedFit(QSeriesError):
    """Maclaurin coefficient recovery from samples failed its residual test."""


class NonIntegralExponent(QSeriesError):
    """A theta-series exponent ``A n^2 + B n`` is not an integer."""


class UnknownId(QSeriesError, KeyError):
    """A requested identity id is not in the catalog."""
