"""Exception hierarchy shared by every module.

Each concrete error carries a stable class name; the CLI reports that name
as the machine-readable error code.
"""


class MMError(Exception):
    """Base class for all domain errors (CLI exit code 2)."""

    @property
    def code(self) -> str:
        return type(self).__name__


# reader
class ParseError(MMError):
    pass


class UnbalancedParens(ParseError):
    pass


class TrailingInput(ParseError):
    pass


class EmptyInput(ParseError):
    pass


class BadToken(ParseError):
    pass


# evaluator
class EvalError(MMError):
    pass


class BudgetExhausted(EvalError):
    pass


class ArityMismatch(EvalError):
    pass


class ApplyNonFunction(EvalError):
    pass


class NotANumber(EvalError):
    pass


class RecursionTooDeep(EvalError):
    pass


# codecs
class CodecError(MMError):
    pass


class Truncated(CodecError):
    pass


class Malformed(CodecError):
    pass


class NotTextEncodable(CodecError):
    pass


# machine / omega / complexity
class NotSelfDelimiting(MMError):
    pass


class PrecisionTooLarge(MMError):
    pass


class Uncertifiable(MMError):
    pass


class BoundTooLarge(MMError):
    pass


class Unresolvable(MMError):
    pass


# diophantine
class ParameterOutOfRange(MMError):
    pass


class EquationSyntaxError(MMError):
    pass


# constants
class RatioOutOfRange(MMError):
    pass


class NoSignChange(MMError):
    pass


class DuplicateAbscissa(MMError):
    pass


class CommonFactor(MMError):
    pass


class BaseOutOfRange(MMError):
    pass


# normality
class PrefixTooShort(MMError):
    pass
