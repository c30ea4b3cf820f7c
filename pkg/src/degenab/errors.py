"""Exception hierarchy.

Every error raised on purpose by the library derives from :class:`DegenabError`.
Errors that signal an honest mathematical inconclusiveness (as opposed to bad
input) derive from :class:`Inconclusive`; the CLI maps them to exit code 3.
"""


class DegenabError(Exception):
    """Base class for library errors."""


class UserInputError(DegenabError, ValueError):
    """Malformed or invalid input."""


class Inconclusive(DegenabError):
    """A computation could not decide its answer within its exact budget."""


class EmptySeries(UserInputError):
    pass


class NotPositiveDefinite(UserInputError):
    pass


class NotEvenForm(UserInputError):
    pass


class InfiniteIndex(UserInputError):
    pass


class BoxTooSmall(Inconclusive):
    pass


class NotWeightD(UserInputError):
    pass


class NotFree(UserInputError):
    pass


class ChartMismatch(DegenabError):
    pass


class RankTooLarge(UserInputError):
    pass


class DegreeBound(Inconclusive):
    pass


class InconclusiveTruncation(Inconclusive):
    pass


class NotCodimOne(UserInputError):
    pass


class BadStar(UserInputError):
    pass


class NeedsExtension(Inconclusive):
    pass


class ParseError(UserInputError):
    pass
