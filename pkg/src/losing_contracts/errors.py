"""Exception hierarchy shared by every module in the package."""


class GameError(Exception):
    """Base class for all errors raised by this package."""


class RangeError(GameError, IndexError):
    """A player or strategy index lies outside the game."""


class ShapeError(GameError, ValueError):
    """Two objects (game, contract, block) do not have compatible shapes."""


class InvalidRestrictionError(GameError, ValueError):
    pass


class PreconditionError(GameError):
    """A checker was asked about a game it does not apply to.

    ``reason`` is a short machine-readable tag such as ``"not-pd"`` or
    ``"unique-max-strategies"``.
    """

    def __init__(self, reason: str, message: str | None = None):
        self.reason = reason
        super().__init__(message or reason)


class InvalidEpsilonError(GameError, ValueError):
    pass


class ScheduleError(GameError, ValueError):
    pass


class GenerationError(GameError, RuntimeError):
    pass


class IndeterminateError(GameError):
    """The question has no definite answer, e.g. an equilibrium is not unique."""


class FormatError(GameError, ValueError):
    """Malformed JSON input (game, contract or schedule file)."""
