"""Exception types shared across the package."""


class BotlinkError(Exception):
    """Base class for all package-specific errors."""


class SchedulingInPast(BotlinkError):
    """An event was scheduled before the queue's current time."""


class NonFiniteInput(BotlinkError):
    """A stepping function received NaN or infinity."""


class UnknownNode(BotlinkError):
    """A node id does not exist in the network world."""


class ParseError(BotlinkError):
    """A scenario file is not syntactically valid."""


class ValidationError(BotlinkError):
    """A scenario file is well-formed but semantically invalid.

    ``field`` names the offending entry, e.g. ``traffic[0].src``.
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message


class SimulationAborted(BotlinkError):
    """A step raised; the partial run report is attached."""

    def __init__(self, report, cause: BaseException):
        super().__init__(f"simulation aborted: {cause}")
        self.report = report
