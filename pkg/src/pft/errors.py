class PftError(ValueError):
    """Base class for invalid arguments and configurations."""


class RatioOutOfRange(PftError):
    """M/p exceeds every tabulated scope; a larger divisor is needed."""


class TableFormatError(PftError):
    """A scope table file is truncated, corrupted or not a table at all."""


class VersionMismatch(TableFormatError):
    pass


class MissingEntry(PftError, KeyError):
    """Requested (epsilon, r) cell is not in the scope table."""

    def __str__(self):
        return str(self.args[0]) if self.args else ""


class ConvergenceError(RuntimeError):
    pass
