"""Exception types raised across the package."""


class TeamDimError(Exception):
    """Base class for every error raised by teamdim."""


class CapExceeded(TeamDimError):
    """A configured size cap would be exceeded."""


class PreconditionError(TeamDimError, ValueError):
    """An operation was called outside its stated preconditions."""


class ParseError(TeamDimError, ValueError):
    def __init__(self, msg: str, pos: int | None = None, text: str | None = None):
        self.pos = pos
        self.text = text
        if pos is not None:
            msg = f"{msg} at position {pos}"
            if text is not None:
                msg += f"\n  {text}\n  {' ' * pos}^"
        super().__init__(msg)


class FreshVariableClash(TeamDimError):
    """A supplied fresh variable already occurs in the formula."""
