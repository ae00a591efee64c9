"""Exception hierarchy shared by the library and the CLI."""


class SolenoidError(Exception):
    """Base class for every error raised on purpose by this package."""


class PreconditionError(SolenoidError, ValueError):
    """An operation was called outside its domain (CLI exit code 3)."""


class InfiniteValuation(PreconditionError):
    """Raised by ``val_p(0, p)``: the valuation of zero is +infinity."""


class ResourceCapError(SolenoidError, RuntimeError):
    """A join or word enumeration would exceed the configured cap (exit code 4)."""
