"""Exception types shared across the toolkit."""


class TcnError(Exception):
    """Base class for all toolkit errors."""


class EmptySet(TcnError):
    """A membership set literal was empty."""


class DuplicateVariable(TcnError):
    """A variable id was declared twice."""


class UnknownVariable(TcnError):
    """An operation referenced a variable id not present in the store."""


class NothingToSplit(TcnError):
    """split() was called on an all-singleton domain store."""


class UnboundedVariable(TcnError):
    """A variable needed by search or enumeration has an infinite domain."""

    def __init__(self, var):
        super().__init__(f"variable {var!r} has an infinite domain")
        self.var = var


class TooLarge(TcnError):
    """Enumeration would exceed the configured cross-product cap."""


class ModelParseError(TcnError):
    """Parsing failed; carries the collected diagnostics."""

    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        first = self.diagnostics[0] if self.diagnostics else None
        super().__init__(str(first) if first else "parse error")
