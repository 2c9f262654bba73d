"""Exception types raised across the package."""

from __future__ import annotations


class PesError(Exception):
    """Base class for every error raised by pescf."""


class ModelError(PesError):
    """A model violates an event-structure axiom."""


class UnknownEvent(PesError):
    def __init__(self, event: str, line: int | None = None) -> None:
        self.event = event
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown event {event!r}{where}")


class DuplicateEventId(PesError):
    def __init__(self, event: str, line: int | None = None) -> None:
        self.event = event
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"duplicate event id {event!r}{where}")


class CausalityCycle(ModelError):
    def __init__(self, cycle: list[str]) -> None:
        self.cycle = list(cycle)
        super().__init__("causality cycle: " + " -> ".join(self.cycle))


class SelfConflict(ModelError):
    def __init__(self, event: str, detail: str = "") -> None:
        self.event = event
        msg = f"event {event!r} ends up in conflict with itself"
        super().__init__(msg + (f": {detail}" if detail else ""))


class SizeLimitExceeded(PesError):
    """An exhaustive enumeration hit its configured bound."""


class InvalidConfiguration(PesError):
    """An event set is not conflict-free and downward-closed."""


class ParseError(PesError):
    """Malformed formula, predicate, or input file."""

    def __init__(self, message: str, line: int | None = None) -> None:
        self.line = line
        self.message = message
        super().__init__(f"line {line}: {message}" if line is not None else message)


class UnknownAtom(PesError):
    def __init__(self, atom: str, line: int | None = None) -> None:
        self.atom = atom
        self.line = line
        where = f" (line {line})" if line is not None else ""
        super().__init__(f"unknown atom {atom!r}{where}")


class AtomLimitExceeded(PesError):
    """Too many atoms for exhaustive propositional reasoning."""


class SubsetExplosion(PesError):
    """Too many beliefs for preferred-subset enumeration."""


class NonConformantTrace(PesError):
    """A trace is not an execution the model allows."""


class NoErrorEvent(PesError):
    """No trace event carries the requested error label."""


class AmbiguousErrorLabel(PesError):
    """More than one trace event carries the requested error label."""
