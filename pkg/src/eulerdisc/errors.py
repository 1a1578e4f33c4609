"""Exception types shared across the package."""


class EulerdiscError(Exception):
    """Base class for all package errors."""


class SchemaError(EulerdiscError):
    """Malformed input payload (CLI exit code 2)."""


class ContradictionError(EulerdiscError):
    """A mathematical identity that must hold was violated (CLI exit code 3).

    Raised instead of silently repairing: a trigger means either a bug or a
    counterexample, and both must surface loudly.
    """


class DegenerateOffsetError(EulerdiscError):
    """A generic-position choice turned out non-generic; caller should retry
    with a fresh draw."""
