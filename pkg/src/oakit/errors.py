"""Exception hierarchy shared across the package.

CLI exit codes map onto these: verification failures exit 2, missing seeds
exit 3, parameter/format problems exit 4.
"""


class OakitError(Exception):
    """Base class for all package errors."""


class ParameterError(OakitError):
    """An argument is outside the documented domain of an operation."""


class FormatError(OakitError):
    """A text or JSON artifact does not conform to its format."""


class VerificationError(OakitError):
    """An exact predicate that must hold was found false."""


class ConstructionError(OakitError):
    """A construction could not deliver its promised, verified output."""


class MissingSeedError(OakitError):
    """A required seed array is neither embedded nor generatable; import it."""
