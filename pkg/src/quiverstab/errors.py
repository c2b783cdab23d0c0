"""Exception taxonomy, mirrored by the CLI exit codes."""


class QuiverStabError(Exception):
    """Base class for all package errors."""


class InvalidQuiverError(QuiverStabError):
    """Malformed input: loops, cycles, bad JSON, bad vectors. CLI exit 2."""


class UnsupportedClassError(QuiverStabError):
    """Operation not defined for this quiver class. CLI exit 2."""


class InvariantViolation(QuiverStabError):
    """A theorem-backed internal invariant failed. CLI exit 3."""


class CertificationError(QuiverStabError):
    """Oracle sampling could not be certified generic. CLI exit 4."""
