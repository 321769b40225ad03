class RRError(Exception):
    """Base class for errors raised by this package."""


class WordIsTrivial(RRError):
    pass


class InvalidParams(RRError):
    pass


class OpenStrand(RRError):
    pass


class UnsupportedShape(RRError):
    pass


class NoWaveGuarantee(RRError):
    pass


class InvariantViolation(RRError):
    """An internal consistency check failed; carries the offending tuple."""
