"""Exception hierarchy shared by all modules."""


class EquistreamError(Exception):
    """Base class for every error raised by the library."""


class OutOfDepth(EquistreamError, IndexError):
    """A coordinate beyond a truncated stream's depth was requested."""


class NotPeriodic(EquistreamError):
    """An operation that needs an eventually periodic stream got a truncation."""


class DepthMismatch(EquistreamError):
    """Two truncated streams of different depth were compared."""


class NotMonotone(EquistreamError):
    pass


class MissingValue(EquistreamError, KeyError):
    pass


class DomainViolation(EquistreamError):
    """A stream takes a value outside the utility domain it is evaluated on."""


class InvalidPairing(EquistreamError, ValueError):
    """Raised at construction when a pairing is not a fixed-point-free involution."""


class SizeLimit(EquistreamError):
    pass


class UnboundedDomain(EquistreamError):
    pass


class BadParameter(EquistreamError, ValueError):
    pass


class DepthTooSmall(EquistreamError):
    pass


class GeneratorError(EquistreamError):
    pass


class UnknownName(EquistreamError, KeyError):
    pass


class DescriptorError(EquistreamError, ValueError):
    """Malformed JSON descriptor; the message carries the offending path."""
