"""Exception hierarchy shared by every revmark module."""


class WatermarkError(Exception):
    """Base class for all data errors raised by revmark."""


class UnsupportedFormat(WatermarkError):
    pass


class CorruptFile(WatermarkError):
    pass


class IoFailure(WatermarkError, OSError):
    pass


class DimensionMismatch(WatermarkError, ValueError):
    pass


class OutOfRange(WatermarkError, ValueError):
    pass


class TooSmall(WatermarkError, ValueError):
    pass


class CapacityExceeded(WatermarkError):
    pass


class MalformedStream(WatermarkError):
    """The bits read back from an image do not form a valid stream."""


class RecordMismatch(WatermarkError):
    pass


class RoundTripError(WatermarkError):
    """Extraction did not reproduce the embedded payload or host image."""


# codec-level stream errors; all are malformed streams from the caller's view
class BadMagic(MalformedStream):
    pass


class BadVersion(MalformedStream):
    pass


class CrcMismatch(MalformedStream):
    pass


class Truncated(MalformedStream):
    pass


class ZeroSeed(ValueError):
    pass
