"""Exception hierarchy shared by the codec, scheme and Huffman modules."""


class QlcError(Exception):
    """Base class for every error raised by this package."""

    category = "QlcError"


class ZeroTotal(QlcError, ValueError):
    """A histogram with no samples was used where a distribution is required."""

    category = "ZeroTotal"


class InvalidScheme(QlcError, ValueError):
    """A scheme violates one of the structural constraints.

    ``reason`` is a short machine-readable key (``"sum"``, ``"capacity"``,
    ``"offsets"``, ...) and the message carries the details.
    """

    category = "InvalidScheme"

    def __init__(self, reason, message=None):
        self.reason = reason
        super().__init__(message or reason)


class FormatError(QlcError):
    """Base class for problems found while reading a container or bitstream."""

    category = "FormatError"


class BadMagic(FormatError):
    category = "BadMagic"


class BadVersion(FormatError):
    category = "BadVersion"


class InvalidMapping(FormatError):
    category = "InvalidMapping"


class TruncatedPayload(FormatError):
    category = "TruncatedPayload"


class InvalidCode(FormatError):
    category = "InvalidCode"


class TrailingGarbage(FormatError):
    category = "TrailingGarbage"


class MissingCode(QlcError, ValueError):
    """A symbol with non-zero probability (or present in the input) has no codeword."""

    category = "MissingCode"
