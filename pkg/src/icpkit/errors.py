"""Exception types shared across the package."""


class IcpkitError(Exception):
    """Base class for every error raised by icpkit."""


class UnknownLetter(IcpkitError, ValueError):
    pass


class IndexOutOfRange(IcpkitError, IndexError):
    pass


class DomainError(IcpkitError, ValueError):
    pass


class NotASolution(IcpkitError, ValueError):
    pass


class MalformedPart(IcpkitError, ValueError):
    pass


class NonUnitRotor(IcpkitError, ValueError):
    pass


class ParseError(IcpkitError, ValueError):
    """Raised on malformed textual input; carries a 1-based position when known."""

    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)
