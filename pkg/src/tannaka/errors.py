class UnsupportedError(ValueError):
    """Raised when an input asks for something outside the supported rings/maps."""


class WellDefinednessError(ValueError):
    """Raised when an induced map fails to descend to a quotient presentation."""


class ParseError(ValueError):
    """Raised by the model parser; carries the offending field path."""

    def __init__(self, path: str, message: str):
        super().__init__(f"{path}: {message}")
        self.path = path
        self.reason = message
