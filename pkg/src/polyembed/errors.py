"""Exception types shared across the package."""


class ParseError(ValueError):
    """Malformed input text: bad JSON, wrong types, or a broken schema.

    The message carries the offending line/column when the underlying JSON
    parser can supply one, or the field path otherwise.
    """


class ValidationError(ValueError):
    """A named invariant violation.

    ``code`` is a stable machine-readable identifier such as ``"SumMismatch"``
    or ``"PolygonNotSimple"``; ``details`` holds offending indices or values.
    """

    def __init__(self, code: str, message: str, **details):
        super().__init__(f"{code}: {message}")
        self.code = code
        self.details = details
