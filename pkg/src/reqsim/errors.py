"""Error type shared by the library, the HTTP service, and the CLI."""


class ReqsimError(Exception):
    """An operation failure with a machine-readable code.

    The HTTP layer serializes these as ``{"code": ..., "message": ...}``;
    library callers can branch on ``code`` without parsing messages.
    """

    def __init__(self, code: str, message: str):
        super().__init__(message)
        self.code = code
        self.message = message

    def __repr__(self) -> str:
        return f"ReqsimError({self.code!r}, {self.message!r})"
