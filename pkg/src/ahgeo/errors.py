"""Exception types shared across the package."""


class NumericError(RuntimeError):
    """A numerical routine failed to reach its target accuracy.

    Carries a ``diagnostics`` dict (solver residuals, iteration traces,
    partial results) so callers and the CLI can report what was achieved.
    """

    def __init__(self, message: str, diagnostics: dict | None = None):
        super().__init__(message)
        self.diagnostics = diagnostics or {}
