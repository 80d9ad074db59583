"""Exception types shared across the package."""


class PoleError(ValueError):
    """Evaluation was requested exactly at (or within 1e-12 of) a pole."""


class UnsupportedFunctionError(ValueError):
    """The requested operation is not defined for this base function."""
