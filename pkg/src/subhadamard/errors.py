"""Exception types shared across the package."""


class DimensionMismatch(ValueError):
    """Operands live in ambient spaces of different dimension."""


class GuardExceeded(ValueError):
    """A resource guard (enumeration budget, size limit) would be exceeded."""

    def __init__(self, what: str, value, limit):
        super().__init__(f"{what}: {value} exceeds limit {limit}")
        self.what = what
        self.value = value
        self.limit = limit


class WitnessInvalid(ValueError):
    """A claimed kernel witness does not avoid the sampled rows."""
