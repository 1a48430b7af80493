"""Exception types shared across the package."""


class ShoalwaveError(Exception):
    """Base class for every error raised by this package."""


class DomainError(ShoalwaveError):
    """Coordinate outside the domain of a profile, grid, or solution."""


class ConfigError(ShoalwaveError):
    """Invalid or inconsistent scenario configuration."""


class InvalidInvariantsError(ShoalwaveError):
    """Invariant pair that does not describe a wet column (p <= q)."""


class NearDryError(ShoalwaveError):
    """Water column thinner than the configured minimum."""

    def __init__(self, message, node=None, t=None, depth=None):
        super().__init__(message)
        self.node = node
        self.t = t
        self.depth = depth
        self.step = None


class NumericBlowUpError(ShoalwaveError):
    """Non-finite value produced during time stepping."""

    def __init__(self, message, node=None, t=None):
        super().__init__(message)
        self.node = node
        self.t = t
        self.step = None
