"""Exception hierarchy shared by all braidtangle modules."""


class BraidTangleError(Exception):
    """Base class for every error raised by this package."""


class DomainError(BraidTangleError, ValueError):
    """A parameter lies outside the supported domain."""


class CapExceededError(BraidTangleError):
    """An infinite-product truncation hit its term cap before converging."""


class PoleError(BraidTangleError):
    """A denominator factor of a product ratio vanished at working precision."""


class SingularityError(BraidTangleError):
    """A coefficient ratio was evaluated at (or too close to) a pole."""


class UnitModulusError(BraidTangleError):
    """A coefficient that must be a pure phase deviated too far from modulus one."""
