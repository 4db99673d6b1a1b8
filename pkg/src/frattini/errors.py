"""Exception types shared across the package."""


class FrattiniError(Exception):
    """Base class for errors raised by this package."""


class BoundExceededError(FrattiniError):
    """A configured resource bound (enumeration, index, lattice) would be exceeded."""

    def __init__(self, what: str, value: int, bound: int, hint: str = ""):
        self.what = what
        self.value = value
        self.bound = bound
        msg = f"{what} {value} exceeds bound {bound}"
        if hint:
            msg += f"; {hint}"
        super().__init__(msg)


class NotASubgroupError(FrattiniError, ValueError):
    """A purported subgroup is not contained in its parent group."""


class WitnessInputError(FrattiniError, ValueError):
    """A witness family cannot be checked as given (bad generator, wrong degree...)."""
