"""Exception types shared across the package."""


class ConfigError(ValueError):
    """Invalid configuration input (bad key, bad value, bad file)."""


class ExistenceError(RuntimeError):
    """The solvability condition for the nonlocal problem is violated."""


class NumericalError(RuntimeError):
    """A numerical procedure failed (singular solve, no convergence)."""
