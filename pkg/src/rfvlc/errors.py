"""Shared exception types."""


class InvalidArgumentError(ValueError):
    """A numeric argument violates an operation's preconditions."""


class UnsupportedModelError(ValueError):
    """An operation was asked for under a model it does not cover."""


class ConfigError(ValueError):
    """A configuration document is malformed or violates an invariant."""
