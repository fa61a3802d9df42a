"""Exception types shared by the library and the command-line front end."""


class ConfigError(ValueError):
    """Invalid run configuration (CLI exit code 2)."""


class DataError(ValueError):
    """Unreadable or malformed input data (CLI exit code 3)."""


class InvariantError(RuntimeError):
    """A numerical hard invariant failed (CLI exit code 4)."""
