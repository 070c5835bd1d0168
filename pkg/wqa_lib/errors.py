r"""
Exceptions raised by wqa-lib.

All of them derive from ``ValueError`` as well, so callers that only guard
against bad values keep working.
"""

class WQAError(Exception):
    r"""
    Base class of every error raised on purpose by wqa-lib.
    """

class NongenericMapError(WQAError, ValueError):
    r"""
    Raised when an operation needs a generic map (``delta_L != 0`` and
    ``delta_R != 0``) but one of the determinants vanishes.
    """

class PreconditionError(WQAError, ValueError):
    r"""
    Raised when a numeric precondition of an operation does not hold, e.g. a
    characteristic polynomial that does not vanish at 1, a virtual segment set,
    or an orbit that escapes while a bounded one is required.
    """

class ConfigError(WQAError, ValueError):
    r"""
    Raised for invalid configuration files, command line flags or scan specs.
    """
