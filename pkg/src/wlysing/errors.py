"""Exception hierarchy.

Every error the library raises derives from :class:`WLYError`; the CLI maps
:class:`InputError` to exit code 2 and :class:`ResourceCapExceeded` to 3.
"""


class WLYError(Exception):
    pass


class InputError(WLYError, ValueError):
    """Malformed or out-of-contract input."""


class PolynomialSyntaxError(InputError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        pointer = f"\n  {text}\n  {' ' * position}^" if text else ""
        super().__init__(f"{message} at position {position}{pointer}")


class DegenerateError(WLYError):
    """The input violates a non-degeneracy or isolatedness precondition."""


class NonIsolatedError(DegenerateError):
    pass


class ResourceCapExceeded(WLYError):
    """A configured search cap (delta, N, trials) was reached without an answer."""
