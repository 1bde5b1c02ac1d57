"""
Errors raised by schreierkit.

Every domain error is a ValueError so callers that only care about
"bad input" can keep catching ValueError.
"""

from typing import Any, Optional, Tuple


class SchreierKitError(ValueError):
    """Base class for all domain errors"""

    def __init__(self, message: str, witness: Optional[Tuple[Any, ...]] = None):
        super().__init__(message)
        self.witness = witness


# core
class NotAssociative(SchreierKitError):
    def __init__(self, a: int, b: int, c: int):
        super().__init__(f"table is not associative at ({a}, {b}, {c})", (a, b, c))
        self.a, self.b, self.c = a, b, c


class BadIdentity(SchreierKitError):
    def __init__(self, x: int):
        super().__init__(f"claimed identity fails against element {x}", (x,))
        self.x = x


class OutOfRange(SchreierKitError):
    def __init__(self, a: int, b: int):
        super().__init__(f"table entry at ({a}, {b}) is out of range", (a, b))
        self.a, self.b = a, b


# extension
class NotAnExtension(SchreierKitError):
    pass


class NotASemilattice(SchreierKitError):
    pass


class NotMeetPreserving(SchreierKitError):
    def __init__(self, h1: int, h2: int):
        super().__init__(f"map does not preserve the meet of {h1} and {h2}", (h1, h2))
        self.h1, self.h2 = h1, h2


# strict
class ActionInvalid(SchreierKitError):
    pass


class NotSchreierSplit(SchreierKitError):
    pass


class FactorSystemInvalid(SchreierKitError):
    pass


class NotSchreier(SchreierKitError):
    pass


class BadGeneratorChoice(SchreierKitError):
    def __init__(self, h: int, reason: str = "not a generator of its fibre"):
        super().__init__(f"generator choice for h={h} rejected: {reason}", (h,))
        self.h = h


# relaxed
class InvalidRelaxedAction(SchreierKitError):
    pass


class NotWeaklySchreierSplit(SchreierKitError):
    pass


class InvalidWSFactorSystem(SchreierKitError):
    pass


class NotWeaklySchreier(SchreierKitError):
    pass


# cohomology
class KernelNotAbelianGroup(SchreierKitError):
    pass


class ActionsDiffer(SchreierKitError):
    pass


# oracle
class OrderTooLarge(SchreierKitError):
    pass


# documents / cli
class ParseError(SchreierKitError):
    def __init__(self, location: str, message: str):
        super().__init__(f"{location}: {message}", (location,))
        self.location = location


class InvariantViolation(SchreierKitError):
    pass
