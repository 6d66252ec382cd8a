"""Exception types shared across the package."""

from __future__ import annotations


class SympCondError(Exception):
    """Base class for all errors raised by sympcond."""


class DimensionMismatch(SympCondError, ValueError):
    pass


class ModulusMismatch(SympCondError, ValueError):
    pass


class NotInvertible(SympCondError, ArithmeticError):
    pass


class NonDivisorLevel(SympCondError, ValueError):
    pass


class NonMultipleLevel(SympCondError, ValueError):
    pass


class NonCoprimeFactors(SympCondError, ValueError):
    pass


class CompositeModulus(SympCondError, ValueError):
    pass


class UnsupportedRank(SympCondError, ValueError):
    pass


class NotASubgroup(SympCondError, ValueError):
    pass


class ScalarsNotContained(SympCondError, ValueError):
    pass


class NotSurjective(SympCondError, ValueError):
    pass


class NotHomomorphism(SympCondError, ValueError):
    pass


class InvalidPrime(SympCondError, ValueError):
    pass


class InfeasibleParameters(SympCondError, ValueError):
    pass


class BudgetExceeded(SympCondError, RuntimeError):
    """Raised when an enumeration would exceed its element budget.

    ``count`` is the number of elements found before giving up.
    """

    def __init__(self, budget: int, count: int, what: str = "closure"):
        super().__init__(f"{what} exceeded budget of {budget} elements (reached {count})")
        self.budget = budget
        self.count = count
