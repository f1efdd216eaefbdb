"""Exception hierarchy shared by every module of the package."""

from __future__ import annotations


class DihedralCodeError(Exception):
    """Base class for all errors raised by this package."""


class InvalidInput(DihedralCodeError, ValueError):
    """Arguments violate an operation's preconditions."""


class NotInvertible(DihedralCodeError, ArithmeticError):
    """A residue has no inverse modulo the given polynomial."""


class NotCoprime(InvalidInput):
    """gcd(n, q) != 1, so x^n - 1 has repeated roots."""


class Inconsistent(DihedralCodeError):
    """A factor list does not multiply back to x^n - 1 or is not irreducible."""


class InvalidIndex(InvalidInput):
    """A factor index has the wrong type for the requested operation."""


class NoSelfDualExists(DihedralCodeError):
    """Self-dual left dihedral codes do not exist over fields of odd order."""


class BudgetExceeded(DihedralCodeError):
    """An exhaustive codeword sweep would exceed the configured budget."""

    def __init__(self, needed: int, budget: int) -> None:
        super().__init__(f"sweep needs {needed} codewords, budget is {budget}")
        self.needed = needed
        self.budget = budget
