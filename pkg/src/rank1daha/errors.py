"""Exception types shared by every module of the kernel."""

from __future__ import annotations


class KernelError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateParameters(KernelError):
    """A parameter assignment violates one of the genericity conditions.

    ``clause`` names the violated condition; ``m`` is the exponent at which
    a power condition failed (``None`` for non-power clauses).
    """

    def __init__(self, clause: str, m: int | None = None):
        self.clause = clause
        self.m = m
        at = f" at m={m}" if m is not None else ""
        super().__init__(f"degenerate parameters: {clause}{at}")


class MissingAssignment(KernelError):
    """Specialized parameters were requested without a full assignment."""


class DivisionByZero(KernelError):
    """Division or inversion of a zero scalar."""


class BudgetExhausted(KernelError):
    """The rewrite engine exceeded its step budget.

    The rewrite system is terminating on valid input, so hitting the budget
    indicates a rule-table bug rather than a long but valid computation.
    """


class UnknownIdentity(KernelError):
    """An identity name outside the published step-identity catalog."""


class ExtensionDisabled(KernelError):
    """An operation needed the quadratic extension by s (s^2 = abcd/q)
    but the coefficient values cannot support it."""


class NotSymmetric(KernelError):
    """A Laurent polynomial argument was required to be symmetric."""


class InternalDenominatorResidue(KernelError):
    """A q-difference operator result failed to clear its denominators.

    The operator preserves the Laurent polynomial space, so a nonzero
    polynomial remainder signals an arithmetic bug, never valid output.
    """


class ParseError(KernelError):
    """Expression text rejected by the parser.

    ``position`` is a 0-based character offset; ``expected`` is the set of
    token descriptions that would have been accepted there.
    """

    def __init__(self, message: str, position: int, expected: frozenset[str]):
        self.position = position
        self.expected = frozenset(expected)
        exp = ", ".join(sorted(self.expected))
        super().__init__(f"{message} at position {position} (expected: {exp})")


class ConfigError(KernelError):
    """Invalid verification-run configuration."""
