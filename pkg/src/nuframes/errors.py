"""Exception types shared across the package.

Parameter-validation failures on plain numbers (lattice parameters, signal
intervals) raise ValueError directly; the classes below cover conditions that
callers need to distinguish programmatically, e.g. for CLI exit codes or
because they occur mid-evaluation.
"""

from __future__ import annotations


class ExprSyntaxError(ValueError):
    """Malformed expression text.  `offset` is the byte offset of the failure."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.offset = offset


class UnknownIdentifier(ExprSyntaxError):
    """Identifier in expression text is not one of the known function names."""

    def __init__(self, name: str, offset: int):
        super().__init__(f"unknown identifier {name!r}", offset)
        self.name = name


class BadIndicatorBounds(ValueError):
    """Indicator bounds must satisfy lo < hi."""


class ZeroScale(ValueError):
    """Argument dilation by zero is not invertible."""


class NegativeSqrt(ArithmeticError):
    """Sqrt applied to a value with negative real part or a nonreal value."""


class ThetaMissing(ValueError):
    """Operation requires a scaling symbol but the setup has none."""


class ThetaNotPositive(ArithmeticError):
    """Scaling symbol is not strictly positive where it was evaluated."""


class SupportViolation(ValueError):
    """Detected mass outside the support interval an identity relies on."""


class TruncationGuard(ValueError):
    """Direct-route parameters would push the phase beyond safe resolution."""


class UepPreconditionFailed(ValueError):
    """Operation assumes the unitary filter condition holds but it does not."""
