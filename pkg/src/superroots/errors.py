"""Exception hierarchy shared by all modules.

Every domain error carries a stable ``name`` used verbatim in CLI error
reports, so the JSON surface never depends on Python class paths.
"""
from __future__ import annotations


class SuperrootsError(Exception):
    """Base class for all library errors."""


class DomainError(SuperrootsError):
    """A mathematically meaningful failure (exit code 1 at the CLI)."""

    name = "DomainError"


class ParameterizedInput(DomainError):
    name = "ParameterizedInput"


class FieldMismatch(DomainError):
    name = "FieldMismatch"


class InvalidParameters(DomainError):
    name = "InvalidParameters"


class NotReflectable(DomainError):
    name = "NotReflectable"


class NotDEquivalent(DomainError):
    name = "NotDEquivalent"


class PathBreaks(DomainError):
    name = "PathBreaks"


class NotSymmetrizable(DomainError):
    name = "NotSymmetrizable"


class NotGCM(DomainError):
    name = "NotGCM"


class NotAGCM(NotGCM):
    """A pairing matrix that should have been a generalized Cartan matrix
    is not one; signals a broken (inadmissible) component upstream."""

    name = "NotAGCM"


class NotKacMoody(DomainError):
    name = "NotKacMoody"


class Decomposable(DomainError):
    name = "Decomposable"


class InfiniteSystem(DomainError):
    name = "InfiniteSystem"


class NotAnAutomorphism(DomainError):
    name = "NotAnAutomorphism"


class NotAffine(DomainError):
    name = "NotAffine"


class NoOracle(DomainError):
    """Requested an independent combinatorial model for a family that has
    none; expected metadata is still available on the family spec."""

    name = "NoOracle"
