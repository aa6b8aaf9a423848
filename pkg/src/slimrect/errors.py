"""Exception types shared across the package."""

from __future__ import annotations


class SlimrectError(Exception):
    """Base class for library errors."""


class InvalidLatticeError(SlimrectError):
    """Raised by validate() when the input violates a structural invariant."""

    def __init__(self, defects):
        self.defects = list(defects)
        lines = ", ".join(f"{d.kind}{d.witness}" for d in self.defects[:4])
        more = "" if len(self.defects) <= 4 else f" (+{len(self.defects) - 4} more)"
        super().__init__(f"invalid lattice: {lines}{more}")


class ComparablePairError(SlimrectError):
    """left_of is only defined for incomparable pairs."""


class NotRectangularError(SlimrectError):
    """No corner pair; carries the doubly-irreducible boundary elements found."""

    def __init__(self, message, left_candidates=(), right_candidates=()):
        self.left_candidates = tuple(left_candidates)
        self.right_candidates = tuple(right_candidates)
        super().__init__(message)


class ForkError(SlimrectError):
    """Fork insertion/deletion rejected (not a 4-cell, bad occurrence, ...)."""


class ReplayError(SlimrectError):
    """A script step does not resolve to a 4-cell; carries the step index."""

    def __init__(self, step_index, message):
        self.step_index = step_index
        super().__init__(f"step {step_index}: {message}")


class ResourceCapError(SlimrectError):
    """Enumeration exceeded the element-count or universe-size cap."""


class SchemaError(SlimrectError):
    """Malformed lattice/script file; carries the offending field path."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


class MalformedDiagramError(SlimrectError):
    """Diagram geometry unusable (zero-length edge, non-monotone projection)."""
