"""
Exceptions raised by the embedding services.

Every error derives from EmbeddingError so CLI commands can translate the
whole family into exit codes in one place.
"""


class EmbeddingError(Exception):
    """Base class for all domain errors."""


class DegreeError(EmbeddingError):
    """Two permutations act on different point sets."""

    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"Degree mismatch: {left} != {right}")


class DomainError(EmbeddingError):
    """An argument lies outside the operation's domain."""


class FixedPointError(EmbeddingError):
    """A flag involution has a fixed point or is not an involution."""


class CommutationError(EmbeddingError):
    """lambda and tau do not commute."""


class NotTransitiveError(EmbeddingError):
    """The monodromy group does not act transitively on the flags."""

    def __init__(self, orbit_count):
        self.orbit_count = orbit_count
        super().__init__(f"Monodromy group has {orbit_count} orbits on flags")


class NotAdmissibleError(EmbeddingError):
    """A graph-automorphism triple fails one of the admissibility conditions."""

    def __init__(self, condition, message):
        self.condition = condition
        super().__init__(f"{condition}: {message}")


class ClosureOverflowError(EmbeddingError):
    """A group closure grew past its element cap."""

    def __init__(self, cap):
        self.cap = cap
        super().__init__(f"Group closure exceeded cap of {cap} elements")


class CongruenceError(EmbeddingError):
    """A reduction modulo m is not well defined."""

    def __init__(self, m, k1, k2):
        self.m = m
        self.pair = (k1, k2)
        super().__init__(
            f"Reduction mod {m} is not well defined: {k1} and {k2} agree mod {m} but their images do not"
        )


class BudgetExceeded(EmbeddingError):
    """A search was requested above its configured size limit."""
