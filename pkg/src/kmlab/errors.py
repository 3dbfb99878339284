"""Exception types shared across the package."""

from __future__ import annotations


class KmlabError(Exception):
    """Base class for all package errors."""


class GCMValidationError(KmlabError, ValueError):
    """An integer matrix violates one of the generalized Cartan matrix axioms.

    ``code`` is one of ``non-square``, ``diagonal-not-two``,
    ``positive-off-diagonal``, ``asymmetric-zero``; ``cell`` holds the
    offending 1-based (row, col) position when applicable.
    """

    def __init__(self, code: str, cell: tuple[int, int] | None = None):
        self.code = code
        self.cell = cell
        where = f" at cell {cell}" if cell else ""
        super().__init__(f"{code}{where}")


class EmptyIndexSet(KmlabError, ValueError):
    """A submatrix was requested for an empty index set."""


class IndexOutOfRange(KmlabError, IndexError):
    """A 1-based node or generator index is outside 1..n."""


class DimensionMismatch(KmlabError, ValueError):
    """Vector or matrix dimensions do not agree with the matrix rank."""


class ZeroVector(KmlabError, ValueError):
    """The zero vector was passed where a root candidate is required."""


class CapTooSmall(KmlabError, ValueError):
    """A height or length cap below the minimum useful value."""


class CapExceeded(KmlabError, RuntimeError):
    """A saturation or search step would leave the configured budget."""


class ImaginaryInput(KmlabError, ValueError):
    """An imaginary root appeared where only real roots are allowed."""


class NotNested(KmlabError, ValueError):
    """Half-space direction requested for a pair that is not nested."""


class NotAffine(KmlabError, ValueError):
    """An affine-only operation was applied to a non-affine matrix."""


class NotClosed(KmlabError, ValueError):
    """A root set expected to be closed under root addition is not."""


class NotAllPositive(KmlabError, ValueError):
    """A root set expected to contain only positive roots does not."""


class NotAChain(KmlabError, ValueError):
    """Index set does not select a nested chain of half-spaces."""


class NS1Violation(KmlabError, ValueError):
    """The term set of a candidate sequence is not prenilpotent."""

    def __init__(self, detail):
        self.detail = detail
        super().__init__(f"term set not prenilpotent: {detail}")


class NS2Violation(KmlabError, ValueError):
    """A partial sum of a candidate sequence is not a root.

    ``index`` is the 1-based position of the first failing partial sum.
    """

    def __init__(self, index: int):
        self.index = index
        super().__init__(f"partial sum {index} is not a root")


class BoundViolated(KmlabError, RuntimeError):
    """A computed degree exceeded the affine projection bound."""

    def __init__(self, word):
        self.word = word
        super().__init__(f"degree bound violated at word {list(word)}")
