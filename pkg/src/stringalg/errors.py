"""Exception hierarchy shared by the whole library.

The CLI maps these onto exit codes: format/shape problems are "invalid
input" (2), failed certifications are (3), exhausted search bounds are (4).
"""


class StringAlgError(Exception):
    """Base class for all library errors."""


class QuiverFormatError(StringAlgError):
    """Malformed quiver file; carries a 1-based line number when known."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ElementFormatError(StringAlgError):
    """Malformed element expression."""


class MatrixFormatError(StringAlgError):
    """Malformed polynomial-matrix file."""


class InvalidPresentationError(StringAlgError):
    """Operation requires a valid (locally) string presentation."""


class ShapeError(StringAlgError):
    """The presentation does not have the shape required by an operation."""


class CertificationError(StringAlgError):
    """An endomorphism failed one of the homomorphism identities."""


class DerivationError(StringAlgError):
    """A derivation assignment violates its defining conditions."""


class NotAUnitError(StringAlgError):
    """Element has no two-sided inverse; names the failing component."""


class NotInImageError(StringAlgError):
    """Polynomial matrix lies outside the embedded subalgebra."""


class NotInvertibleError(StringAlgError):
    """Polynomial matrix has no inverse over the polynomial ring."""

    def __init__(self, message, determinant=None):
        self.determinant = determinant
        super().__init__(message)


class BoundExceededError(StringAlgError):
    """A length bound was hit before the search closed; raise the bound."""


class CapExceededError(StringAlgError):
    """An iteration cap was exhausted (e.g. a non-nilpotent derivation)."""


class DecompositionError(StringAlgError):
    """The decomposition pipeline hit a structural violation; the input is
    not an automorphism of the presented algebra."""
