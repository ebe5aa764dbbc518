"""Exception hierarchy.

Every error type doubles as a stable machine-readable code (its class name),
which the CLI prints on a single line before exiting nonzero.
"""


class GluequantError(Exception):
    """Base class for all toolkit errors."""


class RankDeficient(GluequantError):
    """Generator rows are linearly dependent within tolerance."""


class DimensionMismatch(GluequantError):
    """Incompatible matrix or vector shapes."""


class NotInSpan(GluequantError):
    """Point lies outside the row span of the generator matrix."""


class IllConditioned(GluequantError):
    """Gram matrix too ill-conditioned for a reliable dual."""


class DimensionTooLarge(GluequantError):
    """Operation requires enumerating 2^n cosets and n exceeds the cap."""


class UnsupportedLattice(GluequantError):
    """No catalog entry or built-in data for the requested name."""


class BaseMismatch(GluequantError):
    """Glue vectors defined over different base lattices."""


class NotAGroup(GluequantError):
    """Glue set is not closed under addition modulo the base lattice."""


class InvalidSymmetry(GluequantError):
    """Index permutation is not a symmetry of the glue-group family."""


class TooManyWords(GluequantError):
    """Glue-word count exceeds the enumeration guard."""


class TooManyPoints(GluequantError):
    """Bounded enumeration exceeded its result-count guard."""


class SnapError(GluequantError):
    """Numeric coordinates too far from any admissible rational."""


class ParseError(GluequantError):
    """Malformed generator-matrix file."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(message if line is None else f"line {line}: {message}")
