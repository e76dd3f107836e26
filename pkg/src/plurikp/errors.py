"""Exception hierarchy shared by all plurikp modules."""


class PluriKPError(Exception):
    """Base class for all library errors."""


class CellError(PluriKPError, ValueError):
    """Invalid cell construction or an operation applied to an unsupported kind."""


class NoCornerEquationError(CellError):
    """The action on the 4-cell does not depend on this vertex."""


class ChainError(PluriKPError, ValueError):
    """Invalid chain content (mixed lattices, wrong dimension, bad coefficients)."""


class NotFlowerError(ChainError):
    """The given chain is not a flower at the given vertex."""


class NotInteriorError(NotFlowerError):
    """The vertex is not interior: some adjacent 2-cell facet is unmatched."""


class DecompositionError(PluriKPError):
    """Corner decomposition left a nonzero residual chain (contract violation)."""


class MissingVertexError(PluriKPError, KeyError):
    """A field lookup failed for a vertex required by the operation."""


class SingularFieldError(PluriKPError, ArithmeticError):
    """A zero value, zero denominator, or near-singular fraction was met."""


class InitialDataError(PluriKPError, ValueError):
    """Initial data for a solver does not match the required vertex set."""


class BranchError(PluriKPError):
    """A branch-dependent operation was applied to a field without a branch."""


class InconclusiveBranchError(BranchError):
    """Corner values fall in the gray zone between a branch and 'neither'."""


class ConfigError(PluriKPError, ValueError):
    """Invalid suite or CLI configuration."""


class FormatError(PluriKPError, ValueError):
    """Malformed cell, chain, field, or report text."""
