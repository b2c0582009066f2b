"""Exception types shared across the package."""


class QComposeError(Exception):
    """Base class for all qcompose-specific errors."""


class ZeroVector(QComposeError):
    """A vector with zero norm cannot be normalized."""


class BadDimension(QComposeError):
    """Dimension is not a power of two or otherwise unusable."""


class DimensionMismatch(QComposeError):
    """Operands have incompatible dimensions."""


class IndexOutOfRange(QComposeError):
    """Basis index outside [0, dim)."""


class PromiseViolation(QComposeError):
    """Input does not satisfy the stated promise."""


class BadArity(QComposeError):
    """Block count or block size has the wrong divisibility."""


class BadRepetitionCount(QComposeError):
    """Majority vote needs an odd, positive repetition count."""


class BadParameter(QComposeError):
    """Numeric parameter outside its valid range."""


class EmptyGraph(QComposeError):
    """Graph has no edges (or too few vertices to carry one)."""


class Disconnected(QComposeError):
    """Requested vertices do not share a connected component."""


class SameVertex(QComposeError):
    """Source and sink must differ."""


class BoundaryPresent(QComposeError):
    """Operation is defined only for graphs without boundary edges."""


class NotBipartite(QComposeError):
    """Walk construction needs a bipartite graph."""


class IsolatedVertex(QComposeError):
    """Vertex has no incident edges, so it has no star state."""


class InvalidProfile(QComposeError):
    """Cost profile fails validation."""


class ParseError(QComposeError):
    """Input file is not valid JSON or misses required fields."""


class NumericalFailure(QComposeError):
    """A numerical routine produced an unusable result."""
