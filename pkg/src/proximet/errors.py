"""Exception hierarchy.

Three coarse categories matter to callers (and to the CLI exit codes):
malformed data, violated operation preconditions, and internal
cross-check failures.  Every concrete error names the offending labels
or indices in its message.
"""
from __future__ import annotations


class ProximetError(Exception):
    pass


class ValidationError(ProximetError, ValueError):
    """Input data does not satisfy the structural axioms or file format."""


class PreconditionError(ProximetError, ValueError):
    """An operation was called with arguments outside its contract."""


class InconsistencyDetected(ProximetError, RuntimeError):
    """Two independent routes to the same answer disagreed.

    Raised by the dual-route classifier and by the equivalence reports.
    Carries the offending space (when available) so the counterexample
    can be serialized and investigated.
    """

    def __init__(self, message: str, space=None):
        super().__init__(message)
        self.space = space


# data validation

class BadLabel(ValidationError):
    def __init__(self, label):
        super().__init__(f"point labels must be nonempty tokens without whitespace or commas, got {label!r}")


class DuplicateLabel(ValidationError):
    def __init__(self, label):
        super().__init__(f"duplicate point label {label!r}")


class NotSymmetric(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"squared-distance matrix is not symmetric at indices ({i},{j})")


class BadDiagonal(ValidationError):
    def __init__(self, i):
        super().__init__(f"squared-distance matrix diagonal must be zero, entry {i} is not")


class NonpositiveOffDiagonal(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"off-diagonal squared distance at ({i},{j}) must be positive")


class DimensionMismatch(ValidationError):
    def __init__(self, detail):
        super().__init__(f"dimension mismatch: {detail}")


class CoincidentPoints(ValidationError):
    def __init__(self, i, j):
        super().__init__(f"coordinate points {i} and {j} coincide")


class InvalidBipartite(ValidationError):
    def __init__(self, detail):
        super().__init__(f"invalid bipartite graph: {detail}")


class BadFileFormat(ValidationError):
    def __init__(self, detail):
        super().__init__(f"bad file format: {detail}")


# operation preconditions

class UnknownLabel(PreconditionError):
    def __init__(self, label):
        super().__init__(f"label {label!r} is not a point of the space")


class EmptySubset(PreconditionError):
    def __init__(self, what="subset"):
        super().__init__(f"{what} must be nonempty")


class EmptyArgument(EmptySubset):
    pass


class NotDisjoint(PreconditionError):
    def __init__(self, label):
        super().__init__(f"subsets must be disjoint, {label!r} appears in both")


class NotProper(PreconditionError):
    def __init__(self):
        super().__init__("subset must be proper, its complement is empty")


class TooSmall(PreconditionError):
    def __init__(self, need, got):
        super().__init__(f"space too small: need at least {need} points, got {got}")


class TooLarge(PreconditionError):
    def __init__(self, what, limit, got):
        super().__init__(f"{what} exceeds the supported bound ({got} > {limit})")


class WrongSize(PreconditionError):
    def __init__(self, detail):
        super().__init__(f"wrong size: {detail}")


class UnknownName(PreconditionError):
    def __init__(self, name, allowed):
        super().__init__(f"unknown name {name!r}, expected one of {', '.join(allowed)}")


class NotABijection(PreconditionError):
    def __init__(self, detail):
        super().__init__(f"not a bijection between the point sets: {detail}")


class SizeMismatch(PreconditionError):
    def __init__(self, n1, n2):
        super().__init__(f"spaces have different sizes ({n1} vs {n2})")


class WrongEdgeCount(PreconditionError):
    def __init__(self, need, got):
        super().__init__(f"graph must have exactly {need} edge(s), got {got}")


class DegreeTooHigh(PreconditionError):
    def __init__(self, label, degree):
        super().__init__(f"vertex {label!r} has degree {degree}, at most 1 allowed")


class NoEdges(PreconditionError):
    def __init__(self):
        super().__init__("graph must have at least one edge")


class NotComponentwiseCompleteBipartite(PreconditionError):
    def __init__(self, a, b):
        super().__init__(
            f"positive-degree part is not a union of complete bipartite components: "
            f"{a!r} and {b!r} share a component but are not adjacent"
        )
