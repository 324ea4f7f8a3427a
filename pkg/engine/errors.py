"""
Exception hierarchy for the lapint engine.
Witness-carrying errors keep the offending faces as attributes so callers
(and the CLI) can report exactly what broke.
"""

from engine.faces import format_face


class LapintError(Exception):
    """Base class for every error raised by the engine."""


class GroundSetTooLarge(LapintError):
    def __init__(self, n, limit):
        self.n = n
        self.limit = limit
        super().__init__(f"ground set of size {n} exceeds the limit of {limit}")


class GroundSetMismatch(LapintError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(f"ground sets differ: {left} vs {right}")


class VertexOutOfRange(LapintError):
    def __init__(self, vertex, n):
        self.vertex = vertex
        self.n = n
        super().__init__(f"vertex {vertex} is outside 1..{n}")


class EnumerationLimitExceeded(LapintError):
    def __init__(self, what, n, limit):
        self.what = what
        self.n = n
        self.limit = limit
        super().__init__(f"{what} on {n} vertices exceeds the enumeration limit {limit}")


class IntervalViolation(LapintError):
    """F ⊆ G ⊆ H with F, H in the family but G missing."""

    def __init__(self, lower, middle, upper):
        self.lower = lower
        self.middle = middle
        self.upper = upper
        super().__init__(
            "family is not betweenness-closed: "
            f"{format_face(lower)} ⊆ {format_face(middle)} ⊆ {format_face(upper)} "
            f"but {format_face(middle)} is missing"
        )

    @property
    def witness(self):
        return self.lower, self.middle, self.upper


class NotSimplicialComplex(LapintError):
    def __init__(self, face, missing):
        self.face = face
        self.missing = missing
        super().__init__(
            f"not downward closed: {format_face(face)} present, {format_face(missing)} missing"
        )


class NotSubcomplex(LapintError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"subcomplex face {format_face(face)} is not in the ambient complex")


class NotTotallyUnrelated(LapintError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(
            f"intervals are related: {format_face(left)} and {format_face(right)} are comparable"
        )

    @property
    def witness(self):
        return self.left, self.right


class OverlappingFaces(LapintError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"face {format_face(face)} occurs in both summands")


class OverlappingSupports(LapintError):
    def __init__(self, shared):
        self.shared = shared
        super().__init__(f"vertex supports overlap on {format_face(shared)}")


class InvalidDimensionRange(LapintError):
    def __init__(self, low, high):
        self.low = low
        self.high = high
        super().__init__(f"empty dimension window [{low}, {high}]")


class EigensolverFailure(LapintError):
    pass


class DegreeOverflow(LapintError):
    def __init__(self, degree, n):
        self.degree = degree
        self.n = n
        super().__init__(f"t-degree {degree} exceeds reversal bound {n}")


class UnequalCardinality(LapintError):
    def __init__(self, left, right):
        self.left = left
        self.right = right
        super().__init__(
            f"componentwise order needs equal sizes: {format_face(left)} vs {format_face(right)}"
        )


class NotTwoDimensional(LapintError):
    def __init__(self, dimensions):
        self.dimensions = tuple(dimensions)
        super().__init__(
            f"faces occupy dimensions {list(self.dimensions)}, not two adjacent ones"
        )


class InvalidRank(LapintError):
    pass


class NonPrimeField(LapintError):
    def __init__(self, p):
        self.p = p
        super().__init__(f"field order {p} is not a prime <= 13")


class InvalidMatroid(LapintError):
    pass


class NotIndependent(LapintError):
    def __init__(self, face):
        self.face = face
        super().__init__(f"{format_face(face)} is not independent")


class NotDependentWithE(LapintError):
    def __init__(self, face, element):
        self.face = face
        self.element = element
        super().__init__(f"{format_face(face)} plus {element} is still independent")


class InconsistentBackend(LapintError):
    pass


class ContainmentFailure(LapintError):
    def __init__(self, face):
        self.face = face
        super().__init__(
            f"contraction face {format_face(face)} is not independent in the deletion"
        )


class LoopElement(LapintError):
    def __init__(self, element):
        self.element = element
        super().__init__(f"element {element} is a loop")


class PipelineError(LapintError):
    pass
