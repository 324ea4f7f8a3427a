"""
Intervals in the Boolean algebra (2^E, ⊆) and their operation algebra.

An interval is a betweenness-closed family of faces: F ⊆ G ⊆ H with F, H in
the family forces G into it. Equivalently it is a relative simplicial pair
Δ − Δ′. Every operation here is a pure function returning a new value;
deletion and contraction keep the ground set, so the removed vertex stays
around as a loop.
"""

from typing import Iterable, Optional, Sequence, Tuple

from engine.errors import (
    GroundSetMismatch,
    GroundSetTooLarge,
    IntervalViolation,
    InvalidDimensionRange,
    NotSimplicialComplex,
    NotSubcomplex,
    NotTotallyUnrelated,
    OverlappingFaces,
    OverlappingSupports,
    VertexOutOfRange,
)
from engine.faces import (
    MAX_VERTICES,
    Face,
    face_dim,
    face_from_vertices,
    face_vertices,
    format_face,
    full_face,
    max_vertex,
    sorted_faces,
    vertex_bit,
)
from utils.logger import logger


class Interval:
    """A family of faces on the ground set {1..n}; immutable and hashable."""

    __slots__ = ("_n", "_faces", "_sorted", "_by_dim", "_support")

    def __init__(self, n: int, faces: Iterable[Face] = ()):
        if n < 0:
            raise ValueError(f"ground set size must be non-negative, got {n}")
        if n > MAX_VERTICES:
            raise GroundSetTooLarge(n, MAX_VERTICES)
        faces = frozenset(faces)
        limit = full_face(n)
        support = 0
        for face in faces:
            if face < 0 or face & ~limit:
                raise VertexOutOfRange(max_vertex(face), n)
            support |= face
        self._n = n
        self._faces = faces
        self._support = support
        self._sorted = None
        self._by_dim = None

    @property
    def n(self) -> int:
        return self._n

    @property
    def faces(self) -> frozenset:
        return self._faces

    @property
    def support(self) -> Face:
        """Union of all faces: the non-loop vertices."""
        return self._support

    @property
    def sorted_faces(self) -> Tuple[Face, ...]:
        if self._sorted is None:
            self._sorted = tuple(sorted_faces(self._faces))
        return self._sorted

    def faces_of_dim(self, i: int) -> Tuple[Face, ...]:
        """Φ_i in canonical order."""
        if self._by_dim is None:
            by_dim = {}
            for face in self.sorted_faces:
                by_dim.setdefault(face_dim(face), []).append(face)
            self._by_dim = {d: tuple(fs) for d, fs in by_dim.items()}
        return self._by_dim.get(i, ())

    @property
    def dimensions(self) -> Tuple[int, ...]:
        """Occupied dimensions, ascending."""
        self.faces_of_dim(-1)
        return tuple(sorted(self._by_dim))

    @property
    def is_empty(self) -> bool:
        return not self._faces

    def __len__(self):
        return len(self._faces)

    def __iter__(self):
        return iter(self.sorted_faces)

    def __contains__(self, face):
        return face in self._faces

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self._n == other._n and self._faces == other._faces

    def __hash__(self):
        return hash((self._n, self._faces))

    def __repr__(self):
        body = ", ".join(format_face(f) for f in self.sorted_faces)
        return f"{type(self).__name__}(n={self._n}, {{{body}}})"


class SimplicialComplex(Interval):
    """An interval closed under taking subfaces (contains ∅ whenever nonempty)."""

    __slots__ = ()

    def __init__(self, n: int, faces: Iterable[Face] = ()):
        super().__init__(n, faces)
        for face in self.sorted_faces:
            rest = face
            while rest:
                low = rest & -rest
                if face ^ low not in self._faces:
                    raise NotSimplicialComplex(face, face ^ low)
                rest ^= low


def _check_vertex(phi: Interval, e: int) -> Face:
    if not 1 <= e <= phi.n:
        raise VertexOutOfRange(e, phi.n)
    return vertex_bit(e)


def _check_same_ground(phi: Interval, theta: Interval):
    if phi.n != theta.n:
        raise GroundSetMismatch(phi.n, theta.n)


# -- construction and validation ---------------------------------------------

def find_betweenness_violation(faces, n: int) -> Optional[Tuple[Face, Face, Face]]:
    """Return a witness (F, G, H) with F ⊆ G ⊆ H, F, H present and G missing.

    Only one-step middles G = F ⊎ v need checking: walking up any chain from a
    present F to a missing G crosses some present/missing boundary, and that
    step is itself a witness under the same H.
    """
    faces = frozenset(faces)
    ordered = sorted_faces(faces)
    for lower in ordered:
        for v in range(1, n + 1):
            bit = vertex_bit(v)
            if lower & bit:
                continue
            middle = lower | bit
            if middle in faces:
                continue
            for upper in ordered:
                if upper & middle == middle:
                    return lower, middle, upper
    return None


def is_interval(faces, n: int) -> bool:
    return find_betweenness_violation(faces, n) is None


def validate_interval(faces: Iterable[Face], n: int) -> Interval:
    """Build an Interval, raising IntervalViolation unless betweenness-closed."""
    phi = Interval(n, faces)
    witness = find_betweenness_violation(phi.faces, n)
    if witness is not None:
        raise IntervalViolation(*witness)
    return phi


def interval_from_vertex_lists(n: int, faces: Iterable[Iterable[int]]) -> Interval:
    return validate_interval((face_from_vertices(f) for f in faces), n)


def downward_closure(faces: Iterable[Face]) -> set:
    closure = set()
    stack = list(faces)
    while stack:
        face = stack.pop()
        if face in closure:
            continue
        closure.add(face)
        rest = face
        while rest:
            low = rest & -rest
            if face ^ low not in closure:
                stack.append(face ^ low)
            rest ^= low
    return closure


def from_facets(n: int, facets: Iterable[Face]) -> SimplicialComplex:
    """The simplicial complex generated by ``facets``."""
    return SimplicialComplex(n, downward_closure(facets))


def as_complex(delta: Interval) -> SimplicialComplex:
    if isinstance(delta, SimplicialComplex):
        return delta
    return SimplicialComplex(delta.n, delta.faces)


def is_simplicial_complex(phi: Interval) -> bool:
    for face in phi.faces:
        rest = face
        while rest:
            low = rest & -rest
            if face ^ low not in phi.faces:
                return False
            rest ^= low
    return True


def from_pair(delta: Interval, delta_prime: Interval) -> Interval:
    """The relative pair (Δ, Δ′) as the interval Δ − Δ′."""
    _check_same_ground(delta, delta_prime)
    delta = as_complex(delta)
    delta_prime = as_complex(delta_prime)
    for face in delta_prime.sorted_faces:
        if face not in delta.faces:
            raise NotSubcomplex(face)
    return Interval(delta.n, delta.faces - delta_prime.faces)


def canonical_pair(phi: Interval) -> Tuple[SimplicialComplex, SimplicialComplex]:
    """Δ = downward closure of Φ and Δ′ = Δ − Φ."""
    delta = from_facets(phi.n, phi.faces)
    delta_prime = SimplicialComplex(phi.n, delta.faces - phi.faces)
    return delta, delta_prime


def facets(phi: Interval) -> Tuple[Face, ...]:
    """Maximal faces; in an interval these are exactly the faces without coboundary."""
    return tuple(f for f in phi.sorted_faces if not coboundary_faces(phi, f))


def interval_as_dict(phi: Interval) -> dict:
    """{"n": 6, "faces": [[1, 2, 4], ...]} with faces in canonical order; ∅ is []."""
    return {"n": phi.n, "faces": [list(face_vertices(f)) for f in phi.sorted_faces]}


def _bits(face: Face):
    while face:
        low = face & -face
        yield low
        face ^= low


# -- the operation algebra ---------------------------------------------------

def dual(phi: Interval) -> Interval:
    """Φ* = {E − F : F ∈ Φ}."""
    full = full_face(phi.n)
    return Interval(phi.n, (full ^ f for f in phi.faces))


def delete(phi: Interval, e: int) -> Interval:
    """Φ − e = {F ∈ Φ : e ∉ F}."""
    bit = _check_vertex(phi, e)
    return Interval(phi.n, (f for f in phi.faces if not f & bit))


def contract(phi: Interval, e: int) -> Interval:
    """Φ/e = {F − e : F ∈ Φ, e ∈ F}; not necessarily inside Φ − e."""
    bit = _check_vertex(phi, e)
    return Interval(phi.n, (f ^ bit for f in phi.faces if f & bit))


def star(phi: Interval, e: int) -> Interval:
    """All pairs {F, F ⊎ e} lying in Φ."""
    bit = _check_vertex(phi, e)
    out = set()
    for face in phi.faces:
        if not face & bit and face | bit in phi.faces:
            out.add(face)
            out.add(face | bit)
    return Interval(phi.n, out)


def reduce(phi: Interval, e: int) -> Interval:
    """Φ||e = Φ − st_Φ e."""
    paired = star(phi, e).faces
    return Interval(phi.n, phi.faces - paired)


def reduction_components(phi: Interval, e: int) -> Tuple[Interval, Interval]:
    """Split Φ||e into its faces avoiding e and its faces containing e."""
    reduced = reduce(phi, e)
    bit = vertex_bit(e)
    avoiding = Interval(phi.n, (f for f in reduced.faces if not f & bit))
    containing = Interval(phi.n, (f for f in reduced.faces if f & bit))
    return avoiding, containing


def related_pair(phi: Interval, theta: Interval) -> Optional[Tuple[Face, Face]]:
    """First (F, G), F ∈ Φ, G ∈ Θ, with F ⊆ G or G ⊆ F; None if totally unrelated."""
    for left in phi.sorted_faces:
        for right in theta.sorted_faces:
            common = left & right
            if common == left or common == right:
                return left, right
    return None


def is_totally_unrelated(phi: Interval, theta: Interval) -> bool:
    return related_pair(phi, theta) is None


def direct_sum(phi: Interval, theta: Interval) -> Interval:
    """Φ ⊕ Θ, defined only when the summands are totally unrelated."""
    _check_same_ground(phi, theta)
    shared = phi.faces & theta.faces
    if shared:
        raise OverlappingFaces(sorted_faces(shared)[0])
    witness = related_pair(phi, theta)
    if witness is not None:
        raise NotTotallyUnrelated(*witness)
    return Interval(phi.n, phi.faces | theta.faces)


def intersect(phi: Interval, theta: Interval) -> Interval:
    _check_same_ground(phi, theta)
    return Interval(phi.n, phi.faces & theta.faces)


def join(phi: Interval, theta: Interval) -> Interval:
    """Φ * Θ = {F ⊎ G}; the ground set is the larger of the two."""
    shared = phi.support & theta.support
    if shared:
        raise OverlappingSupports(shared)
    n = max(phi.n, theta.n)
    return Interval(n, (f | g for f in phi.faces for g in theta.faces))


def cone(phi: Interval, v: int) -> Interval:
    """v * Φ = {v, ∅} * Φ."""
    bit = vertex_bit(v)
    n = max(phi.n, v)
    return join(phi, Interval(n, (0, bit)))


def shift_by_set(phi: Interval, vertices: Iterable[int]) -> Interval:
    """R ∘ Φ = {R} * Φ."""
    r = face_from_vertices(vertices)
    n = max(phi.n, max_vertex(r))
    return join(phi, Interval(n, (r,)))


def open_star(phi: Interval, v: int) -> Interval:
    """v ∘ Φ."""
    return shift_by_set(phi, (v,))


def skeleton(phi: Interval, i: int, j: int) -> Interval:
    """Φ^[i,j]: faces with i ≤ dim F ≤ j."""
    if i > j:
        raise InvalidDimensionRange(i, j)
    return Interval(phi.n, (f for f in phi.faces if i <= face_dim(f) <= j))


def is_dimensional(phi: Interval, i: int, j: int) -> bool:
    """True when Φ is (i,j)-dimensional."""
    return all(i <= d <= j for d in phi.dimensions)


def f_vector(phi: Interval) -> Tuple[int, ...]:
    """Face counts; entry k is f_{k-1}, for dimensions -1..n-1."""
    counts = [0] * (phi.n + 1)
    for face in phi.faces:
        counts[face.bit_count()] += 1
    return tuple(counts)


def face_count(phi: Interval, i: int) -> int:
    """f_i(Φ), zero outside -1..n-1."""
    return len(phi.faces_of_dim(i))


def loops(phi: Interval) -> frozenset:
    return frozenset(v for v in range(1, phi.n + 1) if not phi.support & vertex_bit(v))


def boundary_faces(phi: Interval, face: Face) -> Tuple[Face, ...]:
    """{F − v ∈ Φ : v ∈ F}."""
    return tuple(sorted_faces(face ^ b for b in _bits(face) if face ^ b in phi.faces))


def coboundary_faces(phi: Interval, face: Face) -> Tuple[Face, ...]:
    """{F ⊎ w ∈ Φ : w ∉ F}."""
    free = full_face(phi.n) & ~face
    return tuple(sorted_faces(face | b for b in _bits(free) if face | b in phi.faces))


def isolated_faces(phi: Interval) -> Tuple[Face, ...]:
    """Faces with neither boundary nor coboundary in Φ."""
    return tuple(
        f for f in phi.sorted_faces
        if not boundary_faces(phi, f) and not coboundary_faces(phi, f)
    )


def with_ground_size(phi: Interval, m: int) -> Interval:
    """Same faces on {1..m}; extra vertices are loops."""
    return Interval(m, phi.faces)


def relabel(phi: Interval, vertices: Sequence[int]) -> Interval:
    """Re-index the ground subset ``vertices`` to 1..len(vertices), in the given order."""
    mapping = {v: k + 1 for k, v in enumerate(vertices)}
    out = []
    for face in phi.faces:
        new = 0
        for v in face_vertices(face):
            if v not in mapping:
                raise VertexOutOfRange(v, len(vertices))
            new |= vertex_bit(mapping[v])
        out.append(new)
    return Interval(len(vertices), out)


def skeleton_split(phi: Interval, i: int) -> Interval:
    """Θ = (b∘Φ^[i-1,i]) ⊕ (t∘Φ^[i,i+1]) with fresh vertices b = n+1, t = n+2.

    The two fresh vertices keep the skeleta totally unrelated, so their
    residuals can be added.
    """
    m = phi.n + 2
    lower = with_ground_size(open_star(skeleton(phi, i - 1, i), phi.n + 1), m)
    upper = open_star(with_ground_size(skeleton(phi, i, i + 1), phi.n + 1), phi.n + 2)
    return direct_sum(lower, upper)


# -- random instances ----------------------------------------------------------

def random_complex(n: int, rng, max_facets: int = 4, max_size: Optional[int] = None) -> SimplicialComplex:
    """Down-closure of a few random faces on {1..n}."""
    max_size = n if max_size is None else min(max_size, n)
    generators = []
    for _ in range(int(rng.integers(1, max_facets + 1))):
        size = int(rng.integers(0, max_size + 1))
        chosen = rng.permutation(n)[:size] + 1
        generators.append(face_from_vertices(int(v) for v in chosen))
    return from_facets(n, generators)


def random_interval(n: int, rng, max_facets: int = 4, max_size: Optional[int] = None) -> Interval:
    """Δ − Δ′ for a random complex Δ and a subcomplex generated by some of its faces."""
    delta = random_complex(n, rng, max_facets=max_facets, max_size=max_size)
    ordered = delta.sorted_faces
    picks = int(rng.integers(0, min(len(ordered), max_facets) + 1))
    chosen = [ordered[int(k)] for k in rng.choice(len(ordered), size=picks, replace=False)] if picks else []
    delta_prime = from_facets(n, chosen)
    phi = from_pair(delta, delta_prime)
    logger.debug(f"random interval on {n} vertices: {len(phi)} faces")
    return phi
