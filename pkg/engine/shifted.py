"""
Shifted orders and shifted intervals.

Faces of equal size compare componentwise (F ≤_C G when f_p ≤ g_p for the
sorted elements). Across sizes, F ≤_S G when |F| ≤ |G| and F ≤_C the last |F|
elements of G. This is the reading under which F ⊆ G and F ≤_C G both imply
F ≤_S G. A shifted interval is a family that is betweenness-closed for ≤_S,
equivalently a difference of two nested shifted complexes.

The order ≤_S is generated by two kinds of down-moves: drop an element, or
lower an element to a smaller value not already in the face. Closure checks
below walk these moves instead of enumerating the power set.
"""

from dataclasses import dataclass
from typing import FrozenSet, Iterator, Optional, Tuple

import numpy as np

from engine.errors import EnumerationLimitExceeded, LapintError, NotTwoDimensional, UnequalCardinality
from engine.faces import Face, face_size, face_vertices, format_face, vertex_bit
from engine.intervals import Interval, SimplicialComplex, cone, from_pair, interval_as_dict, is_simplicial_complex
from utils.logger import logger

LEQ_C = "leq_C"
LEQ_S = "leq_S"

DEFAULT_MAX_N = 20


@dataclass(frozen=True)
class OrderRelationWitness:
    """Outcome of one order comparison; ``index`` is the first failing 1-based position."""

    relation: str
    left: Face
    right: Face
    holds: bool
    index: Optional[int] = None

    def describe(self) -> str:
        symbol = "≤_C" if self.relation == LEQ_C else "≤_S"
        verdict = "holds" if self.holds else "fails"
        text = f"{format_face(self.left)} {symbol} {format_face(self.right)} {verdict}"
        if self.index is not None:
            text += f" at position {self.index}"
        return text


def _componentwise_failure(left: Tuple[int, ...], right: Tuple[int, ...]) -> Optional[int]:
    for p, (f, g) in enumerate(zip(left, right), start=1):
        if f > g:
            return p
    return None


def compare_componentwise(f: Face, g: Face) -> OrderRelationWitness:
    if face_size(f) != face_size(g):
        raise UnequalCardinality(f, g)
    index = _componentwise_failure(face_vertices(f), face_vertices(g))
    return OrderRelationWitness(LEQ_C, f, g, index is None, index)


def compare_shifted(f: Face, g: Face) -> OrderRelationWitness:
    k, m = face_size(f), face_size(g)
    if k > m:
        return OrderRelationWitness(LEQ_S, f, g, False, None)
    tail = face_vertices(g)[m - k:]
    index = _componentwise_failure(face_vertices(f), tail)
    return OrderRelationWitness(LEQ_S, f, g, index is None, index)


def leq_componentwise(f: Face, g: Face) -> bool:
    return compare_componentwise(f, g).holds


def leq_shifted(f: Face, g: Face) -> bool:
    k = face_size(f)
    if k > face_size(g):
        return False
    tail = face_vertices(g)[face_size(g) - k:]
    return all(a <= b for a, b in zip(face_vertices(f), tail))


# -- generating moves --------------------------------------------------------------

def down_moves(face: Face) -> Iterator[Face]:
    """Faces one generating step below ``face`` in ≤_S."""
    for v in face_vertices(face):
        bit = vertex_bit(v)
        yield face ^ bit
        for w in range(1, v):
            lower = vertex_bit(w)
            if not face & lower:
                yield face ^ bit | lower


def up_moves(face: Face, n: int) -> Iterator[Face]:
    """Faces one generating step above ``face`` in ≤_S, inside {1..n}."""
    for w in range(1, n + 1):
        higher = vertex_bit(w)
        if face & higher:
            continue
        yield face | higher
        for v in face_vertices(face):
            if v < w:
                yield face ^ vertex_bit(v) | higher


def _down_degree(face: Face) -> int:
    """Number of distinct down-moves of ``face``."""
    vertices = face_vertices(face)
    members = set(vertices)
    return len(vertices) + sum(sum(1 for w in range(1, v) if w not in members) for v in vertices)


# -- recognition ------------------------------------------------------------------

def find_shifted_complex_violation(delta: Interval) -> Optional[Tuple[Face, Face]]:
    """(H, G) with H ∈ Δ, G a down-move of H and G ∉ Δ; None when Δ is ≤_S-closed."""
    for face in delta.sorted_faces:
        for lower in down_moves(face):
            if lower not in delta:
                return face, lower
    return None


def is_shifted_complex(delta: Interval) -> bool:
    if delta.is_empty:
        return True
    if not is_simplicial_complex(delta):
        return False
    return find_shifted_complex_violation(delta) is None


def find_shifted_violation(phi: Interval) -> Optional[Tuple[Face, Face, Face]]:
    """A witness F ≤_S G ≤_S H with F, H ∈ Φ and G ∉ Φ, or None.

    If such a triple exists, some chain of up-moves from F to G leaves Φ at a
    first step F' -> G'; then F' ∈ Φ, G' ∉ Φ and G' ≤_S H. So it suffices to
    try the up-moves of each face.
    """
    ordered = phi.sorted_faces
    for lower in ordered:
        for middle in up_moves(lower, phi.n):
            if middle in phi:
                continue
            for upper in ordered:
                if leq_shifted(middle, upper):
                    return lower, middle, upper
    return None


def is_shifted_interval(phi: Interval) -> bool:
    return find_shifted_violation(phi) is None


# -- generation -------------------------------------------------------------------------

def shifted_linear_extension(n: int, rng, max_n: int = DEFAULT_MAX_N) -> Tuple[Face, ...]:
    """A random linear extension of ≤_S on 2^[n] (random topological sort)."""
    if n > max_n:
        raise EnumerationLimitExceeded("shifted linear extension", n, max_n)
    remaining = {face: _down_degree(face) for face in range(1 << n)}
    available = [0]
    order = []
    while available:
        k = int(rng.integers(len(available)))
        available[k], available[-1] = available[-1], available[k]
        face = available.pop()
        order.append(face)
        for upper in up_moves(face, n):
            remaining[upper] -= 1
            if remaining[upper] == 0:
                available.append(upper)
    return tuple(order)


def random_shifted_complex(n: int, seed=None, max_n: int = DEFAULT_MAX_N) -> SimplicialComplex:
    rng = np.random.default_rng(seed)
    order = shifted_linear_extension(n, rng, max_n)
    size = int(rng.integers(0, len(order) + 1))
    return SimplicialComplex(n, order[:size])


def random_shifted_interval(n: int, seed=None, max_n: int = DEFAULT_MAX_N) -> Interval:
    """Δ − Δ′ for two prefixes of one random linear extension of ≤_S.

    Prefixes of a linear extension are ≤_S-down-sets, hence shifted complexes,
    and the shorter one sits inside the longer. No uniformity is claimed.
    """
    rng = np.random.default_rng(seed)
    order = shifted_linear_extension(n, rng, max_n)
    upper = int(rng.integers(0, len(order) + 1))
    lower = int(rng.integers(0, upper + 1))
    phi = from_pair(SimplicialComplex(n, order[:upper]), SimplicialComplex(n, order[:lower]))
    logger.debug(f"shifted interval on {n} vertices: prefixes {lower}..{upper}, {len(phi)} faces")
    return phi


# -- Φ⁻, 𝒩_Φ, Φ⁺ and Φ′ --------------------------------------------------------------------

@dataclass(frozen=True)
class ShiftedDecomposition:
    """Pieces used to peel vertex 1 off an (i-1, i)-dimensional interval."""

    top_dim: int
    phi_minus: Interval
    exceptional: FrozenSet[Face]
    phi_plus: Interval
    phi_prime: Interval

    def to_dict(self):
        return {
            "top_dim": self.top_dim,
            "phi_minus": interval_as_dict(self.phi_minus),
            "exceptional": [list(face_vertices(f)) for f in Interval(self.phi_minus.n, self.exceptional)],
            "phi_plus": interval_as_dict(self.phi_plus),
            "phi_prime": interval_as_dict(self.phi_prime),
        }


def _top_dimension(phi: Interval, top_dim: Optional[int]) -> int:
    dims = phi.dimensions
    if top_dim is not None:
        if any(d not in (top_dim - 1, top_dim) for d in dims):
            raise NotTwoDimensional(dims)
        return top_dim
    if not dims:
        return 0
    if dims[-1] - dims[0] > 1:
        raise NotTwoDimensional(dims)
    return dims[-1]


def phi_minus(phi: Interval, top_dim: Optional[int] = None) -> ShiftedDecomposition:
    """Φ⁻ = Φ − 𝒩_Φ together with Φ⁺ and Φ′, for an (i-1, i)-dimensional Φ.

    𝒩_Φ collects the i-faces containing 1 whose F − 1 is missing and the
    (i-1)-faces avoiding 1 whose F ⊎ 1 is missing. When only one dimension is
    occupied it is taken as i unless ``top_dim`` says otherwise.
    """
    i = _top_dimension(phi, top_dim)
    one = vertex_bit(1) if phi.n >= 1 else 0
    top = phi.faces_of_dim(i)
    low = phi.faces_of_dim(i - 1)

    exceptional = set()
    for face in top:
        if face & one and face ^ one not in phi:
            exceptional.add(face)
    for face in low:
        if not face & one and face | one not in phi:
            exceptional.add(face)
    minus = Interval(phi.n, phi.faces - exceptional)

    plus = set(minus.faces)
    plus.update(face | one for face in top if not face & one)
    plus.update(face ^ one for face in low if face & one)
    plus = Interval(phi.n, plus)

    top_avoiding = {f for f in top if not f & one}
    top_link = {f ^ one for f in top if f & one}
    low_avoiding = {f for f in low if not f & one}
    low_link = {f ^ one for f in low if f & one}
    prime = Interval(phi.n, top_avoiding | (top_link & low_avoiding) | low_link)

    if one and cone(prime, 1) != plus:
        raise LapintError("Φ⁺ differs from the cone 1 * Φ′")
    logger.debug(
        f"peeled vertex 1 at top dimension {i}: {len(exceptional)} exceptional faces, "
        f"Φ′ has {len(prime)} faces"
    )
    return ShiftedDecomposition(i, minus, frozenset(exceptional), plus, prime)
