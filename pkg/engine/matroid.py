"""
Matroids on the ground set {1..n} and the intervals they induce.

Four backends answer the independence oracle: uniform, graphic (forests of a
multigraph, via networkx), linear (columns over GF(p), by elimination mod p)
and explicit (a list of independent sets checked against the axioms).
Everything else, from circuits to the minor-pair interval
(IN(M - e), IN(M / e)), is built on that oracle by desk-scale enumeration.
"""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from engine.errors import (
    ContainmentFailure,
    GroundSetTooLarge,
    InconsistentBackend,
    InvalidMatroid,
    InvalidRank,
    LoopElement,
    NonPrimeField,
    NotDependentWithE,
    NotIndependent,
    VertexOutOfRange,
)
from engine.faces import Face, face_from_vertices, face_size, face_vertices, full_face, vertex_bit
from engine.intervals import (
    Interval,
    SimplicialComplex,
    direct_sum,
    from_pair,
    interval_as_dict,
    is_totally_unrelated,
    relabel,
)
from utils.logger import logger

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
DEFAULT_MAX_N = 20


def _check_ground(n: int, max_n: int):
    if n > max_n:
        raise GroundSetTooLarge(n, max_n)


class Matroid:
    """Base class: subclasses implement ``is_independent`` and ``to_dict``."""

    backend = "abstract"

    def __init__(self, n: int):
        self._n = n

    @property
    def n(self) -> int:
        return self._n

    @property
    def ground(self) -> Face:
        return full_face(self._n)

    def is_independent(self, face: Face) -> bool:
        raise NotImplementedError

    def to_dict(self) -> dict:
        raise NotImplementedError

    def _check_element(self, e: int) -> Face:
        if not 1 <= e <= self._n:
            raise VertexOutOfRange(e, self._n)
        return vertex_bit(e)

    # -- rank -------------------------------------------------------------------

    def rank_of(self, face: Face) -> int:
        """Size of a maximal independent subset of ``face`` (greedy)."""
        return face_size(self.basis_of(face))

    def basis_of(self, face: Face) -> Face:
        basis = 0
        for v in face_vertices(face):
            if self.is_independent(basis | vertex_bit(v)):
                basis |= vertex_bit(v)
        return basis

    @property
    def rank(self) -> int:
        return self.rank_of(self.ground)

    def is_loop(self, e: int) -> bool:
        return not self.is_independent(self._check_element(e))

    def loops(self) -> Tuple[int, ...]:
        return tuple(e for e in range(1, self._n + 1) if self.is_loop(e))

    # -- enumeration --------------------------------------------------------------

    @cached_property
    def _independent(self) -> frozenset:
        found = set()
        stack = [(0, 0)]
        while stack:
            face, top = stack.pop()
            found.add(face)
            for v in range(top + 1, self._n + 1):
                bigger = face | vertex_bit(v)
                if self.is_independent(bigger):
                    stack.append((bigger, v))
        return frozenset(found)

    def independent_sets(self) -> frozenset:
        return self._independent

    def bases(self) -> Tuple[Face, ...]:
        r = self.rank
        return tuple(sorted(f for f in self._independent if face_size(f) == r))

    def circuits(self) -> Tuple[Face, ...]:
        """Minimal dependent sets: every circuit is ci(x, B) for a basis B avoiding x."""
        found = set()
        for basis in self.bases():
            for x in face_vertices(self.ground & ~basis):
                found.add(self.fundamental_circuit(x, basis))
        return tuple(sorted(found, key=lambda f: (face_size(f), face_vertices(f))))

    def fundamental_circuit(self, e: int, independent: Face) -> Face:
        """ci_M(e, I): the unique circuit inside I ⊎ e."""
        bit = self._check_element(e)
        if not self.is_independent(independent):
            raise NotIndependent(independent)
        whole = independent | bit
        if whole == independent or self.is_independent(whole):
            raise NotDependentWithE(independent, e)
        circuit = bit
        for v in face_vertices(independent):
            if self.is_independent(whole ^ vertex_bit(v)):
                circuit |= vertex_bit(v)
        if self.is_independent(circuit) or any(
            not self.is_independent(circuit ^ vertex_bit(v)) for v in face_vertices(circuit)
        ):
            raise InconsistentBackend(f"no unique circuit inside {face_vertices(whole)}")
        return circuit

    # -- complexes and minors ------------------------------------------------------

    def independence_complex(self) -> SimplicialComplex:
        return SimplicialComplex(self._n, self._independent)

    def deletion_faces(self, removed: Face) -> frozenset:
        """IN(M - A) in the original labels."""
        return frozenset(f for f in self._independent if not f & removed)

    def contraction_faces(self, removed: Face) -> frozenset:
        """IN(M / A) in the original labels: I ⊆ E - A with I ∪ B independent, B a basis of A."""
        basis = self.basis_of(removed)
        return frozenset(
            f for f in self._independent if not f & removed and self.is_independent(f | basis)
        )

    def minor(self, removed: Face, contract: bool = False) -> "ExplicitMatroid":
        """M - A or M / A relabeled onto 1..n-|A| (order kept)."""
        labels = remaining_labels(self._n, removed)
        faces = self.contraction_faces(removed) if contract else self.deletion_faces(removed)
        return ExplicitMatroid(len(labels), relabel(Interval(self._n, faces), labels).faces, validate=False)

    def __repr__(self):
        return f"{type(self).__name__}(n={self._n}, rank={self.rank})"


def remaining_labels(n: int, removed: Face) -> Tuple[int, ...]:
    """Original labels of the elements outside ``removed``; new label k is entry k-1."""
    return tuple(v for v in range(1, n + 1) if not removed & vertex_bit(v))


class UniformMatroid(Matroid):
    backend = "uniform"

    def __init__(self, r: int, n: int):
        if not 0 <= r <= n:
            raise InvalidRank(f"uniform matroid needs 0 <= r <= n, got r={r}, n={n}")
        super().__init__(n)
        self.r = r

    def is_independent(self, face: Face) -> bool:
        return face_size(face) <= self.r

    def to_dict(self):
        return {"backend": self.backend, "r": self.r, "n": self._n}


class GraphicMatroid(Matroid):
    """Edges of a multigraph; a set of edges is independent when it is a forest."""

    backend = "graphic"

    def __init__(self, edges: Sequence[Tuple[Hashable, Hashable]]):
        super().__init__(len(edges))
        self.edges = tuple(tuple(edge) for edge in edges)
        for edge in self.edges:
            if len(edge) != 2:
                raise InvalidMatroid(f"edge {edge} does not have two endpoints")

    def is_independent(self, face: Face) -> bool:
        if not face:
            return True
        graph = nx.MultiGraph()
        graph.add_edges_from(self.edges[v - 1] for v in face_vertices(face))
        return nx.is_forest(graph)

    def to_dict(self):
        return {"backend": self.backend, "edges": [list(e) for e in self.edges]}


def _rank_mod_p(vectors: List[List[int]], p: int) -> int:
    rows = [list(v) for v in vectors]
    rank = 0
    width = len(rows[0]) if rows else 0
    for col in range(width):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] % p), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inverse = pow(rows[rank][col], p - 2, p)
        rows[rank] = [x * inverse % p for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col] % p:
                factor = rows[r][col]
                rows[r] = [(x - factor * y) % p for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


class LinearMatroid(Matroid):
    """Column vectors over GF(p); independence is linear independence mod p."""

    backend = "linear"

    def __init__(self, columns: Sequence[Sequence[int]], p: int):
        if p not in SMALL_PRIMES:
            raise NonPrimeField(p)
        super().__init__(len(columns))
        self.p = p
        self.columns = tuple(tuple(int(x) % p for x in col) for col in columns)
        if len({len(col) for col in self.columns}) > 1:
            raise InvalidMatroid("columns have different lengths")

    def is_independent(self, face: Face) -> bool:
        chosen = [list(self.columns[v - 1]) for v in face_vertices(face)]
        return _rank_mod_p(chosen, self.p) == len(chosen)

    def to_dict(self):
        return {"backend": self.backend, "p": self.p, "columns": [list(c) for c in self.columns]}


class ExplicitMatroid(Matroid):
    """A matroid given by its independent sets."""

    backend = "explicit"

    def __init__(self, n: int, independent_sets: Iterable[Face], validate: bool = True):
        super().__init__(n)
        self._given = frozenset(independent_sets)
        limit = full_face(n)
        for face in self._given:
            if face & ~limit:
                raise VertexOutOfRange(face.bit_length(), n)
        if validate:
            check_independence_axioms(self._given)

    def is_independent(self, face: Face) -> bool:
        return face in self._given

    def to_dict(self):
        ordered = sorted(self._given, key=lambda f: (face_size(f), face_vertices(f)))
        return {"backend": self.backend, "n": self._n, "independent": [list(face_vertices(f)) for f in ordered]}


def check_independence_axioms(family: frozenset):
    """Raise InvalidMatroid unless ``family`` is a nonempty, downward closed family with exchange."""
    if 0 not in family:
        raise InvalidMatroid("the empty set must be independent")
    for face in family:
        for v in face_vertices(face):
            if face ^ vertex_bit(v) not in family:
                raise InvalidMatroid(f"{face_vertices(face)} is independent but a subset is not")
    for small in family:
        for large in family:
            if face_size(small) >= face_size(large):
                continue
            if not any(small | vertex_bit(x) in family for x in face_vertices(large & ~small)):
                raise InvalidMatroid(
                    f"exchange fails between {face_vertices(small)} and {face_vertices(large)}"
                )


# -- constructors --------------------------------------------------------------------

def matroid_uniform(r: int, n: int, max_n: int = DEFAULT_MAX_N) -> UniformMatroid:
    _check_ground(n, max_n)
    return UniformMatroid(r, n)


def matroid_graphic(edges, max_n: int = DEFAULT_MAX_N) -> GraphicMatroid:
    _check_ground(len(edges), max_n)
    return GraphicMatroid(edges)


def matroid_linear(columns, p: int, max_n: int = DEFAULT_MAX_N) -> LinearMatroid:
    _check_ground(len(columns), max_n)
    return LinearMatroid(columns, p)


def matroid_explicit(n: int, independent_sets, max_n: int = DEFAULT_MAX_N) -> ExplicitMatroid:
    """``independent_sets`` holds faces or vertex lists."""
    _check_ground(n, max_n)
    faces = [s if isinstance(s, int) else face_from_vertices(s) for s in independent_sets]
    return ExplicitMatroid(n, faces)


def fano_matroid() -> LinearMatroid:
    """The Fano plane: all nonzero vectors of GF(2)^3."""
    columns = [[(k >> 2) & 1, (k >> 1) & 1, k & 1] for k in range(1, 8)]
    return LinearMatroid(columns, 2)


def complete_graph_matroid(k: int) -> GraphicMatroid:
    return GraphicMatroid(sorted(nx.complete_graph(range(1, k + 1)).edges()))


# -- intervals from matroids ---------------------------------------------------------

def independence_complex(matroid: Matroid) -> SimplicialComplex:
    return matroid.independence_complex()


def _pair_in_original_labels(matroid: Matroid, removed: Face) -> Interval:
    deleted = matroid.deletion_faces(removed)
    contracted = matroid.contraction_faces(removed)
    for face in contracted:
        if face not in deleted:
            raise ContainmentFailure(face)
    return from_pair(SimplicialComplex(matroid.n, deleted), SimplicialComplex(matroid.n, contracted))


def strong_map_interval(matroid: Matroid, removed: Iterable[int], relabeled: bool = True) -> Interval:
    """(IN(M - A), IN(M / A)), relabeled onto the elements outside A by default."""
    face = face_from_vertices(removed)
    for v in face_vertices(face):
        matroid._check_element(v)
    pair = _pair_in_original_labels(matroid, face)
    if not relabeled:
        return pair
    return relabel(pair, remaining_labels(matroid.n, face))


def minor_pair(matroid: Matroid, e: int, relabeled: bool = True) -> Interval:
    """(IN(M) - e, IN(M) / e) on the n - 1 remaining elements.

    For a non-loop e these are the matroid minors. A loop lies in no
    independent set, so IN(M) / e is empty and the pair is IN(M) itself.
    """
    bit = matroid._check_element(e)
    if not matroid.is_loop(e):
        return strong_map_interval(matroid, (e,), relabeled)
    pair = Interval(matroid.n, matroid.deletion_faces(bit))
    return relabel(pair, remaining_labels(matroid.n, bit)) if relabeled else pair


@dataclass(frozen=True)
class CircuitDecomposition:
    """The minor pair at ``element`` split into one summand (C - e) ∘ IN(M / C) per circuit C ∋ e."""

    element: int
    labels: Tuple[int, ...]
    circuits: Tuple[Face, ...]
    summands: Tuple[Interval, ...]

    @property
    def interval(self) -> Interval:
        total = Interval(len(self.labels))
        for summand in self.summands:
            total = direct_sum(total, summand)
        return total

    def to_dict(self):
        return {
            "element": self.element,
            "labels": list(self.labels),
            "summands": [
                {"circuit": list(face_vertices(c)), "interval": interval_as_dict(s)}
                for c, s in zip(self.circuits, self.summands)
            ],
        }


def circuit_decomposition(matroid: Matroid, e: int) -> CircuitDecomposition:
    bit = matroid._check_element(e)
    if matroid.is_loop(e):
        raise LoopElement(e)
    pair = _pair_in_original_labels(matroid, bit)
    labels = remaining_labels(matroid.n, bit)

    through_e = [c for c in matroid.circuits() if c & bit]
    pieces: Dict[Face, set] = {}
    for circuit in through_e:
        rest = circuit ^ bit
        pieces[circuit] = {
            f for f in matroid.independent_sets()
            if f & circuit == rest
        }

    # every face of the pair belongs to the summand of its fundamental circuit
    for face in pair.faces:
        owner = matroid.fundamental_circuit(e, face)
        if face not in pieces.get(owner, ()):
            raise InconsistentBackend(
                f"face {face_vertices(face)} is missing from the summand of circuit {face_vertices(owner)}"
            )
    covered = set().union(*pieces.values()) if pieces else set()
    if covered != set(pair.faces):
        raise InconsistentBackend("circuit summands do not cover the minor pair exactly")

    circuits = tuple(sorted(pieces, key=lambda f: (face_size(f), face_vertices(f))))
    summands = tuple(relabel(Interval(matroid.n, pieces[c]), labels) for c in circuits)
    for a, b in combinations(summands, 2):
        if not is_totally_unrelated(a, b):
            raise InconsistentBackend("circuit summands are not totally unrelated")
    decomposition = CircuitDecomposition(e, labels, circuits, summands)
    if decomposition.interval != relabel(pair, labels):
        raise InconsistentBackend("circuit summands do not reassemble the minor pair")
    logger.debug(f"element {e}: {len(circuits)} circuits, {len(pair)} faces in the minor pair")
    return decomposition


# -- random instances -----------------------------------------------------------------

RANDOM_BACKENDS = ("gf2", "gf3", "graphic", "uniform")


def random_matroid(backend: str, n: int, rng, max_rank: Optional[int] = None) -> Matroid:
    """A random matroid on n elements; no uniformity over matroids is claimed."""
    max_rank = n if max_rank is None else min(max_rank, n)
    if backend in ("gf2", "gf3"):
        p = 2 if backend == "gf2" else 3
        rows = int(rng.integers(1, max(max_rank, 1) + 1))
        matrix = rng.integers(0, p, size=(rows, n))
        return LinearMatroid([[int(x) for x in matrix[:, j]] for j in range(n)], p)
    if backend == "graphic":
        vertices = int(rng.integers(2, max(max_rank, 1) + 2))
        edges = [tuple(int(x) for x in rng.integers(1, vertices + 1, size=2)) for _ in range(n)]
        return GraphicMatroid(edges)
    if backend == "uniform":
        return UniformMatroid(int(rng.integers(0, max_rank + 1)), n)
    raise ValueError(f"unknown random matroid backend {backend!r}")
