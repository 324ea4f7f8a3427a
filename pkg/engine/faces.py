"""
Faces as bitsets over the ground set.

A face is a plain ``int``: bit ``v - 1`` is set when vertex ``v`` belongs to
it. Vertices are 1-based everywhere outside this module, so ``0b1011`` is the
face 124 and ``0`` is the empty face (dimension -1).
"""

from typing import Iterable, Iterator, Tuple

Face = int

# One machine word per face.
MAX_VERTICES = 63

EMPTY_FACE: Face = 0


def vertex_bit(v: int) -> Face:
    return 1 << (v - 1)


def full_face(n: int) -> Face:
    """The whole ground set {1..n}."""
    return (1 << n) - 1


def face_from_vertices(vertices: Iterable[int]) -> Face:
    face = 0
    for v in vertices:
        if v < 1:
            raise ValueError(f"vertices are 1-based, got {v}")
        face |= 1 << (v - 1)
    return face


def face_vertices(face: Face) -> Tuple[int, ...]:
    out = []
    v = 1
    while face:
        if face & 1:
            out.append(v)
        face >>= 1
        v += 1
    return tuple(out)


def face_size(face: Face) -> int:
    return face.bit_count()


def face_dim(face: Face) -> int:
    return face.bit_count() - 1


def face_key(face: Face):
    """Canonical order: by cardinality, then lexicographic on sorted vertices."""
    return face.bit_count(), face_vertices(face)


def sorted_faces(faces: Iterable[Face]):
    return sorted(faces, key=face_key)


def max_vertex(face: Face) -> int:
    return face.bit_length()


def submasks(face: Face) -> Iterator[Face]:
    """Every subset of ``face``, the face itself first and the empty face last."""
    sub = face
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & face


def position_in(v: int, face: Face) -> int:
    """Number of elements of ``face`` strictly smaller than vertex ``v``."""
    return (face & (vertex_bit(v) - 1)).bit_count()


def format_face(face: Face) -> str:
    if face == 0:
        return "∅"
    vertices = face_vertices(face)
    if vertices[-1] <= 9:
        return "".join(str(v) for v in vertices)
    return "{" + ",".join(str(v) for v in vertices) + "}"


def parse_face(text: str) -> Face:
    """Inverse of :func:`format_face` ("124", "{10,11}", "∅" or "")."""
    text = text.strip()
    if text in ("", "∅", "{}", "-"):
        return 0
    if text.startswith("{"):
        return face_from_vertices(int(x) for x in text.strip("{}").split(",") if x.strip())
    return face_from_vertices(int(ch) for ch in text)


def parse_faces(text: str):
    """Whitespace-separated faces in the compact notation, e.g. "12456 1245 ∅"."""
    return [parse_face(token) for token in text.split()]
