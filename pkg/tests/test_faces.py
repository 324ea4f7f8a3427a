import pytest

from engine.faces import (
    face_dim,
    face_from_vertices,
    face_key,
    face_vertices,
    format_face,
    full_face,
    parse_face,
    parse_faces,
    position_in,
    sorted_faces,
    submasks,
)


def test_face_bits_are_one_based():
    assert face_from_vertices([1, 2, 4]) == 0b1011
    assert face_vertices(0b1011) == (1, 2, 4)
    assert face_vertices(0) == ()


def test_face_dimension():
    assert face_dim(0) == -1
    assert face_dim(face_from_vertices([3])) == 0
    assert face_dim(full_face(4)) == 3


def test_zero_vertex_rejected():
    with pytest.raises(ValueError):
        face_from_vertices([0, 1])


def test_canonical_order_by_size_then_vertices():
    faces = parse_faces("124 13 ∅ 2 12 3")
    assert [format_face(f) for f in sorted_faces(faces)] == ["∅", "2", "3", "12", "13", "124"]
    assert face_key(parse_face("13")) < face_key(parse_face("23"))


def test_format_and_parse_agree():
    for text in ("∅", "1", "1356", "{2,10,11}"):
        assert format_face(parse_face(text)) == text


def test_submasks_cover_every_subset():
    face = parse_face("135")
    subs = list(submasks(face))
    assert len(subs) == 8
    assert subs[0] == face and subs[-1] == 0
    assert len(set(subs)) == 8


def test_position_counts_smaller_elements():
    face = parse_face("1246")
    assert position_in(1, face) == 0
    assert position_in(4, face) == 2
    assert position_in(6, face) == 3
