from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from engine.errors import (
    GroundSetMismatch,
    IntervalViolation,
    InvalidDimensionRange,
    NotSimplicialComplex,
    NotSubcomplex,
    NotTotallyUnrelated,
    OverlappingFaces,
    OverlappingSupports,
    VertexOutOfRange,
)
from engine.faces import full_face, parse_face, parse_faces
from engine.intervals import (
    Interval,
    SimplicialComplex,
    canonical_pair,
    cone,
    contract,
    delete,
    direct_sum,
    dual,
    f_vector,
    facets,
    from_facets,
    from_pair,
    intersect,
    interval_as_dict,
    is_dimensional,
    is_interval,
    is_simplicial_complex,
    is_totally_unrelated,
    isolated_faces,
    join,
    loops,
    reduce,
    reduction_components,
    relabel,
    shift_by_set,
    skeleton,
    skeleton_split,
    star,
    validate_interval,
)
from tests.conftest import interval
from tests.strategies import disjoint_supports, intervals, intervals_with_vertex, unrelated_pairs


def faces(text):
    return set(parse_faces(text))


def brute_force_is_interval(family, n):
    for low in family:
        for high in family:
            if low & high != low:
                continue
            for middle in range(1 << n):
                if low & middle == low and middle & high == middle and middle not in family:
                    return False
    return True


# -- worked examples --------------------------------------------------------------

def test_example_interval_validates(phi):
    assert len(phi) == 7
    assert phi.faces == faces("12456 1245 1246 1356 124 135 136")


def test_canonical_pair_of_example(phi):
    delta, delta_prime = canonical_pair(phi)
    assert set(facets(delta)) == faces("12456 1356")
    assert set(facets(delta_prime)) == faces("1256 1456 2456 356 13")
    assert from_pair(delta, delta_prime) == phi


def test_from_pair_of_stated_complexes(phi):
    delta = from_facets(6, parse_faces("12456 1356"))
    delta_prime = from_facets(6, parse_faces("1256 1456 2456 356 13"))
    assert from_pair(delta, delta_prime) == phi


def test_dual_of_example(phi):
    assert dual(phi).faces == faces("3 36 35 24 356 246 245")


def test_delete_and_contract_of_example(phi):
    assert delete(phi, 2).faces == faces("1356 135 136")
    assert contract(phi, 2).faces == faces("1456 145 146 14")
    assert 2 in loops(delete(phi, 2))


def test_reduction_of_theta_is_example(phi, theta):
    assert reduce(theta, 3) == phi
    assert star(theta, 3).faces == theta.faces - phi.faces


def test_reduction_components_give_direct_sum(phi, theta):
    avoiding, containing = reduction_components(reduce(theta, 3), 3)
    assert avoiding.faces == faces("12456 1245 1246 124")
    assert containing.faces == faces("1356 135 136")
    assert direct_sum(avoiding, containing) == phi


def test_skeleton_and_f_vector_of_example(phi):
    assert skeleton(phi, 2, 2).faces == faces("124 135 136")
    assert skeleton(phi, 3, 3).faces == faces("1245 1246 1356")
    assert f_vector(phi) == (0, 0, 0, 3, 3, 1, 0)
    assert is_dimensional(phi, 2, 4)
    assert not is_dimensional(phi, 3, 4)


def test_full_square_f_vector(full_square):
    assert f_vector(full_square) == (1, 2, 1)
    assert is_simplicial_complex(full_square)


def test_interval_as_dict_is_canonical(phi):
    data = interval_as_dict(phi)
    assert data["n"] == 6
    assert data["faces"][0] == [1, 2, 4]
    assert data["faces"][-1] == [1, 2, 4, 5, 6]
    assert interval_as_dict(interval(1, "∅ 1"))["faces"] == [[], [1]]


# -- validation and errors ---------------------------------------------------------------

def test_betweenness_violation_has_witness():
    with pytest.raises(IntervalViolation) as excinfo:
        validate_interval(parse_faces("∅ 12"), 2)
    err = excinfo.value
    assert err.lower == 0
    assert err.upper == parse_face("12")
    assert err.middle in (parse_face("1"), parse_face("2"))


def test_vertex_out_of_range():
    with pytest.raises(VertexOutOfRange):
        Interval(2, [parse_face("13")])
    with pytest.raises(VertexOutOfRange):
        delete(interval(2, "∅ 1"), 3)


def test_simplicial_complex_rejects_missing_subface():
    with pytest.raises(NotSimplicialComplex):
        SimplicialComplex(2, parse_faces("∅ 12"))


def test_from_pair_requires_subcomplex():
    delta = from_facets(3, parse_faces("12"))
    with pytest.raises(NotSubcomplex):
        from_pair(delta, from_facets(3, parse_faces("3")))


def test_direct_sum_errors():
    one = interval(2, "1")
    with pytest.raises(OverlappingFaces):
        direct_sum(one, one)
    with pytest.raises(NotTotallyUnrelated):
        direct_sum(one, interval(2, "12"))
    with pytest.raises(GroundSetMismatch):
        direct_sum(one, interval(3, "2"))
    assert direct_sum(one, interval(2, "2")).faces == faces("1 2")


def test_join_needs_disjoint_supports():
    with pytest.raises(OverlappingSupports):
        join(interval(2, "1 12"), interval(2, "2"))
    assert join(interval(1, "∅ 1"), interval(2, "∅ 2")).faces == faces("∅ 1 2 12")


def test_skeleton_rejects_reversed_range(phi):
    with pytest.raises(InvalidDimensionRange):
        skeleton(phi, 3, 2)


def test_empty_interval_is_total():
    empty = Interval(3)
    assert dual(empty).is_empty
    assert reduce(empty, 1).is_empty
    assert f_vector(empty) == (0, 0, 0, 0)
    assert is_interval(empty.faces, 3)


def test_cone_and_shift_grow_the_ground_set():
    base = interval(2, "∅ 1")
    assert cone(base, 3).faces == faces("∅ 1 3 13")
    assert cone(base, 3).n == 3
    assert shift_by_set(base, [3, 4]).faces == faces("34 134")


def test_relabel_and_isolated_faces():
    phi = interval(4, "2 24 3")
    assert relabel(phi, [2, 3, 4]).faces == faces("1 13 2")
    assert isolated_faces(phi) == (parse_face("3"),)


def test_skeleton_split_fresh_vertices(phi):
    split = skeleton_split(phi, 3)
    assert split.n == 8
    low = {f & full_face(6) for f in split.faces if f & (1 << 6)}
    high = {f & full_face(6) for f in split.faces if f & (1 << 7)}
    assert low == skeleton(phi, 2, 3).faces
    assert high == skeleton(phi, 3, 4).faces


def test_skeleton_does_not_commute_with_reduction(theta):
    face = parse_face("1256")
    assert face in reduce(skeleton(theta, 1, 3), 3)
    assert face not in skeleton(reduce(theta, 3), 1, 3)


# -- exhaustive and random checks ----------------------------------------------------------

@pytest.mark.parametrize("n", [1, 2, 3])
def test_validation_matches_brute_force_exhaustively(n):
    universe = list(range(1 << n))
    for bits in product((False, True), repeat=len(universe)):
        family = {f for f, keep in zip(universe, bits) if keep}
        assert is_interval(family, n) == brute_force_is_interval(family, n)


@pytest.mark.parametrize("n", [2, 3])
def test_every_interval_is_a_relative_pair(n):
    universe = list(range(1 << n))
    for bits in product((False, True), repeat=len(universe)):
        family = {f for f, keep in zip(universe, bits) if keep}
        if not is_interval(family, n):
            continue
        phi = Interval(n, family)
        delta, delta_prime = canonical_pair(phi)
        assert from_pair(delta, delta_prime) == phi


@settings(max_examples=150, deadline=None)
@given(intervals(max_n=6))
def test_dual_is_an_involution(phi):
    assert dual(dual(phi)) == phi
    assert is_interval(dual(phi).faces, phi.n)


@settings(max_examples=150, deadline=None)
@given(intervals_with_vertex(max_n=6))
def test_reduction_is_an_interval_with_unrelated_components(case):
    phi, e = case
    reduced = reduce(phi, e)
    assert is_interval(reduced.faces, phi.n)
    avoiding, containing = reduction_components(phi, e)
    assert is_totally_unrelated(avoiding, containing)


@settings(max_examples=150, deadline=None)
@given(intervals_with_vertex(max_n=6))
def test_dual_commutes_with_star_and_reduce(case):
    phi, e = case
    assert star(dual(phi), e) == dual(star(phi, e))
    assert reduce(dual(phi), e) == dual(reduce(phi, e))


@settings(max_examples=150, deadline=None)
@given(intervals_with_vertex(max_n=6))
def test_f_vector_recursion(case):
    phi, e = case
    fv, fd, fc = f_vector(phi), f_vector(delete(phi, e)), f_vector(contract(phi, e))
    for k in range(len(fv)):
        assert fv[k] == fd[k] + (fc[k - 1] if k else 0)


@settings(max_examples=100, deadline=None)
@given(intervals(max_n=5), intervals(max_n=5))
def test_intersection_is_an_interval(first, second):
    second = Interval(first.n, (f & full_face(first.n) for f in second.faces))
    if not is_interval(second.faces, first.n):
        return
    assert is_interval(intersect(first, second).faces, first.n)


@settings(max_examples=100, deadline=None)
@given(unrelated_pairs())
def test_direct_sum_identities(pair):
    first, second = pair
    total = direct_sum(first, second)
    for e in range(1, total.n + 1):
        assert delete(total, e) == direct_sum(delete(first, e), delete(second, e))
        assert contract(total, e) == direct_sum(contract(first, e), contract(second, e))
        assert star(total, e) == direct_sum(star(first, e), star(second, e))
        assert reduce(total, e) == direct_sum(reduce(first, e), reduce(second, e))


@settings(max_examples=100, deadline=None)
@given(disjoint_supports())
def test_join_identities(pair):
    first, second = pair
    joined = join(first, second)
    k = max((f.bit_length() for f in first.faces), default=0)
    for e in range(1, k + 1):
        assert star(joined, e) == join(star(first, e), second)
        assert reduce(joined, e) == join(reduce(first, e), second)


@settings(max_examples=150, deadline=None)
@given(intervals_with_vertex(max_n=6), st.data())
def test_skeleta_commute_with_deletion_and_shift_under_contraction(case, data):
    phi, e = case
    i = data.draw(st.integers(-1, phi.n - 1))
    j = data.draw(st.integers(i, phi.n - 1))
    assert delete(skeleton(phi, i, j), e) == skeleton(delete(phi, e), i, j)
    assert contract(skeleton(phi, i, j), e) == skeleton(contract(phi, e), i - 1, j - 1)
