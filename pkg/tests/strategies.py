"""Hypothesis strategies for random faces, complexes and intervals."""

from hypothesis import strategies as st

from engine.intervals import Interval, from_facets, from_pair, with_ground_size
from engine.shifted import random_shifted_interval


@st.composite
def complexes(draw, min_n=1, max_n=5, max_facets=4):
    n = draw(st.integers(min_n, max_n))
    generators = draw(st.lists(st.integers(0, (1 << n) - 1), min_size=1, max_size=max_facets))
    return from_facets(n, generators)


@st.composite
def intervals(draw, min_n=1, max_n=5, max_facets=4):
    """Δ − Δ′ with Δ′ generated by a few faces of Δ."""
    delta = draw(complexes(min_n=min_n, max_n=max_n, max_facets=max_facets))
    removed = draw(st.lists(st.sampled_from(delta.sorted_faces), max_size=max_facets))
    return from_pair(delta, from_facets(delta.n, removed))


@st.composite
def intervals_with_vertex(draw, min_n=1, max_n=5, max_facets=4):
    phi = draw(intervals(min_n=min_n, max_n=max_n, max_facets=max_facets))
    return phi, draw(st.integers(1, phi.n))


@st.composite
def shifted_intervals(draw, min_n=1, max_n=6):
    n = draw(st.integers(min_n, max_n))
    return random_shifted_interval(n, draw(st.integers(0, 2**32 - 1)))


@st.composite
def unrelated_pairs(draw, max_n=4):
    """Φ, Θ made totally unrelated by coning-in a private vertex each (a = n+1, b = n+2)."""
    n = draw(st.integers(1, max_n))
    first = draw(intervals(min_n=n, max_n=n))
    second = draw(intervals(min_n=n, max_n=n))
    a, b = 1 << n, 1 << (n + 1)
    return (
        Interval(n + 2, (f | a for f in first.faces)),
        Interval(n + 2, (f | b for f in second.faces)),
    )


@st.composite
def disjoint_supports(draw, max_n=3):
    """Φ on {1..k} and Θ on {k+1..k+m}, both on the ground set {1..k+m}."""
    first = draw(intervals(max_n=max_n))
    second = draw(intervals(max_n=max_n))
    k, total = first.n, first.n + second.n
    return with_ground_size(first, total), Interval(total, (f << k for f in second.faces))
