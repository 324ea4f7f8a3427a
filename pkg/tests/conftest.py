import pytest

from engine.faces import face_from_vertices, parse_faces
from engine.intervals import Interval, from_facets, validate_interval
from utils.logger import setup_logger

PHI_FACES = "12456 1245 1246 1356 124 135 136"


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: full-scale runs of the algebraic identities")


def example_phi() -> Interval:
    return validate_interval(parse_faces(PHI_FACES), 6)


def example_theta() -> Interval:
    """F ⊆ 12356 or F ⊆ 12456, and F ⊇ 12, 135 or 136."""
    tops = [face_from_vertices(v) for v in ((1, 2, 3, 5, 6), (1, 2, 4, 5, 6))]
    bottoms = [face_from_vertices(v) for v in ((1, 2), (1, 3, 5), (1, 3, 6))]
    faces = [
        f for f in range(1 << 6)
        if any(f & ~top == 0 for top in tops) and any(f & b == b for b in bottoms)
    ]
    return validate_interval(faces, 6)


def interval(n: int, text: str) -> Interval:
    """Interval from the compact face notation, e.g. interval(2, "∅ 1 2 12")."""
    return validate_interval(parse_faces(text), n)


@pytest.fixture
def phi():
    return example_phi()


@pytest.fixture
def theta():
    return example_theta()


@pytest.fixture
def full_square():
    return interval(2, "∅ 1 2 12")


@pytest.fixture
def hollow_triangle():
    return interval(3, "∅ 1 2 3 12 13 23")


@pytest.fixture
def path_p4():
    return from_facets(4, parse_faces("12 23 34"))


@pytest.fixture(autouse=True)
def quiet_logger():
    setup_logger("WARNING")
    yield
    setup_logger("WARNING")
