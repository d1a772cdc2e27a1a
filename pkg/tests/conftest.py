import pytest

from rectfvd.scene import make_scene


@pytest.fixture
def s0():
    """Single site at the origin, no obstacles."""
    return make_scene([(0, 0)])


@pytest.fixture
def s1():
    """Two sites on a line, no obstacles."""
    return make_scene([(0, 0), (10, 0)])


@pytest.fixture
def s2():
    """Two sites separated by one rectangle."""
    return make_scene([(0, 0), (10, 0)], [(4, -2, 6, 2)])
