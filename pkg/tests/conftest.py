import pytest

from rainbowgirth.container import ColorClass, ColoredGraph


@pytest.fixture
def triangle_graph():
    """A triangle whose three edges carry three colors."""
    return ColoredGraph.from_edge_colors(3, [(0, 1, 0), (1, 2, 1), (0, 2, 2)])


@pytest.fixture
def repair_example():
    """
    Class 1 is the triangle 012, classes 2 and 3 are stars.

    Two sides of the triangle plus 03 and 23 close the 4-cycle 0-1-2-3,
    which repeats color 1 until the side 02 replaces 0-1-2.
    """
    return ColoredGraph(n=6, classes=[
        ColorClass(id=1, edges=[(0, 1), (1, 2), (0, 2)]),
        ColorClass(id=2, edges=[(0, 3), (0, 4)]),
        ColorClass(id=3, edges=[(2, 3), (2, 5)]),
    ])


@pytest.fixture
def rainbow_triangle_example():
    """The shortest cycle of the repair graph is already the rainbow triangle 345."""
    return ColoredGraph(n=7, classes=[
        ColorClass(id=1, edges=[(0, 1), (1, 2), (0, 2)]),
        ColorClass(id=2, edges=[(3, 4), (3, 6)]),
        ColorClass(id=3, edges=[(4, 5), (4, 6)]),
        ColorClass(id=4, edges=[(3, 5), (5, 6)]),
    ])


@pytest.fixture
def planted_c4_text():
    """Four 3-edges whose shadow carries a rainbow 4-cycle 0-1-2-3 and no rainbow triangle."""
    return "8 3\n0 1 4\n1 2 5\n2 3 6\n0 3 7\n"
