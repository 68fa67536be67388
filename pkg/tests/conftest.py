import pytest

from molpreduce.linalg import RationalMatrix
from molpreduce.polyhedra import HPolyhedron, PolyhedralCone
from molpreduce.problems import VectorProblem

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def unit_square():
    return HPolyhedron.box([0, 0], [1, 1])


def pentagon():
    """conv{(0,0), (2,0), (2,1), (1,2), (0,2)}"""
    return HPolyhedron.build([[1, 1]], [None], [3], [0, 0], [2, 2])


def triangle():
    """conv{(0,1), (1,0), (1,1)}"""
    return HPolyhedron.from_inequalities([[1, 1], [-1, 0], [0, -1]], [1, -1, -1])


PENTAGON_P = [[1, 0], [0, 1], [1, 1], [2, 1]]


@pytest.fixture
def square():
    return unit_square()


@pytest.fixture
def pentagon_molp():
    return VectorProblem.molp(PENTAGON_P, pentagon(), "max")


@pytest.fixture
def pentagon_min():
    return VectorProblem.molp(PENTAGON_P, pentagon())


def counterexample():
    """MOLP with both objectives x1 + x2 over a triangle, factored as
    L = [[1, 1], [1, 1]], R = I: the reduced cone is a half-plane whose
    boundary line runs along the efficient edge."""
    P = [[1, 1], [1, 1]]
    L = [[1, 1], [1, 1]]
    R = [[1, 0], [0, 1]]
    return VectorProblem.molp(P, triangle()), L, R


def fan_objectives():
    return [[1, 0], [1, 1], [1, 3], [0, 1]]


def wedge_set():
    """conv{(0,1), (1,0), (5,0)}"""
    return HPolyhedron.from_inequalities([[0, 1], [1, 1], [-1, -4]], [0, 1, -5])


def cut_wedge_set():
    return wedge_set().add_rows([[1, 4]], [2], [None])


def cone(rows):
    return PolyhedralCone(RationalMatrix.from_rows(rows))
