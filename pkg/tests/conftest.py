"""Shared rings for the test suite."""

import pytest

from algebra.polycore import parse_ring


@pytest.fixture
def plane():
    """k[x,y] with the local order."""
    return parse_ring("GF(32003)[x,y] local")


@pytest.fixture
def plane_global():
    return parse_ring("GF(32003)[x,y] grevlex")


@pytest.fixture
def cubic():
    """k[x]/(x^3), an Artinian hypersurface."""
    return parse_ring("GF(32003)[x] local / (x^3)")


@pytest.fixture
def squares():
    """k[x,y]/(x^2, y^2), an Artinian complete intersection of codimension two."""
    return parse_ring("GF(32003)[x,y] local / (x^2, y^2)")


@pytest.fixture
def quadric_surface():
    """k[x,y,z]/(x^2 + y^2 + z^2)."""
    return parse_ring("GF(32003)[x,y,z] local / (x^2 + y^2 + z^2)")
