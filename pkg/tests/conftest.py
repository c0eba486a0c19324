from __future__ import annotations

import pytest
from hypothesis import settings

from qpdt import QP, Potential, Quiver

settings.register_profile("ci", max_examples=40, deadline=None)
settings.load_profile("ci")


@pytest.fixture
def a2() -> Quiver:
    return Quiver([[0, 1], [0, 0]])


@pytest.fixture
def kronecker() -> Quiver:
    return Quiver([[0, 2], [0, 0]])


@pytest.fixture
def a3() -> Quiver:
    return Quiver([[0, 1, 0], [0, 0, 1], [0, 0, 0]])


@pytest.fixture
def triangle() -> QP:
    return QP(3, [("a", 1, 2), ("b", 2, 3), ("c", 3, 1)], Potential({("a", "b", "c"): 1}))
