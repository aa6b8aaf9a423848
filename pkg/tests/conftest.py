from __future__ import annotations

import pytest

from slimrect.core import validate

# Canonical S7: levels [[o],[x1,y1],[a,m,b],[t]] with ids
# o=0, x1=1, y1=2, a=3, m=4, b=5, t=6.
S7_LEVELS = [[0], [1, 2], [3, 4, 5], [6]]
S7_COVERS = [
    (0, 1),
    (0, 2),
    (1, 3),
    (1, 4),
    (2, 4),
    (2, 5),
    (3, 6),
    (4, 6),
    (5, 6),
]
S7_LABELS = ["o", "x1", "y1", "a", "m", "b", "t"]

O, X1, Y1, A, M, B, T = range(7)


@pytest.fixture(scope="session")
def s7():
    return validate(S7_LEVELS, S7_COVERS, S7_LABELS)


@pytest.fixture(scope="session")
def b2():
    return validate([[0], [1, 2], [3]], [(0, 1), (0, 2), (1, 3), (2, 3)])


@pytest.fixture(scope="session")
def m3():
    return validate(
        [[0], [1, 2, 3], [4]],
        [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
    )


@pytest.fixture(scope="session")
def chain3():
    return validate([[0], [1], [2]], [(0, 1), (1, 2)])


@pytest.fixture(scope="session")
def u332():
    from slimrect.universe import enumerate_sr

    return enumerate_sr(3, 3, 2)


@pytest.fixture(scope="session")
def u333():
    from slimrect.universe import enumerate_sr

    return enumerate_sr(3, 3, 3)
