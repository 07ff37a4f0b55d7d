import sys
from fractions import Fraction
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from toricelim.polyring import MPoly, var_key

DATA = Path(__file__).parent / "data"

# supports of the running system: f1 = f10 + f11*t1*t2,
# f2 = f20 + f21*t1^2*t2 + f22*t1*t2^2, f3 = f30 + f31*t1^2*t2 + f32*t2
RUNNING_SUPPORTS = (
    ((0, 0), (1, 1)),
    ((0, 0), (2, 1), (1, 2)),
    ((0, 0), (2, 1), (0, 1)),
)

# heptagon normals with their offsets, numbered clockwise as in the source
# system's facet picture (eta_1 .. eta_7)
HEPTAGON_FACETS = {
    (1, 0): 0, (2, -1): 1, (1, -1): 2, (0, -1): 4,
    (-1, -1): 8, (-1, 1): 2, (-1, 2): 0,
}

F10 = var_key(1, (0, 0))
F11 = var_key(1, (1, 1))
F20 = var_key(2, (0, 0))
F21 = var_key(2, (2, 1))
F22 = var_key(2, (1, 2))
F30 = var_key(3, (0, 0))
F31 = var_key(3, (2, 1))
F32 = var_key(3, (0, 1))


def _mono(d):
    return tuple(sorted(d.items()))


# the 7-term resultant of the running system (transcribed term by term)
RES123 = MPoly({
    _mono({F10: 1, F11: 3, F21: 1, F22: 1, F30: 2}): -1,
    _mono({F10: 1, F11: 3, F20: 1, F22: 1, F30: 1, F31: 1}): 1,
    _mono({F10: 4, F22: 2, F31: 2}): 1,
    _mono({F11: 4, F20: 1, F21: 1, F30: 1, F32: 1}): -1,
    _mono({F11: 4, F20: 2, F31: 1, F32: 1}): 1,
    _mono({F10: 3, F11: 1, F21: 1, F22: 1, F31: 1, F32: 1}): 2,
    _mono({F10: 2, F11: 2, F21: 2, F32: 2}): 1,
})

HALF = Fraction(1, 2)


@pytest.fixture(scope="session")
def running_supports():
    return RUNNING_SUPPORTS


@pytest.fixture(scope="session")
def res123():
    return RES123


@pytest.fixture(scope="session")
def all_ones():
    return {v: 1 for v in RES123.variables()}


@pytest.fixture(scope="session")
def running_polytopes():
    from toricelim.lattice_geom import convex_hull
    return tuple(convex_hull(s) for s in RUNNING_SUPPORTS)
