from __future__ import annotations

import numpy as np
import pytest

from verlie import gf
from verlie.ver4 import UsageError, braiding, dual, make_object, tensor

OBJECTS = [(1, 0), (0, 1), (1, 1), (2, 1), (0, 2)]


@pytest.mark.parametrize("mn", OBJECTS)
def test_canonical_differential_squares_to_zero(mn):
    X = make_object(*mn)
    assert X.dim == mn[0] + 2 * mn[1]
    assert not gf.matmul(gf.GF2, X.D, X.D).any()
    assert gf.rank(gf.GF2, X.D) == mn[1]


@pytest.mark.parametrize("a", OBJECTS)
@pytest.mark.parametrize("b", OBJECTS[:3])
def test_braiding_is_symmetric_morphism(a, b):
    F = gf.GF2
    X, Y = make_object(*a), make_object(*b)
    c_xy, c_yx = braiding(X, Y), braiding(Y, X)
    assert np.array_equal(gf.matmul(F, c_yx, c_xy), gf.identity(X.dim * Y.dim))
    XY, YX = tensor(X, Y), tensor(Y, X)
    assert np.array_equal(gf.matmul(F, c_xy, XY.D), gf.matmul(F, YX.D, c_xy))


def test_dual_of_P_is_P():
    P = make_object(0, 1)
    assert gf.rank(gf.GF2, dual(P).D) == 1


def test_bad_object():
    with pytest.raises(UsageError):
        make_object(0, 0)
