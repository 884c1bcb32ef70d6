from __future__ import annotations

import numpy as np
import pytest

from verlie import gf
from verlie.koszul import (
    compare_with_generic,
    ext_basis,
    koszul_generic,
    koszul_P,
    lambda2_basis,
    sym_dim,
    verify_exactness,
)
from verlie.ver4 import make_object

P = make_object(0, 1)


@pytest.mark.parametrize("j,i", [(j, i) for j in range(5) for i in range(2, 5)])
def test_explicit_differential_squares_to_zero(j, i):
    d1 = koszul_P(j, i).matrix
    d2 = koszul_P(j + 1, i - 1).matrix
    assert not gf.matmul(gf.GF2, d2, d1).any()


@pytest.mark.parametrize("mn", [(1, 0), (2, 0), (1, 1)])
def test_generic_differential_squares_to_zero(mn):
    X = make_object(*mn)
    for j in range(3):
        for i in range(2, 4):
            d1 = koszul_generic(X, j, i).matrix
            d2 = koszul_generic(X, j + 1, i - 1).matrix
            assert not gf.matmul(gf.GF2, d2, d1).any()


def test_P_symmetric_and_exterior_powers():
    assert [sym_dim(P, j) for j in range(5)] == [1, 2, 2, 2, 2]
    assert [ext_basis(P, i).shape[1] for i in range(1, 5)] == [2, 2, 2, 2]
    assert lambda2_basis(P).shape[1] == 2
    assert lambda2_basis(make_object(1, 0)).shape[1] == 0


def test_P_exact_to_degree_10():
    rep = verify_exactness(P, 10)
    assert rep.d_squared_zero and rep.exact_in_positive_degrees and rep.h0 == 1


def test_generic_path_agrees_for_P():
    assert compare_with_generic(6)["agree"]
    a = verify_exactness(P, 5, use_explicit=True).homology
    b = verify_exactness(P, 5, use_explicit=False).homology
    assert a == b


@pytest.mark.parametrize("mn", [(1, 0), (2, 0), (1, 1)])
def test_small_objects_exact(mn):
    rep = verify_exactness(make_object(*mn), 4)
    assert rep.exact_in_positive_degrees and rep.h0 == 1
    assert all(e == 0 for t, e in rep.euler.items() if t > 0)
    assert np.all([h >= 0 for h in rep.homology.values()])
