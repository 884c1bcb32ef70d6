from __future__ import annotations

import numpy as np
import pytest

from verlie import gf
from verlie.liealg import BracketStructure, check_axioms, construct, gl_coords, gl_matrix, p_algebra
from verlie.ver4 import UsageError, make_object


def _two_trivial(c_entries, m=2):
    X = make_object(m, 0)
    c = np.zeros((m, m, m), dtype=np.uint8)
    for (i, j, k) in c_entries:
        c[i, j, k] = 1
    return BracketStructure(gf.GF2, X, c, tuple("xy"[:m]))


def test_one_dim_self_bracket_fails_jacobi():
    L = _two_trivial([(0, 0, 0)], m=1)
    rep = check_axioms(L)
    assert not rep.jacobi


def test_pbw_defect_example_fails_only_lie_condition():
    rep = check_axioms(_two_trivial([(0, 0, 1)]))
    assert rep.skew and rep.derivation and rep.jacobi
    assert not rep.lie_condition


@pytest.mark.parametrize("kind", "asn")
def test_p_algebras_are_lie(kind):
    assert check_axioms(p_algebra(kind)).ok


def test_gl_P_basis():
    L = construct("gl", make_object(0, 1))
    assert L.dim == 4 and L.labels == ("x", "y", "e", "y'")
    assert np.array_equal(L.prime(L.vec("x")), L.vec("e"))
    assert np.array_equal(L.prime(L.vec("y")), L.vec("y'"))


@pytest.mark.parametrize("mn", [(1, 0), (0, 1), (2, 0), (1, 1), (3, 0), (2, 1), (0, 2)])
def test_gl_is_lie(mn):
    assert check_axioms(construct("gl", make_object(*mn))).ok


@pytest.mark.parametrize("mn", [(1, 1), (0, 2), (2, 1)])
def test_gl_bracket_symmetric_on_ker_d(mn):
    F = gf.GF2
    L = construct("gl", make_object(*mn))
    K = gf.kernel(F, L.D)
    for i in range(L.dim):
        for j in range(K.shape[1]):
            u, v = L.basis_vector(i), K[:, j]
            assert np.array_equal(L.bracket(u, v), L.bracket(v, u))


def test_gl_matrix_roundtrip_and_bracket():
    F = gf.GF2
    L = construct("gl", make_object(1, 1))
    for i in range(L.dim):
        for j in range(L.dim):
            A, B = gl_matrix(L, L.basis_vector(i)), gl_matrix(L, L.basis_vector(j))
            Ap, Bp = gl_matrix(L, L.prime(L.basis_vector(i))), gl_matrix(L, L.prime(L.basis_vector(j)))
            want = gf.matmul(F, A, B) ^ gf.matmul(F, B, A) ^ gf.matmul(F, Ap, Bp)
            assert np.array_equal(gl_coords(L, want), L.c[i, j])


def test_sl_P_dim():
    L = construct("sl", make_object(0, 1))
    assert L.dim == 3 and check_axioms(L).ok


def test_psl_needs_even_m():
    with pytest.raises(UsageError):
        construct("psl", make_object(1, 1))
