from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from verlie import gf

FIELDS = [gf.get_field(k) for k in (1, 2, 3, 4)]


def elems(F):
    return st.integers(0, F.q - 1)


@st.composite
def field_and_mat(draw, max_dim=6):
    F = draw(st.sampled_from(FIELDS))
    r = draw(st.integers(1, max_dim))
    c = draw(st.integers(1, max_dim))
    vals = draw(st.lists(elems(F), min_size=r * c, max_size=r * c))
    return F, np.array(vals, dtype=np.uint8).reshape(r, c)


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
def test_field_axioms_exhaustive(F):
    for a in F.elements():
        assert F.add(a, a) == 0
        assert F.mul(a, 1) == a
        if a:
            assert F.mul(a, F.inv(a)) == 1
        r = F.sqrt(a)
        assert F.mul(r, r) == a
        assert sum(1 for s in F.elements() if F.mul(s, s) == a) == 1


@given(st.sampled_from(FIELDS), st.data())
def test_frobenius_is_ring_map(F, data):
    a, b = data.draw(elems(F)), data.draw(elems(F))
    sq = lambda z: F.mul(z, z)  # noqa: E731
    assert sq(F.add(a, b)) == F.add(sq(a), sq(b))
    assert sq(F.mul(a, b)) == F.mul(sq(a), sq(b))


@given(st.sampled_from(FIELDS), st.data())
def test_distributive(F, data):
    a, b, c = (data.draw(elems(F)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))


@pytest.mark.parametrize("F", FIELDS, ids=lambda F: F.name)
def test_parse_fmt_roundtrip(F):
    for a in F.elements():
        assert F.parse(F.fmt(a)) == a


def test_solve_identity():
    sol = gf.solve_linear(gf.GF2, gf.identity(3), [1, 0, 1])
    assert sol.particular.tolist() == [1, 0, 1]
    assert sol.kernel.shape[1] == 0


def test_solve_inconsistent():
    assert not gf.solve_linear(gf.GF2, gf.zeros(2, 2), [1, 0]).consistent


def test_solve_dimension_mismatch():
    with pytest.raises(ValueError):
        gf.solve_linear(gf.GF2, gf.identity(3), [1, 0])


@given(field_and_mat(), st.data())
def test_solve_roundtrip(Fm, data):
    F, A = Fm
    x0 = np.array(data.draw(st.lists(elems(F), min_size=A.shape[1], max_size=A.shape[1])), dtype=np.uint8)
    b = gf.matvec(F, A, x0)
    sol = gf.solve_linear(F, A, b)
    assert sol.consistent
    assert np.array_equal(gf.matvec(F, A, sol.particular), b)
    # x0 differs from the particular solution by a kernel vector
    assert gf.in_span(F, sol.kernel, sol.particular ^ x0)
    K = sol.kernel
    assert gf.rank(F, K) == K.shape[1] == A.shape[1] - gf.rank(F, A)
    assert not gf.matmul(F, A, K).any()


@given(field_and_mat())
def test_rank_transpose(Fm):
    F, A = Fm
    assert gf.rank(F, A) == gf.rank(F, A.T.copy())


@given(field_and_mat(max_dim=5), st.data())
def test_matmul_fast_path_matches_einsum(Fm, data):
    F, A = Fm
    c = data.draw(st.integers(1, 5))
    B = np.array(data.draw(st.lists(elems(F), min_size=A.shape[1] * c, max_size=A.shape[1] * c)), dtype=np.uint8)
    B = B.reshape(A.shape[1], c)
    assert np.array_equal(gf.matmul(F, A, B), gf.einsum(F, "ij,jk->ik", A, B))


@given(st.sampled_from(FIELDS), st.data())
def test_det_multiplicative(F, data):
    n = data.draw(st.integers(1, 4))
    draw = lambda: np.array(data.draw(st.lists(elems(F), min_size=n * n, max_size=n * n)), dtype=np.uint8).reshape(n, n)  # noqa: E731
    A, B = draw(), draw()
    assert gf.det(F, gf.matmul(F, A, B)) == F.mul(gf.det(F, A), gf.det(F, B))
    assert (gf.det(F, A) != 0) == (gf.rank(F, A) == n)
    if gf.det(F, A):
        assert np.array_equal(gf.matmul(F, A, gf.inverse(F, A)), gf.identity(n))
