from __future__ import annotations

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from verlie import gf
from verlie.cohom import adjoint_module, ce_cohomology, d0_matrix, d1_matrix, d2_matrix, p_apply, p_map
from verlie.liealg import construct
from verlie.registry import all_rows, bindings, table_lookup
from verlie.ver4 import make_object


def _ordinary_algebras():
    F = gf.GF2
    yield "gl(P)", construct("gl", make_object(0, 1)).c
    yield "gl(2)", construct("gl", make_object(2, 0)).c
    # registry rows with zero differential contribution are ordinary Lie algebras too
    for spec in all_rows():
        if spec.table != "1+P":
            continue
        for b in bindings(spec, F):
            L = table_lookup(spec.table, spec.row, b, F)
            LM = adjoint_module(F, L.c)
            if LM.is_module():
                yield spec.row_id, L.c


CASES = list(_ordinary_algebras())


@pytest.mark.parametrize("name,c", CASES, ids=[n for n, _ in CASES])
def test_differentials_compose_to_zero(name, c):
    F = gf.GF2
    LM = adjoint_module(F, c)
    if not LM.is_module():
        pytest.skip("bracket is not an ordinary Lie bracket")
    assert not gf.matmul(F, d1_matrix(LM), d0_matrix(LM)).any()
    assert not gf.matmul(F, d2_matrix(LM), d1_matrix(LM)).any()


def test_abelian_one_dim_trivial_module():
    F = gf.GF2
    LM = adjoint_module(F, np.zeros((1, 1, 1), dtype=np.uint8))
    assert ce_cohomology(LM, 1).dimension == 1
    # alternating 2-forms on a line vanish; symmetric ones do not
    assert ce_cohomology(LM, 2).dimension == 0
    assert ce_cohomology(LM, 2, extended=True).dimension == 1


@given(st.integers(1, 2), st.data())
def test_p_map_is_frobenius_semilinear(k, data):
    F = gf.get_field(k)
    n = 2
    vals = data.draw(st.lists(st.integers(0, F.q - 1), min_size=n * n, max_size=n * n))
    c = np.zeros((n, n, 1), dtype=np.uint8)
    for i in range(n):
        for j in range(i, n):
            c[i, j, 0] = c[j, i, 0] = vals[i * n + j]
    assert p_map(F, c).shape == (1, n)
    x = np.array(data.draw(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n)), dtype=np.uint8)
    a = data.draw(st.integers(0, F.q - 1))
    lhs = p_apply(F, c, gf.scale(F, a, x))
    rhs = gf.scale(F, F.mul(a, a), p_apply(F, c, x))
    assert np.array_equal(lhs, rhs)
