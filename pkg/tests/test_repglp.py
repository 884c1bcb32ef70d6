from __future__ import annotations

import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

from verlie import gf
from verlie.repglp import (
    check_module,
    composition_series,
    direct_sum,
    identify_simple,
    is_simple_module,
    make_simple,
    module_from,
    module_isomorphism,
    tensor_modules,
    trivial_module,
    zero_module,
)

F4 = gf.get_field(2)
els = st.integers(0, 3)


def test_L100_matrices():
    M = make_simple(1, 0, 0)
    assert M.act("y").tolist() == [[0, 0], [0, 1]]
    assert M.act("x").tolist() == [[0, 1], [0, 0]]
    assert M.act("y'").tolist() == [[0, 0], [1, 0]]
    assert M.act("e").tolist() == [[1, 0], [0, 1]]


def test_L100_without_e_is_not_a_module():
    M = make_simple(1, 0, 0)
    bad = module_from(M.F, M.D, M.act("x"), M.act("y"), gf.zeros(2, 2), M.act("y'"))
    assert not check_module(bad)


def test_degenerate_modules():
    assert check_module(zero_module())
    assert make_simple(0, 0, 1).dim == 1
    assert is_simple_module(trivial_module())


@pytest.mark.parametrize("eps,a,b", list(itertools.product((0, 1), range(4), range(4))))
def test_simples_over_gf4(eps, a, b):
    M = make_simple(eps, a, b, F4)
    assert check_module(M) and is_simple_module(M)
    lab = identify_simple(M)
    assert identify_simple(make_simple(*lab, F4)) == lab


@pytest.mark.parametrize("b", range(4))
def test_L01b_iso_L01b1(b):
    assert module_isomorphism(make_simple(0, 1, b, F4), make_simple(0, 1, b ^ 1, F4)) is not None


@given(els, els, els, els)
def test_tensor_of_two_dim_simples_is_module_not_simple(a1, b1, a2, b2):
    T = tensor_modules(make_simple(1, a1, b1, F4), make_simple(1, a2, b2, F4))
    assert T.dim == 4 and check_module(T) and not is_simple_module(T)
    assert len(composition_series(T).factors) >= 2


@given(st.integers(0, 1), els, els)
def test_tensor_with_trivial_is_identity(eps, a, b):
    M = make_simple(eps, a, b, F4)
    T = tensor_modules(M, trivial_module(F4))
    assert module_isomorphism(T, M) is not None


@given(st.integers(0, 1), els, els, st.integers(0, 1), els, els)
def test_direct_sum_series_splits(e1, a1, b1, e2, a2, b2):
    S = direct_sum(make_simple(e1, a1, b1, F4), make_simple(e2, a2, b2, F4))
    assert check_module(S)
    assert composition_series(S).split
