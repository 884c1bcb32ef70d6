from __future__ import annotations

import pytest

from verlie import gf
from verlie.classify import (
    automorphisms,
    classify,
    derived_subalgebra,
    enumerate_structures,
    ideal_closure,
    is_simple_lie,
    isomorphism_search,
    transport,
)
from verlie.liealg import check_axioms, construct, p_algebra
from verlie.registry import table_lookup
from verlie.ver4 import make_object

F4 = gf.get_field(2)


def test_P_has_three_orbits():
    rep = classify(0, 1)
    assert rep.count == 3
    assert sum(rep.sizes) == len(enumerate_structures(0, 1))
    matched = sorted(r for i in range(rep.count) for r, _, _ in rep.matches[i])
    assert matched == ["P/a", "P/n", "P/s"]


def test_P_s_P_n_distinct_over_gf4():
    assert isomorphism_search(p_algebra("s", F4), p_algebra("n", F4), F4) is None
    assert isomorphism_search(p_algebra("s"), p_algebra("s")) is not None


def test_enumeration_members_are_lie():
    for L in enumerate_structures(0, 1):
        assert check_axioms(L).ok


def test_transport_gives_isomorphic_structure():
    L = table_lookup("1+P", "10", {"lam": 1})
    for g in automorphisms(L.obj):
        L2 = transport(L, g.mat)
        assert check_axioms(L2).ok
    assert isomorphism_search(L, transport(L, automorphisms(L.obj)[-1].mat)) is not None


def test_ideal_closure_of_zero_and_everything():
    L = construct("gl", make_object(0, 1))
    assert ideal_closure(L, gf.zeros(4, 0)).shape[1] == 0
    assert ideal_closure(L, gf.identity(4)).shape[1] == 4


@pytest.mark.parametrize(
    "name,mn,simple",
    [("sl", (1, 1), True), ("gl", (0, 1), False), ("psl", (0, 2), True), ("sl", (0, 2), False)],
)
def test_simplicity(name, mn, simple):
    assert is_simple_lie(construct(name, make_object(*mn))) == simple


def test_derived_of_abelian_is_zero():
    assert derived_subalgebra(p_algebra("a")).shape[1] == 0
