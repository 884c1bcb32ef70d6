from __future__ import annotations

import numpy as np
from hypothesis import given
from hypothesis import strategies as st

from verlie import gf
from verlie.liealg import BracketStructure, construct, p_algebra
from verlie.uea import UEA, check_central_idempotent, pbw_check
from verlie.ver4 import make_object

GL = construct("gl", make_object(0, 1))
U = UEA(GL)


@st.composite
def elements(draw, max_len=3):
    terms = draw(st.lists(st.lists(st.integers(0, GL.dim - 1), max_size=max_len), min_size=1, max_size=3))
    return U.add(*(U.normal_form(tuple(w)) for w in terms))


@given(elements(), elements(), elements())
def test_multiplication_is_associative(a, b, c):
    assert U.multiply(U.multiply(a, b), c) == U.multiply(a, U.multiply(b, c))


@given(elements(), elements())
def test_normal_form_of_concatenation(a, b):
    F = U.F
    terms = [U.scale(F.mul(ca, cb), U.normal_form(wa + wb)) for wa, ca in a.items() for wb, cb in b.items()]
    assert U.multiply(a, b) == U.add(*terms)


@given(st.integers(0, 3), st.integers(0, 3))
def test_defining_relation(u, v):
    # uv = vu + v'u' + [u, v] in U(gl(P))
    gu, gv = U.gen(u), U.gen(v)
    lhs = U.multiply(gu, gv)
    pu, pv = U.from_vector(GL.prime(GL.basis_vector(u))), U.from_vector(GL.prime(GL.basis_vector(v)))
    rhs = U.add(U.multiply(gv, gu), U.multiply(pv, pu), U.from_vector(GL.c[u, v]))
    assert lhs == rhs


def test_e_is_central_idempotent():
    assert check_central_idempotent(U, U.gen("e"))


def test_x_squared_central():
    assert U.is_central(U.power(U.gen("x"), 2))


def test_pbw_holds_for_p_algebras():
    for kind in "asn":
        assert not pbw_check(p_algebra(kind), 3).defect


def test_pbw_defect_example():
    c = np.zeros((2, 2, 2), dtype=np.uint8)
    c[0, 0, 1] = 1
    rep = pbw_check(BracketStructure(gf.GF2, make_object(2, 0), c, ("x", "y")), 3)
    assert rep.defect
    assert rep.actual_dims[0] == rep.expected_dims[0]
    assert rep.actual_dims[1] < rep.expected_dims[1]
