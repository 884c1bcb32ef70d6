from __future__ import annotations

import itertools

import pytest

from verlie import gf
from verlie.forms import (
    ad4_identity_check,
    build_form,
    casimir,
    casimir_formula,
    check_form,
    conjecture_candidate_central,
    four_center_check,
    gl_algebra,
    gl_uea,
    invariance_space,
    killing_form,
)
from verlie.ver4 import UsageError

F4 = gf.get_field(2)


@pytest.mark.parametrize("identity", ["adjoint", "literal", "associative"])
def test_invariance_space_on_glP_is_two_dim(identity):
    assert invariance_space(gl_algebra(0, 1), identity=identity).shape[1] == 2


def test_killing_form_vanishes_on_glP():
    assert not killing_form(gl_algebra(0, 1)).any()


@pytest.mark.parametrize("mn", [(0, 1), (1, 1)])
def test_forms_symmetric_and_braided_invariant(mn):
    for lam, mu in itertools.product(F4.elements(), repeat=2):
        chk = check_form(build_form(*mn, lam, mu, F4))
        assert chk["symmetric"] and chk["adjoint_invariant"] and chk["d_invariant"]


def test_casimir_on_glP_central_and_closed_form():
    U = gl_uea(0, 1, 2)
    for lam, mu in itertools.product(F4.nonzero(), repeat=2):
        B = build_form(0, 1, lam, mu, F4)
        C = casimir(B)
        assert U.is_central(C)
        assert C == casimir_formula(B)


def test_casimir_degenerate_form_is_usage_error():
    with pytest.raises(UsageError):
        casimir(build_form(0, 1, 0, 0, F4))


def test_glP_four_center_verdicts_match_expectations():
    claims = four_center_check(0, 1)
    assert claims and all(c.as_expected for c in claims)
    flagged = [c.label for c in claims if not c.expected_central]
    assert flagged == ["(y1@y1*)^4"]


def test_ad4_identity_glP():
    rep = ad4_identity_check(0, 1)
    assert rep["holds"] and rep["pairs"] == 16


def test_conjecture_x_needs_no_correction():
    L = gl_algebra(0, 1)
    assert conjecture_candidate_central(L.vec("x"), 0, 1, {})
