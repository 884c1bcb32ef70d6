from __future__ import annotations

import json

import pytest

from verlie import gf
from verlie.classify import isomorphism_search
from verlie.liealg import check_axioms, construct
from verlie.registry import all_rows, bindings, registry_bytes, table_lookup
from verlie.ver4 import UsageError, make_object


def test_registry_is_deterministic_json():
    raw = registry_bytes()
    assert raw == registry_bytes()
    assert isinstance(json.loads(raw), dict)
    assert len(all_rows()) > 60


def test_row_3_lambda_0():
    L = table_lookup("1+P", "3", {"lam": 0})
    assert L.nonzero_brackets() == {"[y,y]": "y'"}


def test_unknown_row():
    with pytest.raises(UsageError):
        table_lookup("1+P", "99", {})


def test_missing_parameter():
    with pytest.raises(UsageError):
        table_lookup("1+P", "3", {})


def test_relation_report_matches_axioms():
    # every relation of the tuple framework holds exactly when the axioms do
    for spec in all_rows():
        for b in bindings(spec, gf.GF2):
            L = table_lookup(spec.table, spec.row, b, gf.GF2, with_report=True)
            rel = L.meta["relations"]
            assert all(rel.values()) == check_axioms(L).ok, (spec.row_id, b, rel)


def test_pgl_P_is_row_9():
    # recorded discrepancy: the quotient of gl(P) by scalars lands on row 9
    F4 = gf.get_field(2)
    pgl = construct("pgl", make_object(0, 1))
    assert isomorphism_search(pgl, table_lookup("1+P", "9", {}), F4) is not None
    assert isomorphism_search(pgl, table_lookup("1+P", "10", {"lam": 1}), F4) is None
