"""Loader for the classification tables stored in ``data/registry.json``.

Each row is stored as a few bracket columns, exactly as the classification
lists them.  Loading a row evaluates those columns for a parameter binding, splits
every bracket into its V- and L-components to obtain (L, f, A, B, C), and
realises the algebra through ``assemble_from_tuple``.
"""
from __future__ import annotations

import ast
import itertools
import json
import re
from dataclasses import dataclass
from functools import lru_cache
from importlib import resources

import numpy as np

from . import gf
from .gf import Field
from .liealg import BracketStructure, FrameworkTuple, assemble_from_tuple, tuple_from_split
from .ver4 import UsageError, from_matrix

TABLE_ALIASES = {"2·1+P": "2*1+P", "2x1+P": "2*1+P", "21+P": "2*1+P", "P-table": "P"}


@lru_cache(maxsize=1)
def load_registry() -> dict:
    text = resources.files("verlie").joinpath("data/registry.json").read_text(encoding="utf-8")
    return json.loads(text)


def registry_bytes() -> bytes:
    return resources.files("verlie").joinpath("data/registry.json").read_bytes()


# ---------------------------------------------------------------------------
# expressions

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*'?")


def _mangle(name: str) -> str:
    return name.replace("'", "_p")


class Expr:
    """A linear expression in basis names with coefficients polynomial in the
    parameters, parsed once and evaluated per binding."""

    def __init__(self, text: str):
        self.text = text
        mangled = _IDENT.sub(lambda m: _mangle(m.group(0)), text)
        self.tree = ast.parse(mangled, mode="eval").body

    def evaluate(self, F: Field, params: dict[str, int], basis: dict[str, int], dim: int):
        kind, val = self._ev(self.tree, F, params, {_mangle(k): i for k, i in basis.items()}, dim)
        if kind == "s":
            if val != 0:
                raise UsageError(f"expression {self.text!r} is a nonzero scalar, expected a vector")
            return np.zeros(dim, dtype=np.uint8)
        return val

    def scalar(self, F: Field, params: dict[str, int]) -> int:
        kind, val = self._ev(self.tree, F, params, {}, 0)
        if kind != "s":
            raise UsageError(f"expression {self.text!r} is not a scalar")
        return val

    def names(self) -> set[str]:
        return {n.id for n in ast.walk(self.tree) if isinstance(n, ast.Name)}

    def _ev(self, node, F, params, basis, dim):
        if isinstance(node, ast.Constant) and isinstance(node.value, int):
            return "s", node.value & 1
        if isinstance(node, ast.Name):
            if node.id in params:
                return "s", params[node.id]
            if node.id in basis:
                v = np.zeros(dim, dtype=np.uint8)
                v[basis[node.id]] = 1
                return "v", v
            raise UsageError(f"unknown name {node.id!r} in {self.text!r}")
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, ast.USub):
            return self._ev(node.operand, F, params, basis, dim)
        if isinstance(node, ast.BinOp):
            lk, lv = self._ev(node.left, F, params, basis, dim)
            if isinstance(node.op, ast.Pow):
                if lk != "s" or not isinstance(node.right, ast.Constant):
                    raise UsageError(f"bad power in {self.text!r}")
                return "s", F.pow(lv, int(node.right.value))
            rk, rv = self._ev(node.right, F, params, basis, dim)
            if isinstance(node.op, (ast.Add, ast.Sub)):
                if lk != rk:
                    if lk == "s" and lv == 0:
                        return rk, rv
                    if rk == "s" and rv == 0:
                        return lk, lv
                    raise UsageError(f"mixed scalar/vector sum in {self.text!r}")
                return lk, lv ^ rv
            if isinstance(node.op, ast.Mult):
                if lk == "s" and rk == "s":
                    return "s", F.mul(lv, rv)
                if lk == "s":
                    return "v", gf.scale(F, lv, rv)
                if rk == "s":
                    return "v", gf.scale(F, rv, lv)
                raise UsageError(f"product of vectors in {self.text!r}")
        raise UsageError(f"unsupported syntax in {self.text!r}")


# ---------------------------------------------------------------------------
# rows


@dataclass(frozen=True)
class RowSpec:
    table: str
    row: str
    V: tuple[str, ...]
    L: tuple[str, ...]
    prime: dict
    brackets: dict
    params: tuple[str, ...]
    domains: dict
    nonzero_any: tuple
    name: str = ""
    note: str = ""

    @property
    def row_id(self) -> str:
        return f"{self.table}/{self.row}"


def canonical_table(table_id: str) -> str:
    t = TABLE_ALIASES.get(table_id, table_id)
    if t not in load_registry()["tables"]:
        raise UsageError(f"unknown table {table_id!r}")
    return t


@lru_cache(maxsize=None)
def _row_specs() -> dict[tuple[str, str], RowSpec]:
    reg = load_registry()
    out = {}
    for tid, tab in reg["tables"].items():
        for grp in tab["groups"]:
            for row in grp["rows"]:
                br = dict(grp.get("fixed", {}))
                for col, val in zip(grp["columns"], row["values"]):
                    br[col] = val
                out[(tid, row["id"])] = RowSpec(
                    table=tid,
                    row=row["id"],
                    V=tuple(tab["V"]),
                    L=tuple(tab["L"]),
                    prime=dict(row.get("prime", tab["prime"])),
                    brackets=br,
                    params=tuple(row.get("params", ())),
                    domains={k: tuple(v) for k, v in row.get("domains", {}).items()},
                    nonzero_any=tuple(tuple(cl) for cl in row.get("nonzero_any", ())),
                    name=row.get("name", ""),
                    note=row.get("note", ""),
                )
    return out


def row_spec(table_id: str, row: str) -> RowSpec:
    t = canonical_table(table_id)
    try:
        return _row_specs()[(t, str(row))]
    except KeyError:
        raise UsageError(f"unknown row {row!r} in table {t!r}") from None


def all_rows() -> list[RowSpec]:
    return list(_row_specs().values())


def table_rows(table_id: str) -> list[RowSpec]:
    t = canonical_table(table_id)
    return [s for (tid, _), s in _row_specs().items() if tid == t]


def admissible(spec: RowSpec, F: Field, params: dict[str, int]) -> bool:
    for p in spec.params:
        if p not in params or not F.contains(params[p]):
            return False
        if p in spec.domains and params[p] not in spec.domains[p]:
            return False
    for clause in spec.nonzero_any:
        if all(Expr(e).scalar(F, params) == 0 for e in clause):
            return False
    return True


def bindings(spec: RowSpec, F: Field):
    """Every admissible binding of the row's parameters over F, in a fixed order."""
    ranges = [spec.domains.get(p, tuple(F.elements())) for p in spec.params]
    for combo in itertools.product(*ranges):
        b = dict(zip(spec.params, combo))
        if admissible(spec, F, b):
            yield b


def split_structure(spec: RowSpec, F: Field, params: dict[str, int]) -> BracketStructure:
    """The row's bracket on V ⊕ L in the split basis (V first, then L)."""
    V, L = spec.V, spec.L
    n, k = len(V), len(L)
    N = n + k
    names = V + L
    idx = {s: i for i, s in enumerate(names)}
    Lidx = {s: i for i, s in enumerate(L)}
    ev = lambda text: Expr(text).evaluate(F, params, idx, N)  # noqa: E731
    D = gf.zeros(N, N)
    for v, text in spec.prime.items():
        img = Expr(text).evaluate(F, params, Lidx, k)
        D[n:, idx[v]] = img
    c = np.zeros((N, N, N), dtype=np.uint8)
    given = {}
    for key, text in spec.brackets.items():
        a, b = (s.strip() for s in key.split(","))
        given[(idx[a], idx[b])] = ev(text)
    Lset = set(range(n, N))
    for (i, j), val in given.items():
        c[i, j] = val
    # fill in the brackets the tables leave implicit
    for (i, j), val in given.items():
        if (j, i) in given:
            continue
        if i in Lset or j in Lset:
            c[j, i] = val
        else:
            pj, pi = D[:, j], D[:, i]
            corr = gf.einsum(F, "a,b,abk->k", pj, pi, c)
            c[j, i] = val ^ corr
    label = spec.name or spec.row_id
    return BracketStructure(F, from_matrix(D, F), c, names, label)


def row_tuple(spec: RowSpec, F: Field, params: dict[str, int]) -> FrameworkTuple:
    raw = split_structure(spec, F, params)
    return tuple_from_split(raw, len(spec.V))


def table_lookup(
    table_id: str,
    row: str,
    params: dict[str, int] | None = None,
    F: Field = gf.GF2,
    with_report: bool = False,
):
    """The algebra of a table row at a parameter binding, in canonical basis.
    With ``with_report`` the tuple relation report is stored in meta["relations"]."""
    spec = row_spec(table_id, row)
    params = dict(params or {})
    missing = [p for p in spec.params if p not in params]
    if missing:
        raise UsageError(f"row {spec.row_id} needs parameters {missing}")
    extra = [p for p in params if p not in spec.params]
    if extra:
        raise UsageError(f"row {spec.row_id} has no parameters {extra}")
    if not admissible(spec, F, params):
        raise UsageError(f"parameters {params} are outside the domain of row {spec.row_id}")
    t = row_tuple(spec, F, params)
    Lalg, report = assemble_from_tuple(t, with_report)
    Lalg.name = spec.name or spec.row_id
    Lalg.meta["row"] = spec.row_id
    Lalg.meta["params"] = params
    if report is not None:
        Lalg.meta["relations"] = report
    return Lalg
