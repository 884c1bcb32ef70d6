"""Brute-force classification of Lie structures on small objects m·1 + nP.

The linear axioms (skew-symmetry, derivation, [x, x] = 0 on ker d) cut out a
subspace of structure tensors; its points are then swept and filtered by the
quadratic Jacobi identity.  Orbits are taken under the group of invertible
d-commuting matrices, with the lexicographically least tensor as representative.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import gf
from .gf import Field, Mat
from .liealg import (
    BracketStructure,
    bracket_eval,
    change_basis,
    check_axioms,
    derivation_residual,
    skew_residual,
)
from .ver4 import (
    ResourceGuardError,
    UsageError,
    Ver4Morphism,
    Ver4Object,
    default_names,
    guard_scale,
    make_object,
)

# total-dimension limits for exhaustive work, per field size
_ENUM_LIMIT = {1: 4, 2: 3}
_MAX_CANDIDATES = 1 << 24
_MAX_GROUP_SPACE = 1 << 20
_CHUNK = 4096


def _guard(ok: bool, msg: str):
    if not ok:
        raise ResourceGuardError(msg + " (raise VERLIE_GUARD_SCALE to allow)")


# ---------------------------------------------------------------------------
# linear algebra helpers over batches


def _combos(F: Field, r: int, start: int, stop: int) -> np.ndarray:
    """Coefficient vectors with indices start..stop-1 in base |F| (first coordinate slowest)."""
    q = F.q
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.zeros((stop - start, r), dtype=np.uint8)
    for j in range(r - 1, -1, -1):
        out[:, j] = idx % q
        idx //= q
    return out


def _span_points(F: Field, basis: Mat, start: int, stop: int) -> np.ndarray:
    """Points of the column span of ``basis`` with combination indices start..stop-1."""
    coeffs = _combos(F, basis.shape[1], start, stop)
    return gf.einsum(F, "zr,pr->zp", coeffs, basis)


def batch_invertible(F: Field, Ms: np.ndarray) -> np.ndarray:
    """Invertibility flags for a stack of square matrices (batched elimination)."""
    M = np.array(Ms, dtype=np.uint8, copy=True)
    Z, n, _ = M.shape
    ok = np.ones(Z, dtype=bool)
    inv = np.array([0] + [F.inv(a) for a in range(1, F.q)], dtype=np.uint8)
    ar = np.arange(Z)
    for c in range(n):
        col = M[:, c:, c]
        has = col.any(axis=1)
        ok &= has
        p = c + np.argmax(col != 0, axis=1)
        rows_c = M[ar, c].copy()
        M[ar, c] = M[ar, p]
        M[ar, p] = rows_c
        piv = inv[M[:, c, c]]
        M[:, c] = F.mul_table[piv[:, None], M[:, c]]
        for r in range(c + 1, n):
            f = M[:, r, c]
            M[:, r] ^= F.mul_table[f[:, None], M[:, c]]
    return ok


# ---------------------------------------------------------------------------
# enumeration


def linear_constraint_space(X: Ver4Object, F: Field) -> Mat:
    """Basis (columns, flattened N³ tensors) of tensors satisfying skew-symmetry,
    the derivation rule and the Lie condition on a basis of ker d."""
    N = X.dim
    K = gf.kernel(F, X.D)
    cols = []
    for p in range(N**3):
        c = np.zeros(N**3, dtype=np.uint8)
        c[p] = 1
        L = BracketStructure(F, X, c.reshape(N, N, N))
        parts = [skew_residual(L).ravel(), derivation_residual(L).ravel()]
        parts += [bracket_eval(L, K[:, j], K[:, j]) for j in range(K.shape[1])]
        cols.append(np.concatenate(parts))
    return gf.kernel(F, np.stack(cols, axis=1))


def _batch_jacobi_ok(F: Field, D: Mat, cs: np.ndarray) -> np.ndarray:
    T1 = gf.einsum(F, "zijm,zmkl->zijkl", cs, cs)
    r = T1.copy()
    r ^= T1.transpose(0, 2, 3, 1, 4)  # [[k,i],j] placed at (i,j,k)
    r ^= T1.transpose(0, 3, 1, 2, 4)  # [[j,k],i]
    if D.any():
        r ^= gf.einsum(F, "ai,bk,zajbl->zijkl", D, D, T1)
        r ^= gf.einsum(F, "ak,bj,zaibl->zijkl", D, D, T1)
        r ^= gf.einsum(F, "aj,bi,zakbl->zijkl", D, D, T1)
    return ~r.reshape(r.shape[0], -1).any(axis=1)


def enumerate_structures(m: int, n: int, F: Field = gf.GF2) -> list[BracketStructure]:
    """Every Lie structure on m·1 + nP over F, in enumeration order."""
    if m < 0 or n < 0 or m + n < 1:
        raise UsageError("need m, n >= 0 and m + n >= 1")
    X = make_object(m, n)
    N = X.dim
    limit = _ENUM_LIMIT.get(F.k, 2)
    _guard(N <= limit * max(guard_scale(), 1.0), f"enumeration over {F.name} limited to m+2n <= {limit}")
    B = linear_constraint_space(X, F)
    total = F.q ** B.shape[1]
    _guard(total <= _MAX_CANDIDATES * guard_scale(), f"{total} candidate tensors exceed the sweep budget")
    labels = default_names(m, n)
    out = []
    for start in range(0, total, _CHUNK):
        stop = min(total, start + _CHUNK)
        pts = _span_points(F, B, start, stop).reshape(-1, N, N, N)
        keep = _batch_jacobi_ok(F, X.D, pts)
        for c in pts[keep]:
            out.append(BracketStructure(F, X, c, labels))
    return out


# ---------------------------------------------------------------------------
# automorphisms and orbits


def commutant_basis(X: Ver4Object, F: Field) -> Mat:
    """Basis of the d-commuting matrices (flattened row-major) as columns."""
    N = X.dim
    D = X.D
    cols = []
    for p in range(N * N):
        g = np.zeros(N * N, dtype=np.uint8)
        g[p] = 1
        g = g.reshape(N, N)
        cols.append((gf.matmul(F, D, g) ^ gf.matmul(F, g, D)).ravel())
    return gf.kernel(F, np.stack(cols, axis=1))


def _group_matrices(X: Ver4Object, F: Field) -> np.ndarray:
    _guard(X.dim <= 4 * max(guard_scale(), 1.0), "automorphism enumeration limited to dim X <= 4")
    Cb = commutant_basis(X, F)
    total = F.q ** Cb.shape[1]
    _guard(total <= _MAX_GROUP_SPACE * guard_scale(), f"{total} d-commuting matrices exceed the budget")
    N = X.dim
    out = []
    for start in range(0, total, 1 << 14):
        stop = min(total, start + (1 << 14))
        Ms = _span_points(F, Cb, start, stop).reshape(-1, N, N)
        out.append(Ms[batch_invertible(F, Ms)])
    return np.concatenate(out, axis=0)


def automorphisms(X: Ver4Object, F: Field = gf.GF2) -> list[Ver4Morphism]:
    """All invertible d-commuting matrices of X over F."""
    return [Ver4Morphism(X, X, g) for g in _group_matrices(X, F)]


def transport(L: BracketStructure, g: Mat) -> BracketStructure:
    """g·L: the structure with [g u, g v]_new = g [u, v]_old."""
    return change_basis(L, gf.inverse(L.F, g))


def _batch_transport(F: Field, G: np.ndarray, Ginv: np.ndarray, c: np.ndarray) -> np.ndarray:
    # (g·c)[i,j,l] = sum g[l,k] c[a,b,k] ginv[a,i] ginv[b,j]
    return gf.einsum(F, "zai,zbj,abk,zlk->zijl", Ginv, Ginv, c, G)


@dataclass
class OrbitReport:
    representatives: list[BracketStructure]
    sizes: list[int]
    matches: dict[int, list] = field(default_factory=dict)  # orbit index -> [(row id, params, field)]
    flags: list[str] = field(default_factory=list)

    @property
    def count(self) -> int:
        return len(self.representatives)


def _group_with_inverses(F: Field, G: np.ndarray):
    Ginv = np.stack([gf.inverse(F, g) for g in G]) if len(G) else G
    return G, Ginv


def orbit_classify(structures: list[BracketStructure], group) -> OrbitReport:
    """Partition the structures into orbits; representative = least tensor bytes."""
    if not structures:
        return OrbitReport([], [])
    F = structures[0].F
    X = structures[0].obj
    G = np.stack([g.mat if isinstance(g, Ver4Morphism) else g for g in group])
    G, Ginv = _group_with_inverses(F, G)
    seen: set[bytes] = set()
    reps, sizes = [], []
    for L in structures:
        key = L.c.tobytes()
        if key in seen:
            continue
        orbit = _batch_transport(F, G, Ginv, L.c)
        keys = {o.tobytes() for o in orbit}
        seen |= keys
        least = min(keys)
        c = np.frombuffer(least, dtype=np.uint8).reshape(L.c.shape).copy()
        reps.append(BracketStructure(F, X, c, L.labels))
        sizes.append(len(keys))
    order = sorted(range(len(reps)), key=lambda i: reps[i].c.tobytes())
    return OrbitReport([reps[i] for i in order], [sizes[i] for i in order])


def canonical_form(L: BracketStructure, group=None) -> bytes:
    if group is None:
        G = _group_matrices(L.obj, L.F)
    else:
        G = np.stack([g.mat if isinstance(g, Ver4Morphism) else g for g in group])
    G, Ginv = _group_with_inverses(L.F, G)
    return min(o.tobytes() for o in _batch_transport(L.F, G, Ginv, L.c))


# ---------------------------------------------------------------------------
# isomorphism search


def lift(L: BracketStructure, F: Field) -> BracketStructure:
    """View a structure over GF(2) (or over F itself) as one over F."""
    if L.F == F:
        return L
    if L.F.k != 1 and F.k % L.F.k == 0:
        raise UsageError(f"lifting from {L.F.name} to {F.name} is not supported, only from gf2")
    if L.F.k != 1:
        raise UsageError(f"{L.F.name} is not a subfield of {F.name}")
    return BracketStructure(F, L.obj, L.c.copy(), L.labels, L.name, dict(L.meta))


def isomorphism_search(L1: BracketStructure, L2: BracketStructure, F: Field | None = None, ext_degree: int | None = None):
    """A d-commuting invertible φ with φ[u, v]₁ = [φu, φv]₂, or None.

    The sweep runs over all d-commuting matrices over GF(2^ext_degree), so None
    is exhaustive at that field size."""
    if ext_degree is not None:
        F = gf.get_field(ext_degree)
    F = F or L1.F
    A, B = lift(L1, F), lift(L2, F)
    if (A.obj.m, A.obj.n) != (B.obj.m, B.obj.n):
        return None
    if not np.array_equal(A.D, B.D):
        raise UsageError("isomorphism search needs both structures on the same d-matrix")
    X = A.obj
    _guard(X.dim <= 4 * max(guard_scale(), 1.0), "isomorphism search limited to dim <= 4")
    Cb = commutant_basis(X, F)
    total = F.q ** Cb.shape[1]
    _guard(total <= _MAX_GROUP_SPACE * guard_scale(), f"{total} d-commuting matrices exceed the budget")
    N = X.dim
    for start in range(0, total, 1 << 13):
        stop = min(total, start + (1 << 13))
        Ms = _span_points(F, Cb, start, stop).reshape(-1, N, N)
        lhs = gf.einsum(F, "ijk,zlk->zijl", A.c, Ms)
        rhs = gf.einsum(F, "zai,zbj,abl->zijl", Ms, Ms, B.c)
        hit = ~(lhs ^ rhs).reshape(len(Ms), -1).any(axis=1)
        if hit.any():
            cand = Ms[hit]
            good = batch_invertible(F, cand)
            if good.any():
                return cand[np.argmax(good)].copy()
    return None


# ---------------------------------------------------------------------------
# ideals


def ideal_closure(L: BracketStructure, S: Mat) -> Mat:
    """Smallest d-stable, bracket-stable subspace containing the columns of S."""
    F = L.F
    cur = gf.col_space(F, gf.asmat(S))
    while True:
        if cur.shape[1] == 0:
            return cur
        br = gf.einsum(F, "ijk,jr->kir", L.c, cur).reshape(L.dim, -1)
        nxt = gf.col_space(F, np.concatenate([cur, gf.matmul(F, L.D, cur), br], axis=1))
        if nxt.shape[1] == cur.shape[1]:
            return cur
        cur = nxt


def _projective_points(F: Field, N: int):
    """One nonzero vector per line (first nonzero coordinate equal to 1)."""
    for lead in range(N):
        for tail in itertools.product(F.elements(), repeat=N - lead - 1):
            v = np.zeros(N, dtype=np.uint8)
            v[lead] = 1
            v[lead + 1:] = tail
            yield v


def is_simple_lie(L: BracketStructure) -> bool:
    """True iff every nonzero ideal is the whole algebra.

    A nonzero ideal is d-stable and d² = 0, so it meets ker d; sweeping the
    lines of ker d as generators is therefore exhaustive."""
    F = L.F
    K = gf.kernel(F, L.D)
    limit = 10 if F.k == 1 else 5
    _guard(
        K.shape[1] <= limit * max(guard_scale(), 1.0),
        f"simplicity sweep over {F.name} limited to dim ker d <= {limit}",
    )
    for v in _projective_points(F, K.shape[1]):
        if ideal_closure(L, gf.matvec(F, K, v).reshape(-1, 1)).shape[1] < L.dim:
            return False
    return True


def derived_subalgebra(L: BracketStructure) -> Mat:
    """Basis (columns) of the span of all brackets [b_i, b_j]."""
    F = L.F
    cur = gf.col_space(F, L.c.reshape(-1, L.dim).T)
    # [L, [L, L]] already lies in [L, L]; the loop only confirms the fixpoint
    while True:
        br = gf.einsum(F, "ijk,jr->kir", L.c, cur).reshape(L.dim, -1) if cur.shape[1] else cur
        nxt = gf.col_space(F, np.concatenate([cur, br], axis=1))
        if nxt.shape[1] == cur.shape[1]:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# classification against the registry

TABLES_FOR = {
    (0, 1): ("P",),
    (1, 1): ("1+P",),
    (2, 1): ("2*1+P",),
    (0, 2): ("2P-abelian", "2P-g0-nonabelian", "2P-nonabelian"),
}


def row_instances(m: int, n: int, F: Field):
    """(row id, params, structure) for every valid registry row instance over F."""
    from .registry import bindings, table_lookup, table_rows

    for tid in TABLES_FOR.get((m, n), ()):
        for spec in table_rows(tid):
            for b in bindings(spec, F):
                L = table_lookup(tid, spec.row, b, F)
                if check_axioms(L).ok:
                    yield spec.row_id, b, L


def classify(m: int, n: int, F: Field = gf.GF2, match_field: Field | None = None) -> OrbitReport:
    """Orbits of Lie structures on m·1+nP over F, matched to registry rows.

    Exact matching uses canonical forms over F.  Orbits left unmatched are
    retried by isomorphism search over ``match_field`` (default GF(4)) against
    row instances there; any orbit still unmatched is recorded in ``flags``."""
    X = make_object(m, n)
    structs = enumerate_structures(m, n, F)
    G = _group_matrices(X, F)
    rep = orbit_classify(structs, G)
    index = {r.c.tobytes(): i for i, r in enumerate(rep.representatives)}
    for i in range(rep.count):
        rep.matches[i] = []
    for rid, b, L in row_instances(m, n, F):
        key = canonical_form(L, G)
        if key in index:
            rep.matches[index[key]].append((rid, b, F.name))
        else:
            rep.flags.append(f"row instance {rid} {b} matches no orbit over {F.name}")
    unmatched = [i for i in range(rep.count) if not rep.matches[i]]
    if unmatched:
        mf = match_field or gf.get_field(2)
        if mf != F:
            insts = list(row_instances(m, n, mf))
            for i in unmatched:
                R = rep.representatives[i]
                for rid, b, L in insts:
                    if isomorphism_search(R, L, mf) is not None:
                        rep.matches[i].append((rid, b, mf.name))
                        break
    for i in range(rep.count):
        if not rep.matches[i]:
            rep.flags.append(f"orbit {i} matches no registry row")
    return rep


def tensor_json(F: Field, c: np.ndarray) -> list:
    return [[[F.fmt(int(a)) for a in c[i, j]] for j in range(c.shape[1])] for i in range(c.shape[0])]


def classification_certificate(m: int, n: int, F: Field = gf.GF2) -> dict:
    rep = classify(m, n, F)
    orbits = []
    for i, R in enumerate(rep.representatives):
        entry = {
            "size": rep.sizes[i],
            "tensor": tensor_json(F, R.c),
            "brackets": R.nonzero_brackets(),
            "matches": [],
        }
        for rid, b, fname in rep.matches[i]:
            Fm = gf.field_by_name(fname)
            from .registry import table_lookup

            table, row = rid.split("/", 1)
            L = table_lookup(table, row, b, Fm)
            phi = isomorphism_search(lift(R, Fm), L, Fm)
            entry["matches"].append(
                {
                    "row": rid,
                    "params": {k: Fm.fmt(v) for k, v in b.items()},
                    "field": fname,
                    "intertwiner": None if phi is None else [[Fm.fmt(int(a)) for a in r] for r in phi],
                }
            )
        orbits.append(entry)
    return {
        "field": F.name,
        "m": m,
        "n": n,
        "total_structures": int(sum(rep.sizes)),
        "orbit_count": rep.count,
        "orbits": orbits,
        "flags": rep.flags,
    }
