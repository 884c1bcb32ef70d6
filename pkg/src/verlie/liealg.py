"""Bracket structures on objects m·1 + nP: axioms, named algebras, tuple assembly.

A structure is a tensor c with [b_i, b_j] = sum_k c[i, j, k] b_k over a basis
whose d-action is the object's matrix D.  Structures handed out by this module
are normalised to the canonical basis (trivials, unprimed, primed) so that the
enveloping-algebra code can read off designated preimages of primed vectors.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf
from .gf import Field, Mat
from .ver4 import UsageError, Ver4Object, adapted_basis, canonical_D, from_matrix, hom_D, make_object


@dataclass(eq=False)
class BracketStructure:
    F: Field
    obj: Ver4Object
    c: np.ndarray
    labels: tuple[str, ...] = ()
    name: str = ""
    # optional embedding data, e.g. matrix-unit coordinates of each basis vector
    meta: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.c = np.asarray(self.c, dtype=np.uint8)
        N = self.obj.dim
        if self.c.shape != (N, N, N):
            raise UsageError(f"structure tensor has shape {self.c.shape}, expected {(N, N, N)}")
        if not self.labels:
            self.labels = tuple(f"b{i}" for i in range(N))

    @property
    def dim(self) -> int:
        return self.obj.dim

    @property
    def D(self) -> Mat:
        return self.obj.D

    def basis_vector(self, i: int) -> np.ndarray:
        v = np.zeros(self.dim, dtype=np.uint8)
        v[i] = 1
        return v

    def vec(self, label: str) -> np.ndarray:
        return self.basis_vector(self.labels.index(label))

    def prime(self, v) -> np.ndarray:
        return gf.matvec(self.F, self.D, v)

    def bracket(self, u, v) -> np.ndarray:
        return bracket_eval(self, u, v)

    def fmt(self, v) -> str:
        terms = []
        for i, a in enumerate(np.asarray(v)):
            if a:
                terms.append(self.labels[i] if a == 1 else f"({self.F.fmt(int(a))}){self.labels[i]}")
        return " + ".join(terms) if terms else "0"

    def nonzero_brackets(self) -> dict[str, str]:
        out = {}
        for i in range(self.dim):
            for j in range(self.dim):
                if self.c[i, j].any():
                    out[f"[{self.labels[i]},{self.labels[j]}]"] = self.fmt(self.c[i, j])
        return out

    def key(self) -> bytes:
        return self.c.tobytes()

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BracketStructure)
            and self.F == other.F
            and self.obj == other.obj
            and np.array_equal(self.c, other.c)
        )

    def __hash__(self) -> int:
        return hash((self.F.k, self.obj, self.c.tobytes()))


def bracket_eval(L: BracketStructure, u, v) -> np.ndarray:
    u = np.asarray(u, dtype=np.uint8)
    v = np.asarray(v, dtype=np.uint8)
    if u.shape != (L.dim,) or v.shape != (L.dim,):
        raise UsageError(f"vectors must have length {L.dim}")
    return gf.einsum(L.F, "i,j,ijk->k", u, v, L.c)


def change_basis(L: BracketStructure, T: Mat, labels=None, name=None) -> BracketStructure:
    """Structure in the basis given by the columns of T (old coordinates)."""
    F = L.F
    Tinv = gf.inverse(F, T)
    c = gf.einsum(F, "ai,bj,abk,lk->ijl", T, T, L.c, Tinv)
    D = gf.matmul(F, Tinv, gf.matmul(F, L.D, T))
    obj = from_matrix(D, F)
    if np.array_equal(D, canonical_D(obj.m, obj.n)):
        obj = make_object(obj.m, obj.n)
    meta = dict(L.meta)
    if "coords" in meta:
        meta["coords"] = gf.matmul(F, meta["coords"], T)
    return BracketStructure(F, obj, c, tuple(labels) if labels else (), name or L.name, meta)


def canonicalize(L: BracketStructure, candidates: Mat | None = None, labels=None) -> BracketStructure:
    T, m, n = adapted_basis(L.F, L.D, candidates)
    return change_basis(L, T, labels=labels)


# ---------------------------------------------------------------------------
# axioms


@dataclass
class AxiomReport:
    skew: bool
    derivation: bool
    jacobi: bool
    lie_condition: bool
    witnesses: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.skew and self.derivation and self.jacobi and self.lie_condition

    @property
    def operadic(self) -> bool:
        return self.skew and self.derivation and self.jacobi

    def as_dict(self) -> dict:
        return {
            "skew": self.skew,
            "derivation": self.derivation,
            "jacobi": self.jacobi,
            "lie_condition": self.lie_condition,
            "witnesses": self.witnesses,
        }


def skew_residual(L: BracketStructure) -> np.ndarray:
    F, c, D = L.F, L.c, L.D
    primed = gf.einsum(F, "aj,bi,abk->ijk", D, D, c)
    return c ^ c.transpose(1, 0, 2) ^ primed


def derivation_residual(L: BracketStructure) -> np.ndarray:
    F, c, D = L.F, L.c, L.D
    lhs = gf.einsum(F, "ijl,kl->ijk", c, D)
    r1 = gf.einsum(F, "ai,ajk->ijk", D, c)
    r2 = gf.einsum(F, "bj,ibk->ijk", D, c)
    return lhs ^ r1 ^ r2


def jacobi_residual(L: BracketStructure) -> np.ndarray:
    F, c, D = L.F, L.c, L.D
    T1 = gf.einsum(F, "ijm,mkl->ijkl", c, c)  # [[b_i, b_j], b_k]
    r = T1.copy()
    r ^= gf.einsum(F, "kijl->ijkl", T1)
    r ^= gf.einsum(F, "jkil->ijkl", T1)
    r ^= gf.einsum(F, "ai,bk,ajbl->ijkl", D, D, T1)
    r ^= gf.einsum(F, "ak,bj,aibl->ijkl", D, D, T1)
    r ^= gf.einsum(F, "aj,bi,akbl->ijkl", D, D, T1)
    return r


def lie_condition_failures(L: BracketStructure) -> list[int]:
    K = gf.kernel(L.F, L.D)
    bad = []
    for j in range(K.shape[1]):
        k = K[:, j]
        if bracket_eval(L, k, k).any():
            bad.append(j)
    return bad


def _witness(kind: str, res: np.ndarray, labels, limit: int = 5) -> list:
    out = []
    for idx in zip(*np.nonzero(res.reshape(res.shape[:-1] + (-1,)).any(axis=-1))):
        out.append({"axiom": kind, "basis": [labels[i] for i in idx]})
        if len(out) >= limit:
            break
    return out


def check_axioms(L: BracketStructure) -> AxiomReport:
    s = skew_residual(L)
    d = derivation_residual(L)
    j = jacobi_residual(L)
    lc = lie_condition_failures(L)
    wit = _witness("skew", s, L.labels) + _witness("derivation", d, L.labels) + _witness("jacobi", j, L.labels)
    K = gf.kernel(L.F, L.D)
    for col in lc:
        wit.append({"axiom": "lie_condition", "kernel_vector": L.fmt(K[:, col])})
    return AxiomReport(not s.any(), not d.any(), not j.any(), not lc, wit)


# ---------------------------------------------------------------------------
# named algebras


def _structure_from_brackets(F: Field, obj: Ver4Object, labels, table: dict, name: str) -> BracketStructure:
    N = obj.dim
    c = np.zeros((N, N, N), dtype=np.uint8)
    idx = {s: i for i, s in enumerate(labels)}
    for (a, b), val in table.items():
        v = np.zeros(N, dtype=np.uint8)
        for lab, co in val.items():
            v[idx[lab]] ^= co
        c[idx[a], idx[b]] = v
    return BracketStructure(F, obj, c, tuple(labels), name)


def p_algebra(kind: str, F: Field = gf.GF2) -> BracketStructure:
    """P_a, P_s, P_n on P with basis x, x'."""
    obj = make_object(0, 1)
    labels = ("x", "x'")
    if kind == "a":
        table = {}
    elif kind == "s":
        table = {("x'", "x"): {"x'": 1}, ("x", "x'"): {"x'": 1}}
    elif kind == "n":
        table = {("x", "x"): {"x'": 1}}
    else:
        raise UsageError(f"unknown P algebra {kind!r}")
    return _structure_from_brackets(F, obj, labels, table, f"P_{kind}")


def _unit_label(names, i, j) -> str:
    return f"{names[i]}@{names[j]}*"


def _gl_raw(X: Ver4Object, F: Field):
    d = X.dim
    N = d * d
    U = np.zeros((N, d, d), dtype=np.uint8)
    for p in range(N):
        U[p, p // d, p % d] = 1
    Dh = hom_D(X, X, F)
    Up = gf.einsum(F, "qp,qij->pij", Dh, U)  # Up[p] = d(E_p)
    prod = gf.einsum(F, "pij,qjk->pqik", U, U)
    pp = gf.einsum(F, "pij,qjk->pqik", Up, Up)
    raw = prod ^ prod.transpose(1, 0, 2, 3) ^ pp
    c = raw.reshape(N, N, N)  # matrix (i,k) flattens to index i*d+k
    return c, Dh


def _unit_order(d: int) -> list[int]:
    """Preferred order of matrix units: strictly upper, diagonal, strictly lower."""
    upper = [i * d + j for i in range(d) for j in range(d) if i < j]
    diag = [i * d + i for i in range(d)]
    lower = [i * d + j for i in range(d) for j in range(d) if i > j]
    return upper + diag + lower


def _object_names(X: Ver4Object) -> tuple[str, ...]:
    return X.names or tuple(f"e{i}" for i in range(X.dim))


def _left_inverse(F: Field, S: Mat) -> Mat:
    """Matrix P with P S = I for S of full column rank."""
    rows = S.shape[0]
    R, piv = gf.rref(F, np.concatenate([S, gf.identity(rows)], axis=1))
    # rows of R restricted to the identity block act as P on the pivot part
    k = S.shape[1]
    return R[:k, k:].copy()


def _sub_or_quotient(
    F: Field,
    c: np.ndarray,
    D: Mat,
    S: Mat,
    cand: Mat,
    K: Mat | None = None,
):
    """Restrict the bracket (c, D) on an ambient space to the subspace spanned by
    the columns of S, optionally modulo the ideal spanned by the columns of K
    (given in S-coordinates).  Returns (c', D', basis) where basis lists ambient
    representatives chosen from ``cand`` in preference order."""
    N = S.shape[1]
    cand_s = []
    for j in range(cand.shape[1]):
        sol = gf.solve_linear(F, S, cand[:, j])
        if sol.consistent:
            cand_s.append(sol.particular)
    cand_s = np.stack(cand_s, axis=1) if cand_s else gf.zeros(N, 0)
    cand_s = np.concatenate([cand_s, gf.identity(N)], axis=1)
    # bracket and d on S-coordinates
    cS = gf.einsum(F, "ai,bj,abk->ijk", S, S, c)
    DS = gf.matmul(F, D, S)
    # express results back in S-coordinates through a left inverse of S
    Sl = _left_inverse(F, S)
    cS = gf.einsum(F, "ijk,lk->ijl", cS, Sl)
    DS = gf.matmul(F, Sl, DS)
    if K is None or K.shape[1] == 0:
        return cS, DS, S, cand_s
    # pick a complement Q of span(K) from the candidates
    chosen = K.copy()
    Q = []
    for j in range(cand_s.shape[1]):
        v = cand_s[:, j]
        trial = np.concatenate([chosen, v.reshape(-1, 1)], axis=1)
        if gf.rank(F, trial) > chosen.shape[1]:
            chosen = trial
            Q.append(v)
    Q = np.stack(Q, axis=1)
    M = np.concatenate([Q, K], axis=1)
    Minv = gf.inverse(F, M)
    q = Q.shape[1]
    proj = Minv[:q]
    cQ = gf.einsum(F, "ai,bj,abk,lk->ijl", Q, Q, cS, proj)
    DQ = gf.matmul(F, proj, gf.matmul(F, DS, Q))
    return cQ, DQ, gf.matmul(F, S, Q), gf.identity(q)


def construct(name: str, X: Ver4Object | None = None, F: Field = gf.GF2) -> BracketStructure:
    """gl, sl, psl, pgl of an object, or P_a / P_s / P_n."""
    if name in ("P_a", "P_s", "P_n"):
        return p_algebra(name[-1], F)
    if X is None:
        raise UsageError(f"{name} needs an object")
    d = X.dim
    names = _object_names(X)
    c, Dh = _gl_raw(X, F)
    N = d * d
    order = _unit_order(d)
    units = gf.identity(N)[:, order]
    ident = gf.identity(d).reshape(-1)
    if name == "gl":
        S = gf.identity(N)
        cand = units
        K = None
    elif name in ("sl", "psl"):
        trace = ident.reshape(1, -1)
        S = gf.kernel(F, trace)
        diffs = []
        for i in range(d):
            for j in range(i + 1, d):
                v = np.zeros(N, dtype=np.uint8)
                v[i * d + i] = v[j * d + j] = 1
                diffs.append(v)
        offd = [order[k] for k in range(len(order)) if order[k] // d != order[k] % d]
        cand = np.concatenate(
            [gf.identity(N)[:, offd], np.stack(diffs, axis=1) if diffs else gf.zeros(N, 0)], axis=1
        )
        K = None
        if name == "psl":
            if X.m % 2:
                raise UsageError("psl needs m even (the identity must be traceless)")
            K = gf.coords(F, S, ident).reshape(-1, 1)
    elif name == "pgl":
        S = gf.identity(N)
        cand = units
        K = ident.reshape(-1, 1)
    else:
        raise UsageError(f"unknown algebra {name!r}")
    cS, DS, basis, cand_s = _sub_or_quotient(F, c, Dh, S, cand, K)
    T, m, n = adapted_basis(F, DS, cand_s)
    L0 = BracketStructure(F, from_matrix(DS, F), cS, name=name)
    L = change_basis(L0, T)
    coords = gf.matmul(F, basis, T)  # matrix-unit coordinates of the new basis
    L.meta["coords"] = coords
    L.meta["object"] = X
    L.meta["kind"] = name
    L.labels = _labels_from_coords(coords, names, d, L.obj)
    if (X.m, X.n) == (0, 1) and name in _P_LABELS:
        L.labels = _P_LABELS[name]
    L.name = f"{name}({_object_name(X)})"
    return L


_P_LABELS = {
    "gl": ("x", "y", "e", "y'"),
    "sl": ("x", "y", "y'"),
    "pgl": ("x", "y", "y'"),
}


def _object_name(X: Ver4Object) -> str:
    parts = []
    if X.m:
        parts.append("1" if X.m == 1 else f"{X.m}*1")
    if X.n:
        parts.append("P" if X.n == 1 else f"{X.n}P")
    return "+".join(parts)


def _labels_from_coords(coords: Mat, names, d: int, obj: Ver4Object) -> tuple[str, ...]:
    labs = []
    for col in range(obj.m + obj.n):
        v = coords[:, col]
        terms = [_unit_label(names, p // d, p % d) for p in np.nonzero(v)[0]]
        labs.append("+".join(terms) if terms else "0")
    primes = [labs[obj.m + i] + "'" for i in range(obj.n)]
    return tuple(labs + primes)


def gl_coords(L: BracketStructure, A: Mat) -> np.ndarray:
    """Coordinates in L's basis of a matrix A (for gl/sl-type structures)."""
    return gf.coords(L.F, L.meta["coords"], gf.asmat(A).reshape(-1))


def gl_matrix(L: BracketStructure, v) -> Mat:
    d = L.meta["object"].dim
    return gf.matvec(L.F, L.meta["coords"], v).reshape(d, d)


# ---------------------------------------------------------------------------
# framework tuples


@dataclass
class FrameworkTuple:
    """Tuple data for a bracket on V ⊕ L with V n-dimensional and L = ker d.

    Shapes (k = dim L): Lc (k,k,k); f (k,n,n) with f[a] acting on V columns;
    d_incl (k,n) with column j the image of v_j; A (k,k,n) with A[a] in Hom(V, L);
    B (n,n,n); C (n,n,k)."""

    F: Field
    Lc: np.ndarray
    f: np.ndarray
    d_incl: Mat
    A: np.ndarray
    B: np.ndarray
    C: np.ndarray
    V_names: tuple[str, ...] = ()
    L_names: tuple[str, ...] = ()

    @property
    def n(self) -> int:
        return self.d_incl.shape[1]

    @property
    def k(self) -> int:
        return self.d_incl.shape[0]

    def validate_shapes(self):
        n, k = self.n, self.k
        want = {
            "Lc": (k, k, k), "f": (k, n, n), "A": (k, k, n), "B": (n, n, n), "C": (n, n, k),
        }
        for nm, shp in want.items():
            if getattr(self, nm).shape != shp:
                raise UsageError(f"tuple component {nm} has shape {getattr(self, nm).shape}, expected {shp}")
        if gf.rank(self.F, self.d_incl) != n:
            raise UsageError("d must be injective on V")


def raw_assembled(t: FrameworkTuple) -> BracketStructure:
    """Bracket on V ⊕ L in the split basis (V first, then L), before normalisation."""
    t.validate_shapes()
    F, n, k = t.F, t.n, t.k
    N = n + k
    c = np.zeros((N, N, N), dtype=np.uint8)
    c[n:, n:, n:] = t.Lc
    for a in range(k):
        for i in range(n):
            val = np.concatenate([t.f[a][:, i], t.A[a][:, i]])
            c[i, n + a] = val
            c[n + a, i] = val
    c[:n, :n, :n] = t.B
    c[:n, :n, n:] = t.C
    D = gf.zeros(N, N)
    D[n:, :n] = t.d_incl
    labels = tuple(t.V_names or [f"v{i}" for i in range(n)]) + tuple(t.L_names or [f"l{a}" for a in range(k)])
    return BracketStructure(F, from_matrix(D, F), c, labels)


def _canonical_labels(raw: BracketStructure, T: Mat, m: int, n: int) -> tuple[str, ...]:
    labs = []
    for col in range(m + n):
        labs.append(raw.fmt(T[:, col]).replace(" ", ""))
    primes = [labs[m + i] + "'" for i in range(n)]
    return tuple(labs + primes)


def assemble_from_tuple(t: FrameworkTuple, with_report: bool = True):
    """Returns (structure in canonical basis, relation report or None)."""
    raw = raw_assembled(t)
    T, m, n = adapted_basis(t.F, raw.D)
    labels = _canonical_labels(raw, T, m, n)
    L = change_basis(raw, T, labels=labels)
    L.meta["split"] = raw
    return L, (relation_report(t) if with_report else None)


def _tuple_ops(t: FrameworkTuple):
    F = t.F

    def Lb(z, w):
        return gf.einsum(F, "i,j,ijk->k", z, w, t.Lc)

    def fm(z):
        return gf.einsum(F, "a,aij->ij", z, t.f)

    def Am(z):
        return gf.einsum(F, "a,aij->ij", z, t.A)

    def dv(x):
        return gf.matvec(F, t.d_incl, x)

    def B(x, y):
        return gf.einsum(F, "i,j,ijk->k", x, y, t.B)

    def C(x, y):
        return gf.einsum(F, "i,j,ijk->k", x, y, t.C)

    def mv(M, v):
        return gf.matvec(F, M, v)

    return Lb, fm, Am, dv, B, C, mv


def relation_report(t: FrameworkTuple) -> dict[str, bool]:
    """Evaluate the structural conditions and the relations tying (L, f, A, B, C)
    together; every entry True should coincide with the assembled bracket being
    a Lie algebra."""
    F, n, k = t.F, t.n, t.k
    Lb, fm, Am, dv, B, C, mv = _tuple_ops(t)
    eV = list(gf.identity(n).T)
    eL = list(gf.identity(k).T)
    quad = eV + [eV[i] ^ eV[j] for i in range(n) for j in range(i + 1, n)]
    rep: dict[str, bool] = {}

    Lstruct = BracketStructure(F, make_object(k, 0), t.Lc)
    rep["L_lie"] = check_axioms(Lstruct).ok
    rep["f_representation"] = all(
        np.array_equal(fm(Lb(z, w)), gf.matmul(F, fm(z), fm(w)) ^ gf.matmul(F, fm(w), fm(z)))
        for z in eL for w in eL
    )
    # d is an L-module map V_f -> L: [x', z] = (f(z) x)'
    rep["d_module_map"] = all(np.array_equal(Lb(dv(x), z), dv(mv(fm(z), x))) for x in eV for z in eL)
    # A is a derivation L -> Hom(V_f, L)
    ok = True
    for z in eL:
        for w in eL:
            for x in eV:
                s = Lb(mv(Am(z), x), w) ^ mv(Am(w), mv(fm(z), x)) ^ Lb(mv(Am(w), x), z)
                s ^= mv(Am(z), mv(fm(w), x)) ^ mv(Am(Lb(z, w)), x)
                ok &= not s.any()
    rep["A_derivation"] = bool(ok)
    rep["B_symmetric_alternating"] = all(
        np.array_equal(B(x, y), B(y, x)) for x in eV for y in eV
    ) and all(not B(x, x).any() for x in eV)
    rep["C_skew"] = all(
        not (C(x, y) ^ C(y, x) ^ Lb(dv(y), dv(x))).any() for x in eV for y in eV
    )
    # relation 0: f(x')y = f(y')x
    rep["r0_f_prime_symmetric"] = all(
        np.array_equal(mv(fm(dv(x)), y), mv(fm(dv(y)), x)) for x in eV for y in eV
    )
    rep["r1_B_prime"] = all(
        np.array_equal(dv(B(x, y)), mv(Am(dv(x)), y) ^ mv(Am(dv(y)), x)) for x in eV for y in eV
    )
    rep["r2_C_diag_bracket"] = all(
        np.array_equal(Lb(C(x, x), z), dv(mv(fm(dv(x)), mv(fm(z), x)))) for x in quad for z in eL
    )
    rep["r3_f_of_C_diag"] = all(
        np.array_equal(fm(C(x, x)), gf.matmul(F, fm(dv(x)), fm(dv(x)))) for x in quad
    )
    ok = True
    for x in quad:
        xp = dv(x)
        for y in eV:
            lhs = mv(Am(C(x, x)), y)
            rhs = mv(Am(xp), mv(fm(xp), y)) ^ Lb(xp, mv(Am(xp), y))
            ok &= np.array_equal(lhs, rhs)
    rep["r4_A_of_C_diag"] = bool(ok)
    okB = okC = True
    for z in eL:
        for x in eV:
            for y in eV:
                fzx, fzy = mv(fm(z), x), mv(fm(z), y)
                Azx, Azy = mv(Am(z), x), mv(Am(z), y)
                sV = mv(fm(z), B(x, y)) ^ B(fzx, y) ^ B(fzy, x) ^ mv(fm(Azx), y) ^ mv(fm(Azy), x)
                sL = mv(Am(z), B(x, y)) ^ C(fzx, y) ^ C(fzy, x) ^ mv(Am(Azx), y) ^ mv(Am(Azy), x)
                sL ^= Lb(Lb(dv(y), z), dv(x)) ^ Lb(C(x, y), z)
                okB &= not sV.any()
                okC &= not sL.any()
    rep["r5_B_equivariance"] = bool(okB)
    rep["r6_C_equivariance"] = bool(okC)
    okV = okL = True
    for x in eV:
        for y in eV:
            for v in eV:
                sV = np.zeros(n, dtype=np.uint8)
                sL = np.zeros(k, dtype=np.uint8)
                for (a, b, c_) in ((x, y, v), (v, x, y), (y, v, x)):
                    sV ^= B(B(a, b), c_) ^ mv(fm(C(a, b)), c_) ^ mv(fm(dv(c_)), mv(fm(dv(a)), b))
                    sL ^= C(B(a, b), c_) ^ mv(Am(C(a, b)), c_) ^ Lb(mv(Am(dv(a)), b), dv(c_))
                    sL ^= mv(Am(dv(c_)), mv(fm(dv(a)), b))
                okV &= not sV.any()
                okL &= not sL.any()
    rep["r7_VVV_V_part"] = bool(okV)
    rep["r8_VVV_L_part"] = bool(okL)
    return rep


def tuple_from_split(raw: BracketStructure, n: int) -> FrameworkTuple:
    """Read (L, f, A, B, C) back off a bracket given in a split basis V ⊕ L
    (V = first n basis vectors, d maps V injectively into L = the rest)."""
    c = raw.c
    k = raw.dim - n
    f = np.zeros((k, n, n), dtype=np.uint8)
    A = np.zeros((k, k, n), dtype=np.uint8)
    for a in range(k):
        for i in range(n):
            f[a][:, i] = c[i, n + a, :n]
            A[a][:, i] = c[i, n + a, n:]
    return FrameworkTuple(
        raw.F, c[n:, n:, n:].copy(), f, raw.D[n:, :n].copy(), A, c[:n, :n, :n].copy(), c[:n, :n, n:].copy(),
        raw.labels[:n], raw.labels[n:],
    )
