"""Finite-dimensional representations of gl(P).

A module is a vector space with a square-zero d-matrix D_M and action
matrices ρ(b) for the gl(P) basis (x, y, e = x', y').  The axioms are those of
a module over U(gl(P)) in Ver₄⁺: the action map is d-equivariant and

    ρ([u, v]) = ρ(u)ρ(v) + ρ(v)ρ(u) + ρ(v')ρ(u').

Simplicity, submodules and composition series are decided by exhaustive
search, which is cheap at the sizes used here (dim ≤ 4, GF(2) or GF(4)).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import gf
from .classify import _projective_points, batch_invertible
from .gf import Field, Mat
from .liealg import BracketStructure, construct
from .ver4 import ResourceGuardError, UsageError, guard_scale, make_object

LABELS = ("x", "y", "e", "y'")


@lru_cache(maxsize=None)
def glp(k: int = 1) -> BracketStructure:
    L = construct("gl", make_object(0, 1), gf.get_field(k))
    assert tuple(L.labels) == LABELS
    return L


@dataclass
class GlPModule:
    F: Field
    D: Mat
    rho: np.ndarray  # (4, dim, dim), indexed like LABELS

    @property
    def dim(self) -> int:
        return self.D.shape[0]

    def act(self, label: str) -> Mat:
        return self.rho[LABELS.index(label)]

    def as_dict(self) -> dict:
        return {
            "dim": self.dim,
            "D": self.D.tolist(),
            "action": {lab: self.rho[i].tolist() for i, lab in enumerate(LABELS)},
        }


def module_from(F: Field, D, x, y, e, yp) -> GlPModule:
    D = gf.asmat(D)
    n = D.shape[0]
    rho = np.zeros((4, n, n), dtype=np.uint8)
    for i, A in enumerate((x, y, e, yp)):
        rho[i] = gf.asmat(A) if n else 0
    return GlPModule(F, D, rho)


def make_standard(eps: int, a: int, b: int, F: Field = gf.GF2) -> GlPModule:
    """The 2-dimensional matrices y = diag(b, b+1), x = [[0,1],[a,0]] and, for
    eps = 1, y' = [[0,0],[1,0]], e = I, on P; for eps = 0 on 1², y' = e = 0.
    Simple unless eps = 0 and a = 0."""
    if eps not in (0, 1):
        raise UsageError("eps must be 0 or 1")
    if not (F.contains(a) and F.contains(b)):
        raise UsageError("a, b must lie in the field")
    x = [[0, 1], [a, 0]]
    y = [[b, 0], [0, b ^ 1]]
    if eps:
        N = [[0, 0], [1, 0]]
        return module_from(F, N, x, y, gf.identity(2), N)
    Z = gf.zeros(2, 2)
    return module_from(F, Z, x, y, Z, Z)


def make_simple(eps: int, a: int, b: int, F: Field = gf.GF2) -> GlPModule:
    """L(eps, a, b); L(0, 0, b) is the 1-dimensional module y ↦ b."""
    if eps == 0 and a == 0:
        if not F.contains(b):
            raise UsageError("b must lie in the field")
        Z = gf.zeros(1, 1)
        return module_from(F, Z, Z, [[b]], Z, Z)
    return make_standard(eps, a, b, F)


def zero_module(F: Field = gf.GF2) -> GlPModule:
    return GlPModule(F, gf.zeros(0, 0), np.zeros((4, 0, 0), dtype=np.uint8))


def trivial_module(F: Field = gf.GF2) -> GlPModule:
    return make_simple(0, 0, 0, F)


# ---------------------------------------------------------------------------
# axioms


def _lin(F: Field, v, mats: np.ndarray) -> Mat:
    """Σ_a v[a] mats[a]."""
    v = np.asarray(v, dtype=np.uint8)
    return np.bitwise_xor.reduce(F.mul_table[v[:, None, None], mats], axis=0)


def module_failures(M: GlPModule) -> list[str]:
    F, L = M.F, glp(M.F.k)
    out = []
    if M.dim == 0:
        return out
    mm = lambda A, B: gf.matmul(F, A, B)  # noqa: E731
    lin = lambda v: _lin(F, v, M.rho)  # noqa: E731
    if mm(M.D, M.D).any():
        out.append("D_M^2 != 0")
    for i, lab in enumerate(LABELS):
        # (a·m)' = a'·m + a·m'
        if (mm(M.D, M.rho[i]) ^ mm(M.rho[i], M.D) ^ lin(L.D[:, i])).any():
            out.append(f"equivariance fails for {lab}")
    for i in range(4):
        for j in range(4):
            lhs = lin(L.c[i, j])
            rhs = mm(M.rho[i], M.rho[j]) ^ mm(M.rho[j], M.rho[i]) ^ mm(lin(L.D[:, j]), lin(L.D[:, i]))
            if not np.array_equal(lhs, rhs):
                out.append(f"bracket relation fails for ({LABELS[i]}, {LABELS[j]})")
    E = M.act("e")
    if not np.array_equal(mm(E, E), E):
        out.append("e is not idempotent")
    if any((mm(E, M.rho[i]) ^ mm(M.rho[i], E)).any() for i in range(4)):
        out.append("e is not central")
    return out


def check_module(M: GlPModule) -> bool:
    return not module_failures(M)


# ---------------------------------------------------------------------------
# submodules


def _guard(M: GlPModule):
    if M.dim > 4 * guard_scale():
        raise ResourceGuardError(f"exhaustive submodule search on dim {M.dim} exceeds the guard")


def _ops(M: GlPModule) -> list[Mat]:
    return [M.D] + [M.rho[i] for i in range(4)]


class _Echelon:
    """Row-echelon basis grown one vector at a time."""

    def __init__(self, F: Field, n: int):
        self.F, self.n = F, n
        self.rows: list[tuple[int, np.ndarray]] = []

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = v.copy()
        tab = self.F.mul_table
        for p, r in self.rows:
            if v[p]:
                v ^= tab[v[p]][r]
        return v

    def add(self, v: np.ndarray) -> bool:
        v = self.reduce(v)
        nz = np.flatnonzero(v)
        if not nz.size:
            return False
        p = int(nz[0])
        v = self.F.mul_table[self.F.inv(int(v[p]))][v]
        tab = self.F.mul_table
        self.rows = [(q, r ^ tab[r[p]][v]) if r[p] else (q, r) for q, r in self.rows]
        self.rows.append((p, v))
        self.rows.sort(key=lambda t: t[0])
        return True

    def basis(self) -> Mat:
        if not self.rows:
            return gf.zeros(self.n, 0)
        return np.stack([r for _, r in self.rows], axis=1)


def _closure(M: GlPModule, vecs: Mat) -> Mat:
    """Smallest submodule containing the columns of vecs (reduced column basis)."""
    F = M.F
    ops = _ops(M)
    E = _Echelon(F, M.dim)
    queue = [vecs[:, c] for c in range(vecs.shape[1])]
    while queue:
        v = queue.pop()
        if E.add(v):
            queue.extend(gf.matvec(F, A, v) for A in ops)
    return E.basis()


def _key(F: Field, B: Mat) -> bytes:
    R, _ = gf.rref(F, B.T.copy()) if B.shape[1] else (gf.zeros(0, B.shape[0]), [])
    return bytes([B.shape[0]]) + R.tobytes()


def submodules(M: GlPModule) -> list[Mat]:
    """Every submodule (column bases), sorted by dimension then canonical key."""
    _guard(M)
    F, n = M.F, M.dim
    found: dict[bytes, Mat] = {}
    zero = gf.zeros(n, 0)
    found[_key(F, zero)] = zero
    cyclic = {}
    for v in _projective_points(F, n):
        S = _closure(M, v.reshape(-1, 1))
        cyclic[_key(F, S)] = S
    found.update(cyclic)
    frontier = list(cyclic.values())
    while frontier:
        nxt = []
        for S in frontier:
            for C in cyclic.values():
                T = gf.col_space(F, np.concatenate([S, C], axis=1))
                k = _key(F, T)
                if k not in found:
                    found[k] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda B: (B.shape[1], _key(F, B)))


def is_simple_module(M: GlPModule) -> bool:
    _guard(M)
    if M.dim == 0:
        return False
    return all(_closure(M, v.reshape(-1, 1)).shape[1] == M.dim for v in _projective_points(M.F, M.dim))


def subquotient(M: GlPModule, top: Mat, bottom: Mat) -> GlPModule:
    """The module top/bottom for submodules bottom ⊂ top."""
    F = M.F
    bottom = gf.col_space(F, bottom)
    comp = []
    cur = bottom
    for c in range(top.shape[1]):
        v = top[:, c : c + 1]
        if not gf.in_span(F, cur, v.reshape(-1)):
            comp.append(v)
            cur = np.concatenate([cur, v], axis=1)
    full = cur
    nb, q = bottom.shape[1], len(comp)

    def induced(A: Mat) -> Mat:
        out = gf.zeros(q, q)
        for t in range(q):
            w = gf.matvec(F, A, full[:, nb + t])
            out[:, t] = gf.coords(F, full, w)[nb:]
        return out

    rho = np.stack([induced(M.rho[i]) for i in range(4)]) if q else np.zeros((4, 0, 0), np.uint8)
    return GlPModule(F, induced(M.D), rho)


# ---------------------------------------------------------------------------
# tensor products and isomorphism


def tensor_modules(M: GlPModule, N: GlPModule) -> GlPModule:
    """a·(m⊗n) = (a m)⊗n + m⊗(a n) + m'⊗(a' n); basis m_i⊗n_j at i*dim N + j."""
    F, L = M.F, glp(M.F.k)
    if N.F != F:
        raise UsageError("modules over different fields")
    Im, In = gf.identity(M.dim), gf.identity(N.dim)
    rho = np.zeros((4, M.dim * N.dim, M.dim * N.dim), dtype=np.uint8)
    for i in range(4):
        rho_p = gf.einsum(F, "a,aij->ij", L.D[:, i], N.rho)
        rho[i] = gf.kron(F, M.rho[i], In) ^ gf.kron(F, Im, N.rho[i]) ^ gf.kron(F, M.D, rho_p)
    D = gf.kron(F, M.D, In) ^ gf.kron(F, Im, N.D)
    return GlPModule(F, D, rho)


def direct_sum(*mods: GlPModule) -> GlPModule:
    F = mods[0].F
    n = sum(M.dim for M in mods)
    D = gf.zeros(n, n)
    rho = np.zeros((4, n, n), dtype=np.uint8)
    o = 0
    for M in mods:
        s = slice(o, o + M.dim)
        D[s, s] = M.D
        rho[:, s, s] = M.rho
        o += M.dim
    return GlPModule(F, D, rho)


def module_isomorphism(M: GlPModule, N: GlPModule) -> Mat | None:
    """An invertible T with T ρ_M = ρ_N T and T D_M = D_N T, or None."""
    F = M.F
    if M.dim != N.dim:
        return None
    n = M.dim
    if n == 0:
        return gf.zeros(0, 0)
    rows = []
    for A, B in zip(_ops(M), _ops(N)):
        # T A + B T = 0 as a linear map on vec(T) (row-major)
        rows.append(gf.kron(F, gf.identity(n), A.T.copy()) ^ gf.kron(F, B, gf.identity(n)))
    K = gf.kernel(F, np.concatenate(rows, axis=0))
    r = K.shape[1]
    if r == 0:
        return None
    if F.q ** r > 2 ** 16 * guard_scale():
        raise ResourceGuardError("intertwiner space too large for exhaustive search")
    coeffs = np.array(list(itertools.product(F.elements(), repeat=r)), dtype=np.uint8)
    Ts = gf.einsum(F, "zr,pr->zp", coeffs, K).reshape(-1, n, n)
    ok = batch_invertible(F, Ts)
    idx = np.flatnonzero(ok)
    return Ts[idx[0]] if idx.size else None


# ---------------------------------------------------------------------------
# identification and composition series


def canonical_label(eps: int, a: int, b: int) -> tuple[int, int, int]:
    """For eps = 0, a ≠ 0 the matrix x intertwines L(0, a, b) and
    L(0, a, b+1), so b is reduced to min(b, b+1)."""
    if eps == 0 and a != 0:
        b = min(b, b ^ 1)
    return (eps, a, b)


def identify_simple(M: GlPModule) -> tuple[int, int, int]:
    """(eps, a, b) with a the scalar by which x² acts."""
    F = M.F
    if M.dim not in (1, 2) or not check_module(M) or not is_simple_module(M):
        raise UsageError("identify_simple needs a simple module of dimension 1 or 2")
    E, X, Y, Yp = M.act("e"), M.act("x"), M.act("y"), M.act("y'")
    eps = int(E[0, 0])
    if M.dim == 1:
        return (eps, 0, int(Y[0, 0]))
    X2 = gf.matmul(F, X, X)
    a = int(X2[0, 0])
    if eps == 1:
        v = gf.kernel(F, Yp)[:, 0]
        lam = int(gf.coords(F, v.reshape(-1, 1), gf.matvec(F, Y, v))[0])
        return canonical_label(1, a, lam ^ 1)
    # y-eigenvalues are {b, b + 1}; pick an eigenvector to read one of them
    for lam in F.elements():
        if gf.kernel(F, Y ^ gf.scale(F, lam, gf.identity(2))).shape[1]:
            break
    return canonical_label(0, a, lam)


def label_str(lab: tuple[int, int, int], F: Field) -> str:
    return f"L({lab[0]},{F.fmt(lab[1])},{F.fmt(lab[2])})"


@dataclass
class CompositionSeries:
    factors: list[tuple[int, int, int]]  # head first
    split: bool

    def as_dict(self, F: Field) -> dict:
        return {"factors": [label_str(f, F) for f in self.factors], "split": self.split}


def composition_series(M: GlPModule, subs: list[Mat] | None = None) -> CompositionSeries:
    """Top-down series: repeatedly pass to a maximal proper submodule."""
    _guard(M)
    F = M.F
    subs = submodules(M) if subs is None else subs
    factors = []
    top = gf.identity(M.dim)
    while top.shape[1]:
        inside = [S for S in subs if S.shape[1] < top.shape[1] and _contained(F, S, top)]
        best = max(s.shape[1] for s in inside)
        nxt = next(S for S in inside if S.shape[1] == best)
        factors.append(identify_simple(subquotient(M, top, nxt)))
        top = nxt
    # minimal nonzero submodules are the simple ones
    nonzero = [S for S in subs if S.shape[1]]
    simple_subs = [S for S in nonzero if not any(T.shape[1] < S.shape[1] and _contained(F, T, S) for T in nonzero)]
    socle = gf.col_space(F, np.concatenate(simple_subs, axis=1)) if simple_subs else gf.zeros(M.dim, 0)
    return CompositionSeries(factors, socle.shape[1] == M.dim)


def _contained(F: Field, S: Mat, T: Mat) -> bool:
    return all(gf.in_span(F, T, S[:, c]) for c in range(S.shape[1]))


def head(M: GlPModule, subs: list[Mat] | None = None) -> list[tuple[int, int, int]]:
    """Labels of M / rad M, where rad M is the intersection of maximal submodules."""
    F = M.F
    subs = submodules(M) if subs is None else subs
    proper = [S for S in subs if S.shape[1] < M.dim]
    maximal = [S for S in proper if not any(T.shape[1] > S.shape[1] and _contained(F, S, T) for T in proper)]
    rad = maximal[0]
    for S in maximal[1:]:
        rad = gf.intersect(F, rad, S)
    top = subquotient(M, gf.identity(M.dim), rad)
    return sorted(composition_series(top).factors)


# ---------------------------------------------------------------------------
# restrictions of GL(P)-modules


def glp_restrict(name: str, F: Field = gf.GF2, chi_power: int = 0) -> GlPModule:
    """Restrictions of the irreducible GL(P)-modules, from the distribution
    matrices x ↦ μ_{A'}, y ↦ μ_{B'}, e = x' ↦ μ_{A-1}, y' ↦ μ_B.
    Tensoring with χ does not change the Lie action."""
    N = [[0, 0], [1, 0]]
    Z = gf.zeros(2, 2)
    base = {
        "trivial": lambda: trivial_module(F),
        "chi": lambda: trivial_module(F),
        "xi": lambda: make_simple(0, 0, 1, F),
        "T1": lambda: module_from(F, N, [[0, 1], [0, 0]], [[0, 0], [0, 1]], gf.identity(2), N),
        "T2": lambda: module_from(F, Z, [[0, 1], [1, 0]], [[0, 0], [0, 1]], Z, Z),
        "T3": lambda: module_from(F, N, [[0, 1], [1, 0]], [[0, 0], [0, 1]], gf.identity(2), N),
    }
    if name in base:
        M = base[name]()
    elif name in ("xiT1", "xiT3"):
        M = tensor_modules(glp_restrict("xi", F), glp_restrict(name[2:], F))
    else:
        raise UsageError(f"unknown GL(P) module {name!r}")
    for _ in range(chi_power):
        M = tensor_modules(M, glp_restrict("chi", F))
    return M


RESTRICTION_LABELS = {
    "chi": (0, 0, 0),
    "T1": (1, 0, 0),
    "T2": (0, 1, 0),
    "T3": (1, 1, 0),
    "xi": (0, 0, 1),
    "xiT1": (1, 0, 1),
    "xiT3": (1, 1, 1),
}


# ---------------------------------------------------------------------------
# tensor product rules


def _factors_of(M: GlPModule) -> tuple:
    key = (M.F.k, M.D.tobytes(), M.rho.tobytes(), M.dim)
    hit = _FACTOR_CACHE.get(key)
    if hit is None:
        hit = _FACTOR_CACHE[key] = tuple(composition_series(M).factors)
    return hit


_FACTOR_CACHE: dict = {}


def tensor_rule(kind: int, p1: tuple[int, int], p2: tuple[int, int], F: Field) -> dict:
    """Check one of the five tensor-product rules for parameters p1 = (a1, b1),
    p2 = (a2, b2).  The expected factors are those of the standard 2-dim
    modules named by the rule (which may themselves be non-simple when the
    combined a is 0); ``head_ok`` asks that the first named module's factors
    contain the head."""
    (a1, b1), (a2, b2) = p1, p2
    a, b = a1 ^ a2, b1 ^ b2
    if kind == 1:
        M, N = make_simple(1, a1, b1, F), make_simple(1, a2, b2, F)
        expected = [make_standard(0, a, b, F), make_standard(0, a, b ^ 1, F)]
        want_split = False
    elif kind == 2:
        M, N = make_simple(0, a1, b1, F), make_simple(0, a2, b2, F)
        expected = [make_standard(0, a, b, F), make_standard(0, a, b ^ 1, F)]
        want_split = False
    elif kind == 3:
        M, N = make_simple(0, 0, b1, F), make_simple(0, a2, b2, F)
        a = a2
        expected = [make_simple(0, a, b, F)]
        want_split = True
    elif kind == 4:
        M, N = make_simple(0, 0, b1, F), make_simple(1, a2, b2, F)
        a = a2
        expected = [make_simple(1, a, b, F)]
        want_split = True
    elif kind == 5:
        M, N = make_simple(0, a1, b1, F), make_simple(1, a2, b2, F)
        expected = [make_simple(1, a, b, F), make_simple(1, a, b ^ 1, F)]
        want_split = False
    else:
        raise UsageError("tensor rule kind must be 1..5")
    T = tensor_modules(M, N)
    subs = submodules(T)
    series = composition_series(T, subs)
    exp_factors = sorted(f for E in expected for f in _factors_of(E))
    got = sorted(series.factors)
    hd = head(T, subs)
    first = set(_factors_of(expected[0]))
    return {
        "module_ok": check_module(T),
        "factors": [label_str(f, F) for f in series.factors],
        "expected": [label_str(f, F) for f in exp_factors],
        "factors_ok": got == exp_factors,
        "split": series.split,
        "split_ok": series.split == want_split,
        "head": [label_str(f, F) for f in hd],
        "head_ok": set(hd) <= first,
        "yprime_acts": bool(T.act("y'").any()),
    }
