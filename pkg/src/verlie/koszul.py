"""Koszul complexes S X ⊗ Λ•X of objects in Ver₄⁺.

Two constructions:

* ``koszul_P`` writes down the differential on S^j P ⊗ Λ^i P directly in the
  basis {x^j, x^{j-1}x'} ⊗ {t_i, x_i}, where (t_i, x_i) is dual to
  (y^{⊗i}, y^{⊗i-1}⊗y') with y = (x')*, y' = x*.
* ``koszul_generic`` builds S^j X as a quotient of X^{⊗j}, Λ^i X as the
  intersection of the images of c_pos - 1 inside X^{⊗i}, and the differential
  as the composite coev → braid X* past S X → multiply ⊗ contract.

Tensor words are flattened row-major, so e_{a_1}⊗…⊗e_{a_n} sits at index
Σ a_k N^{n-k}.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import gf
from .gf import Field, Mat
from .ver4 import ResourceGuardError, UsageError, Ver4Object, braiding, guard_scale, make_object


@dataclass
class KoszulSlice:
    """∂ : S^j X ⊗ Λ^i X → S^{j+1} X ⊗ Λ^{i-1} X, columns indexed by ``source``."""

    obj: Ver4Object
    j: int
    i: int
    source: list[str]
    target: list[str]
    matrix: Mat = field(repr=False)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape


# ---------------------------------------------------------------------------
# the explicit complex for P


def _p_labels(j: int, i: int) -> list[str]:
    if j < 0 or i < 0:
        return []
    lam = ["t0"] if i == 0 else [f"t{i}", f"x{i}"]
    mons = [f"x^{j}"] + ([f"x^{j - 1}x'"] if j >= 1 else [])
    return [f"{s}@{t}" for s in mons for t in lam]


def koszul_P(j: int, i: int) -> KoszulSlice:
    """The explicit differential on S^j P ⊗ Λ^i P: with source coordinates
    x^j⊗(αt_i + βx_i) + x^{j-1}x'⊗(γt_i + δx_i), the image is
    x^{j+1}⊗βt_{i-1} + x^j x'⊗((α+δ)t_{i-1} + βx_{i-1})."""
    if j < 0 or i < 0:
        raise UsageError("bidegree must be non-negative")
    src, tgt = _p_labels(j, i), _p_labels(j + 1, i - 1)
    M = gf.zeros(len(tgt), len(src))
    if i == 0:
        return KoszulSlice(make_object(0, 1), j, i, src, tgt, M)
    pos_s = {lab: k for k, lab in enumerate(src)}
    pos_t = {lab: k for k, lab in enumerate(tgt)}

    def put(target: str, source: str):
        if target in pos_t and source in pos_s:
            M[pos_t[target], pos_s[source]] ^= 1

    top, mixed = f"x^{j + 1}", f"x^{j}x'"
    t, x = f"t{i - 1}", f"x{i - 1}"
    a, b = f"x^{j}@t{i}", f"x^{j}@x{i}"
    dl = f"x^{j - 1}x'@x{i}"
    put(f"{top}@{t}", b)          # β
    put(f"{mixed}@{t}", a)        # α
    put(f"{mixed}@{t}", dl)       # δ
    put(f"{mixed}@{x}", b)        # β; x_0 = 0 drops out via pos_t
    return KoszulSlice(make_object(0, 1), j, i, src, tgt, M)


# ---------------------------------------------------------------------------
# generic construction


def _quotient(F: Field, R: Mat, dim: int) -> tuple[Mat, list[int]]:
    """Quotient map k^dim → k^dim / span(R) and the standard vectors it keeps."""
    if R.shape[1] == 0:
        return gf.identity(dim), list(range(dim))
    rr, piv = gf.rref(F, R.T.copy())
    keep = [p for p in range(dim) if p not in set(piv)]
    Q = gf.zeros(len(keep), dim)
    for t, p in enumerate(keep):
        Q[t, p] = 1
    for r, p in enumerate(piv):
        Q[:, p] = rr[r, keep]
    return Q, keep


def _left_inverse(F: Field, B: Mat) -> tuple[Mat, list[int]]:
    """(Binv, rows) with Binv @ v[rows] the coordinates of v ∈ span(B)."""
    if B.shape[1] == 0:
        return gf.zeros(0, 0), []
    _, piv = gf.rref(F, B.T.copy())
    rows = list(piv)
    return gf.inverse(F, B[rows, :]), rows


class _Generic:
    def __init__(self, X: Ver4Object, F: Field):
        self.X, self.F, self.N = X, F, X.dim
        C = braiding(X, X, F)
        self.lam2 = gf.col_space(F, C ^ gf.identity(self.N * self.N))
        self.A2, _ = _quotient(F, self.lam2, self.N * self.N)
        self._S = {0: (gf.identity(1), [0])}
        self._L = {0: gf.identity(1), 1: gf.identity(self.N)}

    def sym(self, j: int) -> tuple[Mat, list[int]]:
        """(Q_j, kept words): Q_j maps X^{⊗j} onto S^j X."""
        if j in self._S:
            return self._S[j]
        F, N = self.F, self.N
        Qp, keep_p = self.sym(j - 1)
        s = Qp.shape[0]
        if j == 1:
            R = gf.zeros(s * N, 0)
        else:
            Q3 = Qp.reshape(s, N ** (j - 2), N)
            L3 = self.lam2.reshape(N, N, -1)
            # relations u⊗λ for λ ∈ Λ²X sit in S^{j-1}⊗X after applying Q_{j-1}⊗1
            R = gf.einsum(F, "sua,abr->sbur", Q3, L3).reshape(s * N, -1)
        Qn, keep_n = _quotient(F, R, s * N)
        Qn3 = Qn.reshape(Qn.shape[0], s, N)
        Q = gf.einsum(F, "tsa,su->tua", Qn3, Qp).reshape(Qn.shape[0], N ** j)
        # lift of a kept pair (s, a) is the word keep_p[s]⊗e_a
        words = [keep_p[p // N] * N + p % N for p in keep_n]
        self._S[j] = (Q, words)
        return self._S[j]

    def ext(self, i: int) -> Mat:
        """Basis (columns) of Λ^i X = ∩ im(c_pos - 1) ⊂ X^{⊗i}."""
        if i in self._L:
            return self._L[i]
        F, N = self.F, self.N
        prev = self.ext(i - 1)
        r = prev.shape[1]
        if r == 0:
            self._L[i] = gf.zeros(N ** i, 0)
            return self._L[i]
        P3 = prev.reshape(N ** (i - 2), N, r)
        A3 = self.A2.reshape(-1, N, N)
        # w = Σ prev[:, r] ⊗ z[r, b]; require the last two factors to lie in Λ²
        cons = gf.einsum(F, "ual,qab->uqlb", P3, A3).reshape(-1, r * N)
        Z = gf.kernel(F, cons)
        W = gf.einsum(F, "ual,lbz->uabz", P3, Z.reshape(r, N, -1)).reshape(N ** i, -1)
        self._L[i] = gf.col_space(F, W)
        return self._L[i]

    def d_tensor(self, n: int) -> Mat:
        """d acting on X^{⊗n} as a derivation."""
        F, N = self.F, self.N
        out = gf.zeros(N ** n, N ** n)
        for pos in range(n):
            out ^= gf.kron(F, gf.kron(F, gf.identity(N ** pos), self.X.D), gf.identity(N ** (n - pos - 1)))
        return out

    def differential(self, j: int, i: int) -> Mat:
        F, N, D = self.F, self.N, self.X.D
        _, words = self.sym(j)
        Qt, _ = self.sym(j + 1)
        Ls = self.ext(i)
        if i == 0:
            return gf.zeros(0, len(words) * Ls.shape[1])
        Lt = self.ext(i - 1)
        if Ls.shape[1] == 0 or Lt.shape[1] == 0:
            return gf.zeros(Qt.shape[0] * Lt.shape[1], len(words) * Ls.shape[1])
        Linv, rows = _left_inverse(F, Lt)
        Qt3 = Qt.reshape(Qt.shape[0], N, N ** j)
        Ls3 = Ls.reshape(N, N ** (i - 1), -1)
        dS = self.d_tensor(j)
        # contraction of the first tensor factor of Λ^i with e^a, in Λ^{i-1} coordinates
        contr = np.stack([gf.matmul(F, Linv, Ls3[a][rows, :]) for a in range(N)])
        # (e^a)' = Σ_b D[a, b] e^b
        contr_p = gf.einsum(F, "ab,bml->aml", D, contr)
        cols = []
        for w in words:
            lift = np.zeros(N ** j, dtype=np.uint8)
            lift[w] = 1
            mu = Qt3[:, :, w]  # (s', a): class of e_a ⊗ lift
            mu_p = gf.einsum(F, "sav,v->sa", Qt3, gf.matvec(F, dS, lift))
            block = gf.einsum(F, "sa,aml->sml", mu, contr) ^ gf.einsum(F, "sa,aml->sml", mu_p, contr_p)
            cols.append(block.reshape(-1, Ls.shape[1]))
        # columns ordered (word, λ); rows ordered (s', m)
        return np.concatenate(cols, axis=1) if cols else gf.zeros(Qt.shape[0] * Lt.shape[1], 0)


@lru_cache(maxsize=None)
def _generic(m: int, n: int, k: int) -> _Generic:
    return _Generic(make_object(m, n), gf.get_field(k))


def _check_guard(X: Ver4Object, j: int, i: int):
    if X.dim > 4 * guard_scale() or (j + i) > 6 * guard_scale():
        raise ResourceGuardError(f"generic Koszul slice ({j}, {i}) of a {X.dim}-dimensional object exceeds the guard")


def koszul_generic(X: Ver4Object, j: int, i: int, F: Field = gf.GF2) -> KoszulSlice:
    if j < 0 or i < 0:
        raise UsageError("bidegree must be non-negative")
    if not X.is_canonical:
        raise UsageError("koszul_generic expects a canonical object")
    _check_guard(X, j, i)
    G = _generic(X.m, X.n, F.k)
    M = G.differential(j, i)
    s_src, s_tgt = G.sym(j)[0].shape[0], G.sym(j + 1)[0].shape[0]
    l_src = G.ext(i).shape[1]
    l_tgt = G.ext(i - 1).shape[1] if i > 0 else 0
    src = [f"s{a}@l{b}" for a in range(s_src) for b in range(l_src)]
    tgt = [f"s{a}@l{b}" for a in range(s_tgt) for b in range(l_tgt)]
    return KoszulSlice(X, j, i, src, tgt, M)


def sym_dim(X: Ver4Object, j: int, F: Field = gf.GF2) -> int:
    return _generic(X.m, X.n, F.k).sym(j)[0].shape[0]


def ext_basis(X: Ver4Object, i: int, F: Field = gf.GF2) -> Mat:
    return _generic(X.m, X.n, F.k).ext(i)


def lambda2_basis(X: Ver4Object, F: Field = gf.GF2) -> Mat:
    return _generic(X.m, X.n, F.k).lam2


# ---------------------------------------------------------------------------
# comparison and exactness


def p_identification(j: int, i: int) -> tuple[Mat, Mat]:
    """Matrices sending koszul_P coordinates of the source and target of the
    (j, i) slice to koszul_generic coordinates for X = P."""
    G = _generic(0, 1, 1)
    F = G.F

    def sym_map(jj: int) -> Mat:
        Q, _ = G.sym(jj)
        x, xp = 0, 1
        cols = []
        word = 0
        for _ in range(jj):
            word = word * 2 + x
        v = np.zeros(2 ** jj, dtype=np.uint8)
        v[word] = 1
        cols.append(gf.matvec(F, Q, v))
        if jj >= 1:
            w2 = (word - x) + xp  # x^{⊗jj-1} ⊗ x'
            v = np.zeros(2 ** jj, dtype=np.uint8)
            v[w2] = 1
            cols.append(gf.matvec(F, Q, v))
        return np.stack(cols, axis=1)

    def ext_map(ii: int) -> Mat:
        B = G.ext(ii)
        if ii == 0:
            return gf.identity(1)
        # pairing with y^{⊗ii} reads the x'^{⊗ii} coefficient; y^{⊗ii-1}⊗y' reads x'^{⊗ii-1}⊗x
        all_p = int("1" * ii, 2)
        last_x = all_p - 1
        fun = np.stack([B[all_p], B[last_x]])  # functionals on generic coordinates
        # columns of the returned matrix: generic coordinates of t_ii, x_ii
        return gf.inverse(F, fun)

    def block(jj: int, ii: int) -> Mat:
        if jj < 0 or ii < 0:
            return gf.zeros(0, 0)
        return gf.kron(F, sym_map(jj), ext_map(ii))

    return block(j, i), block(j + 1, i - 1) if i > 0 else gf.zeros(0, 0)


def compare_with_generic(max_total: int = 6) -> dict:
    """For X = P, check generic ∂ ∘ T_src = T_tgt ∘ explicit ∂ at every
    bidegree of total degree ≤ max_total, using the dual-basis identification."""
    F = gf.GF2
    P = make_object(0, 1)
    bad = []
    for tot in range(max_total + 1):
        for i in range(tot + 1):
            j = tot - i
            lem = koszul_P(j, i).matrix
            gen = koszul_generic(P, j, i).matrix
            Ts, Tt = p_identification(j, i)
            if i == 0:
                continue
            if gen.shape != lem.shape or not np.array_equal(gf.matmul(F, gen, Ts), gf.matmul(F, Tt, lem)):
                bad.append((j, i))
    return {"max_total": max_total, "mismatches": bad, "agree": not bad}


@dataclass
class ExactnessReport:
    homology: dict[tuple[int, int], int]
    d_squared_zero: bool
    euler: dict[int, int]

    @property
    def exact_in_positive_degrees(self) -> bool:
        return all(h == 0 for (j, i), h in self.homology.items() if j + i > 0)

    @property
    def h0(self) -> int:
        return sum(h for (j, i), h in self.homology.items() if i == 0)

    def as_dict(self) -> dict:
        return {
            "homology": {f"{j},{i}": h for (j, i), h in sorted(self.homology.items())},
            "d_squared_zero": self.d_squared_zero,
            "euler": {str(t): e for t, e in sorted(self.euler.items())},
            "exact_in_positive_degrees": self.exact_in_positive_degrees,
            "h0": self.h0,
        }


def verify_exactness(X: Ver4Object, max_total_degree: int, F: Field = gf.GF2, use_explicit: bool = True) -> ExactnessReport:
    fast = use_explicit and X.m == 0 and X.n == 1 and X.is_canonical and F.k == 1
    slices: dict[tuple[int, int], Mat] = {}

    def d(j: int, i: int) -> Mat:
        if (j, i) not in slices:
            slices[(j, i)] = koszul_P(j, i).matrix if fast else koszul_generic(X, j, i, F).matrix
        return slices[(j, i)]

    homology, euler = {}, {}
    sq_zero = True
    for tot in range(max_total_degree + 1):
        chi = 0
        for i in range(tot + 1):
            j = tot - i
            out = d(j, i)
            dim = out.shape[1]
            chi += dim if i % 2 == 0 else -dim
            incoming = gf.rank(F, d(j - 1, i + 1)) if j >= 1 else 0
            homology[(j, i)] = dim - gf.rank(F, out) - incoming
            if i >= 2 and out.size:
                nxt = d(j + 1, i - 1)
                if gf.matmul(F, nxt, out).any():
                    sq_zero = False
        euler[tot] = chi
    return ExactnessReport(homology, sq_zero, euler)
