"""Chevalley–Eilenberg cohomology of ordinary Lie algebras in degrees 1 and 2.

Cochains are stored as flat coordinate vectors: a 1-cochain φ: L → M is the
(dim M × dim L) matrix of values, flattened row-major; a 2-cochain is the full
bilinear tensor c[i, j, :] = c(b_i, b_j).  Signs play no role in characteristic 2.
The extended variant of degree 2 drops the alternating condition and keeps
symmetric forms, with the ordinary coboundaries.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import gf
from .gf import Field, Mat
from .ver4 import UsageError


@dataclass
class OrdinaryLieModule:
    F: Field
    Lc: np.ndarray  # (k, k, k) structure constants
    rho: np.ndarray  # (k, dimM, dimM), rho[i] acts on column vectors

    @property
    def k(self) -> int:
        return self.Lc.shape[0]

    @property
    def dimM(self) -> int:
        return self.rho.shape[1]

    def is_module(self) -> bool:
        F = self.F
        for i in range(self.k):
            for j in range(self.k):
                lhs = gf.einsum(F, "a,aij->ij", self.Lc[i, j], self.rho)
                rhs = gf.matmul(F, self.rho[i], self.rho[j]) ^ gf.matmul(F, self.rho[j], self.rho[i])
                if not np.array_equal(lhs, rhs):
                    return False
        return True


def adjoint_module(F: Field, Lc: np.ndarray) -> OrdinaryLieModule:
    # ad(b_i) b_j = [b_i, b_j] = sum_k Lc[i, j, k] b_k
    rho = np.ascontiguousarray(Lc.transpose(0, 2, 1))
    return OrdinaryLieModule(F, Lc, rho)


@dataclass
class CohomologyResult:
    degree: int
    extended: bool
    dimension: int
    cocycles: Mat  # columns, in the cochain coordinates described above
    coboundaries: Mat


def d0_matrix(LM: OrdinaryLieModule) -> Mat:
    """M → Hom(L, M), m ↦ (x ↦ ρ(x) m)."""
    k, n = LM.k, LM.dimM
    out = gf.zeros(n * k, n)
    for i in range(k):
        # value at b_i is rho[i] m; row index r*k + i for output coordinate r
        out[np.arange(n) * k + i, :] = LM.rho[i]
    return out


def d1_matrix(LM: OrdinaryLieModule) -> Mat:
    """Hom(L, M) → bilinear maps, φ ↦ ((x, y) ↦ ρ(x)φ(y) + ρ(y)φ(x) + φ([x, y]))."""
    F, k, n = LM.F, LM.k, LM.dimM
    cols = []
    for r in range(n):
        for a in range(k):
            phi = gf.zeros(n, k)
            phi[r, a] = 1
            c = np.zeros((k, k, n), dtype=np.uint8)
            for i in range(k):
                for j in range(k):
                    c[i, j] = (
                        gf.matvec(F, LM.rho[i], phi[:, j])
                        ^ gf.matvec(F, LM.rho[j], phi[:, i])
                        ^ gf.matvec(F, phi, LM.Lc[i, j])
                    )
            cols.append(c.reshape(-1))
    return np.stack(cols, axis=1) if cols else gf.zeros(k * k * n, 0)


def d2_matrix(LM: OrdinaryLieModule) -> Mat:
    """Bilinear maps → trilinear maps via the 2-cocycle expression
    ρ(a)c(b,e) + ρ(b)c(a,e) + ρ(e)c(a,b) + c([a,b],e) + c([a,e],b) + c([b,e],a)."""
    F, k, n = LM.F, LM.k, LM.dimM
    cols = []
    for p in range(k * k * n):
        c = np.zeros(k * k * n, dtype=np.uint8)
        c[p] = 1
        c = c.reshape(k, k, n)
        br = lambda u, v: gf.einsum(F, "i,j,ijk->k", u, v, c)  # noqa: E731
        e = gf.identity(k)
        out = np.zeros((k, k, k, n), dtype=np.uint8)
        for a in range(k):
            for b in range(k):
                for z in range(k):
                    s = gf.matvec(F, LM.rho[a], c[b, z]) ^ gf.matvec(F, LM.rho[b], c[a, z]) ^ gf.matvec(F, LM.rho[z], c[a, b])
                    s ^= br(LM.Lc[a, b], e[z]) ^ br(LM.Lc[a, z], e[b]) ^ br(LM.Lc[b, z], e[a])
                    out[a, b, z] = s
        cols.append(out.reshape(-1))
    return np.stack(cols, axis=1)


def _form_constraints(k: int, n: int, alternating: bool) -> Mat:
    rows = []
    for i in range(k):
        for j in range(i + 1, k):
            for r in range(n):
                row = np.zeros(k * k * n, dtype=np.uint8)
                row[(i * k + j) * n + r] = 1
                row[(j * k + i) * n + r] = 1
                rows.append(row)
        if alternating:
            for r in range(n):
                row = np.zeros(k * k * n, dtype=np.uint8)
                row[(i * k + i) * n + r] = 1
                rows.append(row)
    return np.stack(rows) if rows else gf.zeros(0, k * k * n)


def ce_cohomology(LM: OrdinaryLieModule, degree: int, extended: bool = False) -> CohomologyResult:
    if degree not in (1, 2):
        raise UsageError(f"degree must be 1 or 2, got {degree}")
    if not LM.is_module():
        raise UsageError("ρ is not a representation")
    F = LM.F
    if degree == 1:
        Z = gf.kernel(F, d1_matrix(LM))
        Bsp = gf.col_space(F, d0_matrix(LM))
    else:
        k, n = LM.k, LM.dimM
        cons = np.concatenate([_form_constraints(k, n, not extended), d2_matrix(LM)], axis=0)
        Z = gf.kernel(F, cons)
        Bsp = gf.col_space(F, d1_matrix(LM))
    dim = gf.rank(F, Z) - gf.rank(F, Bsp)
    return CohomologyResult(degree, extended, dim, Z, Bsp)


def p_map(F: Field, c: np.ndarray) -> Mat:
    """The 1-cochain x ↦ c(x, x) of a symmetric form, as its values on the basis
    (columns).  It is additive and Frobenius-semilinear; see p_apply."""
    c = np.asarray(c, dtype=np.uint8)
    if not np.array_equal(c, c.transpose(1, 0, 2)):
        raise UsageError("p_map needs a symmetric form")
    k = c.shape[0]
    return np.stack([c[i, i] for i in range(k)], axis=1)


def p_apply(F: Field, c: np.ndarray, x) -> np.ndarray:
    x = np.asarray(x, dtype=np.uint8)
    vals = p_map(F, c)
    sq = F.mul_table[x, x]
    return gf.matvec(F, vals, sq)
