"""Objects m·1 + nP of the category of k[d]/d²-modules with its twisted symmetry.

An object is stored as a dimension together with the matrix D of d, acting on
column vectors (column i of D is d applied to basis vector i).  Objects built by
``make_object`` use the canonical basis x1..xm, y1..yn, y'1..y'n with
D y_i = y'_i.  Tensor products, duals and Hom spaces keep the induced basis and
record (m, n) from the rank of D.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import gf
from .gf import Field, Mat


class UsageError(ValueError):
    """Bad arguments (maps to CLI exit code 2)."""


class ResourceGuardError(RuntimeError):
    """A computation would exceed its configured size budget."""


def guard_scale() -> float:
    import os

    try:
        return float(os.environ.get("VERLIE_GUARD_SCALE", "1"))
    except ValueError:
        return 1.0


def canonical_D(m: int, n: int) -> Mat:
    dim = m + 2 * n
    D = gf.zeros(dim, dim)
    for i in range(n):
        D[m + n + i, m + i] = 1
    return D


@dataclass(frozen=True, eq=False)
class Ver4Object:
    m: int
    n: int
    D: Mat = field(repr=False)
    names: tuple[str, ...] = ()

    @property
    def dim(self) -> int:
        return self.m + 2 * self.n

    @property
    def is_canonical(self) -> bool:
        return np.array_equal(self.D, canonical_D(self.m, self.n))

    def trivial_indices(self) -> list[int]:
        return list(range(self.m))

    def unprimed_indices(self) -> list[int]:
        return list(range(self.m, self.m + self.n))

    def primed_indices(self) -> list[int]:
        return list(range(self.m + self.n, self.dim))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Ver4Object)
            and (self.m, self.n) == (other.m, other.n)
            and np.array_equal(self.D, other.D)
        )

    def __hash__(self) -> int:
        return hash((self.m, self.n, self.D.tobytes()))


def default_names(m: int, n: int) -> tuple[str, ...]:
    xs = ["x"] if m == 1 else [f"x{i + 1}" for i in range(m)]
    ys = ["y"] if n == 1 else [f"y{i + 1}" for i in range(n)]
    return tuple(xs + ys + [s + "'" for s in ys])


def make_object(m: int, n: int) -> Ver4Object:
    if m < 0 or n < 0 or m + n < 1:
        raise UsageError(f"need m + n >= 1 with m, n >= 0, got m={m}, n={n}")
    return Ver4Object(m, n, canonical_D(m, n), default_names(m, n))


def from_matrix(D: Mat, F: Field = gf.GF2) -> Ver4Object:
    """Wrap an arbitrary square-zero matrix, reading off (m, n)."""
    D = gf.asmat(D)
    dim = D.shape[0]
    if D.shape != (dim, dim):
        raise UsageError("D must be square")
    if gf.matmul(F, D, D).any():
        raise UsageError("D must square to zero")
    r = gf.rank(F, D)
    return Ver4Object(dim - 2 * r, r, D.copy())


def tensor(X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> Ver4Object:
    """X⊗Y with basis b_i⊗c_j at index i*dim(Y)+j and d = D⊗1 + 1⊗D."""
    D = gf.kron(F, X.D, gf.identity(Y.dim)) ^ gf.kron(F, gf.identity(X.dim), Y.D)
    return from_matrix(D, F)


def dual(X: Ver4Object, F: Field = gf.GF2) -> Ver4Object:
    """X* in the dual basis; d acts by the transpose (signs vanish in char 2)."""
    return from_matrix(X.D.T.copy(), F)


def hom_D(X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> Mat:
    """Matrix of A ↦ D_Y A + A D_X on Hom(X, Y) in the matrix-unit basis
    E_ij (index i*dim X + j), i.e. row-major flattening."""
    a = gf.kron(F, Y.D, gf.identity(X.dim))
    b = gf.kron(F, gf.identity(Y.dim), X.D.T)
    return a ^ b


def hom(X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> Ver4Object:
    return from_matrix(hom_D(X, Y, F), F)


def tensor_dual(X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> dict[str, Ver4Object]:
    return {"tensor": tensor(X, Y, F), "dual": dual(X, F), "hom": hom(X, Y, F)}


def swap(dx: int, dy: int) -> Mat:
    """Plain flip X⊗Y → Y⊗X."""
    S = gf.zeros(dx * dy, dx * dy)
    for i in range(dx):
        for j in range(dy):
            S[j * dx + i, i * dy + j] = 1
    return S


def braiding(X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> Mat:
    """c(u⊗v) = v⊗u + v'⊗u' as a matrix X⊗Y → Y⊗X."""
    S = swap(X.dim, Y.dim)
    twist = gf.identity(X.dim * Y.dim) ^ gf.kron(F, X.D, Y.D)
    return gf.matmul(F, S, twist)


def is_morphism(f: Mat, X: Ver4Object, Y: Ver4Object, F: Field = gf.GF2) -> bool:
    f = gf.asmat(f)
    if f.shape != (Y.dim, X.dim):
        raise UsageError(f"map has shape {f.shape}, expected {(Y.dim, X.dim)}")
    return np.array_equal(gf.matmul(F, f, X.D), gf.matmul(F, Y.D, f))


@dataclass(frozen=True)
class Ver4Morphism:
    source: Ver4Object
    target: Ver4Object
    mat: Mat

    def check(self, F: Field = gf.GF2) -> bool:
        return is_morphism(self.mat, self.source, self.target, F)


def adapted_basis(F: Field, D: Mat, candidates: Mat | None = None) -> tuple[Mat, int, int]:
    """Change of basis T (columns) putting D in canonical form.

    Returns (T, m, n) with T^-1 D T = canonical_D(m, n).  Unprimed vectors and
    trivial complements are chosen greedily from ``candidates`` (columns, by
    default the standard basis) so that simple vectors are preferred.
    """
    dim = D.shape[0]
    if candidates is None:
        candidates = gf.identity(dim)
    n = gf.rank(F, D)
    ys: list[np.ndarray] = []
    images = gf.zeros(dim, 0)
    for c in range(candidates.shape[1]):
        if len(ys) == n:
            break
        v = candidates[:, c]
        img = gf.matvec(F, D, v)
        if not img.any():
            continue
        trial = np.concatenate([images, img.reshape(-1, 1)], axis=1)
        if gf.rank(F, trial) > images.shape[1]:
            images = trial
            ys.append(v)
    if len(ys) != n:
        raise RuntimeError("candidate vectors do not reach the image of D")
    K = gf.kernel(F, D)
    pool = np.concatenate([candidates, K], axis=1)
    chosen = images.copy()
    xs: list[np.ndarray] = []
    m = dim - 2 * n
    for c in range(pool.shape[1]):
        if len(xs) == m:
            break
        v = pool[:, c]
        if gf.matvec(F, D, v).any():
            continue
        trial = np.concatenate([chosen, v.reshape(-1, 1)], axis=1)
        if gf.rank(F, trial) > chosen.shape[1]:
            chosen = trial
            xs.append(v)
    cols = xs + ys + [images[:, i] for i in range(n)]
    T = np.stack(cols, axis=1) if cols else gf.zeros(dim, 0)
    return T.astype(np.uint8), m, n
