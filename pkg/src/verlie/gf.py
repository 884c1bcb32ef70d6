"""Exact arithmetic in GF(2^k), k <= 4, and dense linear algebra over it.

Field elements are plain ints whose bits are the coefficients of a polynomial
in t (bit i <-> t^i), reduced modulo a fixed irreducible polynomial per k.
Matrices are 2-D numpy arrays of dtype uint8 holding such ints.  Every routine
takes the field explicitly, so the same array can be read over GF(2) or GF(4)
as long as its entries fit.
"""
from __future__ import annotations

import functools
import re
from dataclasses import dataclass

import numpy as np

# t^2+t+1, t^3+t+1, t^4+t+1 as bitmasks; degree 1 is GF(2) itself.
IRREDUCIBLE = {1: 0b11, 2: 0b111, 3: 0b1011, 4: 0b10011}

FieldElem = int
Mat = np.ndarray


def _clmul(a: int, b: int) -> int:
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def _reduce(a: int, k: int) -> int:
    poly = IRREDUCIBLE[k]
    for s in range(a.bit_length() - 1, k - 1, -1):
        if a >> s & 1:
            a ^= poly << (s - k)
    return a


class Field:
    """GF(2^k) with lookup tables for multiplication, inverse and square root."""

    def __init__(self, k: int):
        if k not in IRREDUCIBLE:
            raise ValueError(f"unsupported extension degree {k}; need 1..4")
        self.k = k
        self.q = 1 << k
        q = self.q
        self.mul_table = np.zeros((q, q), dtype=np.uint8)
        for a in range(q):
            for b in range(q):
                self.mul_table[a, b] = _reduce(_clmul(a, b), k)
        self.inv_table = np.zeros(q, dtype=np.uint8)
        for a in range(1, q):
            for b in range(1, q):
                if self.mul_table[a, b] == 1:
                    self.inv_table[a] = b
        self.sqrt_table = np.zeros(q, dtype=np.uint8)
        for a in range(q):
            self.sqrt_table[self.mul_table[a, a]] = a
        # t^s mod poly, used when folding bit-plane products of up to 8 operands
        self.tpow = [_reduce(1 << s, k) for s in range(8 * k)]

    def __repr__(self) -> str:
        return f"GF({self.q})"

    def __eq__(self, other) -> bool:
        return isinstance(other, Field) and other.k == self.k

    def __hash__(self) -> int:
        return hash(("GF", self.k))

    @property
    def name(self) -> str:
        return f"gf{self.q}"

    def elements(self) -> range:
        return range(self.q)

    def nonzero(self) -> range:
        return range(1, self.q)

    def add(self, a: int, b: int) -> int:
        return a ^ b

    def mul(self, a: int, b: int) -> int:
        return int(self.mul_table[a, b])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("0 has no inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        r = 1
        for _ in range(e):
            r = self.mul(r, a)
        return r

    def sqrt(self, a: int) -> int:
        return int(self.sqrt_table[a])

    def contains(self, a: int) -> bool:
        return 0 <= a < self.q

    def parse(self, text: str) -> int:
        """Read a polynomial literal in t such as ``"t+1"``, ``"t^2+t"`` or ``"1"``."""
        s = text.replace(" ", "")
        if not s:
            raise ValueError("empty field literal")
        acc = 0
        for term in s.split("+"):
            if re.fullmatch(r"[01]", term):
                acc ^= int(term)
            elif re.fullmatch(r"t(\^\d+)?", term):
                e = int(term[2:]) if "^" in term else 1
                acc ^= self.tpow[e] if e < len(self.tpow) else _reduce(1 << e, self.k)
            else:
                raise ValueError(f"bad field literal {text!r}")
        return acc

    def fmt(self, a: int) -> str:
        if a == 0:
            return "0"
        parts = []
        for s in range(self.k - 1, -1, -1):
            if a >> s & 1:
                parts.append("1" if s == 0 else ("t" if s == 1 else f"t^{s}"))
        return "+".join(parts)


@functools.lru_cache(maxsize=None)
def get_field(k: int) -> Field:
    return Field(k)


GF2 = get_field(1)

FIELD_NAMES = {"gf2": 1, "gf4": 2, "gf8": 3, "gf16": 4}


def field_by_name(name: str) -> Field:
    try:
        return get_field(FIELD_NAMES[name])
    except KeyError:
        raise ValueError(f"unknown field {name!r}; choose from {sorted(FIELD_NAMES)}") from None


def frobenius_sqrt(F: Field, c: int) -> int:
    """The unique square root of c, i.e. c^(2^(k-1))."""
    return F.sqrt(c)


# ---------------------------------------------------------------------------
# array arithmetic


def asmat(A) -> Mat:
    M = np.asarray(A, dtype=np.uint8)
    if M.ndim == 1:
        M = M.reshape(-1, 1)
    return M


def zeros(r: int, c: int) -> Mat:
    return np.zeros((r, c), dtype=np.uint8)


def identity(n: int) -> Mat:
    return np.eye(n, dtype=np.uint8)


def scale(F: Field, a: int, A: np.ndarray) -> np.ndarray:
    return F.mul_table[a][A]


def emul(F: Field, A: np.ndarray, B: np.ndarray) -> np.ndarray:
    """Entrywise product with broadcasting."""
    return F.mul_table[A, B]


def einsum(F: Field, subscripts: str, *ops: np.ndarray) -> np.ndarray:
    """np.einsum over GF(2^k): expand each operand into bit planes, contract the
    planes with integer arithmetic mod 2, then fold powers of t back in."""
    ops = [np.asarray(o, dtype=np.uint8) for o in ops]
    # path search only pays off for larger multi-operand contractions
    opt = len(ops) > 2 and int(np.prod([max(o.size, 1) for o in ops], dtype=np.float64)) > 50_000
    if F.k == 1:
        return (np.einsum(subscripts, *[o.astype(np.int64) for o in ops], optimize=opt) & 1).astype(np.uint8)
    planes = [[((o >> b) & 1).astype(np.int64) for b in range(F.k)] for o in ops]
    acc: dict[int, np.ndarray] = {}

    def rec(i: int, deg: int, chosen: list):
        if i == len(ops):
            r = np.einsum(subscripts, *chosen, optimize=opt)
            acc[deg] = r if deg not in acc else acc[deg] + r
            return
        for b in range(F.k):
            if planes[i][b].any():
                rec(i + 1, deg + b, chosen + [planes[i][b]])

    rec(0, 0, [])
    if not acc:
        return np.einsum(subscripts, *[np.zeros_like(o, dtype=np.int64) for o in ops]).astype(np.uint8)
    out = None
    for deg, r in acc.items():
        term = ((r & 1).astype(np.uint8)) * np.uint8(F.tpow[deg])
        out = term if out is None else out ^ term
    return out.astype(np.uint8)


_TABLE_LIMIT = 4096  # entries of the (i, j, k) product cube for the lookup path


def matmul(F: Field, A: Mat, B: Mat) -> Mat:
    A = np.asarray(A, dtype=np.uint8)
    B = np.asarray(B, dtype=np.uint8)
    if F.k > 1 and A.ndim == 2 and B.ndim == 2 and A.shape[0] * A.shape[1] * B.shape[1] <= _TABLE_LIMIT:
        # small products: one table lookup beats the bit-plane expansion
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.uint8)
        return np.bitwise_xor.reduce(F.mul_table[A[:, :, None], B[None, :, :]], axis=1)
    return einsum(F, "ij,jk->ik", A, B)


def matvec(F: Field, A: Mat, v: np.ndarray) -> np.ndarray:
    v = np.asarray(v, dtype=np.uint8)
    if F.k > 1 and A.ndim == 2 and A.size <= _TABLE_LIMIT:
        if A.shape[1] == 0:
            return np.zeros(A.shape[0], dtype=np.uint8)
        return np.bitwise_xor.reduce(F.mul_table[A, v[None, :]], axis=1)
    return einsum(F, "ij,j->i", A, v)


def kron(F: Field, A: Mat, B: Mat) -> Mat:
    return F.mul_table[np.kron(A, np.ones_like(B)), np.kron(np.ones_like(A), B)]


# ---------------------------------------------------------------------------
# elimination


def rref(F: Field, A: Mat) -> tuple[Mat, list[int]]:
    """Reduced row echelon form and pivot columns."""
    M = np.array(A, dtype=np.uint8, copy=True)
    if M.size == 0:
        return M, []
    rows, cols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            M[[r, p]] = M[[p, r]]
        piv = int(M[r, c])
        if piv != 1:
            M[r] = F.mul_table[F.inv(piv)][M[r]]
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] ^= F.mul_table[col[hit][:, None], M[r][None, :]]
        pivots.append(c)
        r += 1
    return M, pivots


def rank(F: Field, A: Mat) -> int:
    A = asmat(A)
    if A.size == 0:
        return 0
    # eliminate along the shorter side
    if A.shape[0] > A.shape[1]:
        A = A.T
    return len(rref(F, A)[1])


def kernel(F: Field, A: Mat) -> Mat:
    """Columns form a basis of {x : Ax = 0}."""
    A = asmat(A)
    cols = A.shape[1]
    if A.shape[0] == 0:
        return identity(cols)
    R, piv = rref(F, A)
    free = [c for c in range(cols) if c not in set(piv)]
    K = zeros(cols, len(free))
    for j, fc in enumerate(free):
        K[fc, j] = 1
        for i, pc in enumerate(piv):
            K[pc, j] = R[i, fc]  # minus == plus in char 2
    return K


@dataclass(frozen=True)
class Solution:
    """Result of solve_linear: ``particular`` is None when inconsistent."""

    particular: np.ndarray | None
    kernel: Mat

    @property
    def consistent(self) -> bool:
        return self.particular is not None


def solve_linear(F: Field, A: Mat, b) -> Solution:
    A = asmat(A)
    b = np.asarray(b, dtype=np.uint8).reshape(-1)
    if A.shape[0] != b.shape[0]:
        raise ValueError(f"dimension mismatch: A has {A.shape[0]} rows, b has {b.shape[0]} entries")
    cols = A.shape[1]
    K = kernel(F, A)
    if A.shape[0] == 0:
        return Solution(zeros(cols, 1).reshape(-1), K)
    aug = np.concatenate([A, b.reshape(-1, 1)], axis=1)
    R, piv = rref(F, aug)
    if cols in piv:
        return Solution(None, K)
    x = np.zeros(cols, dtype=np.uint8)
    for i, pc in enumerate(piv):
        x[pc] = R[i, cols]
    return Solution(x, K)


def det(F: Field, A: Mat) -> int:
    M = np.array(A, dtype=np.uint8, copy=True)
    n = M.shape[0]
    if M.shape != (n, n):
        raise ValueError("det needs a square matrix")
    d = 1
    for c in range(n):
        nz = np.nonzero(M[c:, c])[0]
        if nz.size == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            M[[c, p]] = M[[p, c]]
        piv = int(M[c, c])
        d = F.mul(d, piv)
        inv = F.inv(piv)
        below = M[c + 1:, c]
        hit = np.nonzero(below)[0]
        if hit.size:
            f = F.mul_table[below[hit], inv]
            M[c + 1 + hit] ^= F.mul_table[f[:, None], M[c][None, :]]
    return d


def inverse(F: Field, A: Mat) -> Mat:
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError(f"inverse needs a square matrix, got {A.shape}")
    if n == 0:
        return zeros(0, 0)
    R, piv = rref(F, np.concatenate([A, identity(n)], axis=1))
    if piv[:n] != list(range(n)):
        raise ValueError("matrix is singular")
    return R[:, n:].copy()


def row_space(F: Field, rows: Mat) -> Mat:
    """Reduced basis (as rows) of the span of the given rows."""
    rows = asmat(rows) if np.asarray(rows).ndim else zeros(0, 0)
    if rows.shape[0] == 0:
        return rows
    R, piv = rref(F, rows)
    return R[: len(piv)]


def col_space(F: Field, cols: Mat) -> Mat:
    return row_space(F, asmat(cols).T).T


def in_span(F: Field, basis_cols: Mat, v) -> bool:
    v = np.asarray(v, dtype=np.uint8).reshape(-1)
    if basis_cols.shape[1] == 0:
        return not v.any()
    return solve_linear(F, basis_cols, v).consistent


def coords(F: Field, basis_cols: Mat, v) -> np.ndarray:
    """Coordinates of v in the given independent columns; raises if v is outside."""
    sol = solve_linear(F, basis_cols, v)
    if not sol.consistent:
        raise ValueError("vector not in span")
    return sol.particular


def intersect(F: Field, U: Mat, W: Mat) -> Mat:
    """Column basis of span(U) ∩ span(W)."""
    if U.shape[1] == 0 or W.shape[1] == 0:
        return zeros(U.shape[0], 0)
    K = kernel(F, np.concatenate([U, W], axis=1))
    return col_space(F, matmul(F, U, K[: U.shape[1]]))
