"""The enveloping algebra U(L) = TL/(id − c − β) of a structure on m·1 + nP.

Elements are dicts from PBW words to nonzero field coefficients.  A PBW word is
a tuple of basis indices, nondecreasing in the generator order: primed
generators first, then trivial ones, then the unprimed y's.  Primed letters
appear at most once.  Normal forms come from the rules

    u v  ->  v u + v'u' + [u, v]      (u after v in the order)
    z z  ->  [w, w]                   (z = w' primed, w its designated preimage)

applied by inserting letters one at a time into an already sorted word.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from . import gf
from .gf import Field
from .liealg import BracketStructure, canonicalize
from .ver4 import ResourceGuardError, UsageError, guard_scale

Word = tuple  # tuple[int, ...]
Elem = dict  # dict[Word, int]

_MAX_MONOMIALS = 20000


def _add_into(F: Field, acc: Elem, word: Word, coeff: int):
    if not coeff:
        return
    v = acc.get(word, 0) ^ coeff
    if v:
        acc[word] = v
    else:
        acc.pop(word, None)


def _scaled(F: Field, a: int, e: Elem) -> Elem:
    if a == 1:
        return dict(e)
    if a == 0:
        return {}
    return {w: F.mul(a, c) for w, c in e.items()}


class UEA:
    """Normal forms and products in U(L).  L is moved to the canonical basis if
    necessary; ``L`` on the instance is the structure actually used."""

    def __init__(self, L: BracketStructure):
        if not L.obj.is_canonical:
            L = canonicalize(L)
        self.L = L
        self.F = L.F
        m, n = L.obj.m, L.obj.n
        self.m, self.n = m, n
        N = L.dim
        # rank in the generator order
        self.rank = [0] * N
        for j in range(n):
            self.rank[m + n + j] = j
        for i in range(m):
            self.rank[i] = n + i
        for j in range(n):
            self.rank[m + j] = n + m + j
        self.primed = set(range(m + n, m + 2 * n))
        self.preimage = {m + n + j: m + j for j in range(n)}
        self.order = sorted(range(N), key=lambda i: self.rank[i])
        self._vec_terms = {}
        self._bracket = {}
        self._prime = {}
        for i in range(N):
            self._prime[i] = self._terms(L.prime(L.basis_vector(i)))
            for j in range(N):
                self._bracket[(i, j)] = self._terms(L.c[i, j])
        self._cache: dict[tuple[Word, int], Elem] = {}
        self.steps = 0

    def _terms(self, v) -> list[tuple[int, int]]:
        return [(int(i), int(a)) for i, a in enumerate(np.asarray(v)) if a]

    # -- core rewriting ---------------------------------------------------

    def _times_letter(self, word: Word, g: int) -> Elem:
        key = (word, g)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        self.steps += 1
        F = self.F
        out: Elem = {}
        if not word or self.rank[word[-1]] < self.rank[g]:
            out[word + (g,)] = 1
        elif word[-1] == g and g not in self.primed:
            out[word + (g,)] = 1
        elif word[-1] == g:
            # z z -> [w, w]
            w = self.preimage[g]
            base = word[:-1]
            for k, a in self._bracket[(w, w)]:
                for ww, cc in self._times_letter(base, k).items():
                    _add_into(F, out, ww, F.mul(a, cc))
        else:
            u, v = word[-1], g
            base = word[:-1]
            # base v u
            for ww, cc in self._times_letter(base, v).items():
                for w2, c2 in self._times_letter(ww, u).items():
                    _add_into(F, out, w2, F.mul(cc, c2))
            # base v' u'
            for k1, a1 in self._prime[v]:
                for ww, cc in self._times_letter(base, k1).items():
                    for k2, a2 in self._prime[u]:
                        for w2, c2 in self._times_letter(ww, k2).items():
                            _add_into(F, out, w2, F.mul(F.mul(a1, a2), F.mul(cc, c2)))
            # base [u, v]
            for k, a in self._bracket[(u, v)]:
                for ww, cc in self._times_letter(base, k).items():
                    _add_into(F, out, ww, F.mul(a, cc))
        self._cache[key] = out
        return out

    def times_letter(self, z: Elem, g: int) -> Elem:
        F = self.F
        out: Elem = {}
        for w, c in z.items():
            for w2, c2 in self._times_letter(w, g).items():
                _add_into(F, out, w2, F.mul(c, c2))
        return out

    def normal_form(self, word) -> Elem:
        z: Elem = {(): 1}
        for g in word:
            z = self.times_letter(z, int(g))
        return z

    def multiply(self, a: Elem, b: Elem) -> Elem:
        F = self.F
        out: Elem = {}
        for wb, cb in b.items():
            part = dict(a)
            for g in wb:
                part = self.times_letter(part, g)
            for w, c in part.items():
                _add_into(F, out, w, F.mul(c, cb))
        return out

    # -- element helpers --------------------------------------------------

    def one(self) -> Elem:
        return {(): 1}

    def scalar(self, a: int) -> Elem:
        return {(): a} if a else {}

    def gen(self, label_or_index) -> Elem:
        i = label_or_index if isinstance(label_or_index, int) else self.L.labels.index(label_or_index)
        return {(i,): 1}

    def from_vector(self, v) -> Elem:
        return {(i,): a for i, a in self._terms(v)}

    def add(self, *elems: Elem) -> Elem:
        out: Elem = {}
        for e in elems:
            for w, c in e.items():
                _add_into(self.F, out, w, c)
        return out

    def scale(self, a: int, e: Elem) -> Elem:
        return _scaled(self.F, a, e)

    def power(self, z: Elem, k: int) -> Elem:
        out = self.one()
        for _ in range(k):
            out = self.multiply(out, z)
        return out

    def commutator(self, a: Elem, b: Elem) -> Elem:
        """ab + ba (the plain associative commutator in characteristic 2)."""
        return self.add(self.multiply(a, b), self.multiply(b, a))

    def is_central(self, z: Elem) -> bool:
        return all(not self.commutator(z, self.gen(g)) for g in range(self.L.dim))

    def degree(self, z: Elem) -> int:
        return max((len(w) for w in z), default=-1)

    def fmt(self, z: Elem) -> str:
        if not z:
            return "0"
        parts = []
        for w in sorted(z, key=self.word_key):
            c = z[w]
            mono = self._fmt_word(w)
            if c == 1:
                parts.append(mono)
            else:
                coef = f"({self.F.fmt(c)})"
                parts.append(coef if mono == "1" else coef + mono)
        return " + ".join(parts)

    def _fmt_word(self, w: Word) -> str:
        if not w:
            return "1"
        out = []
        for g, grp in itertools.groupby(w):
            k = len(list(grp))
            lab = self.L.labels[g]
            if len(lab) > 2 and not lab.isalnum():
                lab = f"({lab})"
            out.append(lab if k == 1 else f"{lab}^{k}")
        return "".join(out)

    def word_key(self, w: Word):
        return (len(w), [self.rank[g] for g in w])

    # -- PBW monomials ----------------------------------------------------

    def pbw_words(self, max_degree: int) -> list[Word]:
        """All PBW words of length <= max_degree, in a fixed order."""
        out = []
        prim = [g for g in self.order if g in self.primed]
        unpr = [g for g in self.order if g not in self.primed]
        for r in range(len(prim) + 1):
            for ps in itertools.combinations(prim, r):
                if r > max_degree:
                    continue
                for d in range(max_degree - r + 1):
                    for us in itertools.combinations_with_replacement(unpr, d):
                        out.append(tuple(ps) + tuple(us))
        out.sort(key=self.word_key)
        if len(out) > _MAX_MONOMIALS * guard_scale():
            raise ResourceGuardError(f"{len(out)} PBW monomials exceed the budget")
        return out

    def coords(self, z: Elem, index: dict[Word, int]) -> np.ndarray:
        v = np.zeros(len(index), dtype=np.uint8)
        for w, c in z.items():
            if w not in index:
                raise UsageError("element has terms beyond the monomial range")
            v[index[w]] = c
        return v

    def element(self, coords, words: list[Word]) -> Elem:
        return {w: int(a) for w, a in zip(words, coords) if a}


# ---------------------------------------------------------------------------
# module-level conveniences


def normal_form(word, L: BracketStructure) -> Elem:
    return UEA(L).normal_form(word)


def centralizer_basis(U: UEA, max_degree: int) -> list[Elem]:
    """Basis of the central elements of filtration degree <= max_degree."""
    F = U.F
    words = U.pbw_words(max_degree)
    big = U.pbw_words(max_degree + 1)
    index = {w: i for i, w in enumerate(big)}
    blocks = []
    for g in range(U.L.dim):
        cols = []
        for w in words:
            z = {w: 1}
            cols.append(U.coords(U.commutator(z, U.gen(g)), index))
        blocks.append(np.stack(cols, axis=1))
    K = gf.kernel(F, np.concatenate(blocks, axis=0))
    return [U.element(K[:, j], words) for j in range(K.shape[1])]


def centralizer_dims(U: UEA, max_degree: int) -> list[int]:
    """dim of the center intersected with each filtration piece 0..max_degree."""
    basis = centralizer_basis(U, max_degree)
    words = U.pbw_words(max_degree)
    index = {w: i for i, w in enumerate(words)}
    M = np.stack([U.coords(z, index) for z in basis], axis=1) if basis else gf.zeros(len(words), 0)
    return [_dim_in_filtration(U.F, M, words, k) for k in range(max_degree + 1)]


def _dim_in_filtration(F: Field, M: np.ndarray, words: list[Word], k: int) -> int:
    """dim of (column span of M) ∩ span(words of length <= k)."""
    high = [i for i, w in enumerate(words) if len(w) > k]
    if M.shape[1] == 0:
        return 0
    if not high:
        return gf.rank(F, M)
    sub = M[high]
    return gf.rank(F, M) - gf.rank(F, sub)


def subalgebra_dims(U: UEA, gens: list[Elem], gen_degrees: list[int], max_degree: int, slack: int = 4) -> list[int]:
    """dim of (subalgebra generated by gens) ∩ U_{<=k} for k = 0..max_degree.

    Products are formed up to nominal degree max_degree + slack so that
    cancellations of top terms are captured."""
    F = U.F
    bound = max_degree + slack
    prods: dict[int, list[Elem]] = {0: [U.one()]}
    allp = [U.one()]
    for d in range(1, bound + 1):
        cur = []
        for gi, (g, gd) in enumerate(zip(gens, gen_degrees)):
            if gd > d:
                continue
            for p in prods.get(d - gd, []):
                cur.append(U.multiply(p, g))
        prods[d] = cur
        allp.extend(cur)
    words = sorted({w for z in allp for w in z} | set(U.pbw_words(max_degree)), key=U.word_key)
    index = {w: i for i, w in enumerate(words)}
    M = np.stack([U.coords(z, index) for z in allp], axis=1)
    M = gf.col_space(F, M)
    return [_dim_in_filtration(F, M, words, k) for k in range(max_degree + 1)]


@dataclass
class PBWReport:
    expected_dims: list[int]
    actual_dims: list[int]

    @property
    def defect(self) -> bool:
        return any(a < e for a, e in zip(self.actual_dims, self.expected_dims))

    def as_dict(self) -> dict:
        return {"expected": self.expected_dims, "actual": self.actual_dims, "defect": self.defect}


def pbw_check(L: BracketStructure, max_degree: int) -> PBWReport:
    """Compare dim U_{<=k} with the PBW count, k = 0..max_degree.

    U_{<=k} is the span of PBW monomials of length <= k modulo the normal forms
    of relation instances a·(u v − v u − v'u' − [u, v])·b of total length
    <= max(max_degree, 2)."""
    U = UEA(L)
    F = U.F
    N = L.dim
    top = max(max_degree, 2)
    words = U.pbw_words(top)
    index = {w: i for i, w in enumerate(words)}
    expected = [sum(1 for w in words if len(w) <= k) for k in range(max_degree + 1)]
    rels = []
    pair_words = {}
    for u in range(N):
        for v in range(N):
            terms = [((u, v), 1), ((v, u), 1)]
            for p, a in U._prime[v]:
                for q, b in U._prime[u]:
                    terms.append(((p, q), F.mul(a, b)))
            terms += [((k,), a) for k, a in U._bracket[(u, v)]]
            pair_words[(u, v)] = terms
    for la in range(top - 1):
        for lb in range(top - 1 - la):
            for a in itertools.product(range(N), repeat=la):
                for b in itertools.product(range(N), repeat=lb):
                    for terms in pair_words.values():
                        z = U.add(*(U.scale(c, U.normal_form(a + w + b)) for w, c in terms))
                        if z:
                            rels.append(U.coords(z, index))
    if rels:
        R = np.stack(rels, axis=1)
        actual = [expected[k] - _dim_in_filtration(F, R, words, k) for k in range(max_degree + 1)]
    else:
        actual = list(expected)
    return PBWReport(expected, actual)


def check_central_idempotent(U: UEA, e: Elem) -> bool:
    return U.is_central(e) and U.multiply(e, e) == e


def project_idempotent(U: UEA, z: Elem, e: Elem, side: int) -> Elem:
    """z·e (side 1) or z·(1 − e) (side 0)."""
    if side not in (0, 1):
        raise UsageError("side must be 0 or 1")
    if not check_central_idempotent(U, e):
        raise UsageError("e is not a central idempotent")
    f = e if side == 1 else U.add(U.one(), e)
    return U.multiply(z, f)
