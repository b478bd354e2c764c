"""Super-Koszul cochain complexes with exact, weight-blocked differentials.

The cochain space in degree k is C^k = Hom(Lambda_s^k(n), M), identified
with Lambda_s^k(n)* (x) M on the monomial basis.  A degree-k monomial is a
word of basis ids in canonical order: even ids strictly ascending first,
then odd ids non-decreasing (exterior on the even part, symmetric on the
odd part).

The differential follows the two-sum formula

  df(w_0 ^ ... ^ w_k) = sum_i (-1)^{tau_i} w_i . f(... ^w_i ...)
                      + sum_{i<j} (-1)^{sigma_ij} f([w_i,w_j] ^ ... ^w_i ...^w_j ...)

with tau_i = i + |w_i| (|w_0|+...+|w_{i-1}| + |f|) and
sigma_ij = i + j + |w_i||w_j| + |w_i|(|w_0|+..+|w_{i-1}|)
         + |w_j|(|w_0|+..+|w_{j-1}|).

Every entry is an exact rational.  Because the torus action commutes with
d, the matrices are block diagonal over (weight, parity) keys; d od = 0 is
checked as an exact sparse product wherever a test asks for it.

The dual-action convention, chosen once and validated end to end, is
(x.f)(v) = -(-1)^{|x||f|} f(x.v); the opposite global sign is available
behind the `dual_sign` flag and produces an isomorphic complex.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .realize import IdealDesignation, NilpotentAlgebra, verify_ideal
from .supercore import EVEN, ODD, Parity, Weight, parity_sum, swap_sign

Word = tuple[int, ...]
Sparse = dict[tuple[int, int], Fraction]


@dataclass(frozen=True)
class SuperExtMonomial:
    """Structured view of a canonical monomial word.

    even_part is strictly increasing (exterior factors), odd_part is
    non-decreasing (symmetric factors); degree is the total length.
    """

    even_part: tuple[int, ...]
    odd_part: tuple[int, ...]

    @staticmethod
    def from_word(parities: Sequence[Parity], word: Word) -> "SuperExtMonomial":
        ev = tuple(x for x in word if parities[x] == EVEN)
        od = tuple(x for x in word if parities[x] == ODD)
        return SuperExtMonomial(ev, od)

    @property
    def degree(self) -> int:
        return len(self.even_part) + len(self.odd_part)

    @property
    def parity(self) -> Parity:
        return len(self.odd_part) % 2

    def word(self) -> Word:
        return self.even_part + self.odd_part

    def weight(self, weights: Sequence[Weight], zero: Weight) -> Weight:
        return sum((weights[x] for x in self.word()), zero)


# -- monomials -----------------------------------------------------------------


def monomial_words(parities: Sequence[Parity], k: int) -> list[Word]:
    """Canonical degree-k monomial words over a graded index set.

    Count is sum_{i+j=k} C(d0, i) * C(d1+j-1, j) for d0 even and d1 odd
    generators.
    """
    even = [i for i, p in enumerate(parities) if p == EVEN]
    odd = [i for i, p in enumerate(parities) if p == ODD]
    out: list[Word] = []
    for i in range(k, -1, -1):
        j = k - i
        if i > len(even) or (j > 0 and not odd):
            continue
        for ev in itertools.combinations(even, i):
            for od in itertools.combinations_with_replacement(odd, j):
                out.append(ev + od)
    return out


def normalize_word(parities: Sequence[Parity], factors: Iterable[int]) -> tuple[int, Word | None]:
    """Sort a factor word into canonical order, tracking the Koszul sign.

    Returns (sign, word); sign 0 (word None) when an even factor repeats.
    Even factors anticommute with everything, odd factors commute with odd.
    """
    word = list(factors)
    sign = 1
    # insertion sort; each adjacent transposition contributes swap_sign
    for i in range(1, len(word)):
        j = i
        while j > 0:
            a, b = word[j - 1], word[j]
            if (parities[a], a) <= (parities[b], b):
                break
            sign *= swap_sign(parities[a], parities[b])
            word[j - 1], word[j] = b, a
            j -= 1
    for a, b in zip(word, word[1:]):
        if a == b and parities[a] == EVEN:
            return 0, None
    return sign, tuple(word)


# -- modules --------------------------------------------------------------------


class GModule:
    """Finite-dimensional module over a NilpotentAlgebra, exact action.

    `action[i]` is the sparse matrix of the i-th algebra basis vector:
    x_i . m_c = sum_r action[i][(r, c)] m_r.
    """

    def __init__(
        self,
        algebra: NilpotentAlgebra,
        name: str,
        parities: tuple[Parity, ...],
        weights: tuple[Weight, ...],
        action: list[Sparse],
    ):
        self.algebra = algebra
        self.name = name
        self.parities = parities
        self.weights = weights
        self.action = action
        self.dim = len(parities)

    def verify(self) -> None:
        """Representation identity and grading compatibility, exhaustively."""
        alg = self.algebra
        for i, mat in enumerate(self.action):
            for (r, c), val in mat.items():
                assert val != 0
                if self.parities[r] != (self.parities[c] + alg.parities[i]) % 2:
                    raise AssertionError(f"{self.name}: action of x_{i} breaks parity")
                if self.weights[r] != self.weights[c] + alg.weights[i]:
                    raise AssertionError(f"{self.name}: action of x_{i} breaks weights")
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs: Sparse = {}
                for t, c in alg.bracket(i, j).items():
                    _acc(lhs, self.action[t], c)
                rhs = _matmul_sparse(self.action[i], self.action[j])
                sign = Fraction(1 if (alg.parities[i] and alg.parities[j]) else -1)
                _acc_mat(rhs, _matmul_sparse(self.action[j], self.action[i]), sign)
                if lhs != rhs:
                    raise AssertionError(
                        f"{self.name}: representation identity fails on ({i},{j})"
                    )


def _acc(target: Sparse, mat: Sparse, scale: Fraction) -> None:
    for pos, val in mat.items():
        new = target.get(pos, Fraction(0)) + scale * val
        if new:
            target[pos] = new
        else:
            target.pop(pos, None)


def _acc_mat(target: Sparse, mat: Sparse, scale: Fraction) -> None:
    _acc(target, mat, scale)


def _matmul_sparse(a: Sparse, b: Sparse) -> Sparse:
    rows: dict[int, list[tuple[int, Fraction]]] = {}
    for (r, c), v in b.items():
        rows.setdefault(r, []).append((c, v))
    out: Sparse = {}
    for (r, c), v in a.items():
        for c2, v2 in rows.get(c, ()):
            pos = (r, c2)
            new = out.get(pos, Fraction(0)) + v * v2
            if new:
                out[pos] = new
            else:
                out.pop(pos, None)
    return out


def trivial_module(alg: NilpotentAlgebra) -> GModule:
    w0 = Weight.zero(alg.wtag, len(alg.symbols))
    return GModule(alg, "C", (EVEN,), (w0,), [dict() for _ in range(alg.dim)])


def dual_module(
    parent: NilpotentAlgebra,
    ideal: IdealDesignation,
    quotient: NilpotentAlgebra,
    dual_sign: int = -1,
) -> GModule:
    """I* as a module over n/I (contragredient of the bracket action).

    Convention: (x.f)(v) = dual_sign * (-1)^{|x||f|} f(x.v) with
    dual_sign = -1 by default.  Weights are negated; parities kept.
    """
    verify_ideal(parent, ideal)
    members = ideal.sorted_ids()
    pos_of = {mid: a for a, mid in enumerate(members)}
    keep = [b.id for b in parent.basis if b.id not in ideal.member_ids]
    if len(keep) != quotient.dim:
        raise ValueError("quotient does not match the ideal complement")
    parities = tuple(parent.parities[mid] for mid in members)
    weights = tuple(-parent.weights[mid] for mid in members)
    action: list[Sparse] = []
    for pid in keep:
        px = parent.parities[pid]
        # direct bracket action on I: x . m_b = sum_a direct[(a, b)] m_a
        direct: Sparse = {}
        for b, mid in enumerate(members):
            for t, c in parent.bracket(pid, mid).items():
                direct[(pos_of[t], b)] = direct.get((pos_of[t], b), Fraction(0)) + c
        # contragredient: (x.m_b*)(m_a) = dual_sign*(-1)^{|x||m_b*|} m_b*(x.m_a)
        mat: Sparse = {}
        for (a, b), val in direct.items():
            if val == 0:
                continue
            sgn = Fraction(dual_sign if not (px and parities[b]) else -dual_sign)
            mat[(b, a)] = sgn * val
        action.append(mat)
    mod = GModule(quotient, "I*", parities, weights, action)
    mod.verify()
    return mod


def lambda_s_module(alg: NilpotentAlgebra, module: GModule, j: int) -> GModule:
    """Superexterior power Lambda_s^j(M) with the derivation action."""
    if j == 0:
        return trivial_module(alg)
    words = monomial_words(module.parities, j)
    index = {w: a for a, w in enumerate(words)}
    parities = tuple(parity_sum(module.parities[x] for x in w) for w in words)
    zero = Weight.zero(alg.wtag, len(alg.symbols))
    weights = tuple(
        sum((module.weights[x] for x in w), zero) for w in words
    )
    action: list[Sparse] = []
    for i in range(alg.dim):
        px = alg.parities[i]
        rho = module.action[i]
        cols: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in rho.items():
            cols.setdefault(c, []).append((r, v))
        mat: Sparse = {}
        for widx, w in enumerate(words):
            pre = 0
            for t, x in enumerate(w):
                sgn_pre = -1 if (px and pre) else 1
                for r, v in cols.get(x, ()):
                    s, canon = normalize_word(module.parities, w[:t] + (r,) + w[t + 1 :])
                    if s:
                        pos = (index[canon], widx)
                        new = mat.get(pos, Fraction(0)) + Fraction(sgn_pre * s) * v
                        if new:
                            mat[pos] = new
                        else:
                            mat.pop(pos, None)
                pre ^= module.parities[x]
        action.append(mat)
    mod = GModule(alg, f"L^{j}({module.name})", parities, weights, action)
    mod.verify()
    return mod


# -- the cochain complex ---------------------------------------------------------


BlockKey = tuple[tuple, Parity]  # (weight sort key, parity)


@dataclass
class DegreeData:
    words: list[Word]
    word_index: dict[Word, int]
    keys: list[BlockKey]           # per cochain index
    blocks: dict[BlockKey, list[int]]
    weights: dict[BlockKey, Weight]


class CochainComplex:
    """C^*(n, M) with lazily built bases and differentials."""

    def __init__(self, alg: NilpotentAlgebra, module: GModule):
        if module.algebra is not alg and module.algebra.wtag != alg.wtag:
            raise ValueError("module is not over this algebra's symbol system")
        self.alg = alg
        self.module = module
        self._degrees: dict[int, DegreeData] = {}
        self._diffs: dict[int, Sparse] = {}

    # cochain index = word_index * dim(M) + module_index
    def degree(self, k: int) -> DegreeData:
        if k in self._degrees:
            return self._degrees[k]
        words = monomial_words(self.alg.parities, k)
        word_index = {w: i for i, w in enumerate(words)}
        zero = Weight.zero(self.alg.wtag, len(self.alg.symbols))
        keys: list[BlockKey] = []
        blocks: dict[BlockKey, list[int]] = {}
        weights: dict[BlockKey, Weight] = {}
        m = self.module
        for wi, w in enumerate(words):
            mono_wt = sum((self.alg.weights[x] for x in w), zero)
            mono_par = parity_sum(self.alg.parities[x] for x in w)
            for c in range(m.dim):
                wt = m.weights[c] - mono_wt
                par = (mono_par + m.parities[c]) % 2
                key = (wt.sort_key(), par)
                idx = wi * m.dim + c
                keys.append(key)
                blocks.setdefault(key, []).append(idx)
                weights.setdefault(key, wt)
        data = DegreeData(words, word_index, keys, blocks, weights)
        self._degrees[k] = data
        return data

    def dim(self, k: int) -> int:
        return len(self.degree(k).words) * self.module.dim

    def differential(self, k: int) -> Sparse:
        """Sparse matrix of d^k: C^k -> C^{k+1} (rows degree k+1)."""
        if k in self._diffs:
            return self._diffs[k]
        alg, m = self.alg, self.module
        src = self.degree(k)
        dst = self.degree(k + 1)
        nm = m.dim
        d: Sparse = {}

        def add(row: int, col: int, val: Fraction) -> None:
            if not val:
                return
            pos = (row, col)
            new = d.get(pos, Fraction(0)) + val
            if new:
                d[pos] = new
            else:
                d.pop(pos, None)

        for hidx, word in enumerate(dst.words):
            pars = [alg.parities[x] for x in word]
            prefix = [0] * (len(word) + 1)
            for t, p in enumerate(pars):
                prefix[t + 1] = prefix[t] ^ p
            # action terms
            for i, x in enumerate(word):
                rest = word[:i] + word[i + 1 :]
                xi = src.word_index[rest]
                rest_par = prefix[len(word)] ^ pars[i]
                for (r, c), val in m.action[x].items():
                    # |f| is the parity of the column cochain (rest, c)
                    f_par = (rest_par + m.parities[c]) % 2
                    tau = i + pars[i] * (prefix[i] + f_par)
                    sgn = Fraction(-1 if tau % 2 else 1)
                    add(hidx * nm + r, xi * nm + c, sgn * val)
            # bracket terms
            for i in range(len(word)):
                for j in range(i + 1, len(word)):
                    br = alg.bracket(word[i], word[j])
                    if not br:
                        continue
                    sigma = (
                        i
                        + j
                        + pars[i] * pars[j]
                        + pars[i] * prefix[i]
                        + pars[j] * prefix[j]
                    )
                    sgn = Fraction(-1 if sigma % 2 else 1)
                    rest = word[:i] + word[i + 1 : j] + word[j + 1 :]
                    for t, cval in br.items():
                        s, canon = normalize_word(alg.parities, (t,) + rest)
                        if not s:
                            continue
                        zi = src.word_index[canon]
                        for w in range(nm):
                            add(hidx * nm + w, zi * nm + w, sgn * Fraction(s) * cval)

        # the differential must preserve (weight, parity) blocks
        for (row, col) in d:
            if dst.keys[row] != src.keys[col]:
                raise AssertionError("differential entry crosses weight blocks")
        self._diffs[k] = d
        return d

    def check_d_squared(self, k: int) -> bool:
        """Exact check that d^{k+1} o d^k = 0."""
        d1 = self.differential(k)
        d2 = self.differential(k + 1)
        by_col: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in d2.items():
            by_col.setdefault(c, []).append((r, v))
        acc: Sparse = {}
        for (r, c), v in d1.items():
            for r2, v2 in by_col.get(r, ()):
                pos = (r2, c)
                new = acc.get(pos, Fraction(0)) + v2 * v
                if new:
                    acc[pos] = new
                else:
                    acc.pop(pos, None)
        return not acc

    def block_matrix(self, k: int, key: BlockKey) -> list[list[Fraction]]:
        """Dense d^k block: rows over degree k+1 in `key`, cols degree k."""
        d = self.differential(k)
        src = self.degree(k)
        dst = self.degree(k + 1)
        cols = src.blocks.get(key, [])
        rows = dst.blocks.get(key, [])
        rpos = {r: i for i, r in enumerate(rows)}
        cpos = {c: i for i, c in enumerate(cols)}
        out = [[Fraction(0)] * len(cols) for _ in rows]
        for (r, c), v in d.items():
            if c in cpos:
                out[rpos[r]][cpos[c]] = v
        return out

    def export_triples(self, k: int) -> list[list]:
        """Differential as sorted (block key, row, col, "p/q") triples."""
        d = self.differential(k)
        src = self.degree(k)
        rows = []
        for (r, c), v in sorted(d.items()):
            key = src.keys[c]
            rows.append([list(map(str, key[0])), key[1], r, c, str(v)])
        return rows
