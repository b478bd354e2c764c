"""Construction of the nilpotent subalgebras and their distinguished ideals.

Each infinite family (gl, sl, osp, q) is realized by explicit sparse
matrices inside an ambient gl(M|N); brackets are computed by the sparse
supercommutator and re-expressed in the chosen basis, so no structure
constant is ever transcribed by hand.  Weights are read off mechanically by
bracketing with a fixed basis of the diagonal torus, which makes the
realization, not any table, the authority on signs.

Conventions that the code commits to (validated by the closure, Jacobi and
ideal checks that run on every build):

* gl(m|n), m >= n: rows/columns labelled 1bar..mbar, 1..n; the subalgebra is
  spanned by E(ibar,jbar), E(i,j), E(ibar,j), E(i,jbar) with i < j, exactly
  the four printed families.

* osp(2m+1|2n) and osp(2m|2n) sit inside gl(2m+1|2n) / gl(2m|2n) preserving
  the forms G = [[0,I,0],[I,0,0],[0,0,1]] (symmetric, even block) and
  J = [[0,I],[-I,0]] (skew, odd block).  The odd part is spanned by one root
  vector for each weight e_i - d_k (i < k), d_i - e_j (i < j), -e_l - d_k
  (all l, k) and, in the odd case, -d_t; the even part consists of the root
  vectors e_i - e_j (i < j), -e_i - e_j (i < j), -e_i (odd case only),
  d_k - d_l (k < l), -d_k - d_l (k <= l).  This is the unique orientation of
  the printed families under which the last-index weight predicate spans an
  ideal; with the opposite orientation [x_{e_m - e_i}, x_{-e_j - e_m}] is a
  nonzero bracket landing outside the candidate ideal.

* q(n) sits inside gl(n|n), spanned by Et(i,j) = E(ibar,jbar) + E(i,j) and
  Eb(i,j) = E(i,jbar) + E(ibar,j) for i < j.  Both carry the weight
  e_i - e_j; parity separates them.

* The exceptional algebras are abelian with formally realized bases whose
  weights are transcribed from the appendix tables.

Every algebra also carries a strictly positive grading functional `v` with
v(weight) < 0 on the whole basis; this witnesses nilpotency and bounds the
degrees in which a fixed weight can appear in the superexterior algebra.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import linalg
from .supercore import EVEN, ODD, Parity, Weight

Entry = tuple[int, int]


class SuperMatrix:
    """Sparse matrix in gl(M|N) with rows/cols 0..M+N-1 (first M even)."""

    __slots__ = ("block_shape", "entries")

    def __init__(self, block_shape: tuple[int, int], entries: dict[Entry, Fraction] | None = None):
        self.block_shape = block_shape
        self.entries: dict[Entry, Fraction] = {}
        if entries:
            for pos, val in entries.items():
                if val != 0:
                    self.entries[pos] = Fraction(val)

    @property
    def dim(self) -> int:
        return self.block_shape[0] + self.block_shape[1]

    def is_even_index(self, i: int) -> bool:
        return i < self.block_shape[0]

    def parity(self) -> Parity:
        """Parity of a parity-homogeneous matrix; raises if mixed."""
        parities = {
            (self.is_even_index(r) != self.is_even_index(c)) for (r, c) in self.entries
        }
        if not parities:
            return EVEN
        if len(parities) > 1:
            raise ValueError("matrix is not parity homogeneous")
        return ODD if parities.pop() else EVEN

    def is_zero(self) -> bool:
        return not self.entries

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.block_shape != other.block_shape:
            raise ValueError("block shape mismatch")
        out = dict(self.entries)
        for pos, val in other.entries.items():
            new = out.get(pos, Fraction(0)) + val
            if new:
                out[pos] = new
            else:
                out.pop(pos, None)
        return SuperMatrix(self.block_shape, out)

    def scale(self, c: Fraction) -> "SuperMatrix":
        if c == 0:
            return SuperMatrix(self.block_shape)
        return SuperMatrix(self.block_shape, {p: c * v for p, v in self.entries.items()})

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        return self + other.scale(Fraction(-1))

    def matmul(self, other: "SuperMatrix") -> "SuperMatrix":
        if self.block_shape != other.block_shape:
            raise ValueError("block shape mismatch")
        rows: dict[int, list[tuple[int, Fraction]]] = {}
        for (r, c), v in other.entries.items():
            rows.setdefault(r, []).append((c, v))
        out: dict[Entry, Fraction] = {}
        for (r, c), v in self.entries.items():
            for c2, v2 in rows.get(c, ()):
                pos = (r, c2)
                new = out.get(pos, Fraction(0)) + v * v2
                if new:
                    out[pos] = new
                else:
                    out.pop(pos, None)
        return SuperMatrix(self.block_shape, out)

    def key(self) -> tuple:
        return tuple(sorted((r, c, v) for (r, c), v in self.entries.items()))


def elementary(block_shape: tuple[int, int], r: int, c: int, val=1) -> SuperMatrix:
    return SuperMatrix(block_shape, {(r, c): Fraction(val)})


def _supercomm(x: SuperMatrix, px: Parity, y: SuperMatrix, py: Parity) -> SuperMatrix:
    # [x, y] = xy - (-1)^{|x||y|} yx: odd/odd anticommutes, the rest commute.
    if px and py:
        return x.matmul(y) + y.matmul(x)
    return x.matmul(y) - y.matmul(x)


def supercommutator(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """[x, y] = xy - (-1)^{|x||y|} yx for parity-homogeneous x, y."""
    return _supercomm(x, x.parity(), y, y.parity())


@dataclass(frozen=True)
class BasisVector:
    id: int
    label: str
    parity: Parity
    weight: Weight
    realization: SuperMatrix | None = field(default=None, compare=False, hash=False)


BracketTable = dict[tuple[int, int], dict[int, Fraction]]


class NilpotentAlgebra:
    """Finite weight-graded nilpotent Lie superalgebra with exact brackets.

    The bracket table stores [x_i, x_j] for i <= j only; the other half is
    recovered through super-antisymmetry.  All coefficients are Fractions.
    """

    def __init__(
        self,
        name: str,
        family: str,
        params: tuple[int, ...],
        symbols: tuple[str, ...],
        basis: list[BasisVector],
        bracket_table: BracketTable,
        grading: tuple[Fraction, ...],
    ):
        self.name = name
        self.family = family
        self.params = params
        self.symbols = symbols
        # weight basis tag: symbol-determined so that quotients, the sl
        # alias and rebuilt smaller algebras stay weight-comparable
        self.wtag = ",".join(symbols)
        self.basis = basis
        self.table = {k: dict(v) for k, v in bracket_table.items() if v}
        self.grading = grading
        self.dim = len(basis)
        self.parities = tuple(b.parity for b in basis)
        self.weights = tuple(b.weight for b in basis)

    # -- bracket access -----------------------------------------------------

    def bracket(self, i: int, j: int) -> dict[int, Fraction]:
        """Coefficients of [x_i, x_j] over the basis."""
        if i <= j:
            return self.table.get((i, j), {})
        res = self.table.get((j, i), {})
        if not res:
            return {}
        sign = Fraction(1 if (self.parities[i] and self.parities[j]) else -1)
        return {t: sign * c for t, c in res.items()}

    def bracket_vectors(self, u: dict[int, Fraction], w: dict[int, Fraction]) -> dict[int, Fraction]:
        """Bracket of two coefficient vectors, by bilinearity."""
        out: dict[int, Fraction] = {}
        for i, ci in u.items():
            for j, cj in w.items():
                for t, c in self.bracket(i, j).items():
                    new = out.get(t, Fraction(0)) + ci * cj * c
                    if new:
                        out[t] = new
                    else:
                        out.pop(t, None)
        return out

    @property
    def abelian(self) -> bool:
        return not self.table

    def even_ids(self) -> list[int]:
        return [b.id for b in self.basis if b.parity == EVEN]

    def odd_ids(self) -> list[int]:
        return [b.id for b in self.basis if b.parity == ODD]

    def weight_multiset(self) -> list[tuple[tuple, Parity]]:
        return sorted((b.weight.sort_key(), b.parity) for b in self.basis)

    def grading_value(self, w: Weight) -> Fraction:
        return sum((a * b for a, b in zip(self.grading, w.coeffs)), Fraction(0))

    # -- structural checks ---------------------------------------------------

    def verify(self) -> None:
        """Exhaustive structural checks; raises AssertionError on violation.

        Covers weight/parity additivity of the bracket, vanishing of even
        squares, the super Jacobi identity over all basis triples, and
        strict negativity of the grading functional (nilpotency witness).
        """
        for b in self.basis:
            if self.grading_value(b.weight) >= 0:
                raise AssertionError(f"{self.name}: basis weight {b.label} not graded negative")
        for (i, j), terms in self.table.items():
            p = (self.parities[i] + self.parities[j]) % 2
            w = self.weights[i] + self.weights[j]
            for t, c in terms.items():
                assert c != 0
                if self.parities[t] != p:
                    raise AssertionError(f"{self.name}: bracket ({i},{j}) breaks parity")
                if self.weights[t] != w:
                    raise AssertionError(f"{self.name}: bracket ({i},{j}) breaks weights")
        for i in range(self.dim):
            if self.parities[i] == EVEN and self.table.get((i, i)):
                raise AssertionError(f"{self.name}: even square [x_{i},x_{i}] nonzero")
        for i in range(self.dim):
            pi = self.parities[i]
            for j in range(i, self.dim):
                pj = self.parities[j]
                for k in range(j, self.dim):
                    # [x_i,[x_j,x_k]] = [[x_i,x_j],x_k] + (-1)^{|i||j|}[x_j,[x_i,x_k]]
                    lhs = self.bracket_vectors({i: Fraction(1)}, self.bracket(j, k))
                    rhs = self.bracket_vectors(self.bracket(i, j), {k: Fraction(1)})
                    sign = Fraction(-1 if (pi and pj) else 1)
                    for t, c in self.bracket_vectors({j: Fraction(1)}, self.bracket(i, k)).items():
                        new = rhs.get(t, Fraction(0)) + sign * c
                        if new:
                            rhs[t] = new
                        else:
                            rhs.pop(t, None)
                    if lhs != rhs:
                        raise AssertionError(f"{self.name}: Jacobi fails on triple ({i},{j},{k})")

    # -- serialization -------------------------------------------------------

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "params": list(self.params),
            "symbols": list(self.symbols),
            "abelian": self.abelian,
            "basis": [
                {
                    "id": b.id,
                    "label": b.label,
                    "parity": b.parity,
                    "weight": b.weight.to_json(),
                }
                for b in self.basis
            ],
            "brackets": [
                [i, j, sorted([t, str(c)] for t, c in terms.items())]
                for (i, j), terms in sorted(self.table.items())
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)


@dataclass(frozen=True)
class IdealDesignation:
    member_ids: frozenset[int]

    def sorted_ids(self) -> list[int]:
        return sorted(self.member_ids)


def verify_ideal(alg: NilpotentAlgebra, ideal: IdealDesignation) -> None:
    """Check [n, I] <= I exhaustively; raises AssertionError otherwise."""
    members = ideal.member_ids
    for i in range(alg.dim):
        for j in members:
            for t in alg.bracket(i, j):
                if t not in members:
                    raise AssertionError(
                        f"{alg.name}: ideal not closed, [x_{i}, x_{j}] has component x_{t}"
                    )


def ideal_is_abelian(alg: NilpotentAlgebra, ideal: IdealDesignation) -> bool:
    members = sorted(ideal.member_ids)
    for a, i in enumerate(members):
        for j in members[a:]:
            if alg.bracket(i, j):
                return False
    return True


# -------------------------------------------------------------------------
# Building algebras from matrix realizations
# -------------------------------------------------------------------------


def _extract_weight(tag: str, torus: Sequence[SuperMatrix], x: SuperMatrix, px: Parity) -> Weight:
    """Weight of x under the torus: [h_t, x] must equal c_t * x exactly."""
    coeffs = []
    for h in torus:
        br = _supercomm(h, EVEN, x, px)
        pos, val = next(iter(x.entries.items()))
        c = br.entries.get(pos, Fraction(0)) / val
        if (br - x.scale(c)).entries:
            raise AssertionError("matrix is not a torus weight vector")
        coeffs.append(c)
    return Weight(tag, tuple(coeffs))


def _assemble(
    name: str,
    family: str,
    params: tuple[int, ...],
    symbols: tuple[str, ...],
    torus: list[SuperMatrix],
    raw_basis: list[tuple[str, SuperMatrix]],
    grading: tuple[Fraction, ...],
) -> NilpotentAlgebra:
    """Build an algebra from labelled matrices: weights, then all brackets."""
    wtag = ",".join(symbols)
    basis: list[BasisVector] = []
    for idx, (label, mat) in enumerate(raw_basis):
        p = mat.parity()
        w = _extract_weight(wtag, torus, mat, p)
        basis.append(BasisVector(idx, label, p, w, mat))

    # entry -> candidate basis ids, for expressing products in the basis
    support_index: dict[Entry, list[int]] = {}
    for b in basis:
        for pos in b.realization.entries:
            support_index.setdefault(pos, []).append(b.id)

    def express(mat: SuperMatrix, context: str) -> dict[int, Fraction]:
        if mat.is_zero():
            return {}
        # candidates: basis matrices touching the result's support, closed
        # transitively so partially cancelled combinations are still found
        cand: set[int] = set()
        frontier = set(mat.entries)
        positions: set[Entry] = set()
        while frontier:
            positions |= frontier
            new = {
                i for pos in frontier for i in support_index.get(pos, ()) if i not in cand
            }
            cand |= new
            frontier = {
                pos for i in new for pos in basis[i].realization.entries
            } - positions
        if set(mat.entries) - positions:
            raise AssertionError(f"{name}: {context} leaves the span of the basis")
        cand_list = sorted(cand)
        pos_list = sorted(positions)
        rows = [
            [basis[i].realization.entries.get(pos, Fraction(0)) for i in cand_list]
            for pos in pos_list
        ]
        rhs = [mat.entries.get(pos, Fraction(0)) for pos in pos_list]
        sol = linalg.solve(rows, rhs)
        if sol is None:
            raise AssertionError(f"{name}: {context} leaves the span of the basis")
        return {i: c for i, c in zip(cand_list, sol) if c != 0}

    table: BracketTable = {}
    for i in range(len(basis)):
        xi = basis[i]
        for j in range(i, len(basis)):
            xj = basis[j]
            if i == j and xi.parity == EVEN:
                continue
            br = _supercomm(xi.realization, xi.parity, xj.realization, xj.parity)
            if br.is_zero():
                continue
            table[(i, j)] = express(br, f"[{xi.label}, {xj.label}]")

    alg = NilpotentAlgebra(name, family, params, symbols, basis, table, grading)
    alg.verify()
    return alg


def _weight_ideal(alg: NilpotentAlgebra, symbol_indices: Iterable[int]) -> IdealDesignation:
    """All basis vectors whose weight is nonzero on any of the given symbols."""
    idx = tuple(symbol_indices)
    members = frozenset(
        b.id for b in alg.basis if any(b.weight.coeffs[t] != 0 for t in idx)
    )
    ideal = IdealDesignation(members)
    verify_ideal(alg, ideal)
    return ideal


# -- gl / sl ----------------------------------------------------------------


def _gl_symbols(m: int, n: int) -> tuple[str, ...]:
    return tuple(f"e{i}" for i in range(1, m + 1)) + tuple(f"d{j}" for j in range(1, n + 1))


def _gl_grading(m: int, n: int) -> tuple[Fraction, ...]:
    return tuple(Fraction(i) for i in range(1, m + 1)) + tuple(
        Fraction(2 * j + 1, 2) for j in range(1, n + 1)
    )


def build_gl(m: int, n: int) -> tuple[NilpotentAlgebra, IdealDesignation]:
    """Nilpotent subalgebra of gl(m|n), m >= n >= 1, and its ideal.

    The ideal is the span of the last-column root vectors: weights with a
    nonzero e_m coefficient for m > n, plus those with a nonzero d_n
    coefficient when m = n.
    """
    if not (m >= n >= 1):
        raise ValueError("gl(m|n) requires m >= n >= 1")
    shape = (m, n)
    bar = lambda i: i - 1          # 1-based barred index -> row
    unb = lambda j: m + j - 1      # 1-based unbarred index -> row
    torus = [elementary(shape, bar(t), bar(t)) for t in range(1, m + 1)]
    torus += [elementary(shape, unb(t), unb(t)) for t in range(1, n + 1)]
    raw: list[tuple[str, SuperMatrix]] = []
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            raw.append((f"E({i}b,{j}b)", elementary(shape, bar(i), bar(j))))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            raw.append((f"E({i},{j})", elementary(shape, unb(i), unb(j))))
    for i in range(1, m + 1):
        for j in range(i + 1, n + 1):
            raw.append((f"E({i}b,{j})", elementary(shape, bar(i), unb(j))))
    for i in range(1, n + 1):
        for j in range(i + 1, m + 1):
            raw.append((f"E({i},{j}b)", elementary(shape, unb(i), bar(j))))
    alg = _assemble(
        f"gl({m}|{n})", "gl", (m, n), _gl_symbols(m, n), torus, raw, _gl_grading(m, n)
    )
    if m > n:
        ideal = _weight_ideal(alg, [m - 1])
    else:
        ideal = _weight_ideal(alg, [m - 1, m + n - 1])
    return alg, ideal


def build_sl(m: int, n: int) -> tuple[NilpotentAlgebra, IdealDesignation]:
    """sl(m|n) shares its nilpotent part with gl(m|n); alias for tables."""
    alg, ideal = build_gl(m, n)
    alg2 = NilpotentAlgebra(
        f"sl({m}|{n})", "sl", (m, n), alg.symbols, alg.basis, alg.table, alg.grading
    )
    return alg2, ideal


# -- q(n) --------------------------------------------------------------------


def build_q(n: int) -> tuple[NilpotentAlgebra, IdealDesignation]:
    """Nilpotent subalgebra of q(n) inside gl(n|n), n >= 2.

    Even Et(i,j) and odd Eb(i,j) share the weight e_i - e_j (i < j); the
    ideal is spanned by all Et(i,n), Eb(i,n).
    """
    if n < 2:
        raise ValueError("q(n) requires n >= 2")
    shape = (n, n)
    bar = lambda i: i - 1
    unb = lambda j: n + j - 1
    torus = [
        elementary(shape, bar(t), bar(t)) + elementary(shape, unb(t), unb(t))
        for t in range(1, n + 1)
    ]
    raw: list[tuple[str, SuperMatrix]] = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            raw.append(
                (f"Et({i},{j})", elementary(shape, bar(i), bar(j)) + elementary(shape, unb(i), unb(j)))
            )
            raw.append(
                (f"Eb({i},{j})", elementary(shape, unb(i), bar(j)) + elementary(shape, bar(i), unb(j)))
            )
    symbols = tuple(f"e{i}" for i in range(1, n + 1))
    grading = tuple(Fraction(i) for i in range(1, n + 1))
    alg = _assemble(f"q({n})", "q", (n,), symbols, torus, raw, grading)
    ideal = _weight_ideal(alg, [n - 1])
    return alg, ideal


# -- osp ----------------------------------------------------------------------


def _osp_raw(m: int, n: int, odd_case: bool):
    """Shared matrix data for osp(2m+1|2n) (odd_case) and osp(2m|2n)."""
    M = 2 * m + 1 if odd_case else 2 * m
    shape = (M, 2 * n)
    so_p = lambda i: i - 1            # +i slot of the so block
    so_m = lambda i: m + i - 1        # -i slot
    corner = 2 * m                    # 0 slot, odd case only
    sp_p = lambda k: M + k - 1        # +k slot of the sp block
    sp_m = lambda k: M + n + k - 1    # -k slot

    def E(r, c, v=1):
        return elementary(shape, r, c, v)

    # torus: e_i dual to so_m(i)-so_p(i), d_k dual to sp_m(k)-sp_p(k)
    torus = [E(so_m(i), so_m(i)) - E(so_p(i), so_p(i)) for i in range(1, m + 1)]
    torus += [E(sp_m(k), sp_m(k)) - E(sp_p(k), sp_p(k)) for k in range(1, n + 1)]

    raw: list[tuple[str, SuperMatrix]] = []
    # even so-part: e_i - e_j and -e_i - e_j for i < j, -e_i in the odd case
    for i in range(1, m + 1):
        for j in range(i + 1, m + 1):
            raw.append((f"S({i},{j})", E(so_p(j), so_p(i)) - E(so_m(i), so_m(j))))
            raw.append((f"S(-{i},-{j})", E(so_p(i), so_m(j)) - E(so_p(j), so_m(i))))
    if odd_case:
        for i in range(1, m + 1):
            raw.append((f"S(-{i})", E(so_p(i), corner) - E(corner, so_m(i))))
    # even sp-part: d_k - d_l (k < l) and -d_k - d_l (k <= l)
    for k in range(1, n + 1):
        for l in range(k + 1, n + 1):
            raw.append((f"P({k},{l})", E(sp_p(l), sp_p(k)) - E(sp_m(k), sp_m(l))))
            raw.append((f"P(-{k},-{l})", E(sp_p(k), sp_m(l)) + E(sp_p(l), sp_m(k))))
    for k in range(1, n + 1):
        raw.append((f"P(-{k},-{k})", E(sp_p(k), sp_m(k))))
    # odd part
    for i in range(1, min(m, n - 1) + 1):
        for k in range(i + 1, n + 1):
            raw.append((f"A({i},{k})", E(sp_p(k), so_p(i)) - E(so_m(i), sp_m(k))))
    for i in range(1, n + 1):
        for j in range(i + 1, m + 1):
            raw.append((f"B({i},{j})", E(sp_m(i), so_m(j)) + E(so_p(j), sp_p(i))))
    for l in range(1, m + 1):
        for k in range(1, n + 1):
            raw.append((f"C({l},{k})", E(so_p(l), sp_m(k)) - E(sp_p(k), so_m(l))))
    if odd_case:
        for t in range(1, n + 1):
            raw.append((f"D({t})", E(corner, sp_m(t)) - E(sp_p(t), corner)))
    return torus, raw


def _osp_grading(m: int, n: int) -> tuple[Fraction, ...]:
    return _gl_grading(m, n)


def build_osp_odd(
    m: int, n: int, ideal_reading: str = "auto"
) -> tuple[NilpotentAlgebra, IdealDesignation]:
    """Nilpotent subalgebra of osp(2m+1|2n), m >= n >= 1.

    `ideal_reading` selects the garbled last-index predicate: "eps_only"
    (weights touching e_m) is closed and abelian for every m >= n and is the
    "auto" default; "eps_or_delta" (weights touching e_m or d_n) is closed
    only for m <= n+1 and even there is not abelian, because
    [x_{e_i - d_n}, x_{-e_i - d_n}] lands on the long root -2d_n.  Every
    choice is re-verified by the closure check and rejected loudly if it
    fails.
    """
    if not (m >= n >= 1):
        raise ValueError("osp(2m+1|2n) requires m >= n >= 1")
    torus, raw = _osp_raw(m, n, odd_case=True)
    alg = _assemble(
        f"osp({2 * m + 1}|{2 * n})",
        "osp_odd",
        (m, n),
        _gl_symbols(m, n),
        torus,
        raw,
        _osp_grading(m, n),
    )
    ideal = _osp_ideal(alg, m, n, ideal_reading)
    return alg, ideal


def build_osp_even(
    m: int, n: int, ideal_reading: str = "auto"
) -> tuple[NilpotentAlgebra, IdealDesignation]:
    """Nilpotent subalgebra of osp(2m|2n), m, n >= 1.

    The ideal is the e_m weight predicate when m >= n; for m < n that set is
    not closed (the odd vector of weight e_m - d_k obstructs), so the d_n
    predicate is used instead, recursing in the symplectic direction.
    """
    if m < 1 or n < 1:
        raise ValueError("osp(2m|2n) requires m, n >= 1")
    torus, raw = _osp_raw(m, n, odd_case=False)
    alg = _assemble(
        f"osp({2 * m}|{2 * n})",
        "osp_even",
        (m, n),
        _gl_symbols(m, n),
        torus,
        raw,
        _osp_grading(m, n),
    )
    ideal = _osp_ideal(alg, m, n, "auto" if ideal_reading == "auto" else ideal_reading)
    return alg, ideal


def _osp_ideal(alg: NilpotentAlgebra, m: int, n: int, reading: str) -> IdealDesignation:
    if reading == "auto":
        # e_m predicate: abelian ideal whenever m >= n.  For m < n it is not
        # even closed (x_{e_m - d_k} obstructs), so recurse on d_n instead;
        # that ideal is closed but picks up the long root -2d_n, hence is
        # not abelian.
        reading = "eps_only" if m >= n else "delta_only"
    if reading == "eps_only":
        return _weight_ideal(alg, [m - 1])
    if reading == "delta_only":
        return _weight_ideal(alg, [m + n - 1])
    if reading == "eps_or_delta":
        return _weight_ideal(alg, [m - 1, m + n - 1])
    raise ValueError(f"unknown ideal reading {reading!r}")


# -- exceptional families ------------------------------------------------------


_EXCEPTIONAL = {
    "D21a": {
        "name": "D(2,1;a)",
        "symbols": ("e1", "e2", "e3"),
        "even": [("-2e1", (-2, 0, 0)), ("-2e2", (0, -2, 0)), ("-2e3", (0, 0, -2))],
        "odd": [
            ("(-e,-e,-e)", (-1, -1, -1)),
            ("(-e,-e,+e)", (-1, -1, 1)),
            ("(+e,-e,-e)", (1, -1, -1)),
        ],
        "grading": (1, 10, 1),
    },
    "G3": {
        "name": "G(3)",
        "symbols": ("w1", "w2", "e"),
        "even": [("-mu1", (0, 0, -2)), ("-alpha", (-2, 1, 0)), ("-beta", (3, -2, 0))],
        "odd": [
            ("(-w1+w2,-e)", (-1, 1, -1)),
            ("(2w1-w2,-e)", (2, -1, -1)),
            ("(0,-e)", (0, 0, -1)),
            ("(w1-w2,-e)", (1, -1, -1)),
            ("(-2w1+w2,-e)", (-2, 1, -1)),
            ("(-w1,-e)", (-1, 0, -1)),
        ],
        "grading": (10, 16, 50),
    },
    "F4": {
        "name": "F(4)",
        "symbols": ("w1", "w2", "w3", "e"),
        "even": [
            ("-mu1", (0, 0, 0, -2)),
            ("-nu1", (-2, 1, 0, 0)),
            ("-nu2", (1, -2, 2, 0)),
            ("-nu3", (0, 1, -2, 0)),
        ],
        "odd": [
            ("(w2-w3,-e)", (0, 1, -1, -1)),
            ("(w1-w2+w3,-e)", (1, -1, 1, -1)),
            ("(w1-w3,-e)", (1, 0, -1, -1)),
            ("(-w2+w3,-e)", (0, -1, 1, -1)),
            ("(-w1+w2-w3,-e)", (-1, 1, -1, -1)),
            ("(-w1+w3,-e)", (-1, 0, 1, -1)),
            ("(-w3,-e)", (0, 0, -1, -1)),
        ],
        "grading": (20, 30, 16, 50),
    },
}


def build_exceptional(name: str) -> NilpotentAlgebra:
    """Abelian nilpotent subalgebra of D(2,1;a), G(3) or F(4).

    Bases are formal (no matrix realization); weights come straight from the
    appendix tables.  All brackets vanish, so the scaling parameter of
    D(2,1;a) never enters.
    """
    if name not in _EXCEPTIONAL:
        raise ValueError(f"unknown exceptional family {name!r}; expected D21a, G3 or F4")
    data = _EXCEPTIONAL[name]
    wtag = ",".join(data["symbols"])
    basis: list[BasisVector] = []
    for label, coeffs in data["even"]:
        basis.append(BasisVector(len(basis), label, EVEN, Weight.make(wtag, coeffs)))
    for label, coeffs in data["odd"]:
        basis.append(BasisVector(len(basis), label, ODD, Weight.make(wtag, coeffs)))
    alg = NilpotentAlgebra(
        data["name"], "exc", (name,), data["symbols"], basis, {},
        tuple(Fraction(g) for g in data["grading"]),
    )
    alg.verify()
    return alg


# -- derived subalgebra and quotients ------------------------------------------


def derived_subalgebra(alg: NilpotentAlgebra) -> dict:
    """Exact basis of [n, n], grouped by (weight, parity).

    Returns {"dim": int, "blocks": {(weight_key, parity): dim},
    "vectors": [coefficient rows]} with a deterministic ordering.
    """
    by_block: dict[tuple[tuple, Parity], list[list[Fraction]]] = {}
    for (i, j), terms in sorted(alg.table.items()):
        w = (alg.weights[i] + alg.weights[j]).sort_key()
        p = (alg.parities[i] + alg.parities[j]) % 2
        row = [Fraction(0)] * alg.dim
        for t, c in terms.items():
            row[t] = c
        by_block.setdefault((w, p), []).append(row)
    blocks: dict[tuple[tuple, Parity], int] = {}
    vectors: list[list[Fraction]] = []
    for key in sorted(by_block):
        basis_rows = linalg.row_space_basis(by_block[key])
        if basis_rows:
            blocks[key] = len(basis_rows)
            vectors.extend(basis_rows)
    return {"dim": len(vectors), "blocks": blocks, "vectors": vectors}


def quotient_algebra(alg: NilpotentAlgebra, ideal: IdealDesignation) -> NilpotentAlgebra:
    """Quotient n/I on the complementary basis vectors.

    Brackets are the parent brackets with ideal components projected away;
    the result is re-verified (Jacobi holds because I is an ideal).
    """
    verify_ideal(alg, ideal)
    keep = [b.id for b in alg.basis if b.id not in ideal.member_ids]
    remap = {old: new for new, old in enumerate(keep)}
    basis = [
        BasisVector(remap[b.id], b.label, b.parity, b.weight, b.realization)
        for b in alg.basis
        if b.id in remap
    ]
    table: BracketTable = {}
    for (i, j), terms in alg.table.items():
        if i in remap and j in remap:
            reduced = {remap[t]: c for t, c in terms.items() if t in remap}
            if reduced:
                table[(remap[i], remap[j])] = reduced
    quo = NilpotentAlgebra(
        f"{alg.name}/I", alg.family + "_quotient", alg.params, alg.symbols, basis, table, alg.grading
    )
    quo.verify()
    return quo


# -- family registry -----------------------------------------------------------


def build_family(family: str, params: tuple, ideal_reading: str = "auto"):
    """Uniform entry point: returns (algebra, ideal-or-None)."""
    if family == "gl":
        return build_gl(*params)
    if family == "sl":
        return build_sl(*params)
    if family == "q":
        return build_q(*params)
    if family == "osp_odd":
        return build_osp_odd(*params, ideal_reading=ideal_reading)
    if family == "osp_even":
        return build_osp_even(*params, ideal_reading=ideal_reading)
    if family == "exc":
        return build_exceptional(params[0]), None
    raise ValueError(f"unknown family {family!r}")
