"""Cohomology H^k(n, M) = ker d^k / im d^{k-1} by exact blockwise ranks.

The Koszul route is authoritative: per (weight, parity) block,

    dim H^k = dim C^k - rank d^k - rank d^{k-1}

with every rank computed by fraction-free elimination over the rationals.
Two independent degree-specific routes (dual of the abelianization for H^1
with trivial coefficients, and the superderivation quotient for H^1 with
any coefficients) plus the fixed-point route for H^0 serve as cross-checks;
any disagreement is a hard failure, never auto-resolved.

Weight convention for reported classes: a cochain on the monomial xi with
values in the module vector w sits in the block wt(w) - wt(xi), so with
trivial coefficients H^k classes carry the *negatives* of the monomial
weights, matching the appendix tables which list e.g. e_{i+1} - e_i.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from multiprocessing import Pool

from . import linalg
from .koszul import BlockKey, CochainComplex, GModule, normalize_word, trivial_module
from .realize import NilpotentAlgebra, derived_subalgebra
from .supercore import EVEN, ODD, Weight

ROUTE_KOSZUL = "koszul"
ROUTE_QUOTIENT = "quotient_dual"
ROUTE_SUPERDER = "superderivation"
ROUTE_FIXED = "fixed_points"
ROUTE_SPECTRAL = "spectral_sum"


@dataclass
class CohomologyResult:
    algebra: str
    degree: int
    route: str
    coefficients: str
    blocks: dict[tuple, list[int]] = field(default_factory=dict)
    # blocks: weight sort key -> [even dim, odd dim]
    weight_of: dict[tuple, Weight] = field(default_factory=dict)
    family: str = ""
    params: tuple = ()

    def add(self, weight: Weight, parity: int, dim: int) -> None:
        if dim == 0:
            return
        key = weight.sort_key()
        self.blocks.setdefault(key, [0, 0])[parity] += dim
        self.weight_of.setdefault(key, weight)

    @property
    def total(self) -> int:
        return sum(e + o for e, o in self.blocks.values())

    def total_even(self) -> int:
        return sum(e for e, _ in self.blocks.values())

    def total_odd(self) -> int:
        return sum(o for _, o in self.blocks.values())

    def block_items(self) -> list[tuple[tuple, list[int]]]:
        return sorted(self.blocks.items())

    def to_json(self, symbols=None) -> dict:
        out = {
            "algebra": self.algebra,
            "family": self.family,
            "params": list(self.params),
            "degree": self.degree,
            "route": self.route,
            "coefficients": self.coefficients,
            "total": self.total,
            "blocks": [
                {
                    "weight": [str(c) for c in key],
                    "even": eo[0],
                    "odd": eo[1],
                }
                for key, eo in self.block_items()
            ],
        }
        if symbols is not None:
            for row, (key, _) in zip(out["blocks"], self.block_items()):
                row["label"] = self.weight_of[key].describe(symbols)
        return out

    def dumps(self, symbols=None) -> str:
        return json.dumps(self.to_json(symbols), sort_keys=True, indent=2)

    def same_blocks(self, other: "CohomologyResult") -> bool:
        return self.blocks == other.blocks


def _rank_of(rows) -> int:
    if not rows or not rows[0]:
        return 0
    return linalg.rank(rows)


def _parallel_ranks(tasks: list, workers: int) -> list[int]:
    if workers <= 1 or len(tasks) <= 1:
        return [_rank_of(t) for t in tasks]
    with Pool(processes=workers) as pool:
        return pool.map(_rank_of, tasks)


def cohomology(
    alg: NilpotentAlgebra,
    module: GModule | None,
    k: int,
    workers: int = 1,
    complex_cache: CochainComplex | None = None,
) -> CohomologyResult:
    """H^k(n, M) with full (weight, parity) decomposition, Koszul route."""
    if module is None:
        module = trivial_module(alg)
    cx = complex_cache if complex_cache is not None else CochainComplex(alg, module)
    src = cx.degree(k)
    cx.differential(k)
    if k > 0:
        cx.differential(k - 1)
    res = CohomologyResult(alg.name, k, ROUTE_KOSZUL, module.name,
                           family=alg.family, params=alg.params)
    keys = sorted(src.blocks)
    tasks = []
    for key in keys:
        tasks.append(cx.block_matrix(k, key))
        tasks.append(cx.block_matrix(k - 1, key) if k > 0 else [])
    ranks = _parallel_ranks(tasks, workers)
    for pos, key in enumerate(keys):
        dim_block = len(src.blocks[key])
        r_out = ranks[2 * pos]
        r_in = ranks[2 * pos + 1]
        h = dim_block - r_out - r_in
        if h < 0:
            raise AssertionError(f"negative block dimension at {key}")
        res.add(src.weights[key], key[1], h)
    return res


def h0_fixed_points(alg: NilpotentAlgebra, module: GModule) -> CohomologyResult:
    """H^0 as the joint kernel of all action matrices, blocked by weight."""
    res = CohomologyResult(alg.name, 0, ROUTE_FIXED, module.name,
                           family=alg.family, params=alg.params)
    blocks: dict[BlockKey, list[int]] = {}
    weights: dict[BlockKey, Weight] = {}
    for c in range(module.dim):
        key = (module.weights[c].sort_key(), module.parities[c])
        blocks.setdefault(key, []).append(c)
        weights.setdefault(key, module.weights[c])
    for key in sorted(blocks):
        cols = blocks[key]
        cpos = {c: i for i, c in enumerate(cols)}
        rows: dict[tuple[int, int], dict[int, Fraction]] = {}
        for i in range(alg.dim):
            for (r, c), v in module.action[i].items():
                if c in cpos:
                    rows.setdefault((i, r), {})[cpos[c]] = v
        mat = [
            [row.get(j, Fraction(0)) for j in range(len(cols))]
            for _, row in sorted(rows.items())
        ]
        h = len(cols) - _rank_of(mat)
        res.add(weights[key], key[1], h)
    return res


def h1_via_quotient(alg: NilpotentAlgebra) -> CohomologyResult:
    """H^1(n, C) as (n/[n,n])* with negated weights."""
    derived = derived_subalgebra(alg)
    res = CohomologyResult(alg.name, 1, ROUTE_QUOTIENT, "C",
                           family=alg.family, params=alg.params)
    blocks: dict[BlockKey, int] = {}
    weights: dict[BlockKey, Weight] = {}
    for b in alg.basis:
        key = (b.weight.sort_key(), b.parity)
        blocks[key] = blocks.get(key, 0) + 1
        weights.setdefault(key, b.weight)
    for key in sorted(blocks):
        h = blocks[key] - derived["blocks"].get(key, 0)
        if h:
            res.add(-weights[key], key[1], h)
    return res


def h1_via_superderivations(alg: NilpotentAlgebra, module: GModule) -> CohomologyResult:
    """H^1(n, M) = SupDer/InnSupDer, solved as a blocked linear system.

    A homogeneous phi of parity p satisfies, for all basis pairs,
    phi([x,y]) = (-1)^{|x| p} x.phi(y) - (-1)^{|y|(|x|+p)} y.phi(x); inner
    superderivations are spanned by x -> (-1)^{|x||a|} x.a for a in M.
    Block key: weight(phi(x)) - weight(x), parity |x| + |phi(x)|.
    """
    res = CohomologyResult(alg.name, 1, ROUTE_SUPERDER, module.name,
                           family=alg.family, params=alg.params)
    # unknown (i, w): coefficient of m_w in phi(x_i)
    unknowns: dict[BlockKey, list[tuple[int, int]]] = {}
    uw: dict[BlockKey, Weight] = {}
    for i in range(alg.dim):
        for w in range(module.dim):
            wt = module.weights[w] - alg.weights[i]
            key = (wt.sort_key(), (alg.parities[i] + module.parities[w]) % 2)
            unknowns.setdefault(key, []).append((i, w))
            uw.setdefault(key, wt)
    for key in sorted(unknowns):
        cols = unknowns[key]
        cpos = {u: a for a, u in enumerate(cols)}
        p = key[1]
        eqs: list[list[Fraction]] = []
        for i in range(alg.dim):
            pi = alg.parities[i]
            for j in range(i, alg.dim):
                pj = alg.parities[j]
                if i == j and pi == EVEN:
                    continue
                rows: dict[int, dict[int, Fraction]] = {}

                def put(r, u, val):
                    if u in cpos and val:
                        row = rows.setdefault(r, {})
                        row[cpos[u]] = row.get(cpos[u], Fraction(0)) + val

                for t, c in alg.bracket(i, j).items():
                    for w in range(module.dim):
                        put(w, (t, w), c)
                s1 = Fraction(-1 if (pi * p) % 2 else 1)
                for (r, c), v in module.action[i].items():
                    put(r, (j, c), -s1 * v)
                s2 = Fraction(-1 if (pj * (pi + p)) % 2 else 1)
                for (r, c), v in module.action[j].items():
                    put(r, (i, c), s2 * v)
                for r in sorted(rows):
                    eqs.append(
                        [rows[r].get(a, Fraction(0)) for a in range(len(cols))]
                    )
        sd = len(cols) - _rank_of(eqs)
        inner_rows: list[list[Fraction]] = []
        for a in range(module.dim):
            vec = [Fraction(0)] * len(cols)
            hit = False
            for i in range(alg.dim):
                sgn = Fraction(-1 if (alg.parities[i] * module.parities[a]) % 2 else 1)
                for (r, c), v in module.action[i].items():
                    if c == a and (i, r) in cpos:
                        vec[cpos[(i, r)]] += sgn * v
                        hit = True
            if hit:
                inner_rows.append(vec)
        inner = _rank_of(inner_rows)
        h = sd - inner
        if h:
            res.add(uw[key], p, h)
    return res


# -- central extensions -----------------------------------------------------------


class CentralExtension:
    """n (+) C with bracket [(x,s),(y,t)] = ([x,y], h(x,y)).

    h is an even 2-cochain given by its coefficients on the canonical
    degree-2 monomial basis; the extension satisfies the super Jacobi
    identity iff h is a cocycle.
    """

    def __init__(self, alg: NilpotentAlgebra, h: dict[tuple[int, int], Fraction]):
        self.alg = alg
        for (i, j), val in h.items():
            if val and (alg.parities[i] + alg.parities[j]) % 2 != EVEN:
                raise ValueError("extension cochain must be even")
        self.h = {k: Fraction(v) for k, v in h.items() if v}

    def pair(self, i: int, j: int) -> Fraction:
        s, canon = normalize_word(self.alg.parities, (i, j))
        if not s:
            return Fraction(0)
        return Fraction(s) * self.h.get(canon, Fraction(0))

    def bracket(self, u: dict[int, Fraction], w: dict[int, Fraction]):
        """Extension bracket of coefficient vectors: (algebra part, center)."""
        vec = self.alg.bracket_vectors(u, w)
        z = Fraction(0)
        for i, ci in u.items():
            for j, cj in w.items():
                z += ci * cj * self.pair(i, j)
        return vec, z

    def jacobi_failures(self) -> list[tuple[int, int, int]]:
        """All basis triples violating the super Jacobi identity."""
        alg = self.alg
        bad = []
        for i in range(alg.dim):
            pi = alg.parities[i]
            ei = {i: Fraction(1)}
            for j in range(i, alg.dim):
                pj = alg.parities[j]
                ej = {j: Fraction(1)}
                for k in range(j, alg.dim):
                    ek = {k: Fraction(1)}
                    # the center is central, so only the algebra part of an
                    # inner bracket feeds the outer one
                    inner_vec, _ = self.bracket(ej, ek)
                    v1, z1 = self.bracket(ei, inner_vec)
                    vec_ij, _ = self.bracket(ei, ej)
                    v2, z2 = self.bracket(vec_ij, ek)
                    vec_ik, _ = self.bracket(ei, ek)
                    v3, z3 = self.bracket(ej, vec_ik)
                    sgn = Fraction(-1 if (pi and pj) else 1)
                    lhs_vec, lhs_z = v1, z1
                    rhs_vec = dict(v2)
                    for t, c in v3.items():
                        new = rhs_vec.get(t, Fraction(0)) + sgn * c
                        if new:
                            rhs_vec[t] = new
                        else:
                            rhs_vec.pop(t, None)
                    rhs_z = z2 + sgn * z3
                    if lhs_vec != rhs_vec or lhs_z != rhs_z:
                        bad.append((i, j, k))
        return bad


def central_extension(alg: NilpotentAlgebra, h: dict[tuple[int, int], Fraction]) -> CentralExtension:
    return CentralExtension(alg, h)


def cocycle_defect(alg: NilpotentAlgebra, h: dict[tuple[int, int], Fraction]) -> dict:
    """d^2 h as a sparse vector on the degree-3 cochain basis."""
    cx = CochainComplex(alg, trivial_module(alg))
    d2 = cx.differential(2)
    idx2 = cx.degree(2).word_index
    vec: dict[int, Fraction] = {}
    for word, val in h.items():
        vec[idx2[word]] = Fraction(val)
    out: dict[int, Fraction] = {}
    for (r, c), v in d2.items():
        if c in vec:
            new = out.get(r, Fraction(0)) + v * vec[c]
            if new:
                out[r] = new
            else:
                out.pop(r, None)
    return out


def is_cocycle(alg: NilpotentAlgebra, h: dict[tuple[int, int], Fraction]) -> bool:
    return not cocycle_defect(alg, h)


def cocycle_space(alg: NilpotentAlgebra):
    """Bases of (even 2-cocycles, even non-cocycle complement) as cochains."""
    cx = CochainComplex(alg, trivial_module(alg))
    words = cx.degree(2).words
    even_cols = [
        i
        for i, w in enumerate(words)
        if (alg.parities[w[0]] + alg.parities[w[1]]) % 2 == EVEN
    ]
    d2 = cx.differential(2)
    nrows = cx.dim(3)
    mat = [[Fraction(0)] * len(even_cols) for _ in range(nrows)]
    cpos = {c: a for a, c in enumerate(even_cols)}
    for (r, c), v in d2.items():
        if c in cpos:
            mat[r][cpos[c]] = v
    kernel = linalg.nullspace(mat, len(even_cols))
    cocycles = [
        {words[even_cols[a]]: v for a, v in enumerate(vec) if v} for vec in kernel
    ]
    # pivot-column unit vectors span a complement of the kernel
    _, piv_cols = linalg.rref(mat)
    non_cocycles = [{words[even_cols[c]]: Fraction(1)} for c in piv_cols]
    return cocycles, non_cocycles


# -- Euler characteristic ----------------------------------------------------------


def euler_characteristic_check(alg: NilpotentAlgebra, weight: Weight) -> dict:
    """Per-weight Euler identity sum_k (-1)^k dim C^k = sum_k (-1)^k dim H^k.

    The grading functional bounds the degrees in which the weight can occur,
    so both sums are finite.  Trivial coefficients.
    """
    cx = CochainComplex(alg, trivial_module(alg))
    vals = [alg.grading_value(b.weight) for b in alg.basis]
    if not vals:
        return {"weight": weight.to_json(), "lhs": 1, "rhs": 1, "equal": True}
    vmax = max(vals)  # closest to zero, still negative
    vmin = min(vals)
    target = alg.grading_value(weight)
    kmax = 0 if target == 0 else int(target / vmax) + 1
    key_par = weight.sort_key()
    lhs = 0
    rhs = 0
    for k in range(0, kmax + 1):
        src = cx.degree(k)
        dims = {
            p: len(src.blocks.get((key_par, p), ())) for p in (EVEN, ODD)
        }
        ck = dims[EVEN] + dims[ODD]
        hk = 0
        if ck or k == 0:
            res = cohomology(alg, None, k, complex_cache=cx)
            hk = sum(
                eo[0] + eo[1] for key, eo in res.blocks.items() if key == key_par
            )
        sign = -1 if k % 2 else 1
        lhs += sign * ck
        rhs += sign * hk
    return {"weight": weight.to_json(), "lhs": lhs, "rhs": rhs, "equal": lhs == rhs}
