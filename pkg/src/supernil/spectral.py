"""Hochschild-Serre E_2 pages, collapse verification, recursive H^2.

For an ideal I of n the E_2 page is E_2^{i,j} = H^i(n/I, H^j(I, C)).  When
I is abelian (every default ideal with m >= n is), H^j(I, C) is just
Lambda_s^j(I*) with the induced quotient action.  The d_n recursion ideals
used for osp(2m|2n) with m < n contain the long root -2d_n and are not
abelian; for those H^j(I, C) is computed honestly as a subquotient of the
Koszul complex of I, with the quotient action transported to chosen
representatives (the ideal itself acts trivially on cohomology, which the
construction asserts).

Collapse is verified, never assumed: both sides of

    dim H^k(n, C) = sum_{i+j=k} dim E_2^{i,j}

are computed through independent code paths, per weight and in total.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .cohomology import (
    ROUTE_SPECTRAL,
    CohomologyResult,
    cohomology,
    h0_fixed_points,
)
from .koszul import CochainComplex, GModule, dual_module, lambda_s_module, trivial_module
from .realize import (
    IdealDesignation,
    NilpotentAlgebra,
    build_family,
    ideal_is_abelian,
    quotient_algebra,
    verify_ideal,
)
from .supercore import Weight


def ideal_subalgebra(parent: NilpotentAlgebra, ideal: IdealDesignation) -> NilpotentAlgebra:
    """The ideal as an algebra in its own right (brackets restricted)."""
    verify_ideal(parent, ideal)
    members = ideal.sorted_ids()
    remap = {mid: a for a, mid in enumerate(members)}
    basis = [
        parent.basis[mid] for mid in members
    ]
    from .realize import BasisVector

    basis = [
        BasisVector(remap[b.id], b.label, b.parity, b.weight, b.realization) for b in basis
    ]
    table = {}
    for a, mi in enumerate(members):
        for mj in members[a:]:
            terms = parent.bracket(mi, mj)
            if terms:
                table[(remap[mi], remap[mj])] = {remap[t]: c for t, c in terms.items()}
    sub = NilpotentAlgebra(
        f"{parent.name}|I", parent.family + "_ideal", parent.params,
        parent.symbols, basis, table, parent.grading,
    )
    sub.verify()
    return sub


def _cochain_action(
    parent: NilpotentAlgebra,
    ideal: IdealDesignation,
    words,
    parities,
    dual_sign: int = -1,
) -> list[dict[int, dict[int, Fraction]]]:
    """Lie-derivative action of parent basis vectors on C^j(I, C).

    Defined on the evaluation side, matching the differential's
    conventions: (x.f)(w_0 ^ .. ^ w_{j-1}) =
    dual_sign * sum_t (-1)^{|x|(|f| + |w_0|+..+|w_{t-1}|)} f(.. [x, w_t] ..).
    Returns per parent id a map col -> {row: coeff} on the word index.

    This action commutes with d_I exactly (asserted by the caller), which
    is what makes the Hochschild-Serre coefficient modules well defined.
    """
    from .koszul import normalize_word

    members = ideal.sorted_ids()
    local = {mid: a for a, mid in enumerate(members)}
    index = {w: i for i, w in enumerate(words)}
    out = []
    for pid in range(parent.dim):
        px = parent.parities[pid]
        act: dict[int, dict[int, Fraction]] = {}
        for ridx, w in enumerate(words):
            pre = 0
            for t, x in enumerate(w):
                for u, c in parent.bracket(pid, members[x]).items():
                    s, canon = normalize_word(
                        parities, w[:t] + (local[u],) + w[t + 1 :]
                    )
                    if not s:
                        continue
                    cidx = index[canon]
                    f_par = sum(parities[y] for y in canon) % 2
                    sgn = Fraction(
                        dual_sign * (-1 if (px and (f_par + pre) % 2) else 1) * s
                    )
                    col = act.setdefault(cidx, {})
                    new = col.get(ridx, Fraction(0)) + sgn * c
                    if new:
                        col[ridx] = new
                    else:
                        col.pop(ridx, None)
                pre ^= parities[x]
        out.append({c: col for c, col in act.items() if col})
    return out


def hj_ideal_module(
    parent: NilpotentAlgebra,
    ideal: IdealDesignation,
    quotient: NilpotentAlgebra,
    j: int,
    dual_sign: int = -1,
) -> GModule:
    """H^j(I, C) as a module over n/I, for a possibly non-abelian ideal I.

    Representatives are chosen per (weight, parity) block of the Koszul
    complex of I; the parent acts through the coadjoint derivation action,
    which commutes with d_I, and the ideal must act trivially on the
    subquotient (asserted) for the quotient action to be well defined.
    """
    if j == 0:
        return trivial_module(quotient)
    sub = ideal_subalgebra(parent, ideal)
    cx = CochainComplex(sub, trivial_module(sub))
    deg = cx.degree(j)

    # Lie-derivative action of every parent basis vector on C^j(I)
    lam = _cochain_action(parent, ideal, deg.words, sub.parities, dual_sign)
    _assert_commutes_with_d(parent, ideal, cx, j, dual_sign)

    d_out = cx.differential(j)
    d_in = cx.differential(j - 1) if j > 0 else {}

    members = ideal.sorted_ids()
    keep = [b.id for b in parent.basis if b.id not in ideal.member_ids]

    rep_rows: list[list[Fraction]] = []
    rep_keys: list[tuple] = []
    rep_weights: list[Weight] = []
    rep_blocks: list[tuple[int, int]] = []  # (block id, position) bookkeeping
    block_data = []
    for key in sorted(deg.blocks):
        cols = deg.blocks[key]
        cpos = {c: i for i, c in enumerate(cols)}
        # kernel of d^j restricted to the block
        rows_out: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in d_out.items():
            if c in cpos:
                rows_out.setdefault(r, {})[cpos[c]] = v
        mat_out = [
            [row.get(i, Fraction(0)) for i in range(len(cols))]
            for _, row in sorted(rows_out.items())
        ]
        kernel = linalg.nullspace(mat_out, len(cols))
        # image of d^{j-1} inside the block
        img_rows = []
        cols_in: dict[int, dict[int, Fraction]] = {}
        for (r, c), v in d_in.items():
            if r in cpos:
                cols_in.setdefault(c, {})[cpos[r]] = v
        for _, col in sorted(cols_in.items()):
            img_rows.append([col.get(i, Fraction(0)) for i in range(len(cols))])
        img_basis = linalg.row_space_basis(img_rows)
        # representatives: kernel vectors independent modulo the image
        reps = []
        stack = [list(r) for r in img_basis]
        rk = len(img_basis)
        for vec in kernel:
            test = stack + [vec]
            if linalg.rank(test) > rk:
                stack.append(vec)
                rk += 1
                reps.append(vec)
        block_data.append((key, cols, cpos, img_basis, reps))

    # assemble global data
    index_of: dict[tuple[tuple, int], int] = {}
    parities = []
    weights = []
    for key, cols, cpos, img_basis, reps in block_data:
        for a, vec in enumerate(reps):
            index_of[(key, a)] = len(parities)
            parities.append(key[1])
            weights.append(deg.weights[key])
    dimH = len(parities)

    def reduce_in_block(key, cols, cpos, img_basis, reps, vec_cells):
        """Express a kernel vector (dense over cols) in reps modulo image."""
        cols_mat = [list(r) for r in img_basis] + [list(r) for r in reps]
        if not cols_mat:
            if any(vec_cells):
                raise AssertionError("vector outside H-class span")
            return []
        sol = linalg.solve([list(col) for col in zip(*cols_mat)], vec_cells)
        if sol is None:
            raise AssertionError("action leaves the cohomology subquotient")
        return sol[len(img_basis):]

    action = []
    for qid, pid in enumerate(keep):
        mat: dict[tuple[int, int], Fraction] = {}
        act = lam[pid]
        for bidx, (key, cols, cpos, img_basis, reps) in enumerate(block_data):
            for a, vec in enumerate(reps):
                # vec is in C^j coords restricted to block cols
                out_cells: dict[int, Fraction] = {}
                for i, c in enumerate(cols):
                    if vec[i]:
                        for r, v in act.get(c, {}).items():
                            new = out_cells.get(r, Fraction(0)) + v * vec[i]
                            if new:
                                out_cells[r] = new
                            else:
                                out_cells.pop(r, None)
                if not out_cells:
                    continue
                # the image must stay in the same block
                tkey = None
                for r in out_cells:
                    if tkey is None:
                        tkey = deg.keys[r]
                    elif deg.keys[r] != tkey:
                        raise AssertionError("coadjoint action crosses blocks")
                tblock = next(
                    (bd for bd in block_data if bd[0] == tkey), None
                )
                if tblock is None:
                    raise AssertionError("action leaves computed blocks")
                tk, tcols, tcpos, timg, treps = tblock
                dense = [Fraction(0)] * len(tcols)
                for r, v in out_cells.items():
                    dense[tcpos[r]] = v
                coeffs = reduce_in_block(tk, tcols, tcpos, timg, treps, dense)
                col_idx = index_of[(key, a)]
                for b, cval in enumerate(coeffs):
                    if cval:
                        mat[(index_of[(tk, b)], col_idx)] = cval
        action.append(mat)

    # ideal members must act trivially on the subquotient
    for mid in members:
        act = lam[mid]
        for key, cols, cpos, img_basis, reps in block_data:
            for vec in reps:
                out_cells: dict[int, Fraction] = {}
                for i, c in enumerate(cols):
                    if vec[i]:
                        for r, v in act.get(c, {}).items():
                            new = out_cells.get(r, Fraction(0)) + v * vec[i]
                            if new:
                                out_cells[r] = new
                            else:
                                out_cells.pop(r, None)
                if not out_cells:
                    continue
                tkey = deg.keys[next(iter(out_cells))]
                tblock = next((bd for bd in block_data if bd[0] == tkey), None)
                tk, tcols, tcpos, timg, treps = tblock
                dense = [Fraction(0)] * len(tcols)
                for r, v in out_cells.items():
                    dense[tcpos[r]] = v
                coeffs = reduce_in_block(tk, tcols, tcpos, timg, treps, dense)
                if any(coeffs):
                    raise AssertionError("ideal does not act trivially on H^j(I)")

    mod = GModule(
        quotient, f"H^{j}(I)", tuple(parities), tuple(weights), action
    )
    mod.verify()
    return mod


def _assert_commutes_with_d(
    parent: NilpotentAlgebra,
    ideal: IdealDesignation,
    cx: CochainComplex,
    j: int,
    dual_sign: int,
) -> None:
    """Exact check that the Lie derivative commutes with d_I into degree j+1."""
    sub = cx.alg
    src = cx.degree(j)
    dst = cx.degree(j + 1)
    lam_s = _cochain_action(parent, ideal, src.words, sub.parities, dual_sign)
    lam_t = _cochain_action(parent, ideal, dst.words, sub.parities, dual_sign)
    d = cx.differential(j)
    dc: dict[int, dict[int, Fraction]] = {}
    for (r, c), v in d.items():
        dc.setdefault(c, {})[r] = v
    for pid in range(parent.dim):
        for c in range(len(src.words)):
            acc: dict[int, Fraction] = {}
            for r1, v1 in lam_s[pid].get(c, {}).items():
                for r2, v2 in dc.get(r1, {}).items():
                    acc[r2] = acc.get(r2, Fraction(0)) + v2 * v1
            for r1, v1 in dc.get(c, {}).items():
                for r2, v2 in lam_t[pid].get(r1, {}).items():
                    acc[r2] = acc.get(r2, Fraction(0)) - v2 * v1
            if any(acc.values()):
                raise AssertionError(
                    f"Lie derivative of x_{pid} does not commute with d_I"
                )


@dataclass
class E2Page:
    algebra: str
    K: int
    abelian_ideal: bool
    terms: dict[tuple[int, int], CohomologyResult] = field(default_factory=dict)

    def term_total(self, i: int, j: int) -> int:
        t = self.terms.get((i, j))
        return t.total if t else 0

    def to_json(self) -> dict:
        return {
            "algebra": self.algebra,
            "K": self.K,
            "abelian_ideal": self.abelian_ideal,
            "terms": {
                f"{i},{j}": res.to_json() for (i, j), res in sorted(self.terms.items())
            },
        }


def e2_page(
    alg: NilpotentAlgebra,
    ideal: IdealDesignation,
    K: int,
    dual_sign: int = -1,
    workers: int = 1,
) -> E2Page:
    """All E_2^{i,j} with i + j <= K for the Hochschild-Serre sequence."""
    verify_ideal(alg, ideal)
    quo = quotient_algebra(alg, ideal)
    abelian = ideal_is_abelian(alg, ideal)
    page = E2Page(alg.name, K, abelian)
    modules: dict[int, GModule] = {}
    for j in range(K + 1):
        if abelian:
            if j == 0:
                modules[j] = trivial_module(quo)
            else:
                dm = dual_module(alg, ideal, quo, dual_sign)
                modules[j] = lambda_s_module(quo, dm, j)
        else:
            modules[j] = hj_ideal_module(alg, ideal, quo, j, dual_sign)
    for j in range(K + 1):
        cx = CochainComplex(quo, modules[j])
        for i in range(K + 1 - j):
            page.terms[(i, j)] = cohomology(quo, modules[j], i, workers=workers, complex_cache=cx)
    return page


def collapse_check(
    alg: NilpotentAlgebra,
    ideal: IdealDesignation,
    K: int,
    dual_sign: int = -1,
    workers: int = 1,
) -> dict:
    """Compare dim H^k(n, C) with sum_{i+j=k} dim E_2^{i,j}, k <= K."""
    page = e2_page(alg, ideal, K, dual_sign, workers)
    cx = CochainComplex(alg, trivial_module(alg))
    rows = []
    all_match = True
    for k in range(K + 1):
        direct = cohomology(alg, None, k, workers=workers, complex_cache=cx)
        merged: dict[tuple, list[int]] = {}
        for i in range(k + 1):
            term = page.terms[(i, k - i)]
            for key, eo in term.blocks.items():
                slot = merged.setdefault(key, [0, 0])
                slot[0] += eo[0]
                slot[1] += eo[1]
        merged = {k2: v for k2, v in merged.items() if v != [0, 0]}
        match = merged == direct.blocks
        all_match = all_match and match
        rows.append(
            {
                "k": k,
                "direct_total": direct.total,
                "e2_total": sum(e + o for e, o in merged.values()),
                "terms": {f"{i},{k - i}": page.term_total(i, k - i) for i in range(k + 1)},
                "match_total": direct.total == sum(e + o for e, o in merged.values()),
                "match_blocks": match,
            }
        )
    return {
        "algebra": alg.name,
        "K": K,
        "abelian_ideal": page.abelian_ideal,
        "rows": rows,
        "all_match": all_match,
    }


# -- recursive H^2 ----------------------------------------------------------------


def _embed_key(key: tuple, src_symbols, dst_symbols) -> tuple:
    idx = [dst_symbols.index(s) for s in src_symbols]
    out = [Fraction(0)] * len(dst_symbols)
    for c, t in zip(key, idx):
        out[t] = c
    return tuple(out)


def _embedded_multiset(alg: NilpotentAlgebra, symbols) -> list:
    return sorted(
        (_embed_key(b.weight.sort_key(), alg.symbols, symbols), b.parity)
        for b in alg.basis
    )


def _recursion_step(family: str, params: tuple) -> tuple | None:
    """Smaller parameters after quotienting, or None at a base case."""
    if family == "q":
        (n,) = params
        return None if n == 2 else (n - 1,)
    m, n = params
    if family in ("gl", "sl"):
        if (m, n) in ((1, 1), (2, 2)):
            return None
        return (m - 1, n) if m > n else (m - 1, n - 1)
    if family == "osp_even":
        if m == 1 or m < n:
            return None
        return (m - 1, n)
    if family == "osp_odd":
        if m == n:
            return None
        return (m - 1, n)
    raise ValueError(f"no recursion for family {family!r}")


def h2_recursive(
    family: str,
    params: tuple,
    dual_sign: int = -1,
    workers: int = 1,
) -> CohomologyResult:
    """H^2(n, C) by the collapse decomposition, recursing through n/I.

    Each step contributes H^0(n/I, Lambda_s^2(I*)) + H^1(n/I, I*); the
    recursion bottoms out in a direct Koszul computation.  The quotient is
    identified with the freshly rebuilt smaller algebra by comparing
    (weight, parity) multisets, never by index surgery; a mismatch is a
    hard error.
    """
    alg, ideal = build_family(family, params)
    step = _recursion_step(family, params)
    if step is None:
        res = cohomology(alg, None, 2, workers=workers)
        out = CohomologyResult(alg.name, 2, ROUTE_SPECTRAL, "C",
                           family=alg.family, params=alg.params)
        out.blocks = dict(res.blocks)
        out.weight_of = dict(res.weight_of)
        return out
    if not ideal_is_abelian(alg, ideal):
        raise AssertionError(f"{alg.name}: recursion ideal is not abelian")
    quo = quotient_algebra(alg, ideal)
    smaller, _ = build_family(family, step)
    if sorted(quo.weight_multiset()) != _embedded_multiset(smaller, quo.symbols):
        raise AssertionError(
            f"{alg.name}: quotient does not match rebuilt {smaller.name}"
        )
    dm = dual_module(alg, ideal, quo, dual_sign)
    lam2 = lambda_s_module(quo, dm, 2)
    h0 = h0_fixed_points(quo, lam2)
    h1 = cohomology(quo, dm, 1, workers=workers)
    rest = h2_recursive(family, step, dual_sign, workers)
    out = CohomologyResult(alg.name, 2, ROUTE_SPECTRAL, "C",
                           family=alg.family, params=alg.params)
    for part in (h0, h1):
        for key, eo in part.blocks.items():
            w = part.weight_of[key]
            if eo[0]:
                out.add(w, 0, eo[0])
            if eo[1]:
                out.add(w, 1, eo[1])
    for key, eo in rest.blocks.items():
        w = Weight(alg.wtag, _embed_key(key, smaller.symbols, alg.symbols))
        if eo[0]:
            out.add(w, 0, eo[0])
        if eo[1]:
            out.add(w, 1, eo[1])
    return out
