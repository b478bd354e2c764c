"""Command-line front end.

Subcommands:

* compute          -- H^k(n, M) with full weight decomposition
* verify-tables    -- run the published-table expectations, three-state
* spectral         -- Hochschild-Serre collapse report
* extension-check  -- central-extension Jacobi <=> cocycle scan
* dump-algebra     -- serialized basis/bracket data

Exit codes: 0 success, 1 unexplained table mismatch, 2 bad input,
3 internal invariant violation.  Output is deterministic: repeated runs
and different --workers counts produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import os
import random
import sys
from fractions import Fraction

from . import __version__, tables
from .cohomology import (
    central_extension,
    cocycle_space,
    cohomology,
    h1_via_quotient,
    h1_via_superderivations,
    is_cocycle,
)
from .koszul import dual_module, lambda_s_module, trivial_module
from .realize import build_family, quotient_algebra
from .spectral import collapse_check, h2_recursive

CACHE_ENV = "SUPERNIL_CACHE_DIR"
MONOMIAL_GUARD = 10 ** 6


def _family_params(args) -> tuple[str, tuple]:
    fam = args.family
    if fam == "exc":
        if not args.name:
            raise SystemExit(2)
        return fam, (args.name,)
    if fam == "q":
        if args.n is None:
            _fail_input("q(n) needs --n")
        return fam, (args.n,)
    if args.m is None or args.n is None:
        _fail_input(f"{fam} needs --m and --n")
    return fam, (args.m, args.n)


def _fail_input(msg: str):
    print(f"error: {msg}", file=sys.stderr)
    raise SystemExit(2)


def _build(args):
    fam, params = _family_params(args)
    try:
        return build_family(fam, params, ideal_reading=getattr(args, "ideal_reading", "auto"))
    except ValueError as exc:
        _fail_input(str(exc))


def _estimate_cochains(alg, k: int, mod_dim: int) -> int:
    d0 = len(alg.even_ids())
    d1 = len(alg.odd_ids())
    total = 0
    for i in range(k + 1):
        j = k - i
        total += math.comb(d0, i) * (math.comb(d1 + j - 1, j) if j else 1)
    return total * mod_dim


def _cache_dir(args) -> str | None:
    return getattr(args, "cache_dir", None) or os.environ.get(CACHE_ENV)


def _cache_lookup(cache_dir, key):
    if not cache_dir:
        return None
    path = os.path.join(cache_dir, key + ".json")
    if os.path.exists(path):
        with open(path) as fh:
            return json.load(fh)
    return None


def _cache_store(cache_dir, key, payload) -> None:
    if not cache_dir:
        return
    os.makedirs(cache_dir, exist_ok=True)
    path = os.path.join(cache_dir, key + ".json")
    with open(path, "w") as fh:
        json.dump(payload, fh, sort_keys=True)


def _cache_key(**parts) -> str:
    blob = json.dumps({"version": __version__, **parts}, sort_keys=True)
    return hashlib.sha256(blob.encode()).hexdigest()[:24]


def _emit(args, payload: dict) -> None:
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        _render_text(payload)


def _render_text(payload: dict) -> None:
    if "blocks" in payload:
        print(f"{payload['algebra']}  degree {payload['degree']}  "
              f"coefficients {payload['coefficients']}  route {payload['route']}")
        print(f"total {payload['total']}")
        for row in payload["blocks"]:
            label = row.get("label", " ".join(row["weight"]))
            print(f"  {label:<24} even {row['even']}  odd {row['odd']}")
    else:
        print(json.dumps(payload, sort_keys=True, indent=2))


def cmd_compute(args) -> int:
    alg, ideal = _build(args)
    mod_name = args.coefficients
    if mod_name == "trivial":
        target, module = alg, trivial_module(alg)
    else:
        if ideal is None:
            _fail_input("this family has no distinguished ideal")
        target = quotient_algebra(alg, ideal)
        dm = dual_module(alg, ideal, target, args.dual_sign)
        module = dm if mod_name == "ideal-dual" else lambda_s_module(target, dm, args.j)
    est = _estimate_cochains(target, args.degree + 1, module.dim)
    if est > MONOMIAL_GUARD and not args.force:
        _fail_input(
            f"estimated cochain count {est} exceeds {MONOMIAL_GUARD}; pass --force"
        )
    cache_dir = _cache_dir(args)
    key = _cache_key(
        cmd="compute", family=alg.family, params=list(alg.params),
        degree=args.degree, coefficients=mod_name, j=args.j,
        dual_sign=args.dual_sign, ideal_reading=args.ideal_reading,
        routes=args.routes,
    )
    payload = _cache_lookup(cache_dir, key)
    if payload is None:
        res = cohomology(target, module, args.degree, workers=args.workers)
        payload = res.to_json(target.symbols)
        if args.routes and args.degree == 1:
            routes = {"koszul": res.total}
            if mod_name == "trivial":
                routes["quotient_dual"] = h1_via_quotient(target).total
            routes["superderivation"] = h1_via_superderivations(target, module).total
            payload["routes"] = routes
        _cache_store(cache_dir, key, payload)
    _emit(args, payload)
    return 0


def cmd_verify_tables(args) -> int:
    rows = tables.default_expectations(
        gl_h1_max=args.gl_h1_max,
        q_h1_max=args.q_h1_max,
        osp_max=args.osp_max,
        gl_h2_max=args.gl_h2_max,
        glmn_h2_max=args.glmn_h2_max,
        q_h2_max=args.q_h2_max,
        osp_h2_max=args.osp_h2_max,
        osp_base_h2_max=args.osp_base_h2_max,
    )
    report, code = tables.run_expectations(rows, workers=args.workers)
    if args.format == "json":
        print(json.dumps({"rows": report, "exit": code}, sort_keys=True, indent=2))
    else:
        print(tables.render_report(report))
    return code


def cmd_spectral(args) -> int:
    alg, ideal = _build(args)
    if ideal is None:
        _fail_input("spectral needs a family with a distinguished ideal")
    rep = collapse_check(alg, ideal, args.K, args.dual_sign, args.workers)
    if args.recursive and args.family in ("gl", "sl", "q", "osp_even", "osp_odd"):
        fam, params = _family_params(args)
        rec = h2_recursive(fam, params, args.dual_sign, args.workers)
        direct = cohomology(alg, None, 2, workers=args.workers)
        rep["h2_recursive"] = rec.total
        rep["h2_direct"] = direct.total
        rep["h2_match"] = rec.blocks == direct.blocks
    if args.format == "json":
        print(json.dumps(rep, sort_keys=True, indent=2))
    else:
        print(f"{rep['algebra']}  K={rep['K']}  abelian ideal: {rep['abelian_ideal']}")
        for row in rep["rows"]:
            terms = " + ".join(f"{v}" for v in row["terms"].values())
            flag = "ok" if row["match_blocks"] else "MISMATCH"
            print(f"  k={row['k']}: H^k = {row['direct_total']}  E2 sum = "
                  f"{row['e2_total']} ({terms})  {flag}")
        if "h2_recursive" in rep:
            print(f"  recursive H^2 = {rep['h2_recursive']}  direct = "
                  f"{rep['h2_direct']}  match = {rep['h2_match']}")
    return 0 if rep["all_match"] else 3


def cmd_extension_check(args) -> int:
    alg, _ = _build(args)
    if alg.dim > 8 and not args.force:
        _fail_input("extension scan is exponential; pass --force beyond dim 8")
    cocycles, non_cocycles = cocycle_space(alg)
    rng = random.Random(args.seed)
    failures = []
    checked = {"cocycles": 0, "non_cocycles": 0, "random": 0}
    for h in cocycles:
        checked["cocycles"] += 1
        if central_extension(alg, h).jacobi_failures():
            failures.append(("cocycle gave non-Jacobi extension", h))
    for h in non_cocycles:
        checked["non_cocycles"] += 1
        if not central_extension(alg, h).jacobi_failures():
            failures.append(("non-cocycle gave Jacobi extension", h))
    from .koszul import monomial_words

    even_words = [
        w
        for w in monomial_words(alg.parities, 2)
        if (alg.parities[w[0]] + alg.parities[w[1]]) % 2 == 0
    ]
    for _ in range(args.samples):
        checked["random"] += 1
        h = {}
        for w in even_words:
            if rng.random() < 0.5:
                h[w] = Fraction(rng.randint(-3, 3))
        ext_fails = bool(central_extension(alg, h).jacobi_failures())
        if ext_fails == is_cocycle(alg, h):
            failures.append(("random cochain inconsistent", h))
    payload = {
        "algebra": alg.name,
        "checked": checked,
        "consistent": not failures,
        "failures": len(failures),
    }
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        print(
            f"{alg.name}: {checked['cocycles']} cocycles, "
            f"{checked['non_cocycles']} non-cocycles, {checked['random']} random "
            f"cochains; Jacobi <=> cocycle: {payload['consistent']}"
        )
    return 0 if payload["consistent"] else 3


def cmd_dump_algebra(args) -> int:
    alg, ideal = _build(args)
    payload = alg.to_json()
    if ideal is not None:
        payload["ideal"] = ideal.sorted_ids()
    print(json.dumps(payload, sort_keys=True, indent=2))
    return 0


def _add_family_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--family", required=True,
                   choices=["gl", "sl", "q", "osp_even", "osp_odd", "exc"])
    p.add_argument("--m", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--name", choices=["D21a", "G3", "F4"])
    p.add_argument("--ideal-reading", default="auto",
                   choices=["auto", "eps_only", "delta_only", "eps_or_delta"],
                   help="reading of the garbled osp ideal description")
    p.add_argument("--dual-sign", type=int, default=-1, choices=[-1, 1],
                   help="global sign of the contragredient action")


def _add_common_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", default="text", choices=["text", "json"])
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--force", action="store_true")


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="supernil",
        description="Exact cohomology of BBW-parabolic nilpotent subalgebras",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="compute H^k(n, M)")
    _add_family_flags(p)
    _add_common_flags(p)
    p.add_argument("--degree", type=int, required=True)
    p.add_argument("--coefficients", default="trivial",
                   choices=["trivial", "ideal-dual", "lambda-s-j"])
    p.add_argument("--j", type=int, default=2, help="j for lambda-s-j coefficients")
    p.add_argument("--routes", action="store_true",
                   help="also report the independent H^1 routes")
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("verify-tables", help="check published dimension tables")
    _add_common_flags(p)
    p.add_argument("--gl-h1-max", type=int, default=6)
    p.add_argument("--q-h1-max", type=int, default=6)
    p.add_argument("--osp-max", type=int, default=4)
    p.add_argument("--gl-h2-max", type=int, default=5)
    p.add_argument("--glmn-h2-max", type=int, default=4)
    p.add_argument("--q-h2-max", type=int, default=4)
    p.add_argument("--osp-h2-max", type=int, default=4)
    p.add_argument("--osp-base-h2-max", type=int, default=4)
    p.set_defaults(func=cmd_verify_tables)

    p = sub.add_parser("spectral", help="Hochschild-Serre collapse report")
    _add_family_flags(p)
    _add_common_flags(p)
    p.add_argument("--K", type=int, default=2)
    p.add_argument("--recursive", action="store_true",
                   help="also compare recursive vs direct H^2")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("extension-check", help="Jacobi <=> cocycle scan")
    _add_family_flags(p)
    _add_common_flags(p)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_extension_check)

    p = sub.add_parser("dump-algebra", help="serialize basis and brackets")
    _add_family_flags(p)
    _add_common_flags(p)
    p.set_defaults(func=cmd_dump_algebra)

    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AssertionError as exc:
        print(f"internal invariant violation: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
