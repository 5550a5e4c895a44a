"""Batch front-end: verification suites, class evaluation, product experiments.

All commands emit a deterministic JSON report on stdout (elapsed time
goes to stderr so that identical flags and seed give byte-identical
reports) and use a single seeded generator.  Exit codes: 0 pass,
1 property failure, 2 usage, 3 invalid representation, 4 resampling
exhaustion.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from math import comb

from .complexes import boundary, product_chain, product_complex, surface_complex
from .configs import (
    GenericityError,
    boundary_symbol_sum,
    homological_core_check,
    is_generic_tuple,
    u_symbol,
    uplus_symbol,
)
from .exactmath import Matrix, QQ, QuadraticField
from .flatbundles import (
    RelatorError,
    Section,
    Selector,
    TagError,
    bundle_from_surface_rep,
    evaluate_class,
    joint_scalar_sets,
    product_bundle,
    random_generic_section,
)
from .groupcoh import (
    cocycle_identity_residual,
    evaluate_bar,
    surface_cycle_from_rep,
    witt_cocycle,
)
from .oracle import OracleError, rotation_euler
from .reps import load_rep
from .witt import WittElement

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_BAD_REP = 3
EXIT_RESAMPLING = 4


def _parse_field(text: str):
    if text == "Q":
        return QQ
    if text.startswith("quad:"):
        return QuadraticField(int(text.split(":", 1)[1]))
    raise argparse.ArgumentTypeError(f"field must be Q or quad:D, got {text!r}")


def _emit(report: dict, csv: bool, t0: float) -> None:
    if csv:
        for key, value in _flatten(report):
            sys.stdout.write(f"{key},{value}\n")
    else:
        json.dump(report, sys.stdout, indent=1, default=str)
        sys.stdout.write("\n")
    sys.stderr.write(f"elapsed: {time.time() - t0:.3f}s\n")


def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}{k}." if prefix else f"{k}.")
    elif isinstance(obj, (list, tuple)):
        yield prefix[:-1], json.dumps(obj, default=str)
    else:
        yield prefix[:-1], obj


def _random_rational(rng, bound=99) -> Fraction:
    num = 0
    while num == 0:
        num = rng.randint(-bound, bound)
    return Fraction(num, rng.randint(1, bound))


def _random_sl2(rng, bound=9) -> Matrix:
    while True:
        a, b, c = (rng.randint(-bound, bound) for _ in range(3))
        if a and (1 + b * c) % a == 0:
            d = (1 + b * c) // a
            if abs(d) <= bound:
                return Matrix([[a, b], [c, d]])


def _random_generic_tuple(rng, field, n, count, bound=9):
    while True:
        vecs = []
        for _ in range(count):
            if isinstance(field, QuadraticField):
                vec = tuple(
                    field.from_pair(rng.randint(-bound, bound), rng.randint(-bound, bound))
                    for _ in range(n)
                )
            else:
                vec = tuple(rng.randint(-bound, bound) for _ in range(n))
            vecs.append(vec)
        try:
            if is_generic_tuple(vecs, n):
                return vecs
        except ValueError:
            continue


# ---------------------------------------------------------------------------
# verify suites
# ---------------------------------------------------------------------------


def _suite_witt_relations(args, rng):
    failures = []
    for i in range(args.samples):
        a = _random_rational(rng)
        b = _random_rational(rng)
        if a + b == 0:
            continue
        w = (
            WittElement.symbol(a)
            + WittElement.symbol(b)
            - WittElement.symbol(a + b)
            - WittElement.symbol(a * b * (a + b))
        )
        if not w.is_zero():
            failures.append({"sample": i, "a": str(a), "b": str(b)})
        lam = _random_rational(rng)
        if not (WittElement.symbol(lam) + WittElement.symbol(-lam)).is_zero():
            failures.append({"sample": i, "lambda": str(lam)})
    return failures


def _engineered_coincidence_quadruple(rng, u):
    while True:
        g0 = _random_sl2(rng)
        lam = Fraction(rng.randint(1, 5))
        stab = Matrix([[lam, rng.randint(-5, 5)], [0, 1 / lam]])
        quad = [g0, g0 @ stab, _random_sl2(rng), _random_sl2(rng)]
        pts = [g.apply(u) for g in quad]
        from .exactmath import determinant

        coincident = [
            (i, j)
            for i in range(4)
            for j in range(i + 1, 4)
            if determinant([pts[i], pts[j]]) == 0
        ]
        if coincident == [(0, 1)]:
            return quad


def _suite_witt_cocycle(args, rng):
    failures = []
    u = (Fraction(1), Fraction(0))
    for i in range(args.samples):
        quad = [_random_sl2(rng) for _ in range(4)]
        if not cocycle_identity_residual(quad, u).is_zero():
            failures.append({"sample": i, "kind": "random"})
    for i in range(max(1, args.samples // 5)):
        quad = _engineered_coincidence_quadruple(rng, u)
        if not cocycle_identity_residual(quad, u).is_zero():
            failures.append({"sample": i, "kind": "coincident"})
    return failures


def _suite_euler_boundary(args, rng):
    failures = []
    n = args.n
    modes = ["P", "P+"] if n % 2 == 0 else ["P+"]
    if n == 2:
        modes.append("witt")
    for i in range(args.samples):
        tup = _random_generic_tuple(rng, args.field, n, n + 2)
        for mode in modes:
            if mode == "witt" and isinstance(args.field, QuadraticField):
                continue
            value = boundary_symbol_sum(tup, mode)
            zero = (
                value == 0
                if mode == "P"
                else value.is_zero()
            )
            if not zero:
                failures.append({"sample": i, "mode": mode})
    return failures


def _suite_alternation(args, rng):
    failures = []
    n = args.n
    for i in range(args.samples):
        tup = _random_generic_tuple(rng, args.field, n, n + 1)
        k = rng.randint(0, n - 1)
        swapped = list(tup)
        swapped[k], swapped[k + 1] = swapped[k + 1], swapped[k]
        if n % 2 == 0:
            if u_symbol(swapped).coefficient != -u_symbol(tup).coefficient:
                failures.append({"sample": i, "kind": "u", "swap": k})
        before, after = uplus_symbol(tup), uplus_symbol(swapped)
        if (after + before).coefficients != (0,) * (n // 2 + 1):
            failures.append({"sample": i, "kind": "uplus", "swap": k})
    return failures


def _load_bundle(path: str):
    rep = load_rep(path)
    if rep.inexact:
        raise TagError("representation has decimal entries; exact pipeline refused")
    sc, z = surface_complex(rep.genus)
    bundle = bundle_from_surface_rep(sc, rep.matrices, rep.tag, rep.field)
    return rep, sc, z, bundle


def _suite_smillie(args, rng):
    if not args.rep:
        raise UsageError("suite smillie needs --rep")
    rep, sc, z, bundle = _load_bundle(args.rep)
    n = bundle.n
    failures = []
    seed = rng.randint(0, 10**6)
    s = random_generic_section(bundle, seed=seed)
    values = {
        k: evaluate_class(bundle, s, Selector("euk", k), z) for k in range(n // 2 + 1)
    }
    factors = {}
    for k in range(1, n // 2 + 1):
        expected = (-1) ** k * comb(n + 1, k) * values[0]
        factors[f"eu{k}"] = (-1) ** k * comb(n + 1, k)
        if values[k] != expected:
            failures.append({"k": k, "value": values[k], "expected": expected})
    return failures, {"values": {f"eu{k}": v for k, v in values.items()}, "factors": factors}


def _suite_comparison(args, rng):
    if not args.rep:
        raise UsageError("suite comparison needs --rep")
    rep, sc, z, bundle = _load_bundle(args.rep)
    n = bundle.n
    failures = []
    seed = rng.randint(0, 10**6)
    s = random_generic_section(bundle, seed=seed)
    eu0 = evaluate_class(bundle, s, Selector("euk", 0), z)
    info = {"eu0": eu0}
    if n % 2 == 0:
        eu = evaluate_class(bundle, s, Selector("eu"), z)
        info["eu"] = eu
        if eu != 2**n * eu0:
            failures.append({"check": "eu=2^n*eu0", "eu": eu, "eu0": eu0})
    euplus_value = evaluate_class(bundle, s, Selector("euplus"), z)
    info["euplus"] = euplus_value.to_json()
    if not homological_core_check(euplus_value):
        failures.append({"check": "homological-core", "euplus": euplus_value.to_json()})
    relation = sum(
        (n - 2 * k + 1) * c for k, c in enumerate(euplus_value.coefficients)
    )
    if relation != 0:
        failures.append({"check": "linear-relation", "value": relation})
    if bundle.tag == "SL" and n == 2 and bundle.field == QQ:
        w = evaluate_class(bundle, s, Selector("witt"), z)
        info["witt"] = w.to_json()
        info["witt_signature"] = w.signature()
        if w.signature() != 4 * eu0:
            failures.append({"check": "witt-signature", "signature": w.signature()})
        bar = evaluate_bar(witt_cocycle, surface_cycle_from_rep(rep.genus, rep.matrices), (1, 0))
        if not (bar == w):
            failures.append({"check": "bar-vs-bundle-witt"})
    if args.oracle:
        val = rotation_euler(rep.float_matrices() if not rep.inexact else rep.raw_float)
        info["oracle"] = val
        if val != eu0:
            failures.append({"check": "oracle", "oracle": val, "eu0": eu0})
    return failures, info


class UsageError(Exception):
    pass


SUITES = {
    "witt-relations": _suite_witt_relations,
    "witt-cocycle": _suite_witt_cocycle,
    "euler-boundary": _suite_euler_boundary,
    "alternation": _suite_alternation,
    "smillie": _suite_smillie,
    "comparison": _suite_comparison,
}


def cmd_verify(args) -> int:
    t0 = time.time()
    rng = random.Random(args.seed)
    result = SUITES[args.suite](args, rng)
    failures, extra = result if isinstance(result, tuple) else (result, {})
    report = {
        "suite": args.suite,
        "samples": args.samples,
        "seed": args.seed,
        "n": args.n,
        "field": args.field.name,
        "failures": failures,
        **extra,
    }
    _emit(report, args.csv, t0)
    return EXIT_OK if not failures else EXIT_FAIL


def cmd_eval(args) -> int:
    t0 = time.time()
    selector = Selector.parse(args.selector)
    rep, sc, z, bundle = _load_bundle(args.rep)
    if selector.kind == "witt" and (bundle.n != 2 or bundle.field != QQ):
        raise UsageError("witt selector needs a rank-2 bundle over Q")
    s = random_generic_section(bundle, seed=args.seed)
    value, per_simplex = evaluate_class(bundle, s, selector, z, detail=True)
    report = {
        "rep": args.rep,
        "selector": str(selector),
        "seed": args.seed,
        "section": s.to_json(),
        "per_simplex": {str(k): v for k, v in sorted(per_simplex.items())},
    }
    if selector.kind == "witt":
        report["value"] = value.to_json()
        report["text"] = value.to_text()
        report["invariants"] = value.invariants()
    elif selector.kind == "euplus":
        report["value"] = value.to_json()
        report["core"] = homological_core_check(value)
    else:
        report["value"] = value
    if args.oracle:
        mats = rep.raw_float if rep.inexact else rep.float_matrices()
        oracle_value = rotation_euler(mats)
        report["oracle"] = oracle_value
        if selector.kind == "euk" and selector.k == 0:
            report["agree"] = oracle_value == value
    _emit(report, args.csv, t0)
    return EXIT_OK


def cmd_product(args) -> int:
    t0 = time.time()
    rng = random.Random(args.seed)
    repA, scA, zA, bundleA = _load_bundle(args.repA)
    repB, scB, zB, bundleB = _load_bundle(args.repB)
    if repA.field != repB.field:
        raise UsageError("product needs representations over the same field")
    sA = random_generic_section(bundleA, seed=rng.randint(0, 10**6), mode="strong")
    attempts = 0
    disjoint = False
    while attempts < 10 and not disjoint:
        attempts += 1
        sB = random_generic_section(
            bundleB, seed=rng.randint(0, 10**6), mode="strong"
        )
        setA, setB, disjoint = joint_scalar_sets(bundleA, sA, bundleB, sB)
    if not disjoint:
        sys.stderr.write("could not reach disjoint scalar sets\n")
        return EXIT_RESAMPLING
    px = product_complex(scA, scB)
    bundleP = product_bundle(px, bundleA, bundleB)
    zz = product_chain(px, zA, zB)
    section = Section(
        {
            v: tuple(sA.values[0]) + tuple(sB.values[0])
            for v in range(px.num_vertices)
        }
    )
    euA = evaluate_class(bundleA, sA, Selector("euk", 0), zA)
    euB = evaluate_class(bundleB, sB, Selector("euk", 0), zB)
    lhs = evaluate_class(bundleP, section, Selector("euk", 0), zz)
    cup = _cup_product_check(px, bundleA, sA, bundleB, sB, zz)
    report = {
        "repA": args.repA,
        "repB": args.repB,
        "seed": args.seed,
        "resample_attempts": attempts,
        "scalars_disjoint": disjoint,
        "top_simplices": zz.support_size(),
        "euler_A": euA,
        "euler_B": euB,
        "euler_product": lhs,
        "cross_product_check": lhs == euA * euB,
        "cup_value": cup,
        "cup_check": cup == euA * euB,
    }
    _emit(report, args.csv, t0)
    return EXIT_OK if report["cross_product_check"] and report["cup_check"] else EXIT_FAIL


def _cup_product_check(px, bundleA, sA, bundleB, sB, zz) -> int:
    """<pr1* T0 cup pr2* T0, z x z'> via front/back faces."""
    from .complexes import cup_evaluate

    nA, nB = bundleA.n, bundleB.n

    def alpha(pid):
        p, sid, q, sid2, _ = px.cell_info(nA, pid)
        if p == nA and q == 0:
            return uplus_symbol(bundleA.corner_values(sA, nA, sid)).coefficients[0]
        return 0

    def beta(pid):
        p, sid, q, sid2, _ = px.cell_info(nB, pid)
        if p == 0 and q == nB:
            return uplus_symbol(bundleB.corner_values(sB, nB, sid2)).coefficients[0]
        return 0

    return cup_evaluate(px, nA, alpha, nB, beta, zz)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tautclass",
        description="exact characteristic classes of flat bundles, with verification suites",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="run a property suite")
    p_verify.add_argument("suite", choices=sorted(SUITES))
    p_verify.add_argument("--n", type=int, default=2)
    p_verify.add_argument("--samples", type=int, default=100)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.add_argument("--field", type=_parse_field, default=QQ)
    p_verify.add_argument("--rep", help="representation file (smillie, comparison)")
    p_verify.add_argument("--oracle", action="store_true")
    p_verify.add_argument("--csv", action="store_true")
    p_verify.set_defaults(func=cmd_verify)

    p_eval = sub.add_parser("eval", help="evaluate a class on a representation")
    p_eval.add_argument("--rep", required=True)
    p_eval.add_argument(
        "--selector", required=True, help="eu0 | euk:K | eu | euplus | witt"
    )
    p_eval.add_argument("--seed", type=int, default=0)
    p_eval.add_argument("--oracle", action="store_true")
    p_eval.add_argument("--csv", action="store_true")
    p_eval.set_defaults(func=cmd_eval)

    p_prod = sub.add_parser("product", help="cross and cup product experiment")
    p_prod.add_argument("--repA", required=True)
    p_prod.add_argument("--repB", required=True)
    p_prod.add_argument("--seed", type=int, default=0)
    p_prod.add_argument("--csv", action="store_true")
    p_prod.set_defaults(func=cmd_product)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (RelatorError, TagError) as exc:
        sys.stderr.write(f"invalid representation: {exc}\n")
        return EXIT_BAD_REP
    except GenericityError as exc:
        sys.stderr.write(f"genericity exhausted: {exc}\n")
        return EXIT_RESAMPLING
    except OracleError as exc:
        sys.stderr.write(f"oracle failure: {exc}\n")
        return EXIT_BAD_REP
    except FileNotFoundError as exc:
        sys.stderr.write(f"missing file: {exc}\n")
        return EXIT_USAGE
    except (UsageError, ValueError) as exc:
        sys.stderr.write(f"usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
