"""Command line front end: ``wlysing <command> ...``.

Every command prints one JSON document.  Exit codes: 0 success, 1 a check
failed, 2 bad input, 3 a resource cap was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from gmpy2 import mpq, mpz

from .errors import InputError, ResourceCapExceeded, WLYError

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, mpq):
        return int(obj) if obj.denominator == 1 else f"{obj.numerator}/{obj.denominator}"
    if isinstance(obj, mpz):
        return int(obj)
    return obj


def _emit(data, out=None) -> None:
    out = out or sys.stdout
    json.dump(_jsonable(data), out, indent=2)
    out.write("\n")


def _read_json(path: str) -> dict:
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None


def parse_poly(text: str, variables: Optional[str] = None):
    """Parse in x, y, z; without ``--vars`` a polynomial free of z is read in (x, y)."""
    from .poly import parse

    if variables:
        return parse(text, tuple(v.strip() for v in variables.split(",")))
    f = parse(text)
    if f.degree_in(2) == 0 and not f.is_zero():
        return parse(text, ("x", "y"))
    return f


def _weights(text: str):
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise InputError(f"weights must be comma-separated integers, got {text!r}") from None


# ---------------------------------------------------------------------------
# commands


def cmd_newton(args) -> int:
    from .newton import is_convenient, is_newton_nondegenerate, newton_number, newton_number_stabilized, newton_polyhedron

    f = parse_poly(args.poly, args.vars)
    poly = newton_polyhedron(f)
    convenient = is_convenient(f)
    out = {"poly": str(f), **poly.to_dict(), "convenient": convenient, "nondegenerate": is_newton_nondegenerate(f)}
    out["newton_number"] = newton_number(f) if convenient else newton_number_stabilized(f, args.n_cap)
    if not convenient:
        out["newton_number_rule"] = "stabilized by adding high pure powers"
    _emit(out)
    return EXIT_OK


def cmd_milnor(args) -> int:
    from .local_algebra import milnor_rank_oracle
    from .newton import is_convenient, is_newton_nondegenerate, newton_number, newton_number_stabilized

    f = parse_poly(args.poly, args.vars)
    out = {"poly": str(f)}
    status = EXIT_OK
    if not args.formula:
        res = milnor_rank_oracle(f, args.delta_cap)
        out["oracle"] = res.to_dict()
        if not res.finite:
            # not isolated, or isolated with mu beyond the cap: we cannot tell which
            status = EXIT_CAP
    if not args.oracle:
        if not is_newton_nondegenerate(f):
            out["formula"] = None
            out["formula_note"] = "Newton degenerate: the Newton number need not equal mu"
            if args.formula:
                status = EXIT_FAILED
        else:
            nu = newton_number(f) if is_convenient(f) else newton_number_stabilized(f, args.n_cap)
            out["formula"] = nu
    if out.get("oracle", {}).get("stabilized") and out.get("formula") is not None:
        out["agree"] = out["oracle"]["colength"] == out["formula"]
        if not out["agree"]:
            status = EXIT_FAILED
    _emit(out)
    return status


def cmd_zeta(args) -> int:
    from .zeta import mo_zeta, oka_wly_zeta, varchenko_zeta, wly_local_factors, zeta_degree

    if args.mo:
        P = _weights(args.mo[0])
        z = mo_zeta(P, int(args.mo[1]))
        source = {"rule": "weighted homogeneous", "P": list(P), "d": int(args.mo[1])}
    elif args.wly:
        from .weighted import WLYTriple, check_W_doubleprime, singularity_profile
        from .poly import parse

        data = _read_json(args.wly)
        t = WLYTriple.from_dict(data)
        diag = check_W_doubleprime(t, args.oracle_budget)
        if not diag:
            _emit({"w_doubleprime": diag.to_dict()})
            return EXIT_FAILED
        prof = singularity_profile(t.f, t.P)
        phis = data.get("phis")
        if phis is not None:
            phis = [parse(p, ("v", "w")) for p in phis]
        z = oka_wly_zeta(t, prof, wly_local_factors(t, prof, phis))
        source = {"rule": "weighted Le-Yomdin composition", "triple": t.to_dict(), "profile": prof.to_dict()}
    else:
        if args.poly is None:
            raise InputError("zeta needs a polynomial, --mo P d or --wly spec.json")
        f = parse_poly(args.poly, args.vars)
        z = varchenko_zeta(f)
        source = {"rule": "face sum", "poly": str(f)}
    _emit({**source, "divisor": z.to_list(), "degree": zeta_degree(z), "zeta": str(z)})
    return EXIT_OK


def cmd_section(args) -> int:
    from .invariants import generic_section

    g = parse_poly(args.poly, "x,y,z")
    res = generic_section(g, _weights(args.weights) if args.weights else None, args.trials, args.seed)
    _emit(res.to_dict())
    return EXIT_OK if res.consistency else EXIT_FAILED


def cmd_check_wly(args) -> int:
    from .invariants import milnor_wly
    from .weighted import WLYTriple, check_W_doubleprime, singularity_profile

    t = WLYTriple.from_dict(_read_json(args.spec))
    diag = check_W_doubleprime(t, args.oracle_budget)
    out = {"triple": t.to_dict(), "w_doubleprime": diag.to_dict()}
    if diag:
        prof = singularity_profile(t.f, t.P)
        out["profile"] = prof.to_dict()
        out["mu"] = milnor_wly(t, prof)
    _emit(out)
    return EXIT_OK if diag else EXIT_FAILED


def cmd_build_pair(args) -> int:
    from .pairs import build_weighted_pair, load_curve

    c0, c1 = load_curve(args.h0), load_curve(args.h1)
    t0, t1 = build_weighted_pair(c0, c1, args.p1, args.tail, args.m, args.oracle_budget)
    out = {
        "g0": t0.to_dict(),
        "g1": t1.to_dict(),
        "names": [c0.name or args.h0, c1.name or args.h1],
        "zariski_assertion": {
            "h0_role": c0.zariski_role,
            "h1_role": c1.zariski_role,
            "status": "user assertion, not computed",
        },
    }
    if args.out:
        with open(args.out, "w") as fh:
            _emit(out, fh)
    _emit(out)
    return EXIT_OK


def cmd_certify(args) -> int:
    from .pairs import certify_pair
    from .poly import parse
    from .weighted import WLYTriple

    data = _read_json(args.pair)
    try:
        t0, t1 = WLYTriple.from_dict(data["g0"]), WLYTriple.from_dict(data["g1"])
    except KeyError as exc:
        raise InputError(f"pair file lacks {exc.args[0]!r}") from None
    phis = []
    for key in ("phis0", "phis1"):
        raw = data.get(key)
        phis.append([parse(p, ("v", "w")) for p in raw] if raw is not None else None)
    names = tuple(data.get("names", ["g0", "g1"]))
    rep = certify_pair(
        t0,
        t1,
        data.get("zariski_assertion"),
        names,
        args.trials,
        args.seed,
        args.oracle_budget,
        tuple(phis),
    )
    _emit(rep.to_dict())
    return EXIT_OK if rep.certified else EXIT_FAILED


def cmd_scan_family(args) -> int:
    from .pairs import FamilySpec, scan_family

    spec = FamilySpec.from_dict(_read_json(args.family))
    res = scan_family(spec, args.oracle_budget, args.workers)
    _emit(res.to_dict())
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    from .weighted import DEFAULT_ORACLE_BUDGET

    p = argparse.ArgumentParser(prog="wlysing", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def poly_cmd(name, help_text, poly_optional=False):
        c = sub.add_parser(name, help=help_text)
        if poly_optional:
            c.add_argument("poly", nargs="?")
        else:
            c.add_argument("poly")
        c.add_argument("--vars", help="comma-separated variable names (default: x,y or x,y,z)")
        return c

    c = poly_cmd("newton", "Newton polyhedron, faces and Newton number")
    c.add_argument("--n-cap", type=int, default=200)
    c.set_defaults(func=cmd_newton)

    c = poly_cmd("milnor", "Milnor number by rank oracle and/or Newton number")
    g = c.add_mutually_exclusive_group()
    g.add_argument("--oracle", action="store_true", help="rank oracle only")
    g.add_argument("--formula", action="store_true", help="Newton number only")
    c.add_argument("--delta-cap", type=int, default=None)
    c.add_argument("--n-cap", type=int, default=200)
    c.set_defaults(func=cmd_milnor)

    c = poly_cmd("zeta", "monodromy zeta function", poly_optional=True)
    g = c.add_mutually_exclusive_group()
    g.add_argument("--mo", nargs=2, metavar=("P", "d"), help="weighted homogeneous rule, P as p1,p2[,p3]")
    g.add_argument("--varchenko", action="store_true", help="face sum of the given polynomial (default)")
    g.add_argument("--wly", metavar="SPEC", help="weighted Le-Yomdin composition from a spec.json")
    c.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    c.set_defaults(func=cmd_zeta)

    c = sub.add_parser("section", help="Newton data of a generic plane section")
    c.add_argument("poly")
    c.add_argument("--weights", help="p1,p2,p3 for the boundary prediction")
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.set_defaults(func=cmd_section)

    c = sub.add_parser("check-wly", help="membership test for a weighted Le-Yomdin triple")
    c.add_argument("spec")
    c.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    c.set_defaults(func=cmd_check_wly)

    c = sub.add_parser("build-pair", help="transport two curves to a pair of triples")
    c.add_argument("h0")
    c.add_argument("h1")
    c.add_argument("--p1", type=int, required=True)
    c.add_argument("--tail", default=None, help="x, y, z (pure power) or a polynomial")
    c.add_argument("--m", type=int, default=1)
    c.add_argument("--out", help="also write the pair file here")
    c.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    c.set_defaults(func=cmd_build_pair)

    c = sub.add_parser("certify", help="compare all invariants of a pair")
    c.add_argument("pair")
    c.add_argument("--trials", type=int, default=5)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    c.set_defaults(func=cmd_certify)

    c = sub.add_parser("scan-family", help="profile along a one-parameter family")
    c.add_argument("family")
    c.add_argument("--workers", type=int, default=1)
    c.add_argument("--oracle-budget", type=int, default=DEFAULT_ORACLE_BUDGET)
    c.set_defaults(func=cmd_scan_family)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ResourceCapExceeded as exc:
        print(f"error: resource cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except WLYError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
