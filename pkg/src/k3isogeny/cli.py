"""Command-line front end.

Exit codes: 0 when every check passes, 1 when a verification returned false,
2 on bad input.  JSON output carries every number as an exact string.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Any

from . import chl, corpus, families, fibration, isogeny
from .exact import rat_str
from .parser import ParseError, parse_poly, parse_rational

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def stringify(obj: Any) -> Any:
    """Numbers become exact strings; containers are walked; bools and None stay."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, (int, Fraction)):
        return rat_str(Fraction(obj))
    if isinstance(obj, dict):
        return {str(k): stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [stringify(v) for v in obj]
    return str(obj)


def dump_json(doc: Any) -> str:
    return json.dumps(stringify(doc), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _text(doc: Any, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(doc, dict):
        for k in sorted(doc):
            v = doc[k]
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{k}:")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}{k}: {_scalar(v)}")
    elif isinstance(doc, list):
        for v in doc:
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}-")
                lines.extend(_text(v, indent + 1))
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(f"{pad}{_scalar(doc)}")
    return lines


def _scalar(v) -> str:
    if v is True:
        return "true"
    if v is False:
        return "false"
    if v is None:
        return "null"
    if isinstance(v, (dict, list)):
        return "{}" if isinstance(v, dict) else "[]"
    return str(v)


def dump_text(doc: Any) -> str:
    return "\n".join(_text(stringify(doc))) + "\n"


# argument helpers


def _poly(s: str, var: str = "t"):
    return parse_poly(s, var)


def _q(s: str) -> Fraction:
    return parse_rational(s)


def _params(pairs: list[str]) -> dict:
    out = {}
    for p in pairs:
        if "=" not in p:
            raise InputError(f"parameter {p!r} is not of the form key=value")
        k, v = p.split("=", 1)
        out[k.strip()] = v.strip()
    return out


def _nine_from_args(args) -> chl.ModuliNine:
    if args.moduli:
        return chl.ModuliNine.of([_q(x) for x in args.moduli])
    if args.alpha and args.beta and args.gamma:
        return chl.ModuliNine.from_quadratics(_poly(args.alpha), _poly(args.beta), _poly(args.gamma))
    raise InputError("give --moduli (nine rationals) or --alpha/--beta/--gamma")


FAMILY_KEYS = {
    "Generic": ("a", "b", "c"),
    "FourI4": ("a", "b"),
    "FourI0star": ("a", "beta"),
    "Kummer17": ("rho", "alpha", "beta"),
    "SixLines16": ("alpha", "beta", "rho"),
    "SixLinesParams": ("a", "b", "c", "d"),
    "CHL14": ("alpha", "beta", "gamma"),
    "KummerMu": ("mu1", "mu2", "mu3"),
}


def _family_fixture(tag: str, params: dict, strict: bool) -> dict:
    need = FAMILY_KEYS[tag]
    missing = [k for k in need if k not in params]
    extra = [k for k in params if k not in need]
    if missing or extra:
        raise InputError(f"{tag} takes parameters {', '.join(need)}"
                         + (f"; missing {', '.join(missing)}" if missing else "")
                         + (f"; unknown {', '.join(extra)}" if extra else ""))
    fx: dict = {"family": tag, "strict": strict}
    if tag == "SixLinesParams":
        fx["abcd"] = [params[k] for k in need]
    elif tag == "KummerMu":
        fx["mu"] = [params[k] for k in need]
    else:
        fx["params"] = params
    return fx


# commands


def cmd_classify(args) -> tuple[int, dict]:
    fx = {"a": args.a, "b": args.b, "c": args.c, "var": args.var, "n": args.n,
          "model": args.model}
    if args.degrees:
        fx["degrees"] = [int(x) for x in args.degrees]
    model = corpus._model(fx)
    rep = fibration.fiber_configuration(model)
    doc = rep.to_wire()
    code = EXIT_OK
    if args.expect:
        ok = rep.multiset() == fibration.parse_multiset(args.expect)
        doc["expected"] = args.expect
        doc["match"] = ok
        code = EXIT_OK if ok else EXIT_FAIL
    return code, doc


def cmd_isogeny_verify(args) -> tuple[int, dict]:
    if args.curve:
        E = isogeny.TwoTorsionCurve(*(_q(x) for x in args.curve))
        if not E.is_smooth():
            raise InputError("curve is singular")
        H = isogeny.isogenous_curve(E)
        C = isogeny.torsor_Chat(E)
        checks = {
            "j(Jac(Chat)) = j(Ehat)": isogeny.quartic_jacobian_j(C.q4, 0, C.q2, 0, C.q0)
            == isogeny.j_invariant(H),
        }
        st = isogeny.isogeny_statements(isogeny.TwoTorsionCurve(*(_q(x) for x in args.curve)))
        checks.update(st)
        doc = {"curve": {"a": E.a, "b": E.b, "c": E.c}, "Ehat": {"b": H.b, "ac": H.ac},
               "j": isogeny.j_invariant(E), "checks": checks}
    else:
        checks = isogeny.isogeny_statements()
        checks["torsor_iso_check"] = isogeny.torsor_iso_check()
        doc = {"curve": "symbolic a, b, c", "checks": checks}
    doc["all_pass"] = all(checks.values())
    return (EXIT_OK if doc["all_pass"] else EXIT_FAIL), doc


def cmd_family(args) -> tuple[int, dict]:
    params = _params(args.params)
    fx = _family_fixture(args.tag, params, not args.allow_degenerate)
    fam = corpus.build_family(fx)
    check = fam.check()
    doc = {
        "family": args.tag,
        "params": params,
        "tables": check,
        "genericity": fam.genericity,
        "notes": fam.notes,
        "models": {k: m.to_wire() for k, m in fam.models().items()},
    }
    for cover in args.branch or []:
        doc.setdefault("branch", {})[cover] = fibration.branch_even_eight_report(cover, fam).to_wire()
    ok = all(v["match"] for v in check.values())
    ok = ok and all(b["even_eight"] for b in doc.get("branch", {}).values())
    return (EXIT_OK if ok else EXIT_FAIL), doc


def cmd_chl(args) -> tuple[int, dict]:
    m = _nine_from_args(args)
    if args.sub == "dualize":
        d = chl.dual_nine(m)
        return EXIT_OK, {"moduli": m.to_wire(), "dual": d.to_wire(),
                         "involution": chl.dual_nine(d) == m}
    if args.sub == "normalize":
        out, s = chl.normalize_nine(m)
        back = chl.scale_nine(out, s.inverse()) == m
        return (EXIT_OK if back else EXIT_FAIL), {
            "moduli": m.to_wire(), "normalized": out.to_wire(), "scale": s.to_wire(),
            "reconstructs": back,
        }
    if args.sub == "equiv":
        rep = chl.equiv_fibration_check(m)
        return (EXIT_OK if rep.holds else EXIT_FAIL), {"moduli": m.to_wire(), **rep.to_wire()}
    if args.sub == "report":
        rep = chl.duality_report(m, args.choice)
        return (EXIT_OK if rep.ok() else EXIT_FAIL), rep.to_wire()
    raise InputError(f"unknown chl subcommand {args.sub!r}")


def cmd_kummer(args) -> tuple[int, dict]:
    if args.sub == "mu":
        if not args.lambdas or args.L is None:
            raise InputError("kummer mu needs --lambdas l1 l2 l3 and --L")
        r = families.RosenhainTriple(*(_q(x) for x in args.lambdas), _q(args.L))
        mu = families.rosenhain_mu(r)
        return EXIT_OK, {"lambdas": list(args.lambdas), "L": args.L, "mu": list(mu.as_tuple())}
    if not args.mu:
        raise InputError(f"kummer {args.sub} needs --mu m1 m2 m3")
    m = families.MuTriple(*(_q(x) for x in args.mu))
    if args.sub == "dual":
        d = families.dual_mu(m)
        back = families.dual_mu(d) == m
        return (EXIT_OK if back else EXIT_FAIL), {"mu": list(m.as_tuple()), "dual": list(d.as_tuple()),
                                                  "involution": back}
    if args.sub == "models":
        fam = families.kummer_models(m, strict=not args.allow_degenerate)
        check = fam.check()
        duality = families.kummer_duality_check(m)
        doc = {"mu": list(m.as_tuple()), "tables": check, "notes": fam.notes,
               "degeneracy": families.kummer_degeneracy(m), "duality": duality,
               "models": {k: v.to_wire() for k, v in fam.models().items()}}
        ok = all(v["match"] for v in check.values()) and duality["Y(mu) ~ Y(dual)"]
        return (EXIT_OK if ok else EXIT_FAIL), doc
    raise InputError(f"unknown kummer subcommand {args.sub!r}")


def cmd_verify_all(args) -> tuple[int, dict]:
    try:
        fixtures = corpus.load_corpus(args.corpus)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read corpus: {exc}") from exc
    results = corpus.run_corpus(fixtures)
    passed = sum(r["passed"] for r in results)
    doc = {"total": len(results), "passed": passed, "failed": len(results) - passed,
           "results": results}
    return (EXIT_OK if passed == len(results) else EXIT_FAIL), doc


def build_parser() -> argparse.ArgumentParser:
    # output flags are accepted before or after the subcommand
    common = argparse.ArgumentParser(add_help=False)
    fmt = common.add_mutually_exclusive_group()
    fmt.add_argument("--json", dest="fmt", action="store_const", const="json",
                     default=argparse.SUPPRESS, help="JSON output (default)")
    fmt.add_argument("--text", dest="fmt", action="store_const", const="text",
                     default=argparse.SUPPRESS, help="indented text output")
    common.add_argument("-o", "--output", default=argparse.SUPPRESS,
                        help="write the report to a file instead of stdout")
    p = argparse.ArgumentParser(prog="k3isogeny", parents=[common],
                                description="Exact two-isogeny and K3 fibration checks.")
    sub = p.add_subparsers(dest="command", required=True)
    _add = sub.add_parser

    def add_parser(name, **kw):
        return _add(name, parents=[common], **kw)

    sub.add_parser = add_parser

    c = sub.add_parser("classify", help="singular fibers of a Weierstrass or quartic model")
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--c", required=True)
    c.add_argument("--var", default="t")
    c.add_argument("--n", type=int, default=2, help="surface index: 1 rational, 2 K3")
    c.add_argument("--degrees", nargs=3, help="declared degrees of a, b, c")
    c.add_argument("--model", choices=["weierstrass", "quartic"], default="weierstrass")
    c.add_argument("--expect", help="expected fiber multiset, e.g. '8I2 + 8I1'")
    c.set_defaults(func=cmd_classify)

    c = sub.add_parser("isogeny-verify", help="two-isogeny identities")
    c.add_argument("--curve", nargs=3, metavar=("A", "B", "C"))
    c.set_defaults(func=cmd_isogeny_verify)

    c = sub.add_parser("family", help="build a named family and compare fiber tables")
    c.add_argument("tag", choices=["Generic", "FourI4", "FourI0star", "Kummer17", "SixLines16",
                                   "SixLinesParams", "CHL14", "KummerMu"])
    c.add_argument("params", nargs="*", help="key=value, e.g. a='t^4-1'")
    c.add_argument("--branch", action="append", choices=["Phi", "Psi", "PsiPrime"])
    c.add_argument("--allow-degenerate", action="store_true")
    c.set_defaults(func=cmd_family)

    c = sub.add_parser("chl", help="nine-parameter CHL moduli")
    c.add_argument("sub", choices=["dualize", "normalize", "equiv", "report"])
    c.add_argument("--moduli", nargs=9, metavar="Q")
    c.add_argument("--alpha")
    c.add_argument("--beta")
    c.add_argument("--gamma")
    c.add_argument("--choice", choices=["alpha", "gamma"], default="alpha")
    c.set_defaults(func=cmd_chl)

    c = sub.add_parser("kummer", help="Rosenhain and Kummer moduli")
    c.add_argument("sub", choices=["mu", "dual", "models"])
    c.add_argument("--lambdas", nargs=3)
    c.add_argument("--L")
    c.add_argument("--mu", nargs=3)
    c.add_argument("--allow-degenerate", action="store_true")
    c.set_defaults(func=cmd_kummer)

    c = sub.add_parser("verify-all", help="run the bundled example corpus")
    c.add_argument("--corpus", help="path to a corpus JSON file")
    c.set_defaults(func=cmd_verify_all)
    return p


def run(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    fmt = getattr(args, "fmt", "json")
    output = getattr(args, "output", None)
    try:
        code, doc = args.func(args)
    except (InputError, ParseError, families.FamilyError, chl.CHLError, isogeny.IsogenyError,
            fibration.FibrationError, ValueError, KeyError, ZeroDivisionError) as exc:
        code, doc = EXIT_INPUT, {"error": str(exc), "error_type": type(exc).__name__}
    text = dump_text(doc) if fmt == "text" else dump_json(doc)
    if output and code != EXIT_INPUT:
        with open(output, "w") as fh:
            fh.write(text)
    else:
        out.write(text)
    return code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
