"""Command-line front end.

    steinberg jh      --type A3 [--lambda 0,0,0] [--parabolic I] [--twist w]
    steinberg induced --type A3 --K 1,3 [--twist w] [--lambda ...]
    steinberg kl      --type A3 --x 1,3 --y 2,1,3,2
    steinberg count   --type A3 --I 1,3
    steinberg verify  --type A3 [--suite all|euler|smooth|support|coxeter|kl]

Exit codes: 0 ok, 1 usage, 2 validation, 3 overflow, 4 failed verification.
Errors go to stderr as ``error:<code>:<message>``.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .cache import cache_load, cache_save
from .errors import InternalInconsistency, SteinbergError
from .jh import FactorMultiset, jh_generalized_steinberg, jh_induced, jh_steinberg, require_dominant
from .kl import KLStore, kl_polynomial, mu, verma_multiplicity
from .roots import Weight
from .verify import (
    verify_coxeter,
    verify_kl,
    verify_smooth_complex,
    verify_support,
    verify_tits_euler,
)
from .weyl import weyl_group

SUITES = ("all", "euler", "smooth", "support", "coxeter", "kl")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text: str, what: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(p) for p in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse {what} {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--type", required=True, dest="cartan", help="Cartan type, e.g. A3, B2, G2")
    common.add_argument("--format", choices=("table", "json"), default="table")
    common.add_argument("--cache", help="KL cache file (read if present, written back)")
    common.add_argument("--allow-large", action="store_true", help="lift the element-count guard")

    parser = _Parser(prog="steinberg", description=__doc__.split("\n\n")[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    jh = sub.add_parser("jh", parents=[common], help="Jordan-Hoelder factors of V^G_{P_I}(w)")
    jh.add_argument("--lambda", dest="lam", default=None, help="dominant weight, fundamental coordinates")
    jh.add_argument("--parabolic", default="", help="subset I (default: empty, i.e. B)")
    jh.add_argument("--twist", default="", help="word for w in ^I W (default: identity)")

    ind = sub.add_parser("induced", parents=[common], help="Jordan-Hoelder factors of I^G_{P_K}(w)")
    ind.add_argument("--lambda", dest="lam", default=None)
    ind.add_argument("--K", required=True, dest="K")
    ind.add_argument("--twist", default="")

    kl = sub.add_parser("kl", parents=[common], help="Kazhdan-Lusztig polynomial P_{x,y}")
    kl.add_argument("--x", required=True)
    kl.add_argument("--y", required=True)

    count = sub.add_parser("count", parents=[common], help="|W^I_p| = #{w : I(w) = I}")
    count.add_argument("--I", required=True, dest="I")

    ver = sub.add_parser("verify", parents=[common], help="run consistency suites")
    ver.add_argument("--suite", choices=SUITES, default="all")
    ver.add_argument("--lambda", dest="lam", default=None, help="default: both 0 and rho")
    ver.add_argument("--verbose", action="store_true")
    return parser


def _weight(args, group) -> Weight | None:
    if args.lam is None:
        return None
    return Weight(tuple(_int_list(args.lam, "weight")))


def _render_json(group, lam, parabolic, twist, fm: FactorMultiset) -> str:
    payload = {
        "type": str(group.cartan_type),
        "rank": group.rank,
        "lambda": list(lam.coords),
        "parabolic": list(parabolic.indices),
        "twist": list(twist.word),
        "factors": [
            {
                "w_word": list(f.w.word),
                "w_dot_lambda": list(f.highest_weight.coords),
                "I": list(f.I.indices),
                "J": list(f.J.indices),
                "smooth_part": f.smooth_part,
                "mult": f.mult,
            }
            for f in fm
        ],
        "length": fm.length,
        "distinct": fm.distinct,
    }
    return json.dumps(payload, indent=2)


def _render_table(group, lam, parabolic, twist, fm: FactorMultiset, title: str) -> str:
    header = ("w", "w.lambda", "I", "J", "smooth_part", "mult")
    rows = [
        (repr(f.w), str(f.highest_weight), str(f.I), str(f.J), f.smooth_part, str(f.mult))
        for f in fm
    ]
    widths = [max(len(r[k]) for r in [header, *rows]) for k in range(len(header))]
    out = [f"# {title} type={group.cartan_type} lambda={lam} parabolic={parabolic} twist={twist!r}"]
    for r in [header, *rows]:
        out.append("  ".join(c.ljust(wd) for c, wd in zip(r, widths)).rstrip())
    out.append(f"length={fm.length} distinct={fm.distinct}")
    return "\n".join(out)


def _emit_multiset(args, group, lam, parabolic, twist, fm, title) -> None:
    lam = lam if lam is not None else Weight.zero(group.rank)
    if args.format == "json":
        print(_render_json(group, lam, parabolic, twist, fm))
    else:
        print(_render_table(group, lam, parabolic, twist, fm, title))


def _cmd_jh(args, group, store) -> int:
    lam = _weight(args, group)
    I = group.subset(args.parabolic)
    w = group.from_word(_int_list(args.twist, "twist"))
    if not I and w.length == 0:
        fm = jh_steinberg(lam, store)
    else:
        fm = jh_generalized_steinberg(I, w, lam, store)
    _emit_multiset(args, group, lam, I, w, fm, "V^G_{P_I}(w)")
    return 0


def _cmd_induced(args, group, store) -> int:
    lam = _weight(args, group)
    K = group.subset(args.K)
    w = group.from_word(_int_list(args.twist, "twist"))
    fm = jh_induced(K, w, lam, store)
    _emit_multiset(args, group, lam, K, w, fm, "I^G_{P_K}(w)")
    return 0


def _cmd_kl(args, group, store) -> int:
    x = group.from_word(_int_list(args.x, "word"))
    y = group.from_word(_int_list(args.y, "word"))
    p = kl_polynomial(x, y, store)
    if args.format == "json":
        print(json.dumps({
            "type": str(group.cartan_type),
            "x": list(x.word),
            "y": list(y.word),
            "coeffs": list(p.coeffs),
            "mu": mu(x, y, store),
            "m": verma_multiplicity(x, y, store),
        }, indent=2))
    else:
        print(f"P_{{{x!r},{y!r}}} = {p}")
        print(f"mu = {mu(x, y, store)}")
        print(f"m = {p(1)}")
    return 0


def _cmd_count(args, group, store) -> int:
    I = group.subset(args.I)
    n = group.parabolic_class_count(I)
    if args.format == "json":
        print(json.dumps({"type": str(group.cartan_type), "I": list(I.indices), "count": n}))
    else:
        print(n)
    return 0


def _cmd_verify(args, group, store) -> int:
    lam = _weight(args, group)
    weights = [require_dominant(store, lam)] if lam is not None else [Weight.zero(group.rank), group.system.rho]
    suite = args.suite
    reports = []
    if suite in ("all", "kl"):
        reports.append(verify_kl(store))
    if suite in ("all", "support"):
        reports.append(verify_support(store))
    if suite in ("all", "coxeter"):
        reports.append(verify_coxeter(store))
    for weight in weights:
        for I in group.all_subsets():
            if suite in ("all", "euler"):
                reports.append(verify_tits_euler(I, weight, store))
            if suite in ("all", "smooth"):
                reports.append(verify_smooth_complex(I, weight, store))
    for r in reports:
        print(r.summary())
        for line in r.lines:
            if args.verbose or line.startswith("FAIL"):
                print("    " + line)
    failed = sum(not r.ok for r in reports)
    print(f"checks={len(reports)} failed={failed}")
    if failed:
        raise InternalInconsistency(f"{failed} verification check(s) failed")
    return 0


COMMANDS = {
    "jh": _cmd_jh,
    "induced": _cmd_induced,
    "kl": _cmd_kl,
    "count": _cmd_count,
    "verify": _cmd_verify,
}


def _fail(code: int, message: str) -> int:
    print(f"error:{code}:{message}", file=sys.stderr)
    return code


_VALUE_OPTIONS = {"--lambda", "--parabolic", "--twist", "--K", "--I", "--x", "--y"}


def _glue_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--lambda -1,0`` into ``--lambda=-1,0`` so argparse keeps the value."""
    out: list[str] = []
    k = 0
    while k < len(argv):
        a = argv[k]
        nxt = argv[k + 1] if k + 1 < len(argv) else None
        if a in _VALUE_OPTIONS and nxt is not None and re.match(r"-\d", nxt):
            out.append(f"{a}={nxt}")
            k += 2
        else:
            out.append(a)
            k += 1
    return out


def run(argv: list[str] | None = None) -> int:
    argv = _glue_negative_values(sys.argv[1:] if argv is None else list(argv))
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        return _fail(1, str(exc))
    try:
        group = weyl_group(args.cartan, allow_large=args.allow_large)
        if args.cache and os.path.exists(args.cache):
            store = cache_load(args.cache, group=group)
        else:
            store = KLStore(group)
        before = len(store)
        code = COMMANDS[args.command](args, group, store)
        if args.cache and (len(store) != before or not os.path.exists(args.cache)):
            cache_save(store, args.cache)
        return code
    except UsageError as exc:
        return _fail(1, str(exc))
    except SteinbergError as exc:
        return _fail(exc.exit_code, f"{type(exc).__name__}: {exc}")
    except OSError as exc:
        return _fail(2, f"IoError: {exc}")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
