"""Command-line front end: ``gtassoc <command> ...``.

Exit codes: 0 when everything checked passes, 1 when some equation fails,
2 on any error (bad input, inconsistent solver system, cap exceeded).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction
from pathlib import Path

from .associators import cyclotomic, elliptic
from .associators.candidates import (CyclotomicCandidate, DrinfeldCandidate, EllipticCandidate,
                                     GTElement, GTEllElement, GTGammaElement, format_candidate,
                                     format_gt, parse_candidate, parse_gt)
from .associators.drinfeld import (SolverError, check_drinfeld, grouplike_result, gt_act,
                                   gt_compose, solve_drinfeld, truncate_to, verify_gt)
from .associators.report import Report, skipped
from .families import (CYCLOTOMIC, DK, ELLIPTIC, REDUCED_ELLIPTIC, gamma_action, parse_family,
                       parse_gamma, parse_permutation, symmetric_action)
from .malcev import make_context, word_eval
from .operadic import (elliptic_module_compose, insertion_coproduct,
                       insertion_coproduct_cyclotomic, moperad_compose_module,
                       moperad_compose_monoid, operad_compose, parse_pmap)
from .quotient import DEFAULT_CAP, CapExceeded, hilbert_dims
from .series import format_rational, format_series, parse_rational, parse_series

logger = logging.getLogger("gtassoc")


class UsageError(ValueError):
    pass


# -- helpers ---------------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _emit(text: str, out: str | None):
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _emit_report(rep: Report, args) -> int:
    if args.format == "report":
        sys.stdout.write(json.dumps(rep.as_dict(), indent=2, sort_keys=True) + "\n")
    else:
        sys.stdout.write(rep.text())
    return 0 if rep.passed else 1


def _truncate(obj, maxdeg: int | None):
    """Lower every series of a candidate or GT element to ``maxdeg``."""
    if maxdeg is None or maxdeg == obj.maxdeg:
        return obj
    if maxdeg > obj.maxdeg:
        raise UsageError(f"--maxdeg {maxdeg} exceeds the file's maxdeg {obj.maxdeg}")
    fields = {k: truncate_to(v, maxdeg) if hasattr(v, "terms") else v
              for k, v in vars(obj).items()}
    return type(obj)(**fields)


# -- commands ------------------------------------------------------------------

def cmd_dims(args) -> int:
    if args.maxdeg is None:
        raise UsageError("dims needs --maxdeg")
    dims = hilbert_dims(args.family, args.maxdeg, args.cap, args.cache_dir)
    if args.format == "report":
        name = parse_family(args.family).name
        sys.stdout.write(json.dumps({"family": name, "dims": dims}) + "\n")
    else:
        for d, n in enumerate(dims):
            sys.stdout.write(f"{d} {n}\n")
    return 0


def _verify_candidate(c, args) -> Report:
    kw = {"cache_dir": args.cache_dir, "cap": args.cap}
    if isinstance(c, DrinfeldCandidate):
        return check_drinfeld(c, **kw)
    if isinstance(c, CyclotomicCandidate):
        return cyclotomic.check_cyclotomic(c, args.reading or cyclotomic.DEFAULT_READING, **kw)
    return elliptic.check_elliptic(c, args.reading or elliptic.DEFAULT_READING, **kw)


def _verify_gt(g) -> Report:
    rep = verify_gt(g if isinstance(g, GTElement) else g.gt)
    if isinstance(g, GTGammaElement):
        rep.title = f"gtgamma({g.N})"
        rep.results.append(grouplike_result("g_grouplike", g.g))
        rep.results.append(skipped("gamma_relations", "not checked: no computable model"))
    elif isinstance(g, GTEllElement):
        rep.title = "gtell"
        rep.results.append(grouplike_result("gplus_grouplike", g.gplus))
        rep.results.append(grouplike_result("gminus_grouplike", g.gminus))
        rep.results.append(skipped("ell_relations", "not checked: no computable model"))
    return rep


def cmd_verify(args) -> int:
    text = _read(args.file)
    first = next((ln.split("#", 1)[0].strip() for ln in text.splitlines()
                  if ln.split("#", 1)[0].strip()), "")
    if first.startswith("candidate"):
        rep = _verify_candidate(_truncate(parse_candidate(text), args.maxdeg), args)
    else:
        rep = _verify_gt(_truncate(parse_gt(text), args.maxdeg))
    return _emit_report(rep, args)


def cmd_solve(args) -> int:
    if args.maxdeg is None:
        raise UsageError("solve needs --maxdeg")
    lam = args.lam if args.lam is not None else Fraction(1)
    base, free = solve_drinfeld(lam, args.maxdeg)
    if args.kind == "cyclotomic":
        if args.N is None:
            raise UsageError("cyclotomic solve needs --N")
        cand, free2 = cyclotomic.solve_cyclotomic(base, args.N, args.reading or "operadic")
    elif args.kind == "elliptic":
        cand, free2 = elliptic.solve_elliptic(base, reading=args.reading or "operadic",
                                              cache_dir=args.cache_dir)
    else:
        cand, free2 = base, []
    for item in [("phi",) + f for f in free] + [(args.kind,) + f for f in free2]:
        print("free parameter set to 0: " + " ".join(map(str, item)), file=sys.stderr)
    _emit(format_candidate(cand), args.out)
    return 0


_COMPOSE = {GTElement: gt_compose, GTGammaElement: cyclotomic.gtgamma_compose,
            GTEllElement: elliptic.gtell_compose}
_ACT = {(GTElement, DrinfeldCandidate): gt_act,
        (GTGammaElement, CyclotomicCandidate): cyclotomic.gtgamma_act,
        (GTEllElement, EllipticCandidate): elliptic.gtell_act}
_KINDS = {"gt": GTElement, "gtgamma": GTGammaElement, "gtell": GTEllElement}


def _check_kind(kind: str, obj):
    if not isinstance(obj, _KINDS[kind]):
        raise UsageError(f"expected a {kind} element, got {type(obj).__name__}")


def cmd_compose(args) -> int:
    elems = [parse_gt(_read(p)) for p in args.elements]
    for e in elems:
        _check_kind(args.kind, e)
    out = elems[0]
    for e in elems[1:]:
        out = _COMPOSE[type(out)](out, e)
    _emit(format_gt(out), args.out)
    return 0


def cmd_act(args) -> int:
    g = parse_gt(_read(args.element))
    _check_kind(args.kind, g)
    c = parse_candidate(_read(args.candidate))
    fn = _ACT.get((type(g), type(c)))
    if fn is None:
        raise UsageError(f"{type(g).__name__} does not act on {type(c).__name__}")
    _emit(format_candidate(fn(g, c)), args.out)
    return 0


def cmd_op(args) -> int:
    if args.op_cmd == "insert":
        x = parse_series(_read(args.input))
        f = parse_pmap(args.pmap)
        fam = parse_family(x.alphabet.name)
        if fam.kind == DK and not f.source_zero:
            y = insertion_coproduct(f, x)
        else:
            y = insertion_coproduct_cyclotomic(f, x, args.N)
    elif args.op_cmd == "compose":
        host, guest = parse_series(_read(args.host)), parse_series(_read(args.guest))
        hk = parse_family(host.alphabet.name).kind
        if hk == DK:
            y = operad_compose(args.slot, host, guest)
        elif hk == CYCLOTOMIC and args.slot == 0:
            y = moperad_compose_monoid(host, guest)
        elif hk == CYCLOTOMIC:
            y = moperad_compose_module(args.slot, host, guest)
        elif hk in (ELLIPTIC, REDUCED_ELLIPTIC):
            y = elliptic_module_compose(args.slot, host, guest)
        else:
            raise UsageError(f"no composition for host family {host.alphabet.name}")
    else:
        x = parse_series(_read(args.input))
        if (args.perm is None) == (args.gamma is None):
            raise UsageError("op act needs exactly one of --perm, --gamma")
        if args.perm is not None:
            y = symmetric_action(parse_permutation(args.perm), x)
        else:
            y = gamma_action(parse_gamma(args.gamma), x)
    _emit(format_series(y), args.out)
    return 0


def cmd_word(args) -> int:
    if args.maxdeg is None:
        raise UsageError("word needs --maxdeg")
    g = word_eval(args.word, make_context(args.context, args.maxdeg))
    lines = []
    if g.model.scalar:
        lines.append(f"scalar {format_rational(g.scalar)}")
    if g.model.N > 1:
        lines.append(f"residue {g.residue}")
    target = g.log() if args.log else g.series
    _emit("\n".join(lines + [format_series(target)]) if lines else format_series(target), args.out)
    return 0


# -- parser ------------------------------------------------------------------------

def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--maxdeg", type=int, help="truncation degree")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP,
                        help="refuse normal-form tables with more monomials than this")
    common.add_argument("--cache-dir", help="directory for cached normal-form tables")
    common.add_argument("--format", choices=("text", "report"), default="text",
                        help="'report' emits JSON")
    common.add_argument("--reading", choices=cyclotomic.READINGS,
                        help="reading of the cyclotomic/elliptic equations")
    common.add_argument("-o", "--out", help="write the result here instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="gtassoc", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="cmd", required=True)

    s = sub.add_parser("dims", parents=[common], help="Hilbert dimensions of a quotient algebra")
    s.add_argument("--family", required=True, help="e.g. t(3), tGamma(2,2), tellbar(2), free(x,y)")
    s.set_defaults(func=cmd_dims)

    s = sub.add_parser("verify", parents=[common], help="check a candidate or GT file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("solve", parents=[common], help="solve for an associator degree by degree")
    s.add_argument("--lambda", dest="lam", type=_rational)
    s.add_argument("--kind", choices=("drinfeld", "cyclotomic", "elliptic"), default="drinfeld")
    s.add_argument("--N", type=int, help="group order for cyclotomic candidates")
    s.set_defaults(func=cmd_solve)

    s = sub.add_parser("compose", parents=[common], help="compose GT-type elements left to right")
    s.add_argument("kind", choices=tuple(_KINDS))
    s.add_argument("elements", nargs="+")
    s.set_defaults(func=cmd_compose)

    s = sub.add_parser("act", parents=[common], help="act by a GT-type element on a candidate")
    s.add_argument("kind", choices=tuple(_KINDS))
    s.add_argument("element")
    s.add_argument("candidate")
    s.set_defaults(func=cmd_act)

    s = sub.add_parser("op", help="operadic maps on series files")
    ops = s.add_subparsers(dest="op_cmd", required=True)
    o = ops.add_parser("insert", parents=[common], help="insertion-coproduct x^f")
    o.add_argument("--pmap", required=True)
    o.add_argument("--in", dest="input", required=True)
    o.add_argument("--N", type=int, help="group order when mapping t(n) into tGamma(m,N)")
    o = ops.add_parser("compose", parents=[common], help="partial composition host o_p guest")
    o.add_argument("--slot", type=int, required=True, help="p; 0 for the moperad monoid map")
    o.add_argument("host")
    o.add_argument("guest")
    o = ops.add_parser("act", parents=[common], help="symmetric-group or Gamma action")
    o.add_argument("--perm")
    o.add_argument("--gamma")
    o.add_argument("--in", dest="input", required=True)
    s.set_defaults(func=cmd_op)

    s = sub.add_parser("word", parents=[common], help="evaluate a group word in a Malcev model")
    s.add_argument("--context", required=True, help="F(k), F(2)xZ, relF2(N) or PB3")
    s.add_argument("--log", action="store_true", help="print the logarithm instead")
    s.add_argument("word")
    s.set_defaults(func=cmd_word)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if getattr(args, "verbose", False) else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "maxdeg", None) is not None and args.maxdeg < 0:
        parser.error("--maxdeg must be non-negative")
    if getattr(args, "cap", 1) < 1:
        parser.error("--cap must be at least 1")
    try:
        return args.func(args)
    except (CapExceeded, SolverError, ValueError, KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
