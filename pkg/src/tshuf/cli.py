"""Batch command-line front end.

Algebra elements travel as JSON documents in files (or stdin with ``-``);
flags carry only small parameters.  Identical inputs produce bit-identical
outputs.

Exit codes: 0 success / verdict in; 1 verdict out or not-in-span;
2 usage error; 3 internal assertion failure (an identity that must hold
did not).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from . import acceptance, config
from .docio import dump, element_from_doc, element_to_doc, load
from .errors import (
    ArityCapExceeded,
    InternalContradiction,
    NotInS,
    NotInSpan,
    RegionViolation,
    TshufError,
)
from .generators import (
    SlopePoint,
    gen_F,
    gen_H,
    gen_Hbar,
    gen_Hbar_prime,
    gen_P,
    gen_P_alt,
    gen_Pbar,
    gen_Sprime,
)
from .generators import (
    h_kernel,
    hbar_kernel,
    hbar_prime_kernel,
    pnd_kernel,
    sprime_kernel,
)
from .membership import is_in_S, reduce_to_generators, wheel_check
from .pairing import PairingValue, convex_paths, pair, pbw_expand, window_stable
from .pairing import _pbar_kernel
from .shuffle import ScaledElem, kernel_shuffle, shuffle_mul

USAGE_ERROR = 2
INTERNAL_ERROR = 3


def _read_doc(path: str):
    text = sys.stdin.read() if path == "-" else open(path).read()
    return load(text)


def _write(doc, out: str | None):
    text = dump(doc)
    if out:
        with open(out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _parse_window(spec: str):
    try:
        lo, hi = spec.split(":")
        return Fraction(lo), Fraction(hi)
    except (ValueError, ZeroDivisionError):
        raise SystemExit(USAGE_ERROR)


def _gen(args):
    kind = args.kind
    p = SlopePoint(args.n, args.d)
    eps = tuple(int(b) for b in args.eps) if args.eps else ()
    if kind == "P":
        elem, kern = gen_P(p), pnd_kernel(p)
    elif kind == "Pbar":
        elem, kern = gen_Pbar(p), _pbar_kernel(p)
    elif kind == "H":
        elem, kern = gen_H(p), h_kernel(p)
    elif kind == "Hbar":
        elem, kern = gen_Hbar(p, args.via), hbar_kernel(p, args.via)
    elif kind == "HbarPrime":
        elem, kern = gen_Hbar_prime(p), hbar_prime_kernel(p)
    elif kind == "Sprime":
        elem, kern = gen_Sprime(p, eps), sprime_kernel(p, eps)
    elif kind == "F":
        elem, kern = gen_F(args.n), None
    else:
        raise SystemExit(USAGE_ERROR)
    _write(element_to_doc(elem, kern), args.out)
    return 0


def _mul(args):
    a, ka = element_from_doc(_read_doc(args.a))
    b, kb = element_from_doc(_read_doc(args.b))
    prod = a * b
    kern = None
    if ka is not None and kb is not None:
        kern = kernel_shuffle(ka, kb)
    _write(element_to_doc(prod, kern), args.out)
    return 0


def _member(args):
    elem, _ = element_from_doc(_read_doc(args.element))
    elem = elem.normalize()
    if not elem.den.is_one:
        print("membership requires an integral element", file=sys.stderr)
        return USAGE_ERROR
    report = is_in_S(elem.elem)
    _write(report.to_doc(), args.out)
    return 0 if report.member else 1


def _wheel(args):
    elem, _ = element_from_doc(_read_doc(args.element))
    ok = wheel_check(elem.as_elem())
    _write({"wheel": ok}, args.out)
    return 0 if ok else 1


def _pair(args):
    left, kern = element_from_doc(_read_doc(args.left))
    if kern is None:
        print("first pairing argument must carry a kernel presentation",
              file=sys.stderr)
        return USAGE_ERROR
    right, _ = element_from_doc(_read_doc(args.right))
    val = pair(kern, right)
    if not left.den.is_one:
        val = val / PairingValue(left.den)
    _write(val.to_doc(), args.out)
    return 0


def _paths(args):
    window = _parse_window(args.window)
    out = [p.to_doc() for p in convex_paths(args.n, args.d, window)]
    _write({"paths": out}, args.out)
    return 0


def _expand(args):
    elem, _ = element_from_doc(_read_doc(args.element))
    window = _parse_window(args.window)
    coeffs = pbw_expand(elem, window)
    doc = [{"path": v.to_doc(), "coeff": c.to_doc()} for v, c in coeffs]
    result = {"expansion": doc}
    if args.check_window:
        result["window_stable"] = window_stable(elem, window)
    _write(result, args.out)
    return 0


def _reduce(args):
    elem, _ = element_from_doc(_read_doc(args.element))
    steps = reduce_to_generators(elem.as_elem())
    doc = [{"lambda": list(lam), "rho": rho.to_doc()} for lam, rho in steps]
    _write({"steps": doc}, args.out)
    return 0


def _selftest(args):
    return 0 if acceptance.run() else INTERNAL_ERROR


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="tshuf",
        description="Exact computations in the integral shuffle algebra.",
    )
    ap.add_argument("--arity-cap", type=int, default=None,
                    help="override the arity cap (env TSHUF_ARITY_CAP)")
    ap.add_argument("--trunc-bound", type=int, default=None,
                    help="floor for series truncation (env TSHUF_TRUNC_BOUND)")
    sub = ap.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen", help="emit a generator element")
    g.add_argument("--kind", required=True,
                   choices=["P", "Pbar", "H", "Hbar", "HbarPrime", "Sprime", "F"])
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--d", type=int, default=0)
    g.add_argument("--eps", default="", help="0/1 string for Sprime")
    g.add_argument("--via", default="end1", choices=["end1", "end2"])
    g.add_argument("--out")
    g.set_defaults(fn=_gen)

    m = sub.add_parser("mul", help="shuffle product of two elements")
    m.add_argument("a")
    m.add_argument("b")
    m.add_argument("--out")
    m.set_defaults(fn=_mul)

    mm = sub.add_parser("member", help="integral membership test")
    mm.add_argument("element")
    mm.add_argument("--out")
    mm.set_defaults(fn=_member)

    w = sub.add_parser("wheel", help="wheel-condition check (arity >= 3)")
    w.add_argument("element")
    w.add_argument("--out")
    w.set_defaults(fn=_wheel)

    pr = sub.add_parser("pair", help="symmetric pairing <R, R'>")
    pr.add_argument("left", help="element document carrying a kernel")
    pr.add_argument("right")
    pr.add_argument("--out")
    pr.set_defaults(fn=_pair)

    pa = sub.add_parser("paths", help="enumerate convex paths")
    pa.add_argument("--n", type=int, required=True)
    pa.add_argument("--d", type=int, required=True)
    pa.add_argument("--window", required=True, help="lo:hi slopes")
    pa.add_argument("--out")
    pa.set_defaults(fn=_paths)

    ex = sub.add_parser("expand", help="PBW expansion over a window")
    ex.add_argument("element")
    ex.add_argument("--window", required=True, help="lo:hi slopes")
    ex.add_argument("--check-window", action="store_true",
                    help="also verify stability under window enlargement")
    ex.add_argument("--out")
    ex.set_defaults(fn=_expand)

    rd = sub.add_parser("reduce", help="rewrite a member over the F_n ideal")
    rd.add_argument("element")
    rd.add_argument("--out")
    rd.set_defaults(fn=_reduce)

    st = sub.add_parser("selftest", help="run the acceptance suite")
    st.set_defaults(fn=_selftest)
    return ap


def run(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    if args.arity_cap is not None:
        config.set_arity_cap(args.arity_cap)
    if args.trunc_bound is not None:
        config.set_trunc_bound(args.trunc_bound)
    try:
        return args.fn(args)
    except NotInS as exc:
        sys.stdout.write(dump(exc.report.to_doc()))
        return 1
    except NotInSpan as exc:
        print("not in the PBW span over this window; enlarge and retry",
              file=sys.stderr)
        return 1
    except InternalContradiction as exc:
        print(f"internal assertion failed: {exc}", file=sys.stderr)
        return INTERNAL_ERROR
    except SystemExit as exc:
        return USAGE_ERROR if exc.code not in (0, None) else 0
    except (ArityCapExceeded, RegionViolation, TshufError, ValueError,
            KeyError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
