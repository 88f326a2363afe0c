"""Command-line front end: ``plumbq {compute,decompose,verify,asymptotics} FILE``.

Exit codes: 0 success, 1 verify found a mismatch, 2 unreadable or malformed
input, 3 linking matrix not positive definite, 4 graph is not a star.
"""

from __future__ import annotations

import argparse
import dataclasses
import hashlib
import json
import sys
import warnings
from fractions import Fraction

from . import falsetheta
from .falsetheta import FalseThetaCombination, eval_radial, expand
from .graph_core import IndexOutOfRange, NotATree, NotStar
from .invariants import (NotPositiveDefinite, ShiftParityMismatch, reduce_star,
                         star_asymptotics, z_bruteforce, zhat_bruteforce)
from .plumb_io import ParseError, parse_file
from .qseries import first_difference, format_lines

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT, EXIT_NOT_PD, EXIT_NOT_STAR = 0, 1, 2, 3, 4


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _load(path: str):
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as e:
        raise _Fail(EXIT_INPUT, f"cannot read {path}: {e.strerror}") from e
    try:
        pf = parse_file(data.decode("utf-8"))
    except UnicodeDecodeError as e:
        raise _Fail(EXIT_INPUT, f"{path}: not UTF-8") from e
    except (ParseError, NotATree, IndexOutOfRange) as e:
        raise _Fail(EXIT_INPUT, f"{path}: {type(e).__name__}: {e}") from e
    return pf, hashlib.sha256(data).hexdigest()


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from e


def _floats(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"bad number list: {text!r}") from e
    if not vals or any(v <= 0 for v in vals):
        raise argparse.ArgumentTypeError("need positive values")
    return vals


def _combination_text(c: FalseThetaCombination) -> list[str]:
    lines = [str(c)]
    for t in c.terms:
        lines.append(f"  {falsetheta.format_term(t)}: quantum set "
                     f"{falsetheta.quantum_set_description(t)}")
    return lines


def cmd_compute(args, pf):
    g = pf.graph
    if args.zhat:
        shift = args.shift if args.shift is not None else pf.shift
        series = zhat_bruteforce(g, shift, args.order, threads=args.threads)
    else:
        if args.shift is not None:
            raise _Fail(EXIT_INPUT, "--shift only applies together with --zhat")
        series = z_bruteforce(g, args.order, threads=args.threads)
    return series.to_json(), format_lines(series) + [f"O(q^({args.order}))"], EXIT_OK


def cmd_decompose(args, pf):
    c = reduce_star(pf.graph)
    return c.to_json(), _combination_text(c), EXIT_OK


def cmd_verify(args, pf):
    c = reduce_star(pf.graph)
    if args.inject_fault:
        if not c.terms:
            raise _Fail(EXIT_INPUT, "nothing to perturb")
        t0 = c.terms[0]
        c = dataclasses.replace(c, terms=(dataclasses.replace(t0, coefficient=t0.coefficient + 1),)
                                + c.terms[1:])
    closed = expand(c, args.order)
    brute = z_bruteforce(pf.graph, args.order, threads=args.threads)
    diff = first_difference(closed, brute, args.order)
    payload = {
        "order": f"{args.order.numerator}/{args.order.denominator}",
        "equal": diff is None,
        "first_difference": None if diff is None else f"{diff.numerator}/{diff.denominator}",
        "fault_injected": bool(args.inject_fault),
    }
    if diff is None:
        text = [f"equal to order {args.order}"]
    else:
        text = [f"unequal: first difference at q^({diff})",
                f"  closed form {closed[diff]}, brute force {brute[diff]}"]
    return payload, text, EXIT_OK if diff is None else EXIT_MISMATCH


def cmd_asymptotics(args, pf):
    asym = star_asymptotics(pf.graph, args.terms)
    payload = {"expansion": asym.to_json()}
    text = [str(asym)]
    if args.numeric:
        c = reduce_star(pf.graph)
        samples = [(t, eval_radial(c, t)) for t in args.numeric]
        payload["numeric"] = [{"t": t, "value": v} for t, v in samples]
        text += [f"t = {t!r}: {v!r}" for t, v in samples]
    return payload, text, EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plumbq", description="q-series invariants of plumbing graphs")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, threads=False):
        sp.add_argument("file")
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        if threads:
            sp.add_argument("--threads", type=int, default=None,
                            help="worker threads (overrides PLUMB_THREADS)")

    c = sub.add_parser("compute", help="truncated Z(q) or Zhat_a(q) by direct summation")
    common(c, threads=True)
    c.add_argument("--order", type=_fraction, required=True)
    c.add_argument("--zhat", action="store_true")
    c.add_argument("--shift", type=int, nargs="+", default=None)
    c.set_defaults(run=cmd_compute)

    d = sub.add_parser("decompose", help="false theta decomposition of a star graph")
    common(d)
    d.set_defaults(run=cmd_decompose)

    v = sub.add_parser("verify", help="closed form against direct summation")
    common(v, threads=True)
    v.add_argument("--order", type=_fraction, required=True)
    v.add_argument("--inject-fault", action="store_true",
                   help="perturb one coefficient first (negative control)")
    v.set_defaults(run=cmd_verify)

    a = sub.add_parser("asymptotics", help="radial expansion as t -> 0+")
    common(a)
    a.add_argument("--terms", type=int, default=3)
    a.add_argument("--numeric", type=_floats, default=None, metavar="T1,T2,...")
    a.set_defaults(run=cmd_asymptotics)
    return p


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    args = build_parser().parse_args(argv)
    try:
        pf, digest = _load(args.file)
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            payload, text, code = args.run(args, pf)
    except _Fail as e:
        print(f"error: {e}", file=sys.stderr)
        return e.code
    except (ShiftParityMismatch, ValueError) as e:
        code = EXIT_INPUT
        if isinstance(e, NotPositiveDefinite):
            code = EXIT_NOT_PD
        elif isinstance(e, NotStar):
            code = EXIT_NOT_STAR
        print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
        return code
    notes = [str(w.message) for w in caught]
    for n in notes:
        print(f"warning: {n}", file=sys.stderr)
    echo = "plumbq " + " ".join(argv)
    if args.json:
        report = {"command": echo, "input_sha256": digest, "result": payload, "warnings": notes}
        print(json.dumps(report, indent=2, ensure_ascii=False))
    else:
        print(f"# {echo}")
        print(f"# sha256 {digest}")
        for line in text:
            print(line)
    return code


if __name__ == "__main__":
    sys.exit(main())
