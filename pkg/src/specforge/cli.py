"""Command-line interface: analyze, plan, search, verify, bounds.

Output is JSON on stdout with top-level keys schema_version, input, plan and
certificate; integers are written as decimal strings.  Exit status: 0 success,
1 a check failed, 2 usage or parse error, 3 typed computational error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys

from .cover import ExtensionPresentation, analyze
from .errors import DomainError, ParseError, SpecforgeError
from .padic import CycleType
from .parser import parse_poly
from .planner import (
    MODES,
    RELAXED,
    Ramified,
    SpecializationPlan,
    Unramified,
    build_plan,
    discriminant_bounds,
    search_t0,
    select_t0,
)
from .verify import verify_specialization

SCHEMA_VERSION = "1"

log = logging.getLogger("specforge")


class UsageError(Exception):
    pass


def _split(text, n, what):
    parts = text.split(":")
    if len(parts) != n:
        raise UsageError(f"malformed {what} {text!r}")
    return parts


def _int(text, what):
    try:
        return int(text)
    except ValueError:
        raise UsageError(f"{what} must be an integer, got {text!r}") from None


def _cycle(text):
    try:
        return CycleType.parse(text)
    except DomainError as exc:
        raise UsageError(str(exc)) from None


def parse_unram(text):
    p, t = _split(text, 2, "--unram")
    return Unramified(_int(p, "prime"), _cycle(t))


def parse_ram(text):
    p, i, a = _split(text, 3, "--ram")
    return Ramified(_int(p, "prime"), _int(i, "branch index"), _int(a, "exponent"))


def parse_declaration(text):
    i, t = _split(text, 2, "--declare-inertia")
    return _int(i, "candidate index"), _cycle(t)


def _ext_from_input(inp):
    declared = {int(k): CycleType.parse(v) for k, v in inp.get("declared_inertia", {}).items()}
    return ExtensionPresentation(
        parse_poly(inp["poly"]),
        group_order=int(inp.get("group_order", 0) or 0),
        closure_regular=bool(inp.get("closure_regular", False)),
        declared_inertia=declared,
        trust_declared=bool(inp.get("trust_declared", False)),
    )


def _ext_from_args(args):
    return ExtensionPresentation(
        parse_poly(args.poly),
        group_order=args.group_order or 0,
        closure_regular=args.closure_regular,
        declared_inertia=dict(args.declare_inertia or []),
        trust_declared=args.trust_declared,
    )


def _require_regular(ext):
    # |G| = n! forces G = geometric group, hence no constant extension
    if not (ext.closure_regular or ext.is_symmetric()):
        raise DomainError("planning requires --closure-regular unless the geometric group is S_n")


def _load_plan(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read plan file {path}: {exc}") from None
    if doc.get("schema_version") != SCHEMA_VERSION or not doc.get("plan"):
        raise UsageError(f"{path} is not a plan file")
    return doc["input"], SpecializationPlan.from_json(doc["plan"])


def _document(inp, plan=None, certificate=None, **extra):
    doc = {"schema_version": SCHEMA_VERSION, "input": inp,
           "plan": plan.to_json() if plan else None, "certificate": certificate}
    doc.update(extra)
    return doc


def cmd_analyze(args):
    ext = _ext_from_args(args)
    summary = analyze(ext)
    return 0, _document(summary.pop("input"), analysis=summary)


def cmd_plan(args):
    ext = _ext_from_args(args)
    _require_regular(ext)
    plan = build_plan(ext, args.unram or [], args.ram or [], args.mode)
    lower, upper = discriminant_bounds(ext, plan)
    log.info("planned theta=%s modulus=%s", plan.theta, plan.modulus)
    return 0, _document(ext.to_json(), plan, bounds={"lower": str(lower), "upper": str(upper)})


def cmd_search(args):
    inp, plan = _load_plan(args.plan)
    ext = _ext_from_input(inp)
    certs = [verify_specialization(ext, t0, plan).to_json() for t0 in search_t0(ext, plan, args.count)]
    status = 0 if all(c["all_pass"] for c in certs) else 1
    return status, _document(inp, plan, certs)


def cmd_verify(args):
    inp, plan = _load_plan(args.plan)
    if args.poly is not None:
        inp = dict(inp, poly=str(parse_poly(args.poly)))
    ext = _ext_from_input(inp)
    cert = verify_specialization(ext, args.t0, plan).to_json()
    return (0 if cert["all_pass"] else 1), _document(inp, plan, cert)


def cmd_bounds(args):
    inp, plan = _load_plan(args.plan)
    ext = _ext_from_input(inp)
    lower, upper = discriminant_bounds(ext, plan)
    t0 = select_t0(ext, plan)
    bounds = {
        "lower": str(lower),
        "upper": str(upper),
        "t0": str(t0),
        "t0_bound": str((1 + ext.delta) * plan.modulus),
        "delta_degree": str(ext.delta),
        "delta_height": str(max(abs(c.numerator) for c in ext.disc.coeffs)),
        "beta": str(plan.beta),
    }
    return 0, _document(inp, plan, bounds=bounds)


def build_parser():
    ap = argparse.ArgumentParser(prog="specforge", description=__doc__.splitlines()[0])
    ap.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    def ext_flags(p):
        p.add_argument("--poly", required=True, help="P(T,Y), e.g. 'Y^3 - Y - T'")
        p.add_argument("--group-order", type=int, default=0, help="order of the geometric group (default n!)")
        p.add_argument("--closure-regular", action="store_true", help="declare the Galois closure Q-regular")
        p.add_argument("--declare-inertia", type=parse_declaration, action="append", metavar="I:TYPE",
                       help="declare the inertia type of candidate I (1-based)")
        p.add_argument("--trust-declared", action="store_true", help="skip sampling cross-checks of declarations")

    ext_flags(sub.add_parser("analyze", help="branch points, inertia and bad primes"))
    p = sub.add_parser("plan", help="build a specialization plan")
    ext_flags(p)
    p.add_argument("--unram", type=parse_unram, action="append", metavar="P:TYPE")
    p.add_argument("--ram", type=parse_ram, action="append", metavar="P:I:A")
    p.add_argument("--mode", choices=MODES, default=RELAXED)

    p = sub.add_parser("search", help="first valid t0 values of a plan, with certificates")
    p.add_argument("--plan", required=True)
    p.add_argument("--count", type=int, default=3)

    p = sub.add_parser("verify", help="certificate for one t0")
    p.add_argument("--plan", required=True)
    p.add_argument("--t0", type=int, required=True)
    p.add_argument("--poly", default=None, help="override the polynomial stored in the plan")

    p = sub.add_parser("bounds", help="discriminant bound endpoints of a plan")
    p.add_argument("--plan", required=True)
    return ap


COMMANDS = {"analyze": cmd_analyze, "plan": cmd_plan, "search": cmd_search,
            "verify": cmd_verify, "bounds": cmd_bounds}


def _emit(doc, out):
    out.write(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _usage_error(kind, message, out, offset=None):
    err = {"error": kind, "message": message}
    if offset is not None:
        err["offset"] = offset
    _emit(_document(None, error=err), out)
    return 2


def main(argv=None, out=None):
    out = out or sys.stdout
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except UsageError as exc:
        ap.print_usage(sys.stderr)
        return _usage_error("UsageError", str(exc), out)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        stream=sys.stderr, format="%(levelname)s %(message)s")
    try:
        status, doc = COMMANDS[args.command](args)
    except ParseError as exc:
        return _usage_error(exc.code, str(exc), out, exc.offset)
    except UsageError as exc:
        return _usage_error("UsageError", str(exc), out)
    except SpecforgeError as exc:
        log.error("%s", exc)
        _emit(_document(None, error=exc.to_json()), out)
        return 3
    _emit(doc, out)
    return status


if __name__ == "__main__":
    sys.exit(main())
