"""Command-line front end.

Every subcommand reads trop/1 JSON documents from file paths (or "-" for
standard input) and writes its result to standard output or --out.  Exit
status: 0 on success, 1 when a mathematical check fails (nonzero residual,
balancing violations, unequal projection integrals, invalid complex), 2 on
malformed input or usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import io as tio
from .cycle import (
    Current,
    check_balancing,
    current_eval,
    projection_check,
    pushforward,
)
from .hypersurface import corner_locus
from .integrate import (
    green_residual,
    integrate_boundary,
    integrate_complex,
    integrate_complex_boundary,
    integrate_polytope,
    stokes_residual,
)
from .polyhedra import faces, refine, truncate, validate_complex


class InputError(Exception):
    pass


class CheckFailure(Exception):
    """Mathematical check failed; carries the report to print."""

    def __init__(self, report):
        super().__init__("check failed")
        self.report = report


def _read(path):
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise InputError("cannot read %s: %s" % (path, e.strerror))


def _load(path, expect=None):
    try:
        return tio.parse(_read(path), expect=expect)
    except (tio.SchemaError, ValueError) as e:
        raise InputError("%s: %s" % (path, e))


def _load_domain(path):
    """A polyhedron or weighted complex, for integration-style commands."""
    text = _read(path)
    try:
        kind = tio.kind_of_text(text)
        if kind not in ("polyhedron", "weighted-complex"):
            raise InputError(
                "%s: expected a polyhedron or weighted-complex, got %r"
                % (path, kind))
        return tio.parse(text)
    except (tio.SchemaError, ValueError) as e:
        raise InputError("%s: %s" % (path, e))


def _report(command, body):
    doc = {"format": tio.FORMAT, "kind": "report", "command": command}
    doc.update(body)
    return json.dumps(doc, indent=2) + "\n"


def _maybe_truncate(domain, args):
    window = getattr(args, "window", None)
    if window is None:
        return domain
    box = _load(window, expect="polyhedron")
    if hasattr(domain, "truncated"):
        return domain.truncated(box)
    from .polyhedra import intersect
    return intersect(domain, box)


# ---------------------------------------------------------------------------
# subcommands; each returns the output text and may raise CheckFailure

def _cmd_check_balancing(args):
    wc = _load(args.cycle, expect="weighted-complex")
    violations = check_balancing(wc)
    body = {
        "balanced": not violations,
        "violations": [
            {"face": tio._emit_polyhedron(rho),
             "excess": [tio.rational_str(x) for x in t]}
            for rho, t in violations
        ],
    }
    text = _report("check-balancing", body)
    if violations:
        raise CheckFailure(text)
    return text


def _cmd_integrate(args):
    domain = _maybe_truncate(_load_domain(args.domain), args)
    form = _load(args.form, expect="superform")
    try:
        if hasattr(domain, "weighted_cells"):
            value = integrate_complex(domain, form)
        else:
            value = integrate_polytope(domain, form)
    except ValueError as e:
        raise InputError(str(e))
    return _report("integrate", {"value": tio.rational_str(value)})


def _cmd_integrate_boundary(args):
    domain = _maybe_truncate(_load_domain(args.domain), args)
    form = _load(args.form, expect="superform")
    try:
        if hasattr(domain, "weighted_cells"):
            value = integrate_complex_boundary(domain, form)
        else:
            value = integrate_boundary(domain, form)
    except ValueError as e:
        raise InputError(str(e))
    return _report("integrate-boundary", {"value": tio.rational_str(value)})


def _cmd_stokes(args):
    domain = _maybe_truncate(_load_domain(args.domain), args)
    eta_prime = _load(args.eta_prime, expect="superform")
    eta_second = _load(args.eta_second, expect="superform")
    try:
        r1, r2 = stokes_residual(domain, eta_prime, eta_second)
    except ValueError as e:
        raise InputError(str(e))
    text = _report("stokes", {
        "residuals": [tio.rational_str(r1), tio.rational_str(r2)],
        "ok": r1 == 0 and r2 == 0,
    })
    if r1 != 0 or r2 != 0:
        raise CheckFailure(text)
    return text


def _cmd_green(args):
    sigma = _load(args.domain, expect="polyhedron")
    alpha = _load(args.alpha, expect="superform")
    beta = _load(args.beta, expect="superform")
    try:
        res = green_residual(sigma, alpha, beta)
    except ValueError as e:
        raise InputError(str(e))
    text = _report("green", {"residual": tio.rational_str(res), "ok": res == 0})
    if res != 0:
        raise CheckFailure(text)
    return text


def _cmd_pushforward(args):
    f = _load(args.map, expect="map")
    wc = _load(args.cycle, expect="weighted-complex")
    try:
        return tio.emit(pushforward(f, wc))
    except ValueError as e:
        raise InputError(str(e))


def _cmd_projection_check(args):
    f = _load(args.map, expect="map")
    wc = _load(args.cycle, expect="weighted-complex")
    form = _load(args.form, expect="superform")
    if args.window is None:
        raise InputError("projection-check requires --window")
    window = _load(args.window, expect="polyhedron")
    try:
        left, right = projection_check(f, wc, form, window)
    except ValueError as e:
        raise InputError(str(e))
    text = _report("projection-check", {
        "pushforward_integral": tio.rational_str(left),
        "pullback_integral": tio.rational_str(right),
        "equal": left == right,
    })
    if left != right:
        raise CheckFailure(text)
    return text


def _cmd_current_eval(args):
    wc = _load(args.cycle, expect="weighted-complex")
    form = _load(args.form, expect="superform")
    if args.window is None:
        raise InputError("current-eval requires --window")
    window = _load(args.window, expect="polyhedron")
    cur = Current.dirac(wc)
    for op in args.ops:
        cur = cur.apply({"d'": "d_prime", "d''": "d_second"}[op])
    try:
        value = current_eval(cur, form, window)
    except ValueError as e:
        raise InputError(str(e))
    return _report("current-eval", {"value": tio.rational_str(value)})


def _cmd_hypersurface(args):
    tp = _load(args.polynomial, expect="tropical-polynomial")
    return tio.emit(corner_locus(tp), kind="weighted-complex")


def _cmd_refine(args):
    c = _load(args.complex, expect="complex")
    d = _load(args.other, expect="complex")
    return tio.emit(refine(c, d), kind="complex")


def _cmd_truncate(args):
    text = _read(args.complex)
    try:
        kind = tio.kind_of_text(text)
        obj = tio.parse(text)
    except (tio.SchemaError, ValueError) as e:
        raise InputError("%s: %s" % (args.complex, e))
    box = _load(args.box, expect="polyhedron")
    if kind == "weighted-complex":
        return tio.emit(obj.truncated(box))
    if kind == "complex":
        return tio.emit(truncate(obj, box), kind="complex")
    raise InputError("%s: expected a complex or weighted-complex" % args.complex)


def _cmd_faces(args):
    p = _load(args.polyhedron, expect="polyhedron")
    if args.codim < 0 or (not p.is_empty and args.codim > p.dim):
        raise InputError("codimension out of range")
    return tio.emit(faces(p, args.codim), kind="polyhedron-list")


def _cmd_validate(args):
    c = _load(args.complex, expect="complex")
    violations = validate_complex(c)
    text = _report("validate", {
        "valid": not violations,
        "violations": [str(v) for v in violations],
    })
    if violations:
        raise CheckFailure(text)
    return text


def _add_window(sp):
    sp.add_argument("--window", metavar="FILE",
                    help="polyhedron document used as a bounded truncation box")


def build_parser():
    output = argparse.ArgumentParser(add_help=False)
    output.add_argument("--out", metavar="FILE",
                        help="write output here instead of stdout")
    output.add_argument("--format", choices=["json"], default="json",
                        help="output format (json only)")
    ap = argparse.ArgumentParser(
        prog="tropform",
        description="Exact calculus of superforms on tropical cycles.",
        parents=[output])
    sub = ap.add_subparsers(dest="command", required=True,
                            parser_class=lambda **kw: argparse.ArgumentParser(
                                parents=[output], **kw))

    sp = sub.add_parser("check-balancing", help="test the balancing condition")
    sp.add_argument("cycle")
    sp.set_defaults(func=_cmd_check_balancing)

    sp = sub.add_parser("integrate", help="integrate a superform")
    sp.add_argument("domain")
    sp.add_argument("form")
    _add_window(sp)
    sp.set_defaults(func=_cmd_integrate)

    sp = sub.add_parser("integrate-boundary", help="boundary integral")
    sp.add_argument("domain")
    sp.add_argument("form")
    _add_window(sp)
    sp.set_defaults(func=_cmd_integrate_boundary)

    sp = sub.add_parser("stokes", help="Stokes residuals (must be zero)")
    sp.add_argument("domain")
    sp.add_argument("eta_prime")
    sp.add_argument("eta_second")
    _add_window(sp)
    sp.set_defaults(func=_cmd_stokes)

    sp = sub.add_parser("green", help="Green residual (must be zero)")
    sp.add_argument("domain")
    sp.add_argument("alpha")
    sp.add_argument("beta")
    sp.set_defaults(func=_cmd_green)

    sp = sub.add_parser("pushforward", help="push a cycle forward along a map")
    sp.add_argument("map")
    sp.add_argument("cycle")
    sp.set_defaults(func=_cmd_pushforward)

    sp = sub.add_parser("projection-check", help="both sides of the projection formula")
    sp.add_argument("map")
    sp.add_argument("cycle")
    sp.add_argument("form")
    _add_window(sp)
    sp.set_defaults(func=_cmd_projection_check)

    sp = sub.add_parser("current-eval", help="evaluate a Dirac supercurrent")
    sp.add_argument("cycle")
    sp.add_argument("form")
    sp.add_argument("--ops", nargs="*", choices=["d'", "d''"], default=[],
                    help="operators applied to the current, innermost first")
    _add_window(sp)
    sp.set_defaults(func=_cmd_current_eval)

    sp = sub.add_parser("hypersurface", help="corner locus of a tropical polynomial")
    sp.add_argument("polynomial")
    sp.set_defaults(func=_cmd_hypersurface)

    sp = sub.add_parser("refine", help="common refinement of two complexes")
    sp.add_argument("complex")
    sp.add_argument("other")
    sp.set_defaults(func=_cmd_refine)

    sp = sub.add_parser("truncate", help="intersect a complex with a box")
    sp.add_argument("complex")
    sp.add_argument("box")
    sp.set_defaults(func=_cmd_truncate)

    sp = sub.add_parser("faces", help="faces of a polyhedron of given codimension")
    sp.add_argument("polyhedron")
    sp.add_argument("codim", type=int)
    sp.set_defaults(func=_cmd_faces)

    sp = sub.add_parser("validate", help="check the polyhedral-complex axioms")
    sp.add_argument("complex")
    sp.set_defaults(func=_cmd_validate)

    return ap


def _write(args, text):
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def main(argv=None):
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        text = args.func(args)
    except CheckFailure as e:
        _write(args, e.report)
        return 1
    except InputError as e:
        print("error: %s" % e, file=sys.stderr)
        return 2
    _write(args, text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
