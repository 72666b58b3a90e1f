"""Command line: ``weakhopf verify | wreath | gallery``.

Exit codes: 0 when every check passes, 1 on an axiom failure, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys

from .errors import ReportError, StructureViolation, UnknownTarget, WeakHopfError
from .gallery import GALLERY, build_gallery
from .report import AxiomReport
from .scalars import QQ, Field, cyclotomic_field, make_field
from .specfile import SpecFile, algebra_entry, load
from .wdl import WeakDistLaw, verify_law
from .wha import WeakHopfAlgebra, verify_antipode, verify_projections, verify_weak_bialgebra
from .wreath import build_wreath, wreath_consistency_suite

EXIT_OK, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def parse_field(text: str) -> Field:
    """``Q``, ``F5`` / ``Fp:5``, ``cyclotomic:3`` or a JSON descriptor."""
    t = text.strip()
    if t in ("Q", "QQ"):
        return QQ
    if t.startswith("{"):
        return make_field(json.loads(t))
    if t.startswith("Fp:"):
        return make_field({"field": "Fp", "p": int(t[3:])})
    if t.startswith("F") and t[1:].isdigit():
        return make_field({"field": "Fp", "p": int(t[1:])})
    if t.startswith("cyclotomic:"):
        return cyclotomic_field(int(t.split(":", 1)[1]))
    raise ValueError(f"unrecognised field {text!r}")


def verify_target(spec: SpecFile, name: str) -> AxiomReport:
    """Run the checker stack appropriate to the named algebra or law."""
    if name in spec.laws:
        return verify_law(spec.laws[name])
    if name not in spec.algebras:
        known = ", ".join(sorted([*spec.algebras, *spec.laws])) or "none"
        raise UnknownTarget(f"no algebra or law named {name!r} (known: {known})")
    H = spec.algebras[name]
    rep = verify_weak_bialgebra(H, name)
    if rep.passed:
        rep.extend(verify_projections(H), "projections:")
        if isinstance(H, WeakHopfAlgebra):
            rep.extend(verify_antipode(H, H.antipode), "antipode:")
    return rep


def _emit(payload: dict, report: AxiomReport, fmt: str, out) -> None:
    if fmt == "json":
        out.write(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        out.write(report.render_text() + "\n")


def cmd_verify(args, out) -> int:
    spec = load(args.file)
    rep = verify_target(spec, args.name)
    _emit(rep.to_dict(), rep, args.format, out)
    return EXIT_OK if rep.passed else EXIT_FAIL


def wreath_report(law: WeakDistLaw, with_antipode: bool = False):
    """Build the product and collect every report; returns (report, product spec)."""
    w = build_wreath(law)
    rep = AxiomReport(f"wreath product of {law.name}", field=law.field)
    rep.extend(w.report, "product:")
    rep.extend(wreath_consistency_suite(w), "consistency:")
    product = w.product
    if with_antipode:
        product = w.antipode
        rep.extend(verify_antipode(product, product.antipode), "antipode:")
    rep.derived["basis"] = list(product.labels)
    return rep, SpecFile.collect(product, field=law.field)


def cmd_wreath(args, out) -> int:
    spec = load(args.file)
    if args.law not in spec.laws:
        raise UnknownTarget(f"no law named {args.law!r} (known: {', '.join(sorted(spec.laws)) or 'none'})")
    try:
        rep, product = wreath_report(spec.laws[args.law], args.antipode)
    except ReportError as exc:
        rep = exc.report or AxiomReport(args.law)
        sys.stderr.write(f"error: {exc}\n")
        _emit(rep.to_dict(), rep, args.format, out)
        return EXIT_FAIL
    if args.emit:
        product.dump(args.emit)
    payload = rep.to_dict()
    payload["product"] = product.to_dict()
    if args.format == "json":
        _emit(payload, rep, "json", out)
    else:
        (name, H), = product.algebras.items()
        out.write(rep.render_text() + "\n")
        out.write(f"product {name}: dim {H.dim}\n")
        if args.antipode:
            entry = algebra_entry(H)
            out.write(f"antipode: {json.dumps(entry['antipode'], ensure_ascii=False)}\n")
    return EXIT_OK if rep.passed else EXIT_FAIL


def cmd_gallery(args, out) -> int:
    field = parse_field(args.field) if args.field else QQ
    item = build_gallery(args.name, args.params, field)
    spec = SpecFile.collect(*item.algebras.values(), *item.laws.values(), field=item.field)
    if args.emit:
        spec.dump(args.emit)
        names = ", ".join([*spec.algebras, *spec.laws])
        out.write(f"wrote {args.emit}: {names}\n")
    else:
        out.write(spec.dumps())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="weakhopf", description="Exact checks for weak bialgebras and their wreath products.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="check the axioms of a named algebra or law")
    v.add_argument("file")
    v.add_argument("name")
    v.add_argument("--format", choices=("text", "json"), default="text")
    v.set_defaults(run=cmd_verify)

    w = sub.add_parser("wreath", help="build the weak wreath product of a law")
    w.add_argument("file")
    w.add_argument("law")
    w.add_argument("--antipode", action="store_true", help="also construct and check the antipode")
    w.add_argument("--format", choices=("text", "json"), default="text")
    w.add_argument("--emit", metavar="PATH", help="write the product as a spec file")
    w.set_defaults(run=cmd_wreath)

    g = sub.add_parser("gallery", help="export a built-in example as a spec file")
    g.add_argument("name", choices=sorted(GALLERY))
    g.add_argument("params", nargs="*")
    g.add_argument("--emit", metavar="PATH")
    g.add_argument("--field", help="Q, F5, cyclotomic:3 or a JSON descriptor")
    g.set_defaults(run=cmd_gallery)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.run(args, out)
    except ReportError as exc:
        sys.stderr.write(f"error: {exc}\n")
        if exc.report is not None:
            out.write(exc.report.render_text() + "\n")
        return EXIT_FAIL
    except StructureViolation as exc:
        sys.stderr.write(f"error: {exc}\n")
        out.write(f"FAIL {type(exc).__name__}: {exc}\n  witness: {exc.witness}\n")
        return EXIT_FAIL
    except (WeakHopfError, ValueError, KeyError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
        sys.stderr.write(f"error: {msg}\n")
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
