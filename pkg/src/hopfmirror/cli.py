"""Command-line surface.

Subcommands: check, twist, mirror, mirror-twisted, mbar, build, prove,
coincide.  Exit codes: 0 all checks passed, 1 at least one check failed,
2 malformed input or usage error.  ``--report`` writes the canonical
verification report (byte-identical across runs on identical inputs).
"""

from __future__ import annotations

import argparse
import sys
import time

from .bicross import (
    assemble,
    check_cross_data,
    check_extension,
    coproduct_display_check,
    mbar_data,
    mirror_data,
    quasitriangular_coincidence,
    theta_coproduct_check,
    twisted_mirror_data,
)
from .errors import AssemblyError, ToolkitError
from .files import (
    VerificationReport,
    active_field,
    emit_report,
    load_element,
    load_hopf,
    load_request,
    save_hopf,
    sha256_of,
    witness_to_dict,
)
from .fields import Q
from .hopf import DIM_CAP, check_morphism, validate_hopf
from .sweedler import EvaluationContext, check_identity, load_identity_file, parse
from .twist import StructureFailure, verify_cocycle, verify_quasitriangular


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hopfmirror",
        description="exact Hopf algebra twisting and mirror-product toolkit",
    )
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--field", help="coefficient field: q or fp:<prime>")
        sp.add_argument("--skip-verify", action="store_true", help="skip axiom checks on loaded inputs")
        sp.add_argument("--force", action="store_true", help="allow dimensions above the cap")
        sp.add_argument("--report", metavar="PATH", help="write a canonical verification report")

    sp = sub.add_parser("check", help="run the full axiom suite on a definition file")
    sp.add_argument("hopf")
    common(sp)

    sp = sub.add_parser("twist", help="twist a Hopf algebra by a cocycle")
    sp.add_argument("hopf")
    sp.add_argument("cocycle")
    sp.add_argument("-o", "--out", help="write the twisted algebra here")
    common(sp)

    for name, hlp in (
        ("mirror", "assemble the mirror product"),
        ("mirror-twisted", "assemble the twisted mirror product"),
        ("mbar", "assemble the conjugation product"),
    ):
        sp = sub.add_parser(name, help=hlp)
        sp.add_argument("hopf")
        if name == "mirror-twisted":
            sp.add_argument("cocycle")
        sp.add_argument("-o", "--out", help="write the total Hopf algebra here")
        common(sp)

    sp = sub.add_parser("build", help="run a construction request file")
    sp.add_argument("request")
    sp.add_argument("-o", "--out")
    common(sp)

    sp = sub.add_parser("prove", help="check identity-file lines on an algebra")
    sp.add_argument("hopf")
    sp.add_argument("identities")
    sp.add_argument("--cocycle", help="element file bound to every declared cocycle name")
    common(sp)

    sp = sub.add_parser("coincide", help="compare twist-by-R and conjugation products")
    sp.add_argument("hopf")
    sp.add_argument("rmatrix")
    common(sp)
    return p


def _emit(report: VerificationReport, args) -> int:
    for entry in report.entries:
        line = f"{'PASS' if entry.passed else 'FAIL'} {entry.check_id}"
        if not entry.passed and entry.witness:
            line += f"  witness: {entry.witness}"
        print(line)
    print(f"{'OK' if report.passed else 'FAILED'}: {sum(e.passed for e in report.entries)}"
          f"/{len(report.entries)} checks passed")
    if args.report:
        emit_report(report, args.report)
    return 0 if report.passed else 1


def _field_name(args) -> str:
    f = active_field(args.field)
    return "q" if f == Q else f"fp:{f.p}"


def _timed(report, prefix, checks, field):
    for check in checks:
        t0 = time.perf_counter()
        report.add_check(prefix, check, field, wall_ms=(time.perf_counter() - t0) * 1000.0)


def cmd_check(args) -> int:
    report = VerificationReport("check", _field_name(args), {args.hopf: sha256_of(args.hopf)})
    h = load_hopf(args.hopf, args.field, skip_verify=True, force=args.force)
    t0 = time.perf_counter()
    axioms = validate_hopf(h, force=args.force)
    ms = (time.perf_counter() - t0) * 1000.0 / len(axioms.checks)
    for c in axioms.checks:
        report.add_check("axioms", c, h.field, wall_ms=ms)
    return _emit(report, args)


def cmd_twist(args) -> int:
    from .twist import twist_hopf

    report = VerificationReport(
        "twist",
        _field_name(args),
        {args.hopf: sha256_of(args.hopf), args.cocycle: sha256_of(args.cocycle)},
    )
    h = load_hopf(args.hopf, args.field, args.skip_verify, args.force)
    chost, element = load_element(args.cocycle, args.field, args.skip_verify, args.force)
    if chost != h:
        report.add("cocycle.host_matches", False)
        return _emit(report, args)
    out = verify_cocycle(h, element)
    if isinstance(out, StructureFailure):
        report.add("cocycle.valid", False, witness=_failure_witness(out, h.field))
        return _emit(report, args)
    report.add("cocycle.valid", True)
    twisted = twist_hopf(out)
    for c in validate_hopf(twisted, force=args.force).checks:
        report.add_check("twisted.axioms", c, h.field)
    if args.out:
        save_hopf(twisted, args.out)
    return _emit(report, args)


def _failure_witness(failure: StructureFailure, field):
    if failure.check is not None and failure.check.witness is not None:
        return witness_to_dict(failure.check.witness, field)
    return {"kind": failure.kind}


def _construction_report(kind, data, args, report) -> int:
    total_dim = data.h_part.dim * data.a_part.dim
    if total_dim > DIM_CAP and not args.force:
        raise ToolkitError(
            f"total dimension {total_dim} exceeds cap {DIM_CAP}; rerun with --force"
        )
    field = data.host.field
    _timed(report, "cross_data", check_cross_data(data), field)
    try:
        b = assemble(data)
    except AssemblyError as exc:
        report.add("assembly.agree", False, witness={"error": str(exc)})
        return _emit(report, args)
    _timed(report, "assembly", b.agreement, field)
    for c in validate_hopf(b.total, force=args.force).checks:
        report.add_check("total.axioms", c, field)
    fwd = check_morphism(b.theta, b.tensor_form, b.total)
    back = check_morphism(b.theta_inverse, b.total, b.tensor_form)
    report.add("theta.forward_isomorphism", fwd.is_isomorphism)
    report.add("theta.backward_isomorphism", back.is_isomorphism)
    _timed(report, "display", [coproduct_display_check(b), theta_coproduct_check(b)], field)
    ext = check_extension(b)
    report.add("extension.iota_morphism", ext.iota.is_morphism)
    report.add("extension.iota_injective", ext.iota.is_injective)
    report.add("extension.pi_morphism", ext.pi.is_morphism)
    report.add("extension.pi_surjective", ext.pi.is_surjective)
    report.add_check("extension", ext.composite, field)
    if args.out:
        save_hopf(b.total, args.out)
    return _emit(report, args)


def _build_data(kind, hopf_path, cocycle_path, args, report):
    h = load_hopf(hopf_path, args.field, args.skip_verify, args.force)
    if kind == "mirror":
        return mirror_data(h)
    if kind == "mbar":
        return mbar_data(h)
    chost, element = load_element(cocycle_path, args.field, args.skip_verify, args.force)
    if chost != h:
        raise ToolkitError("cocycle host algebra differs from the construction input")
    out = verify_cocycle(h, element)
    if isinstance(out, StructureFailure):
        report.add("cocycle.valid", False, witness=_failure_witness(out, h.field))
        return None
    report.add("cocycle.valid", True)
    return twisted_mirror_data(h, out)


def cmd_construction(kind, hopf_path, cocycle_path, args) -> int:
    inputs = {hopf_path: sha256_of(hopf_path)}
    if cocycle_path:
        inputs[cocycle_path] = sha256_of(cocycle_path)
    report = VerificationReport(kind, _field_name(args), inputs)
    data = _build_data(kind, hopf_path, cocycle_path, args, report)
    if data is None:
        return _emit(report, args)
    return _construction_report(kind, data, args, report)


def cmd_build(args) -> int:
    req = load_request(args.request)
    return cmd_construction(req["construction"], req["hopf"], req.get("cocycle"), args)


def cmd_prove(args) -> int:
    inputs = {args.hopf: sha256_of(args.hopf), args.identities: sha256_of(args.identities)}
    if args.cocycle:
        inputs[args.cocycle] = sha256_of(args.cocycle)
    report = VerificationReport("prove", _field_name(args), inputs)
    h = load_hopf(args.hopf, args.field, args.skip_verify, args.force)
    lines = load_identity_file(args.identities)
    needs_cocycle = any(line.cocycles for line in lines)
    if needs_cocycle and not args.cocycle:
        raise ToolkitError("identity file declares cocycles; pass --cocycle")
    bindings = {}
    if args.cocycle:
        chost, element = load_element(args.cocycle, args.field, args.skip_verify, args.force)
        if chost != h:
            raise ToolkitError("cocycle host algebra differs from the prove input")
        out = verify_cocycle(h, element)
        if isinstance(out, StructureFailure):
            report.add("cocycle.valid", False, witness=_failure_witness(out, h.field))
            return _emit(report, args)
        report.add("cocycle.valid", True)
        names = sorted({n for line in lines for n in line.cocycles})
        bindings = {n: (out.element, out.inverse) for n in names}
    ctx = EvaluationContext(h, bindings)
    for line in lines:
        t0 = time.perf_counter()
        lhs = parse(line.lhs, variables=tuple(line.variables), cocycles=line.cocycles)
        rhs = parse(line.rhs, variables=tuple(line.variables), cocycles=line.cocycles)
        for name, cap in line.variables.items():
            for side in (lhs, rhs):
                used = side.variables.get(name, 0)
                if cap is not None and used > cap:
                    raise ToolkitError(
                        f"line {line.lineno}: variable {name} uses depth {used} > declared {cap}"
                    )
        res = check_identity(lhs, rhs, ctx)
        witness = None
        if not res.ok:
            w = res.witness
            witness = {
                "line": line.lineno,
                "assignment": w.assignment,
                "lhs": [[*i, h.field.format(v)] for i, v in sorted(w.lhs.entries.items())],
                "rhs": [[*i, h.field.format(v)] for i, v in sorted(w.rhs.entries.items())],
            }
            print(f"identity {line.name!r} fails (line {line.lineno})")
        report.add(
            f"identity.{line.name}", res.ok,
            wall_ms=(time.perf_counter() - t0) * 1000.0, witness=witness,
        )
    return _emit(report, args)


def cmd_coincide(args) -> int:
    inputs = {args.hopf: sha256_of(args.hopf), args.rmatrix: sha256_of(args.rmatrix)}
    report = VerificationReport("coincide", _field_name(args), inputs)
    h = load_hopf(args.hopf, args.field, args.skip_verify, args.force)
    rhost, element = load_element(args.rmatrix, args.field, args.skip_verify, args.force)
    if rhost != h:
        raise ToolkitError("R-matrix host algebra differs from the input algebra")
    q = verify_quasitriangular(h, element)
    if isinstance(q, StructureFailure):
        report.add("rmatrix.valid", False, witness=_failure_witness(q, h.field))
        return _emit(report, args)
    report.add("rmatrix.valid", True)
    rep = quasitriangular_coincidence(h, q)
    report.add("coincidence.algebra_map", rep.morphism.is_algebra_map)
    report.add("coincidence.coalgebra_map", rep.morphism.is_coalgebra_map)
    report.add("coincidence.unit_counit", rep.morphism.is_unit_counit_preserving)
    report.add("coincidence.bijective", rep.morphism.is_bijective)
    report.add("coincidence.a_parts_equal", rep.a_parts_equal)
    report.add("coincidence.holds", rep.holds)
    return _emit(report, args)


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    try:
        if args.command == "check":
            return cmd_check(args)
        if args.command == "twist":
            return cmd_twist(args)
        if args.command == "mirror":
            return cmd_construction("mirror", args.hopf, None, args)
        if args.command == "mirror-twisted":
            return cmd_construction("twisted_mirror", args.hopf, args.cocycle, args)
        if args.command == "mbar":
            return cmd_construction("mbar", args.hopf, None, args)
        if args.command == "build":
            return cmd_build(args)
        if args.command == "prove":
            return cmd_prove(args)
        if args.command == "coincide":
            return cmd_coincide(args)
        parser.error(f"unknown command {args.command!r}")
    except ToolkitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 2


def main():  # pragma: no cover - thin wrapper
    sys.exit(run_command(sys.argv[1:]))
