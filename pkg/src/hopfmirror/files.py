"""Definition files, element files and machine-readable reports.

Everything is JSON over UTF-8 with string-encoded exact scalars
("p/q", the "/q" dropped for integers; prime-field residues are plain
digit strings).  Tensors are lists of ``[index..., scalar]`` rows with
codomain legs first for maps.  Canonical serialization sorts keys and
entry rows so identical inputs produce byte-identical files; per-check
wall times are kept in memory for humans but serialized as null, since
real timings would break the determinism contract.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field as dc_field
from typing import Optional

from . import __version__
from .errors import InputError, SchemaError, ShapeError
from .fields import Q, field_from_spec
from .hopf import HopfAlgebraData, validate_hopf
from .tensor import LinearMap, SparseTensor

HOPF_FORMAT = "hopfmirror/hopf-v1"
ELEMENT_FORMAT = "hopfmirror/element-v1"
REQUEST_FORMAT = "hopfmirror/request-v1"
REPORT_FORMAT = "hopfmirror/report-v1"

ENV_PRIME = "HOPFMIRROR_PRIME"


def active_field(flag: Optional[str] = None, file_spec: Optional[str] = None):
    """Field precedence: --field flag, then environment, then the file."""
    if flag:
        return field_from_spec(flag)
    env = os.environ.get(ENV_PRIME)
    if env:
        return field_from_spec(f"fp:{env}")
    if file_spec:
        return field_from_spec(file_spec)
    return Q


def _entries_to_rows(entries, field):
    rows = [[*idx, field.format(v)] for idx, v in entries.items()]
    rows.sort(key=lambda r: r[:-1])
    return rows


def _rows_to_entries(rows, rank, shape, field, where):
    if not isinstance(rows, list):
        raise SchemaError("expected a list of entry rows", where)
    entries = {}
    for row in rows:
        if not isinstance(row, list) or len(row) != rank + 1:
            raise SchemaError(f"entry row {row!r} should be {rank} indices and a scalar", where)
        idx = tuple(row[:-1])
        if any(not isinstance(i, int) for i in idx):
            raise SchemaError(f"non-integer index in {row!r}", where)
        if any(not (0 <= i < d) for i, d in zip(idx, shape)):
            raise SchemaError(f"index {idx} out of bounds {shape}", where)
        if not isinstance(row[-1], str):
            raise SchemaError(f"scalar in {row!r} must be a string", where)
        entries[idx] = field.parse(row[-1])
    return entries


def hopf_to_dict(h: HopfAlgebraData) -> dict:
    field = h.field
    spec = "q" if field == Q else f"fp:{field.p}"
    return {
        "format": HOPF_FORMAT,
        "field": spec,
        "dim": h.dim,
        "basis": list(h.basis_labels),
        "unit": _entries_to_rows(h.unit.entries, field),
        "mult": _entries_to_rows(h.mult.tensor.entries, field),
        "counit": _entries_to_rows(h.counit.tensor.entries, field),
        "comult": _entries_to_rows(h.comult.tensor.entries, field),
        "antipode": _entries_to_rows(h.antipode.tensor.entries, field),
    }


def hopf_from_dict(doc: dict, field=None) -> HopfAlgebraData:
    if not isinstance(doc, dict):
        raise SchemaError("definition must be a JSON object")
    dim = doc.get("dim")
    if not isinstance(dim, int) or dim <= 0:
        raise SchemaError("missing or non-positive integer", "dim")
    field = field or active_field(file_spec=doc.get("field"))
    basis = doc.get("basis")
    if basis is not None and (
        not isinstance(basis, list) or len(basis) != dim or any(not isinstance(b, str) for b in basis)
    ):
        raise SchemaError(f"basis must be {dim} label strings", "basis")
    n = (dim,)
    specs = {
        "unit": (1, n),
        "mult": (3, n + n + n),
        "counit": (1, n),
        "comult": (3, n + n + n),
        "antipode": (2, n + n),
    }
    parsed = {}
    for name, (rank, shape) in specs.items():
        if name not in doc:
            raise SchemaError("missing required tensor", name)
        parsed[name] = _rows_to_entries(doc[name], rank, shape, field, name)
    try:
        unit = SparseTensor(n, parsed["unit"], field)
        mult = LinearMap(n + n, n, SparseTensor(n + n + n, parsed["mult"], field))
        counit = LinearMap(n, (), SparseTensor(n, parsed["counit"], field))
        comult = LinearMap(n, n + n, SparseTensor(n + n + n, parsed["comult"], field))
        antipode = LinearMap(n, n, SparseTensor(n + n, parsed["antipode"], field))
        return HopfAlgebraData(dim, basis, unit, mult, counit, comult, antipode, field)
    except ShapeError as exc:
        raise SchemaError(str(exc)) from None


def load_json(path: str) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except FileNotFoundError:
        raise InputError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from None


def load_hopf(path: str, field_flag=None, skip_verify=False, force=False) -> HopfAlgebraData:
    doc = load_json(path)
    if doc.get("format") not in (None, HOPF_FORMAT):
        raise SchemaError(f"unexpected format {doc.get('format')!r}", "format")
    field = active_field(field_flag, doc.get("field"))
    h = hopf_from_dict(doc, field)
    if not skip_verify:
        report = validate_hopf(h, force=force)
        if not report.ok:
            bad = report.failed()[0]
            detail = bad.witness.render(field) if bad.witness else "no witness"
            raise InputError(f"{path}: axiom {bad.name} fails: {detail}")
    return h


def save_hopf(h: HopfAlgebraData, path: str):
    write_canonical_json(hopf_to_dict(h), path)


def element_to_dict(host_ref, element: SparseTensor, field) -> dict:
    return {
        "format": ELEMENT_FORMAT,
        "host": host_ref,
        "legs": len(element.shape),
        "element": _entries_to_rows(element.entries, field),
    }


def load_element(path: str, field_flag=None, skip_verify=False, force=False):
    """Load an element file; returns (host algebra, element tensor)."""
    doc = load_json(path)
    if doc.get("format") not in (None, ELEMENT_FORMAT):
        raise SchemaError(f"unexpected format {doc.get('format')!r}", "format")
    host_ref = doc.get("host")
    if isinstance(host_ref, str):
        host_path = os.path.join(os.path.dirname(os.path.abspath(path)), host_ref)
        host = load_hopf(host_path, field_flag, skip_verify, force)
    elif isinstance(host_ref, dict):
        host = hopf_from_dict(host_ref, active_field(field_flag, host_ref.get("field")))
        if not skip_verify:
            rep = validate_hopf(host, force=force)
            if not rep.ok:
                raise InputError(f"{path}: inline host fails axiom {rep.failed()[0].name}")
    else:
        raise SchemaError("host must be a path or an inline definition", "host")
    legs = doc.get("legs", 2)
    if not isinstance(legs, int) or legs < 1:
        raise SchemaError("legs must be a positive integer", "legs")
    shape = (host.dim,) * legs
    entries = _rows_to_entries(doc.get("element"), legs, shape, host.field, "element")
    return host, SparseTensor(shape, entries, host.field)


def load_request(path: str) -> dict:
    doc = load_json(path)
    if doc.get("format") not in (None, REQUEST_FORMAT):
        raise SchemaError(f"unexpected format {doc.get('format')!r}", "format")
    kind = doc.get("construction")
    if kind not in ("mirror", "twisted_mirror", "mbar"):
        raise SchemaError("construction must be mirror, twisted_mirror or mbar", "construction")
    if not isinstance(doc.get("hopf"), str):
        raise SchemaError("hopf must be a path", "hopf")
    if kind == "twisted_mirror" and not isinstance(doc.get("cocycle"), str):
        raise SchemaError("twisted_mirror requires a cocycle path", "cocycle")
    base = os.path.dirname(os.path.abspath(path))
    out = {"construction": kind, "hopf": os.path.join(base, doc["hopf"])}
    if doc.get("cocycle"):
        out["cocycle"] = os.path.join(base, doc["cocycle"])
    return out


# ---------------------------------------------------------------------
# verification reports
# ---------------------------------------------------------------------


def witness_to_dict(witness, field) -> Optional[dict]:
    if witness is None:
        return None
    return {
        "basis_index": list(witness.basis_index),
        "lhs": [[*(idx if isinstance(idx, tuple) else (idx,)), field.format(v)] for idx, v in witness.lhs],
        "rhs": [[*(idx if isinstance(idx, tuple) else (idx,)), field.format(v)] for idx, v in witness.rhs],
    }


@dataclass
class ReportEntry:
    check_id: str
    passed: bool
    wall_ms: Optional[float] = None
    witness: Optional[dict] = None


@dataclass
class VerificationReport:
    construction: str
    field_name: str
    inputs: dict = dc_field(default_factory=dict)
    entries: list = dc_field(default_factory=list)
    toolkit_version: str = __version__

    def add(self, check_id: str, passed: bool, wall_ms=None, witness=None):
        self.entries.append(ReportEntry(check_id, bool(passed), wall_ms, witness))

    def add_check(self, prefix: str, check, field, wall_ms=None):
        self.add(
            f"{prefix}.{check.name}",
            check.ok,
            wall_ms,
            witness_to_dict(check.witness, field),
        )

    @property
    def passed(self) -> bool:
        return all(e.passed for e in self.entries)

    def to_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "construction": self.construction,
            "toolkit_version": self.toolkit_version,
            "field": self.field_name,
            "inputs": dict(sorted(self.inputs.items())),
            "checks": [
                {
                    "id": e.check_id,
                    "pass": e.passed,
                    "wall_ms": None,  # kept in memory only; see module docstring
                    "witness": e.witness,
                }
                for e in self.entries
            ],
            "passed": self.passed,
        }


def canonical_json(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def write_canonical_json(doc: dict, path: str):
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(doc))
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc}") from None


def emit_report(report: VerificationReport, path: str):
    write_canonical_json(report.to_dict(), path)


def sha256_of(path: str) -> str:
    with open(path, "rb") as fh:
        return "sha256:" + hashlib.sha256(fh.read()).hexdigest()
