"""A small language for structure-map formulas in index (Sweedler) notation.

An expression is a list of tensor slots separated by ``(x)``; each slot
is a whitespace-separated product of atoms, multiplied left to right in
the algebra.  Atoms are:

``h3``
    leg 3 of the iterated coproduct of variable ``h`` (legs used by a
    variable must form the contiguous range 1..depth);
``S(atom)``
    antipode applied to an atom; nests for higher powers;
``X1`` / ``X2``
    the two legs of a bound 2-leg element (a "cocycle" name); ``Xi1`` is
    the corresponding leg of its bound inverse; primes (``X'1``) name
    independent copies, each summed separately;
``X2.1`` / ``X2.2``
    the coproduct pieces of one leg of a bound element (the pieces used
    per leg must be contiguous from 1);
``1``
    the unit element.

Evaluation expands each variable through the iterated coproduct of the
context algebra, sums every bound-element copy independently, multiplies
atoms within a slot using the context's multiplication (plain or
opposite) and tensors the slots.  Everything is exact.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import EvaluationError, InputError, ParseError
from .hopf import HopfAlgebraData, coproduct_columns, iterated_coproduct
from .tensor import SparseTensor, apply_at

MAX_VARIABLE_DEPTH = 12
MAX_COPIES = 4

_COCYCLE_TAIL = re.compile(r"(i?)('*)([12])(?:\.([1-9]))?\Z")
_VARIABLE = re.compile(r"([A-Za-z]+)([1-9]\d*)\Z")

SLOT_SEPARATOR = "(x)"


@dataclass(frozen=True)
class Atom:
    kind: str  # "var" | "cocycle" | "unit"
    name: str = ""
    leg: int = 0
    piece: int = 0  # 0 = whole leg, else 1-based coproduct piece
    inverse: bool = False
    primes: int = 0
    antipode: int = 0

    @property
    def instance(self) -> tuple:
        return (self.name, self.inverse, self.primes)


@dataclass
class SweedlerExpr:
    text: str
    slots: list
    variables: dict  # name -> inferred depth, in first-use order
    cocycle_names: tuple
    instances: dict  # (name, inverse, primes) -> (depth of leg 1, depth of leg 2)

    @property
    def slot_count(self) -> int:
        return len(self.slots)

    def uses_cocycles(self) -> bool:
        return bool(self.instances)


def _parse_token(tok: str, col: int, variables, cocycles) -> Atom:
    antipode = 0
    while tok.startswith("S(") and tok.endswith(")"):
        antipode += 1
        tok = tok[2:-1]
    if tok == "1":
        return Atom("unit", antipode=antipode)
    for name in sorted(cocycles, key=len, reverse=True):
        if tok.startswith(name):
            m = _COCYCLE_TAIL.match(tok[len(name):])
            if m:
                inv, primes, leg, piece = m.groups()
                return Atom(
                    "cocycle",
                    name=name,
                    leg=int(leg),
                    piece=int(piece) if piece else 0,
                    inverse=bool(inv),
                    primes=len(primes),
                    antipode=antipode,
                )
    m = _VARIABLE.match(tok)
    if m and m.group(1) in variables:
        return Atom("var", name=m.group(1), leg=int(m.group(2)), antipode=antipode)
    raise ParseError(f"unknown token {tok!r}", column=col)


def parse(text: str, variables=(), cocycles=()) -> SweedlerExpr:
    """Parse an expression; depths are inferred from the legs used."""
    variables = tuple(variables)
    cocycles = tuple(cocycles)
    reserved = {"1", "S"}
    for name in tuple(variables) + tuple(cocycles):
        if not name.isalpha() or name in reserved:
            raise InputError(f"bad declared name {name!r}")
    if set(variables) & set(cocycles):
        raise InputError("variable and cocycle names must be disjoint")

    slots: list[list[Atom]] = [[]]
    var_legs: dict[str, set] = {}
    inst_pieces: dict[tuple, dict] = {}
    for m in re.finditer(r"\S+", text):
        tok, col = m.group(0), m.start() + 1
        if tok == SLOT_SEPARATOR:
            if not slots[-1]:
                raise ParseError("empty tensor slot", column=col)
            slots.append([])
            continue
        atom = _parse_token(tok, col, variables, cocycles)
        slots[-1].append(atom)
        if atom.kind == "var":
            var_legs.setdefault(atom.name, set()).add(atom.leg)
        elif atom.kind == "cocycle":
            inst_pieces.setdefault(atom.instance, {}).setdefault(atom.leg, set()).add(atom.piece)
    if not slots[-1]:
        raise ParseError("empty tensor slot", column=len(text))

    depths = {}
    for name in variables:
        legs = var_legs.get(name)
        if legs is None:
            continue
        depth = max(legs)
        if legs != set(range(1, depth + 1)):
            raise ParseError(f"non-contiguous legs for variable {name!r}: {sorted(legs)}")
        if depth > MAX_VARIABLE_DEPTH:
            raise ParseError(f"variable {name!r} depth {depth} exceeds cap {MAX_VARIABLE_DEPTH}")
        depths[name] = depth

    instances = {}
    for key, legs in inst_pieces.items():
        leg_depths = [1, 1]
        for leg, pieces in legs.items():
            if pieces == {0}:
                leg_depths[leg - 1] = 1
            elif 0 in pieces:
                raise ParseError(
                    f"cocycle {key[0]!r} leg {leg} mixes split and unsplit uses"
                )
            else:
                d = max(pieces)
                if pieces != set(range(1, d + 1)):
                    raise ParseError(
                        f"non-contiguous coproduct pieces for cocycle {key[0]!r} leg {leg}"
                    )
                leg_depths[leg - 1] = d
        instances[key] = tuple(leg_depths)
    copies = {(name, primes) for (name, _inv, primes) in instances}
    if len(copies) > MAX_COPIES:
        raise ParseError(f"{len(copies)} cocycle copies exceed the cap {MAX_COPIES}")

    # order variables by first use
    ordered = {}
    for slot in slots:
        for atom in slot:
            if atom.kind == "var" and atom.name not in ordered:
                ordered[atom.name] = depths[atom.name]
    return SweedlerExpr(text, slots, ordered, cocycles, instances)


@dataclass
class EvaluationContext:
    """Where an expression is evaluated.

    ``bindings`` maps each cocycle name to a pair (element, inverse) of
    2-leg tensors over the algebra; the inverse may be None when no
    inverse atom occurs.  ``opposite`` multiplies slots in H^op instead.
    Bindings are not re-verified here; build them from verified Cocycle
    objects unless deliberately probing a broken binding.
    """

    algebra: HopfAlgebraData
    bindings: dict = dc_field(default_factory=dict)
    opposite: bool = False


def _vector_of(entry) -> dict:
    return {idx[0]: v for idx, v in entry.items()}


def _apply_antipode(vec: dict, scols: dict, times: int) -> dict:
    for _ in range(times):
        out: dict = {}
        for i, c in vec.items():
            for j, s in scols.get(i, ()):
                cur = out.get(j)
                cur = c * s if cur is None else cur + c * s
                if cur:
                    out[j] = cur
                elif j in out:
                    del out[j]
        vec = out
    return vec


def _instance_terms(expr: SweedlerExpr, ctx: EvaluationContext):
    """Expanded entry lists for each independent bound-element copy."""
    out = []
    for key in sorted(expr.instances):
        name, inverse, _primes = key
        binding = ctx.bindings.get(name)
        if binding is None:
            raise EvaluationError(f"cocycle {name!r} is not bound in the context")
        element = binding[1] if inverse else binding[0]
        if element is None:
            raise EvaluationError(f"no inverse bound for cocycle {name!r}")
        if element.shape != (ctx.algebra.dim,) * 2:
            raise EvaluationError(
                f"binding for {name!r} has shape {element.shape}, expected 2 legs of "
                f"dimension {ctx.algebra.dim}"
            )
        d1, d2 = expr.instances[key]
        t = element
        if d1 > 1:
            t = apply_at(iterated_coproduct(ctx.algebra, d1), t, 0)
        if d2 > 1:
            t = apply_at(iterated_coproduct(ctx.algebra, d2), t, d1)
        out.append((key, d1, list(t.entries.items())))
    return out


def _variable_terms(expr: SweedlerExpr, ctx: EvaluationContext, args: dict):
    out = []
    n = ctx.algebra.dim
    for name, depth in expr.variables.items():
        if name not in args:
            raise EvaluationError(f"no argument supplied for variable {name!r}")
        arg = args[name]
        cols = coproduct_columns(ctx.algebra, depth)
        if isinstance(arg, SparseTensor):
            if arg.shape != (n,):
                raise EvaluationError(f"argument for {name!r} has shape {arg.shape}")
            acc: dict = {}
            for (i,), c in arg.entries.items():
                for legs, v in cols[i]:
                    cur = acc.get(legs)
                    cur = c * v if cur is None else cur + c * v
                    if cur:
                        acc[legs] = cur
                    elif legs in acc:
                        del acc[legs]
            terms = list(acc.items())
        else:
            i = int(arg)
            if not (0 <= i < n):
                raise EvaluationError(f"basis index {i} out of range for {name!r}")
            terms = cols[i]
        out.append((name, terms))
    return out


def evaluate(expr: SweedlerExpr, ctx: EvaluationContext, args: dict) -> SparseTensor:
    """Evaluate on one basis (or element) assignment of the variables."""
    alg = ctx.algebra
    n = alg.dim
    field = alg.field
    buckets = alg.mult_buckets(opposite=ctx.opposite)
    scols = alg.antipode_columns()
    unit_vec = _vector_of(alg.unit.entries)

    var_terms = _variable_terms(expr, ctx, args)
    inst_terms = _instance_terms(expr, ctx)
    inst_offsets = {key: (pos, d1) for pos, (key, d1, _) in enumerate(inst_terms)}
    nvars = len(var_terms)

    result: dict = {}
    shape = (n,) * expr.slot_count
    pools = [t for _, t in var_terms] + [t for _, _, t in inst_terms]
    if not all(pools):
        return SparseTensor.zero(shape, field)
    var_index = {name: pos for pos, (name, _) in enumerate(var_terms)}

    for combo in itertools.product(*pools):
        coeff = field.one
        for legs, c in combo:
            coeff = coeff * c
        slot_vecs = []
        dead = False
        for slot in expr.slots:
            vec: Optional[dict] = None
            for atom in slot:
                if atom.kind == "unit":
                    avec = dict(unit_vec)
                elif atom.kind == "var":
                    legs = combo[var_index[atom.name]][0]
                    avec = {legs[atom.leg - 1]: field.one}
                else:
                    pos, d1 = inst_offsets[atom.instance]
                    legs = combo[nvars + pos][0]
                    at = (atom.piece - 1 if atom.piece else 0)
                    at += 0 if atom.leg == 1 else d1
                    avec = {legs[at]: field.one}
                if atom.antipode:
                    avec = _apply_antipode(avec, scols, atom.antipode)
                if vec is None:
                    vec = avec
                else:
                    out: dict = {}
                    for i, c1 in vec.items():
                        for j, c2 in avec.items():
                            terms = buckets.get((i, j))
                            if not terms:
                                continue
                            c12 = c1 * c2
                            for kk, mv in terms:
                                cur = out.get(kk)
                                cur = c12 * mv if cur is None else cur + c12 * mv
                                if cur:
                                    out[kk] = cur
                                elif kk in out:
                                    del out[kk]
                    vec = out
                if not vec:
                    dead = True
                    break
            if dead:
                break
            slot_vecs.append(vec)
        if dead:
            continue
        partial = [((), coeff)]
        for vec in slot_vecs:
            partial = [(idx + (i,), c * v) for idx, c in partial for i, v in vec.items()]
        for idx, c in partial:
            cur = result.get(idx)
            cur = c if cur is None else cur + c
            if cur:
                result[idx] = cur
            elif idx in result:
                del result[idx]
    return SparseTensor(shape, result, field, _trusted=True)


@dataclass
class IdentityLine:
    """One line of an identity file: name ; declarations ; lhs ; rhs.

    Declarations are space-separated ``name=depth`` (a variable with a
    depth cap), bare ``name`` (uncapped variable) or ``name=cocycle``.
    Lines starting with # and blank lines are skipped.
    """

    name: str
    variables: dict  # name -> declared depth cap or None
    cocycles: tuple
    lhs: str
    rhs: str
    lineno: int


def parse_identity_line(line: str, lineno: int = 1) -> IdentityLine:
    parts = [p.strip() for p in line.split(";")]
    if len(parts) != 4:
        raise ParseError("expected 'name ; declarations ; lhs ; rhs'", line=lineno)
    name, decls, lhs, rhs = parts
    if not name:
        raise ParseError("identity name is empty", line=lineno)
    variables: dict = {}
    cocycles: list = []
    for tok in decls.split():
        if "=" in tok:
            sym, val = tok.split("=", 1)
            if val == "cocycle":
                cocycles.append(sym)
            else:
                try:
                    variables[sym] = int(val)
                except ValueError:
                    raise ParseError(f"bad declaration {tok!r}", line=lineno) from None
        else:
            variables[tok] = None
    if not variables:
        raise ParseError("no variables declared", line=lineno)
    return IdentityLine(name, variables, tuple(cocycles), lhs, rhs, lineno)


def load_identity_file(path: str) -> list:
    out = []
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            out.append(parse_identity_line(line, lineno))
    return out


@dataclass
class IdentityWitness:
    assignment: dict
    lhs: SparseTensor
    rhs: SparseTensor


@dataclass
class IdentityResult:
    ok: bool
    witness: Optional[IdentityWitness] = None
    checked: int = 0


def check_identity(lhs: SweedlerExpr, rhs: SweedlerExpr, ctx: EvaluationContext) -> IdentityResult:
    """Evaluate both sides on every basis assignment; exact comparison.

    Both sides must use the same variable names and the same number of
    tensor slots; depths may differ (each side expands its own iterated
    coproduct).  The witness is the first violating assignment in
    row-major order over alphabetically sorted variable names.
    """
    if set(lhs.variables) != set(rhs.variables):
        raise InputError(
            f"variable declarations differ: {sorted(lhs.variables)} vs {sorted(rhs.variables)}"
        )
    if lhs.slot_count != rhs.slot_count:
        raise InputError(
            f"slot counts differ: {lhs.slot_count} vs {rhs.slot_count}"
        )
    names = sorted(lhs.variables)
    n = ctx.algebra.dim
    checked = 0
    for combo in itertools.product(range(n), repeat=len(names)):
        args = dict(zip(names, combo))
        lv = evaluate(lhs, ctx, args)
        rv = evaluate(rhs, ctx, args)
        checked += 1
        if lv != rv:
            return IdentityResult(False, IdentityWitness(args, lv, rv), checked)
    return IdentityResult(True, None, checked)
