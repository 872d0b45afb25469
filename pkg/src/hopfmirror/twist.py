"""Drinfeld 2-cocycles and twisting.

A 2-cocycle for H is an invertible, counital element chi of H (x) H
satisfying the left (twisting-type) identity

    chi_12 . (D (x) id)(chi)  =  chi_23 . (id (x) D)(chi)

in H^(x)3.  Conjugating the coproduct by a cocycle yields a new Hopf
algebra on the same underlying algebra; the twisted antipode is
conjugation by U = chi^(1) S(chi^(2)).  Candidate cocycles and
R-matrices are always verified, never trusted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .errors import CapabilityError, ConsistencyError, InputError, ShapeError
from .fields import Q
from .hopf import (
    CheckResult,
    HopfAlgebraData,
    compare_elements,
    compare_maps,
    elt_mult,
    group_algebra,
    mult_operator,
    tensor_hopf,
    unit_element,
)
from .tensor import SparseTensor, apply_at, group_legs, solve_linear, tensor_permute


@dataclass
class Cocycle:
    """A verified 2-cocycle together with its exact inverse."""

    host: HopfAlgebraData
    element: SparseTensor
    inverse: SparseTensor


@dataclass
class QuasitriangularStructure:
    """A verified R-matrix: invertible, both coproduct identities, and
    intertwining R D(h) = D^cop(h) R."""

    host: HopfAlgebraData
    element: SparseTensor
    inverse: SparseTensor


@dataclass
class StructureFailure:
    """Why verification failed: which condition, with both sides."""

    kind: str
    check: Optional[CheckResult] = None

    def __bool__(self):
        return False

    def describe(self, field) -> str:
        msg = self.kind
        if self.check is not None and self.check.witness is not None:
            msg += ": " + self.check.witness.render(field)
        return msg


def invert_tensor_element(host: HopfAlgebraData, u: SparseTensor) -> Optional[SparseTensor]:
    """Two-sided inverse of u in the algebra H^(x)k, or None."""
    k = len(u.shape)
    if k < 1 or u.shape != (host.dim,) * k:
        raise ShapeError(f"element shape {u.shape} does not match H^(x)k over dim {host.dim}")
    left = mult_operator(host, u, side="left")
    res = solve_linear(left, unit_element(host, k))
    if res is None:
        return None
    inv = res.solution
    one_k = unit_element(host, k)
    if elt_mult(host, inv, u) != one_k or elt_mult(host, u, inv) != one_k:
        return None
    return inv


def verify_cocycle(
    host: HopfAlgebraData, chi: SparseTensor
) -> Union[Cocycle, StructureFailure]:
    """Check invertibility, two-sided counitality and the cocycle identity."""
    n = host.dim
    if chi.shape != (n, n):
        raise ShapeError(f"cocycle candidate has shape {chi.shape}, expected {(n, n)}")
    inverse = invert_tensor_element(host, chi)
    if inverse is None:
        return StructureFailure("not_invertible")
    c = compare_elements("counit_left", apply_at(host.counit, chi, 0), host.unit)
    if not c.ok:
        return StructureFailure("counit_left", c)
    c = compare_elements("counit_right", apply_at(host.counit, chi, 1), host.unit)
    if not c.ok:
        return StructureFailure("counit_right", c)
    one = host.unit
    chi_12 = chi.outer(one)
    chi_23 = one.outer(chi)
    lhs = elt_mult(host, chi_12, apply_at(host.comult, chi, 0))
    rhs = elt_mult(host, chi_23, apply_at(host.comult, chi, 1))
    c = compare_elements("cocycle_identity", lhs, rhs)
    if not c.ok:
        return StructureFailure("cocycle_identity", c)
    return Cocycle(host, chi, inverse)


def trivial_cocycle(host: HopfAlgebraData) -> Cocycle:
    out = verify_cocycle(host, unit_element(host, 2))
    if isinstance(out, StructureFailure):  # pragma: no cover - unit always passes
        raise ConsistencyError(f"trivial cocycle rejected: {out.kind}")
    return out


def twist_hopf(c: Cocycle) -> HopfAlgebraData:
    """The twisted Hopf algebra: same algebra, conjugated coproduct.

    S_chi = U S(.) U^-1 with U = chi^(1) S(chi^(2)); a singular U would
    contradict cocycle validity and is surfaced, never swallowed.
    """
    host = c.host
    left = mult_operator(host, c.element, side="left")
    right = mult_operator(host, c.inverse, side="right")
    comult = host.comult.then_at(left, 0).then_at(right, 0)
    u = host.mult.apply(apply_at(host.antipode, c.element, 1))
    u_inv = invert_tensor_element(host, u)
    if u_inv is None:
        raise ConsistencyError("twisted-antipode element chi^(1) S(chi^(2)) is singular")
    antipode = (
        host.antipode
        .then_at(mult_operator(host, u, side="left"), 0)
        .then_at(mult_operator(host, u_inv, side="right"), 0)
    )
    return HopfAlgebraData(
        host.dim, host.basis_labels, host.unit, host.mult, host.counit, comult, antipode, host.field
    )


def verify_quasitriangular(
    host: HopfAlgebraData, r: SparseTensor
) -> Union[QuasitriangularStructure, StructureFailure]:
    n = host.dim
    if r.shape != (n, n):
        raise ShapeError(f"R-matrix candidate has shape {r.shape}, expected {(n, n)}")
    inverse = invert_tensor_element(host, r)
    if inverse is None:
        return StructureFailure("not_invertible")
    one = host.unit
    r12 = r.outer(one)
    r23 = one.outer(r)
    r13 = tensor_permute(r.outer(one), (0, 2, 1))
    c = compare_elements(
        "coproduct_left", apply_at(host.comult, r, 0), elt_mult(host, r13, r23)
    )
    if not c.ok:
        return StructureFailure("coproduct_left", c)
    c = compare_elements(
        "coproduct_right", apply_at(host.comult, r, 1), elt_mult(host, r13, r12)
    )
    if not c.ok:
        return StructureFailure("coproduct_right", c)
    lhs = host.comult.then_at(mult_operator(host, r, side="left"), 0)
    rhs = host.comult.permute_codomain((1, 0)).then_at(mult_operator(host, r, side="right"), 0)
    c = compare_maps("intertwining", lhs, rhs)
    if not c.ok:
        return StructureFailure("intertwining", c)
    return QuasitriangularStructure(host, r, inverse)


def r_as_cocycle(q: QuasitriangularStructure) -> Union[Cocycle, StructureFailure]:
    """Embed an R-matrix as a cocycle on the tensor square of its host.

    The element sits in the middle two of the four tensor factors of
    (H0 (x) H0)^(x)2, with units in the outer factors.
    """
    host0 = q.host
    big = tensor_hopf(host0, host0)
    raw = host0.unit.outer(q.element).outer(host0.unit)
    chi = group_legs(raw, (2, 2))
    return verify_cocycle(big, chi)


def h4_r_matrix(field=Q) -> SparseTensor:
    """The grouplike-supported R-matrix of the 4-dimensional algebra
    (candidate only; callers must verify)."""
    half = field.one / field.from_int(2)
    return SparseTensor(
        (4, 4), {(0, 0): half, (0, 1): half, (1, 0): half, (1, 1): -half}, field
    )


# ---------------------------------------------------------------------
# characters of finite abelian groups and bicharacter cocycles
# ---------------------------------------------------------------------


@dataclass
class CharacterData:
    """All characters of a finite abelian group over the active field.

    ``labels[c]`` is a tuple of exponents, one per generator, so that
    character c sends generator t to zeta_t^labels[c][t] where zeta_t is
    the canonical primitive root of order ``orders[t]``.  ``values[c][g]``
    is the scalar value of character c on group element g.
    """

    generators: list
    orders: list
    exponent: int
    labels: list
    values: list

    def index_by_values(self) -> dict:
        return {tuple(v): i for i, v in enumerate(self.values)}

    def product(self, i: int, j: int) -> int:
        """Index of the pointwise product character."""
        prod = tuple(a * b for a, b in zip(self.values[i], self.values[j]))
        return self.index_by_values()[prod]


def _closure(table, gens) -> set:
    n = len(table)
    identity = next(e for e in range(n) if all(table[e][x] == x for x in range(n)))
    seen = {identity}
    frontier = [identity]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = table[x][g]
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _element_order(table, identity, g) -> int:
    k, x = 1, g
    while x != identity:
        x = table[x][g]
        k += 1
    return k


def abelian_characters(table, field=Q) -> CharacterData:
    """Enumerate the characters of an abelian group given by its table.

    Requires a primitive root of unity of order equal to the group
    exponent; over the rationals that limits hosts to exponent <= 2.
    """
    n = len(table)
    for i in range(n):
        for j in range(n):
            if table[i][j] != table[j][i]:
                raise InputError(f"group is not abelian: elements {i}, {j} do not commute")
    identity = next(e for e in range(n) if all(table[e][x] == x and table[x][e] == x for x in range(n)))
    orders_all = [_element_order(table, identity, g) for g in range(n)]
    exponent = 1
    for o in orders_all:
        exponent = exponent * o // _gcd(exponent, o)

    gens: list[int] = []
    generated = {identity}
    while len(generated) < n:
        candidates = [g for g in range(n) if g not in generated]
        g = max(candidates, key=lambda x: (orders_all[x], -x))
        gens.append(g)
        generated = _closure(table, gens)
    orders = [orders_all[g] for g in gens]

    zeta = field.root_of_unity(exponent)  # CapabilityError if absent
    powers = [field.one]
    for _ in range(exponent - 1):
        powers.append(powers[-1] * zeta)

    import itertools as _it

    chars = []
    labels = []
    seen_values = set()
    for assignment in _it.product(*[range(o) for o in orders]):
        # generator t gets exponent assignment[t] * (exponent / orders[t]) mod exponent
        gen_exp = {
            gens[t]: assignment[t] * (exponent // orders[t]) % exponent
            for t in range(len(gens))
        }
        expo = {identity: 0}
        frontier = [identity]
        while frontier:
            x = frontier.pop()
            for g, ge in gen_exp.items():
                y = table[x][g]
                if y not in expo:
                    expo[y] = (expo[x] + ge) % exponent
                    frontier.append(y)
        if len(expo) != n:
            continue  # pragma: no cover - gens generate by construction
        if any(
            (expo[i] + expo[j]) % exponent != expo[table[i][j]]
            for i in range(n)
            for j in range(n)
        ):
            continue  # inconsistent assignment: not a homomorphism
        values = tuple(powers[expo[g]] for g in range(n))
        if values in seen_values:
            continue
        seen_values.add(values)
        chars.append(list(values))
        labels.append(tuple(assignment))
    if len(chars) != n:  # pragma: no cover - counting argument
        raise ConsistencyError(f"found {len(chars)} characters for a group of order {n}")
    return CharacterData(gens, orders, exponent, labels, chars)


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def bicharacter_cocycle(table, omega, field=Q, labels=None) -> Cocycle:
    """Cocycle from a bicharacter on the character group of an abelian group.

    ``omega(label_a, label_b)`` must return a field scalar and be
    multiplicative in each argument; primitive idempotents of the group
    algebra are built from the characters and chi = sum omega e (x) e.
    The result is verified, not assumed.
    """
    host = group_algebra(table, labels=labels, field=field)
    n = host.dim
    chars = abelian_characters(table, field)
    if field.characteristic and n % field.characteristic == 0:
        raise CapabilityError(
            f"|G| = {n} is divisible by the field characteristic; no idempotents"
        )
    inv_n = field.one / field.from_int(n)
    identity, inverses = None, []
    for e in range(n):
        if all(table[e][x] == x for x in range(n)):
            identity = e
            break
    inverses = [next(j for j in range(n) if table[i][j] == identity) for i in range(n)]

    idempotents = []
    for c in range(n):
        vals = chars.values[c]
        idempotents.append({g: vals[inverses[g]] * inv_n for g in range(n)})

    # multiplicativity of omega in each slot, using the character group law
    byv = chars.index_by_values()

    def prod_index(i, j):
        return byv[tuple(a * b for a, b in zip(chars.values[i], chars.values[j]))]

    w = [[omega(chars.labels[i], chars.labels[j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if w[prod_index(i, j)][k] != w[i][k] * w[j][k]:
                    raise InputError("omega is not a bicharacter (left slot)")
                if w[k][prod_index(i, j)] != w[k][i] * w[k][j]:
                    raise InputError("omega is not a bicharacter (right slot)")

    entries: dict = {}
    for i in range(n):
        for j in range(n):
            wij = w[i][j]
            if not wij:
                raise InputError("bicharacter values must be invertible scalars")
            for g, a in idempotents[i].items():
                if not a:
                    continue
                for h, b in idempotents[j].items():
                    if not b:
                        continue
                    key = (g, h)
                    s = entries.get(key, field.zero) + wij * a * b
                    if s:
                        entries[key] = s
                    elif key in entries:
                        del entries[key]
    chi = SparseTensor((n, n), entries, field, _trusted=True)
    out = verify_cocycle(host, chi)
    if isinstance(out, StructureFailure):  # pragma: no cover - bicharacters always pass
        raise ConsistencyError(f"bicharacter cocycle failed verification: {out.kind}")
    return out
