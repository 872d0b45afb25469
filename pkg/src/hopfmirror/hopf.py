"""Finite-dimensional Hopf algebras given by exact structure constants.

A Hopf algebra is packaged as its dimension, basis labels and five
structure maps (unit element, multiplication, counit, comultiplication,
antipode), each a sparse `LinearMap` over the active field.  Axioms are
never assumed: `validate_hopf` checks every one of them exactly by
composing the maps and comparing coefficient tensors, reporting the
first failing basis index and both evaluated sides.

Constructors here cover group algebras (from a multiplication table),
the standard 4-dimensional noncommutative noncocommutative algebra,
opposite/co-opposite variants, linear duals and tensor products.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Optional, Sequence

from .errors import CapabilityError, InputError, ShapeError
from .fields import Q
from .tensor import (
    Index,
    LinearMap,
    SparseTensor,
    invert_linear_map,
    map_rank,
)

#: Exhaustive verification is capped at this dimension unless forced.
DIM_CAP = 64


class HopfAlgebraData:
    """Structure constants of a finite-dimensional Hopf algebra.

    Immutable by convention; derived data (iterated coproducts, antipode
    inverse, multiplication buckets) is memoized internally.
    """

    def __init__(self, dim, basis_labels, unit, mult, counit, comult, antipode, field=None):
        self.dim = int(dim)
        if self.dim <= 0:
            raise InputError("dimension must be positive")
        self.basis_labels = list(basis_labels) if basis_labels else [f"e{i}" for i in range(dim)]
        if len(self.basis_labels) != self.dim:
            raise InputError(f"{len(self.basis_labels)} labels for dimension {self.dim}")
        self.field = field if field is not None else unit.field
        n = (self.dim,)
        self._expect("unit", unit.shape == n and unit.field == self.field)
        self._expect("mult", mult.domain == n + n and mult.codomain == n and mult.field == self.field)
        self._expect("counit", counit.domain == n and counit.codomain == () and counit.field == self.field)
        self._expect("comult", comult.domain == n and comult.codomain == n + n and comult.field == self.field)
        self._expect("antipode", antipode.domain == n and antipode.codomain == n and antipode.field == self.field)
        self.unit = unit
        self.mult = mult
        self.counit = counit
        self.comult = comult
        self.antipode = antipode
        self._cache: dict = {}

    @staticmethod
    def _expect(name, ok):
        if not ok:
            raise ShapeError(f"{name} tensor has inconsistent shape or field")

    def __eq__(self, other):
        """Coefficient-wise structural equality (labels are ignored)."""
        return (
            isinstance(other, HopfAlgebraData)
            and self.dim == other.dim
            and self.field == other.field
            and self.unit == other.unit
            and self.mult == other.mult
            and self.counit == other.counit
            and self.comult == other.comult
            and self.antipode == other.antipode
        )

    def __repr__(self):
        return f"HopfAlgebraData(dim={self.dim}, field={self.field})"

    # -- memoized derived data -----------------------------------------

    def identity_map(self, legs: int = 1) -> LinearMap:
        key = ("id", legs)
        if key not in self._cache:
            self._cache[key] = LinearMap.identity((self.dim,) * legs, self.field)
        return self._cache[key]

    def mult_buckets(self, opposite: bool = False) -> dict:
        """dict (i, j) -> [(k, coeff)] with e_i e_j = sum coeff e_k."""
        key = ("mb", opposite)
        if key not in self._cache:
            buckets: dict = {}
            for (k, i, j), v in self.mult.tensor.entries.items():
                if opposite:
                    i, j = j, i
                buckets.setdefault((i, j), []).append((k, v))
            self._cache[key] = buckets
        return self._cache[key]

    def antipode_columns(self) -> dict:
        key = "scols"
        if key not in self._cache:
            cols: dict = {}
            for (j, i), v in self.antipode.tensor.entries.items():
                cols.setdefault(i, []).append((j, v))
            self._cache[key] = cols
        return self._cache[key]

    def antipode_inverse(self) -> LinearMap:
        key = "sinv"
        if key not in self._cache:
            inv = invert_linear_map(self.antipode)
            if inv is None:
                raise CapabilityError("the antipode matrix is singular")
            self._cache[key] = inv
        return self._cache[key]


def counit_scalar(h: HopfAlgebraData, i: int):
    return h.counit.tensor.entries.get((i,), h.field.zero)


# ---------------------------------------------------------------------
# element-level algebra in H^(x)k
# ---------------------------------------------------------------------


def unit_element(h: HopfAlgebraData, k: int = 1) -> SparseTensor:
    """The unit of the algebra H^(x)k."""
    out = h.unit
    for _ in range(k - 1):
        out = out.outer(h.unit)
    return out


def elt_mult(h: HopfAlgebraData, u: SparseTensor, v: SparseTensor) -> SparseTensor:
    """Product of two elements of H^(x)k, componentwise in each leg."""
    if u.shape != v.shape:
        raise ShapeError(f"element shapes differ: {u.shape} vs {v.shape}")
    k = len(u.shape)
    buckets = h.mult_buckets()
    out: dict = {}
    for iu, vu in u.entries.items():
        for iv, vv in v.entries.items():
            coeff = vu * vv
            partial = [((), coeff)]
            dead = False
            for t in range(k):
                terms = buckets.get((iu[t], iv[t]))
                if not terms:
                    dead = True
                    break
                partial = [
                    (idx + (kk,), c * mv) for idx, c in partial for kk, mv in terms
                ]
            if dead:
                continue
            for idx, c in partial:
                s = out.get(idx)
                s = c if s is None else s + c
                if s:
                    out[idx] = s
                elif idx in out:
                    del out[idx]
    return SparseTensor(u.shape, out, h.field, _trusted=True)


def _mult_slices(h: HopfAlgebraData, side: str) -> dict:
    """Per-basis left/right multiplication matrices as entry lists."""
    key = ("slice", side)
    if key not in h._cache:
        out: dict = {}
        for (k, i, j), v in h.mult.tensor.entries.items():
            if side == "left":
                out.setdefault(i, []).append((k, j, v))  # by left factor
            else:
                out.setdefault(j, []).append((k, i, v))  # by right factor
        h._cache[key] = out
    return h._cache[key]


def mult_operator(h: HopfAlgebraData, u: SparseTensor, side: str = "left") -> LinearMap:
    """The operator of multiplication by u on H^(x)k (k = rank of u)."""
    k = len(u.shape)
    slices = _mult_slices(h, side)
    out: dict = {}
    for idx, uv in u.entries.items():
        partial = [((), (), uv)]
        dead = False
        for t in range(k):
            terms = slices.get(idx[t])
            if not terms:
                dead = True
                break
            partial = [
                (cod + (kk,), dom + (jj,), c * mv)
                for cod, dom, c in partial
                for kk, jj, mv in terms
            ]
        if dead:
            continue
        for cod, dom, c in partial:
            key2 = cod + dom
            s = out.get(key2)
            s = c if s is None else s + c
            if s:
                out[key2] = s
            elif key2 in out:
                del out[key2]
    shape = u.shape
    return LinearMap(shape, shape, SparseTensor(shape + shape, out, h.field, _trusted=True))


# ---------------------------------------------------------------------
# axiom verification
# ---------------------------------------------------------------------


@dataclass
class Witness:
    """First failing basis index plus both evaluated sides."""

    basis_index: tuple
    lhs: list
    rhs: list

    def render(self, field) -> str:
        fmt = lambda side: ", ".join(f"{i}:{field.format(v)}" for i, v in side) or "0"
        return f"at basis {self.basis_index}: lhs = [{fmt(self.lhs)}], rhs = [{fmt(self.rhs)}]"


@dataclass
class CheckResult:
    name: str
    ok: bool
    witness: Optional[Witness] = None


@dataclass
class HopfReport:
    checks: list

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failed(self) -> list:
        return [c for c in self.checks if not c.ok]

    def check(self, name: str) -> CheckResult:
        for c in self.checks:
            if c.name == name:
                return c
        raise KeyError(name)


def _column(entries: dict, ncod: int, dom: Index) -> list:
    return sorted(
        (idx[:ncod], v) for idx, v in entries.items() if idx[ncod:] == dom
    )


def compare_maps(name: str, lhs: LinearMap, rhs: LinearMap) -> CheckResult:
    """Exact map comparison with a first-failure witness."""
    diff = lhs - rhs
    if diff.is_zero():
        return CheckResult(name, True)
    ncod = len(lhs.codomain)
    worst = min(idx[ncod:] for idx in diff.tensor.entries)
    return CheckResult(
        name,
        False,
        Witness(
            worst,
            _column(lhs.tensor.entries, ncod, worst),
            _column(rhs.tensor.entries, ncod, worst),
        ),
    )


def compare_elements(name: str, lhs: SparseTensor, rhs: SparseTensor) -> CheckResult:
    if lhs == rhs:
        return CheckResult(name, True)
    return CheckResult(
        name, False, Witness((), sorted(lhs.entries.items()), sorted(rhs.entries.items()))
    )


def validate_hopf(h: HopfAlgebraData, *, force: bool = False, dim_cap: int = DIM_CAP) -> HopfReport:
    """Check every Hopf axiom exactly; report per-axiom results."""
    if h.dim > dim_cap and not force:
        raise CapabilityError(
            f"dimension {h.dim} exceeds the verification cap {dim_cap}; pass force=True"
        )
    n = h.dim
    id1 = h.identity_map(1)
    id2 = h.identity_map(2)
    id3 = h.identity_map(3)
    m, dlt, eps, s = h.mult, h.comult, h.counit, h.antipode
    eta = LinearMap.from_element(h.unit)
    eta_eps = eps.then_at(eta, 0)

    checks = [
        compare_maps("associativity", id3.then_at(m, 0).then_at(m, 0), id3.then_at(m, 1).then_at(m, 0)),
        compare_maps("unit_left", id1.then_at(eta, 0).then_at(m, 0), id1),
        compare_maps("unit_right", id1.then_at(eta, 1).then_at(m, 0), id1),
        compare_maps("coassociativity", dlt.then_at(dlt, 0), dlt.then_at(dlt, 1)),
        compare_maps("counit_left", dlt.then_at(eps, 0), id1),
        compare_maps("counit_right", dlt.then_at(eps, 1), id1),
        compare_maps(
            "comult_multiplicative",
            m.then_at(dlt, 0),
            id2.then_at(dlt, 0).then_at(dlt, 2).permute_codomain((0, 2, 1, 3)).then_at(m, 0).then_at(m, 1),
        ),
        compare_elements("comult_unit", dlt.apply(h.unit), h.unit.outer(h.unit)),
        compare_maps("counit_multiplicative", m.then_at(eps, 0), id2.then_at(eps, 0).then_at(eps, 0)),
        compare_elements(
            "counit_unit",
            eps.apply(h.unit),
            SparseTensor((), {(): h.field.one}, h.field),
        ),
        compare_maps("antipode_left", dlt.then_at(s, 0).then_at(m, 0), eta_eps),
        compare_maps("antipode_right", dlt.then_at(s, 1).then_at(m, 0), eta_eps),
        CheckResult("antipode_invertible", invert_linear_map(s) is not None),
    ]
    return HopfReport(checks)


# ---------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------


def _check_group_table(table) -> tuple[int, list[int]]:
    """Returns (identity index, inverse table); raises naming the axiom."""
    n = len(table)
    for row in table:
        if len(row) != n or any(not isinstance(x, int) or not (0 <= x < n) for x in row):
            raise InputError("not a group table: closure fails (bad row or entry)")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if table[table[i][j]][k] != table[i][table[j][k]]:
                    raise InputError(
                        f"not a group table: associativity fails at ({i}, {j}, {k})"
                    )
    identity = None
    for e in range(n):
        if all(table[e][x] == x and table[x][e] == x for x in range(n)):
            identity = e
            break
    if identity is None:
        raise InputError("not a group table: no identity element")
    inverses = []
    for i in range(n):
        inv = next((j for j in range(n) if table[i][j] == identity == table[j][i]), None)
        if inv is None:
            raise InputError(f"not a group table: element {i} has no inverse")
        inverses.append(inv)
    return identity, inverses


def group_algebra(table, labels=None, field=Q) -> HopfAlgebraData:
    """The group Hopf algebra of a finite group given by its table.

    Basis elements are grouplike: D(g) = g (x) g, eps(g) = 1, S(g) = g^-1.
    """
    n = len(table)
    identity, inverses = _check_group_table(table)
    one = field.one
    unit = SparseTensor((n,), {(identity,): one}, field)
    mult = LinearMap.from_entries(
        (n, n), (n,), {(table[i][j], i, j): one for i in range(n) for j in range(n)}, field
    )
    counit = LinearMap.from_entries((n,), (), {(i,): one for i in range(n)}, field)
    comult = LinearMap.from_entries((n,), (n, n), {(i, i, i): one for i in range(n)}, field)
    antipode = LinearMap.from_entries((n,), (n,), {(inverses[i], i): one for i in range(n)}, field)
    labels = labels or [f"g{i}" for i in range(n)]
    return HopfAlgebraData(n, labels, unit, mult, counit, comult, antipode, field)


def cyclic_table(n: int) -> list[list[int]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)]


def product_table(a, b) -> list[list[int]]:
    """Direct-product table with row-major pair indexing."""
    na, nb = len(a), len(b)

    def flat(i, j):
        return i * nb + j

    out = []
    for i1 in range(na):
        for j1 in range(nb):
            out.append(
                [flat(a[i1][i2], b[j1][j2]) for i2 in range(na) for j2 in range(nb)]
            )
    return out


def symmetric_table(n: int) -> tuple[list[list[int]], list[str]]:
    """Table and one-line labels for the symmetric group on n letters."""
    perms = sorted(itertools.permutations(range(n)))
    index = {p: i for i, p in enumerate(perms)}
    table = [
        [index[tuple(p[q[x]] for x in range(n))] for q in perms] for p in perms
    ]
    labels = ["".join(map(str, p)) for p in perms]
    return table, labels


def sweedler_h4(field=Q) -> HopfAlgebraData:
    """The 4-dimensional noncommutative noncocommutative Hopf algebra.

    Basis 1, g, x, gx with g^2 = 1, x^2 = 0, xg = -gx; g grouplike and
    x skew-primitive (D(x) = x (x) 1 + g (x) x); S(g) = g, S(x) = -gx.
    """
    one = field.one
    neg = -one
    unit = SparseTensor((4,), {(0,): one}, field)
    m = {
        (0, 0, 0): one, (1, 0, 1): one, (2, 0, 2): one, (3, 0, 3): one,
        (1, 1, 0): one, (0, 1, 1): one, (3, 1, 2): one, (2, 1, 3): one,
        (2, 2, 0): one, (3, 2, 1): neg,
        (3, 3, 0): one, (2, 3, 1): neg,
    }
    mult = LinearMap.from_entries((4, 4), (4,), m, field)
    counit = LinearMap.from_entries((4,), (), {(0,): one, (1,): one}, field)
    comult = LinearMap.from_entries(
        (4,),
        (4, 4),
        {
            (0, 0, 0): one,
            (1, 1, 1): one,
            (2, 0, 2): one, (1, 2, 2): one,
            (3, 1, 3): one, (0, 3, 3): one,
        },
        field,
    )
    antipode = LinearMap.from_entries(
        (4,), (4,), {(0, 0): one, (1, 1): one, (3, 2): neg, (2, 3): one}, field
    )
    return HopfAlgebraData(4, ["1", "g", "x", "gx"], unit, mult, counit, comult, antipode, field)


def structural_variant(h: HopfAlgebraData, mode: str) -> HopfAlgebraData:
    """Opposite / co-opposite variants.

    ``op`` flips the multiplication, ``cop`` flips the comultiplication;
    in either single flip the antipode becomes S^-1 (it must be
    invertible), while the double flip keeps S.
    """
    if mode not in ("op", "cop", "op_cop"):
        raise InputError(f"unknown variant mode {mode!r}")
    mult, comult = h.mult, h.comult
    if mode in ("op", "op_cop"):
        mult = mult.permute_domain((1, 0))
    if mode in ("cop", "op_cop"):
        comult = comult.permute_codomain((1, 0))
    antipode = h.antipode if mode == "op_cop" else h.antipode_inverse()
    return HopfAlgebraData(
        h.dim, h.basis_labels, h.unit, mult, h.counit, comult, antipode, h.field
    )


def dual_hopf(h: HopfAlgebraData) -> HopfAlgebraData:
    """The dual Hopf algebra on the dual basis (finite dimension)."""
    n = h.dim
    unit = SparseTensor((n,), dict(h.counit.tensor.entries), h.field, _trusted=True)
    counit = LinearMap((n,), (), SparseTensor((n,), dict(h.unit.entries), h.field, _trusted=True))
    return HopfAlgebraData(
        n,
        [f"{l}*" for l in h.basis_labels],
        unit,
        h.comult.transpose(),
        counit,
        h.mult.transpose(),
        h.antipode.transpose(),
        h.field,
    )


def _regroup(m: LinearMap, cod_sizes, dom_sizes) -> LinearMap:
    from .tensor import group_legs

    t = group_legs(m.tensor, tuple(cod_sizes) + tuple(dom_sizes))
    k = len(cod_sizes)
    return LinearMap(t.shape[k:], t.shape[:k], t)


def tensor_hopf(a: HopfAlgebraData, b: HopfAlgebraData) -> HopfAlgebraData:
    """Componentwise tensor-product Hopf algebra, row-major basis pairs."""
    if a.field != b.field:
        raise InputError("cannot tensor algebras over different fields")
    na, nb = a.dim, b.dim
    field = a.field
    id2 = LinearMap.identity((na, nb), field)
    id4 = LinearMap.identity((na, nb, na, nb), field)
    mult = _regroup(
        id4.permute_codomain((0, 2, 1, 3)).then_at(a.mult, 0).then_at(b.mult, 1),
        (2,), (2, 2),
    )
    comult = _regroup(
        id2.then_at(a.comult, 0).then_at(b.comult, 2).permute_codomain((0, 2, 1, 3)),
        (2, 2), (2,),
    )
    counit = _regroup(id2.then_at(a.counit, 0).then_at(b.counit, 0), (), (2,))
    antipode = _regroup(id2.then_at(a.antipode, 0).then_at(b.antipode, 1), (2,), (2,))
    from .tensor import group_legs

    unit = group_legs(a.unit.outer(b.unit), (2,))
    labels = [f"{la}(x){lb}" for la in a.basis_labels for lb in b.basis_labels]
    return HopfAlgebraData(na * nb, labels, unit, mult, counit, comult, antipode, field)


def iterated_coproduct(h: HopfAlgebraData, k: int) -> LinearMap:
    """The k-fold coproduct H -> H^(x)k (k = 1 gives the identity)."""
    if k < 1:
        raise InputError("coproduct depth must be >= 1")
    key = ("itco", k)
    if key not in h._cache:
        if k == 1:
            h._cache[key] = h.identity_map(1)
        else:
            h._cache[key] = iterated_coproduct(h, k - 1).then_at(h.comult, 0)
    return h._cache[key]


def coproduct_columns(h: HopfAlgebraData, k: int) -> dict:
    """dict basis index -> [(leg indices, coeff)] for the k-fold coproduct."""
    key = ("itco_cols", k)
    if key not in h._cache:
        cols: dict = {i: [] for i in range(h.dim)}
        for idx, v in iterated_coproduct(h, k).tensor.entries.items():
            cols[idx[k]].append((idx[:k], v))
        h._cache[key] = cols
    return h._cache[key]


def convolution_inverse(
    f: LinearMap, coalgebra: HopfAlgebraData, algebra: HopfAlgebraData
) -> Optional[LinearMap]:
    """Two-sided inverse of f under convolution, or None.

    Solves the linear system m(g (x) f)D = unit.counit = m(f (x) g)D for
    the coefficients of g; the antipode is the special case f = id.
    """
    from .tensor import _Eliminator

    ns, na = coalgebra.dim, algebra.dim
    if f.domain != (ns,) or f.codomain != (na,):
        raise ShapeError(
            f"convolution expects map ({ns},) -> ({na},), got {f.domain} -> {f.codomain}"
        )
    field = algebra.field
    f_by_dom: dict = {}
    for (g_, q), v in f.tensor.entries.items():
        f_by_dom.setdefault(q, []).append((g_, v))
    m_by_second: dict = {}
    m_by_first: dict = {}
    for (beta, x, y), v in algebra.mult.tensor.entries.items():
        m_by_second.setdefault(y, []).append((beta, x, v))
        m_by_first.setdefault(x, []).append((beta, y, v))

    rows: dict = {}
    rhs: dict = {}

    def row_id(side, beta, t):
        return (side * na + beta) * ns + t

    for (p, q, t), c in coalgebra.comult.tensor.entries.items():
        for g_, fv in f_by_dom.get(q, ()):  # left: g * f
            for beta, alpha, mv in m_by_second.get(g_, ()):
                rid = row_id(0, beta, t)
                col = alpha * ns + p
                row = rows.setdefault(rid, {})
                s = row.get(col, field.zero) + c * fv * mv
                if s:
                    row[col] = s
                elif col in row:
                    del row[col]
        for g_, fv in f_by_dom.get(p, ()):  # right: f * g
            for beta, alpha, mv in m_by_first.get(g_, ()):
                rid = row_id(1, beta, t)
                col = alpha * ns + q
                row = rows.setdefault(rid, {})
                s = row.get(col, field.zero) + c * fv * mv
                if s:
                    row[col] = s
                elif col in row:
                    del row[col]
    for (t,), ev in coalgebra.counit.tensor.entries.items():
        for (beta,), uv in algebra.unit.entries.items():
            rhs[row_id(0, beta, t)] = ev * uv
            rhs[row_id(1, beta, t)] = ev * uv

    elim = _Eliminator(field, na * ns, 1)
    for rid in sorted(set(rows) | set(rhs)):
        elim.add_row(rows.get(rid, {}), {0: rhs[rid]} if rid in rhs else {})
    pivots = elim.run()
    if pivots is None:
        return None
    entries = {}
    for col, (_, prhs) in pivots.items():
        if 0 in prhs:
            entries[(col // ns, col % ns)] = prhs[0]
    return LinearMap.from_entries((ns,), (na,), entries, field)


@dataclass
class HopfMorphismReport:
    """Exact truth of the morphism identities on every basis element."""

    is_algebra_map: bool
    is_coalgebra_map: bool
    is_unit_counit_preserving: bool
    failing_basis_indices: list
    rank: int
    is_injective: bool
    is_surjective: bool
    checks: list = dc_field(default_factory=list)

    @property
    def is_morphism(self) -> bool:
        return self.is_algebra_map and self.is_coalgebra_map and self.is_unit_counit_preserving

    @property
    def is_bijective(self) -> bool:
        return self.is_injective and self.is_surjective

    @property
    def is_isomorphism(self) -> bool:
        return self.is_morphism and self.is_bijective


def check_morphism(f: LinearMap, src: HopfAlgebraData, dst: HopfAlgebraData) -> HopfMorphismReport:
    """Check whether f: src -> dst is a Hopf algebra morphism."""
    if f.domain != (src.dim,) or f.codomain != (dst.dim,):
        raise ShapeError(
            f"morphism shapes: expected ({src.dim},) -> ({dst.dim},), got {f.domain} -> {f.codomain}"
        )
    id2 = LinearMap.identity((src.dim, src.dim), src.field)
    ff = id2.then_at(f, 0).then_at(f, 1)
    mult_check = compare_maps("mult", src.mult.then_at(f, 0), ff.then_at(dst.mult, 0))
    comult_check = compare_maps("comult", f.then_at(dst.comult, 0), src.comult.then_at(f, 0).then_at(f, 1))
    unit_check = compare_elements("unit", f.apply(src.unit), dst.unit)
    counit_check = compare_maps("counit", f.then_at(dst.counit, 0), src.counit)
    failing = set()
    for c in (mult_check, comult_check, unit_check, counit_check):
        if not c.ok and c.witness is not None:
            failing.add(c.witness.basis_index)
    rank = map_rank(f)
    return HopfMorphismReport(
        is_algebra_map=mult_check.ok,
        is_coalgebra_map=comult_check.ok,
        is_unit_counit_preserving=unit_check.ok and counit_check.ok,
        failing_basis_indices=sorted(failing),
        rank=rank,
        is_injective=rank == src.dim,
        is_surjective=rank == dst.dim,
        checks=[mult_check, comult_check, unit_check, counit_check],
    )


def permute_basis(h: HopfAlgebraData, perm: Sequence[int]) -> HopfAlgebraData:
    """Relabel the basis: old index i becomes new index perm[i]."""
    n = h.dim
    if sorted(perm) != list(range(n)):
        raise InputError(f"{perm} is not a basis permutation")
    field = h.field
    p = LinearMap.from_entries((n,), (n,), {(perm[i], i): field.one for i in range(n)}, field)
    pinv = LinearMap.from_entries((n,), (n,), {(i, perm[i]): field.one for i in range(n)}, field)
    id2 = LinearMap.identity((n, n), field)
    labels = [None] * n
    for i, l in enumerate(h.basis_labels):
        labels[perm[i]] = l
    return HopfAlgebraData(
        n,
        labels,
        p.apply(h.unit),
        id2.then_at(pinv, 0).then_at(pinv, 1).then_at(h.mult, 0).then_at(p, 0),
        pinv.then_at(h.counit, 0),
        pinv.then_at(h.comult, 0).then_at(p, 0).then_at(p, 1),
        pinv.then_at(h.antipode, 0).then_at(p, 0),
        field,
    )
