"""Sparse exact tensors and linear maps over a coefficient field.

A tensor of rank k is stored as a mapping from multi-indices (length-k
int tuples) to nonzero scalars.  Zero entries are never stored, so two
tensors are equal exactly when their entry dicts are equal.

Multi-index convention (global to the package): the composite index of
``e_i (x) e_j`` is ``i * dim_second + j`` (row-major), and permutations
are given as "old position -> new position" maps.

A `LinearMap` holds its coefficients as a tensor of shape
``codomain + domain``; everything (multiplication, comultiplication,
counit, antipode, actions, coactions) is such a map, and structural
identities are checked by composing maps and comparing coefficients.

All values are immutable by convention after construction and all
operations are pure, so everything here is safe to share freely.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .errors import InputError, ShapeError

Index = tuple[int, ...]


class SparseTensor:
    """A sparse multi-index array of exact scalars."""

    __slots__ = ("shape", "entries", "field")

    def __init__(self, shape: Sequence[int], entries: dict, field, *, _trusted=False):
        self.shape = tuple(shape)
        self.field = field
        if _trusted:
            self.entries = entries
            return
        clean = {}
        rank = len(self.shape)
        for idx, val in entries.items():
            idx = tuple(idx)
            if len(idx) != rank or any(
                not (0 <= i < d) for i, d in zip(idx, self.shape)
            ):
                raise ShapeError(f"index {idx} out of bounds for shape {self.shape}")
            if val:
                clean[idx] = val
        self.entries = clean

    # -- constructors ------------------------------------------------

    @classmethod
    def zero(cls, shape, field):
        return cls(shape, {}, field, _trusted=True)

    @classmethod
    def basis_vector(cls, dim: int, index: int, field):
        return cls((dim,), {(index,): field.one}, field)

    # -- basic queries -----------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.shape)

    def is_zero(self) -> bool:
        return not self.entries

    def get(self, idx: Index):
        return self.entries.get(tuple(idx), self.field.zero)

    def __eq__(self, other):
        return (
            isinstance(other, SparseTensor)
            and self.shape == other.shape
            and self.field == other.field
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.shape, frozenset(self.entries.items())))

    def __repr__(self):
        items = sorted(self.entries.items())
        body = ", ".join(f"{i}: {self.field.format(v)}" for i, v in items[:8])
        more = "" if len(items) <= 8 else f", ... ({len(items)} entries)"
        return f"SparseTensor{self.shape}{{{body}{more}}}"

    # -- linear structure --------------------------------------------

    def _same_space(self, other: "SparseTensor"):
        if not isinstance(other, SparseTensor):
            raise InputError(f"expected SparseTensor, got {other!r}")
        if other.shape != self.shape or other.field != self.field:
            raise ShapeError(
                f"tensor mismatch: {self.shape}/{self.field} vs {other.shape}/{other.field}"
            )

    def __add__(self, other):
        self._same_space(other)
        out = dict(self.entries)
        for idx, val in other.entries.items():
            s = out.get(idx)
            s = val if s is None else s + val
            if s:
                out[idx] = s
            elif idx in out:
                del out[idx]
        return SparseTensor(self.shape, out, self.field, _trusted=True)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return SparseTensor(
            self.shape, {i: -v for i, v in self.entries.items()}, self.field, _trusted=True
        )

    def scale(self, scalar):
        if not scalar:
            return SparseTensor.zero(self.shape, self.field)
        return SparseTensor(
            self.shape,
            {i: v * scalar for i, v in self.entries.items()},
            self.field,
            _trusted=True,
        )

    def outer(self, other: "SparseTensor") -> "SparseTensor":
        if other.field != self.field:
            raise ShapeError("cannot tensor over different fields")
        out = {}
        for i, v in self.entries.items():
            for j, w in other.entries.items():
                out[i + j] = v * w
        return SparseTensor(self.shape + other.shape, out, self.field, _trusted=True)

    def items(self):
        return self.entries.items()


def tensor_contract(
    a: SparseTensor, b: SparseTensor, pairs: Iterable[tuple[int, int]]
) -> SparseTensor:
    """Contract paired legs of two tensors.

    ``pairs`` lists (leg-of-a, leg-of-b) index pairs; the result keeps
    a's free legs (in order) followed by b's free legs.
    """
    pairs = list(pairs)
    if a.field != b.field:
        raise ShapeError("cannot contract over different fields")
    a_legs = [p[0] for p in pairs]
    b_legs = [p[1] for p in pairs]
    if len(set(a_legs)) != len(a_legs) or len(set(b_legs)) != len(b_legs):
        raise InputError(f"repeated leg in contraction pairs {pairs}")
    for la, lb in pairs:
        if not (0 <= la < a.rank) or not (0 <= lb < b.rank):
            raise ShapeError(f"contraction pair ({la}, {lb}) out of range")
        if a.shape[la] != b.shape[lb]:
            raise ShapeError(
                f"leg dimension mismatch: a leg {la} is {a.shape[la]}, "
                f"b leg {lb} is {b.shape[lb]}"
            )
    a_free = [i for i in range(a.rank) if i not in set(a_legs)]
    b_free = [i for i in range(b.rank) if i not in set(b_legs)]
    shape = tuple(a.shape[i] for i in a_free) + tuple(b.shape[i] for i in b_free)

    by_key: dict[Index, list] = {}
    for idx, val in b.entries.items():
        key = tuple(idx[l] for l in b_legs)
        by_key.setdefault(key, []).append((tuple(idx[l] for l in b_free), val))

    out: dict[Index, object] = {}
    for idx, val in a.entries.items():
        key = tuple(idx[l] for l in a_legs)
        matches = by_key.get(key)
        if not matches:
            continue
        head = tuple(idx[l] for l in a_free)
        for tail, w in matches:
            full = head + tail
            s = out.get(full)
            p = val * w
            s = p if s is None else s + p
            if s:
                out[full] = s
            elif full in out:
                del out[full]
    return SparseTensor(shape, out, a.field, _trusted=True)


def tensor_permute(a: SparseTensor, perm: Sequence[int]) -> SparseTensor:
    """Reorder legs: the entry at old position i moves to position perm[i]."""
    perm = tuple(perm)
    if sorted(perm) != list(range(a.rank)):
        raise InputError(f"{perm} is not a permutation of {a.rank} legs")
    shape = [0] * a.rank
    for old, new in enumerate(perm):
        shape[new] = a.shape[old]
    out = {}
    for idx, val in a.entries.items():
        new_idx = [0] * a.rank
        for old, new in enumerate(perm):
            new_idx[new] = idx[old]
        out[tuple(new_idx)] = val
    return SparseTensor(tuple(shape), out, a.field, _trusted=True)


def group_legs(t: SparseTensor, sizes: Sequence[int]) -> SparseTensor:
    """Fuse consecutive leg groups into single row-major composite legs."""
    if sum(sizes) != t.rank:
        raise ShapeError(f"group sizes {sizes} do not cover rank {t.rank}")
    bounds, pos = [], 0
    shape = []
    for s in sizes:
        dims = t.shape[pos : pos + s]
        d = 1
        for x in dims:
            d *= x
        shape.append(d)
        bounds.append((pos, pos + s, dims))
        pos += s
    out = {}
    for idx, val in t.entries.items():
        key = []
        for start, stop, dims in bounds:
            flat = 0
            for i, d in zip(idx[start:stop], dims):
                flat = flat * d + i
            key.append(flat)
        out[tuple(key)] = val
    return SparseTensor(tuple(shape), out, t.field, _trusted=True)


def split_leg(t: SparseTensor, leg: int, dims: Sequence[int]) -> SparseTensor:
    """Split one composite leg back into row-major factor legs."""
    total = 1
    for d in dims:
        total *= d
    if t.shape[leg] != total:
        raise ShapeError(f"cannot split leg of size {t.shape[leg]} into {dims}")
    shape = t.shape[:leg] + tuple(dims) + t.shape[leg + 1 :]
    out = {}
    for idx, val in t.entries.items():
        flat = idx[leg]
        parts = []
        for d in reversed(dims):
            parts.append(flat % d)
            flat //= d
        parts.reverse()
        out[idx[:leg] + tuple(parts) + idx[leg + 1 :]] = val
    return SparseTensor(shape, out, t.field, _trusted=True)


class LinearMap:
    """A linear map between tensor-product spaces.

    Coefficients live in a SparseTensor of shape ``codomain + domain``:
    entry ``(c..., d...)`` is the coefficient of basis ``c`` in the image
    of basis ``d``.
    """

    __slots__ = ("domain", "codomain", "tensor")

    def __init__(self, domain: Sequence[int], codomain: Sequence[int], tensor: SparseTensor):
        self.domain = tuple(domain)
        self.codomain = tuple(codomain)
        if tensor.shape != self.codomain + self.domain:
            raise ShapeError(
                f"coefficient tensor shape {tensor.shape} != {self.codomain + self.domain}"
            )
        self.tensor = tensor

    @property
    def field(self):
        return self.tensor.field

    @classmethod
    def from_entries(cls, domain, codomain, entries, field):
        return cls(domain, codomain, SparseTensor(tuple(codomain) + tuple(domain), entries, field))

    @classmethod
    def identity(cls, shape: Sequence[int], field):
        shape = tuple(shape)
        entries = {}

        def rec(prefix, legs):
            if not legs:
                entries[prefix + prefix] = field.one
                return
            for i in range(legs[0]):
                rec(prefix + (i,), legs[1:])

        rec((), shape)
        return cls(shape, shape, SparseTensor(shape + shape, entries, field, _trusted=True))

    @classmethod
    def permutation(cls, shape: Sequence[int], perm: Sequence[int], field):
        """The map sending leg i of the input to leg perm[i] of the output."""
        ident = cls.identity(shape, field)
        return ident.permute_codomain(perm)

    @classmethod
    def from_element(cls, t: SparseTensor):
        """View an element as a map from the 0-leg space (scalars)."""
        return cls((), t.shape, t)

    def __eq__(self, other):
        return (
            isinstance(other, LinearMap)
            and self.domain == other.domain
            and self.codomain == other.codomain
            and self.tensor == other.tensor
        )

    def __repr__(self):
        return f"LinearMap({self.domain} -> {self.codomain}, {len(self.tensor.entries)} entries)"

    def is_zero(self) -> bool:
        return self.tensor.is_zero()

    def __sub__(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ShapeError("map shape mismatch in subtraction")
        return LinearMap(self.domain, self.codomain, self.tensor - other.tensor)

    def __add__(self, other):
        if self.domain != other.domain or self.codomain != other.codomain:
            raise ShapeError("map shape mismatch in addition")
        return LinearMap(self.domain, self.codomain, self.tensor + other.tensor)

    def scale(self, scalar):
        return LinearMap(self.domain, self.codomain, self.tensor.scale(scalar))

    # -- application and composition ---------------------------------

    def apply(self, x: SparseTensor) -> SparseTensor:
        if x.shape != self.domain:
            raise ShapeError(f"cannot apply {self!r} to tensor of shape {x.shape}")
        nc = len(self.codomain)
        pairs = [(nc + i, i) for i in range(len(self.domain))]
        return tensor_contract(self.tensor, x, pairs)

    def compose(self, inner: "LinearMap") -> "LinearMap":
        """self after inner."""
        if inner.codomain != self.domain:
            raise ShapeError(
                f"cannot compose: inner codomain {inner.codomain} != domain {self.domain}"
            )
        return inner.then_at(self, 0)

    def then_at(self, g: "LinearMap", pos: int) -> "LinearMap":
        """Post-compose ``id^pos (x) g (x) id^rest`` onto this map.

        g's domain legs are consumed from this map's codomain starting at
        position ``pos``; g may have an empty domain, which inserts legs.
        """
        k = len(g.domain)
        if self.codomain[pos : pos + k] != g.domain:
            raise ShapeError(
                f"legs {self.codomain[pos:pos + k]} at position {pos} do not match "
                f"domain {g.domain}"
            )
        if g.field != self.field:
            raise ShapeError("cannot compose maps over different fields")
        nc_g = len(g.codomain)
        by_dom: dict[Index, list] = {}
        for idx, val in g.tensor.entries.items():
            by_dom.setdefault(idx[nc_g:], []).append((idx[:nc_g], val))

        nc = len(self.codomain)
        out: dict[Index, object] = {}
        for idx, val in self.tensor.entries.items():
            cod, dom = idx[:nc], idx[nc:]
            mid = cod[pos : pos + k]
            matches = by_dom.get(mid)
            if not matches:
                continue
            head, tail = cod[:pos], cod[pos + k :]
            for gc, w in matches:
                full = head + gc + tail + dom
                s = out.get(full)
                p = val * w
                s = p if s is None else s + p
                if s:
                    out[full] = s
                elif full in out:
                    del out[full]
        codomain = self.codomain[:pos] + g.codomain + self.codomain[pos + k :]
        return LinearMap(
            self.domain,
            codomain,
            SparseTensor(codomain + self.domain, out, self.field, _trusted=True),
        )

    def permute_codomain(self, perm: Sequence[int]) -> "LinearMap":
        nc = len(self.codomain)
        full = list(perm) + [nc + i for i in range(len(self.domain))]
        t = tensor_permute(self.tensor, full)
        return LinearMap(self.domain, t.shape[:nc], t)

    def permute_domain(self, perm: Sequence[int]) -> "LinearMap":
        nc = len(self.codomain)
        full = list(range(nc)) + [nc + p for p in perm]
        t = tensor_permute(self.tensor, full)
        return LinearMap(t.shape[nc:], self.codomain, t)

    def transpose(self) -> "LinearMap":
        nc, nd = len(self.codomain), len(self.domain)
        perm = [nd + i for i in range(nc)] + list(range(nd))
        t = tensor_permute(self.tensor, perm)
        return LinearMap(self.codomain, self.domain, t)

    def group(self) -> "LinearMap":
        """Fuse all codomain legs and all domain legs into one leg each."""
        t = group_legs(self.tensor, (len(self.codomain), len(self.domain)))
        return LinearMap((t.shape[1],), (t.shape[0],), t)

    # -- matrix view ---------------------------------------------------

    def _strides(self, shape):
        strides, acc = [], 1
        for d in reversed(shape):
            strides.append(acc)
            acc *= d
        strides.reverse()
        return strides, acc

    def matrix_entries(self):
        """Yield (row, col, value) with row-major flattened indices."""
        nc = len(self.codomain)
        cstr, _ = self._strides(self.codomain)
        dstr, _ = self._strides(self.domain)
        for idx, val in self.tensor.entries.items():
            row = sum(i * s for i, s in zip(idx[:nc], cstr))
            col = sum(i * s for i, s in zip(idx[nc:], dstr))
            yield row, col, val


def apply_at(g: LinearMap, x: SparseTensor, pos: int) -> SparseTensor:
    """Apply ``id^pos (x) g (x) id^rest`` to an element."""
    return LinearMap.from_element(x).then_at(g, pos).tensor


@dataclass
class SolveResult:
    solution: SparseTensor
    unique: bool


class _Eliminator:
    """Sparse exact Gauss-Jordan elimination over a field.

    Rows are dicts col -> value plus a parallel dict of right-hand sides
    (one per rhs column).  Pivot rows are chosen shortest-first for
    sparsity; within a row the lowest column index wins.  Everything is
    deterministic.
    """

    def __init__(self, field, ncols: int, n_rhs: int):
        self.field = field
        self.ncols = ncols
        self.n_rhs = n_rhs
        self.rows: list[dict] = []
        self.rhs: list[dict] = []

    def add_row(self, coeffs: dict, rhs: dict):
        coeffs = {c: v for c, v in coeffs.items() if v}
        rhs = {i: v for i, v in rhs.items() if v}
        if coeffs or rhs:
            self.rows.append(coeffs)
            self.rhs.append(rhs)

    def run(self):
        """Returns (pivots: dict col -> (row coeffs, rhs)) or None if inconsistent."""
        pivots: dict[int, tuple[dict, dict]] = {}
        pending = list(range(len(self.rows)))
        while True:
            best = None
            for ri in pending:
                row = self.rows[ri]
                if not row:
                    continue
                if best is None or len(row) < len(self.rows[best]):
                    best = ri
            if best is None:
                break
            row, rhs = self.rows[best], self.rhs[best]
            col = min(row)
            inv = self.field.one / row[col]
            row = {c: v * inv for c, v in row.items()}
            rhs = {i: v * inv for i, v in rhs.items()}
            del row[col]
            # eliminate from every other row (including settled pivots)
            for ri in pending:
                if ri == best:
                    continue
                self._eliminate(self.rows[ri], self.rhs[ri], col, row, rhs)
            for pc, (prow, prhs) in pivots.items():
                self._eliminate(prow, prhs, col, row, rhs)
            pivots[col] = (row, rhs)
            pending.remove(best)
        for ri in pending:
            if not self.rows[ri] and self.rhs[ri]:
                return None  # 0 = nonzero: inconsistent
        return pivots

    def _eliminate(self, row: dict, rhs: dict, col: int, prow: dict, prhs: dict):
        factor = row.get(col)
        if not factor:
            return
        del row[col]
        for c, v in prow.items():
            s = row.get(c)
            s = -factor * v if s is None else s - factor * v
            if s:
                row[c] = s
            elif c in row:
                del row[c]
        for i, v in prhs.items():
            s = rhs.get(i)
            s = -factor * v if s is None else s - factor * v
            if s:
                rhs[i] = s
            elif i in rhs:
                del rhs[i]


def _unflatten(flat: int, shape: Sequence[int]) -> Index:
    parts = []
    for d in reversed(shape):
        parts.append(flat % d)
        flat //= d
    parts.reverse()
    return tuple(parts)


def solve_linear(m: LinearMap, rhs: SparseTensor) -> Optional[SolveResult]:
    """Solve ``m(x) = rhs`` exactly.

    Returns None when the system is inconsistent.  When the kernel is
    nontrivial, returns one solution (free coordinates set to zero) with
    ``unique=False``.
    """
    if rhs.shape != m.codomain:
        raise ShapeError(f"rhs shape {rhs.shape} != codomain {m.codomain}")
    ncols = 1
    for d in m.domain:
        ncols *= d
    rows: dict[int, dict] = {}
    for r, c, v in m.matrix_entries():
        rows.setdefault(r, {})[c] = v
    rhs_rows: dict[int, object] = {}
    for idx, v in rhs.entries.items():
        flat = 0
        for i, d in zip(idx, rhs.shape):
            flat = flat * d + i
        rhs_rows[flat] = v
    elim = _Eliminator(m.field, ncols, 1)
    for r in sorted(set(rows) | set(rhs_rows)):
        elim.add_row(rows.get(r, {}), {0: rhs_rows[r]} if r in rhs_rows else {})
    pivots = elim.run()
    if pivots is None:
        return None
    entries = {}
    for col, (_, prhs) in pivots.items():
        if 0 in prhs:
            entries[_unflatten(col, m.domain)] = prhs[0]
    solution = SparseTensor(m.domain, entries, m.field)
    return SolveResult(solution, unique=(len(pivots) == ncols))


def invert_linear_map(m: LinearMap) -> Optional[LinearMap]:
    """Exact two-sided inverse of a map between spaces of equal total dim."""
    nd = 1
    for d in m.domain:
        nd *= d
    nc = 1
    for d in m.codomain:
        nc *= d
    if nd != nc:
        return None
    rows: dict[int, dict] = {}
    for r, c, v in m.matrix_entries():
        rows.setdefault(r, {})[c] = v
    elim = _Eliminator(m.field, nd, nc)
    one = m.field.one
    for r in range(nc):
        elim.add_row(rows.get(r, {}), {r: one})
    pivots = elim.run()
    if pivots is None or len(pivots) != nd:
        return None
    entries = {}
    for col, (_, prhs) in pivots.items():
        didx = _unflatten(col, m.domain)
        for r, v in prhs.items():
            entries[didx + _unflatten(r, m.codomain)] = v
    tensor = SparseTensor(m.domain + m.codomain, entries, m.field)
    return LinearMap(m.codomain, m.domain, tensor)


def map_rank(m: LinearMap) -> int:
    rows: dict[int, dict] = {}
    for r, c, v in m.matrix_entries():
        rows.setdefault(r, {})[c] = v
    elim = _Eliminator(m.field, 0, 0)
    for r in sorted(rows):
        elim.add_row(rows[r], {})
    pivots = elim.run()
    return len(pivots)
