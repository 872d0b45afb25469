"""Mirror-type bicrossproducts, with and without a twisting cocycle.

Three constructions share one assembly engine:

* the mirror product of H: the opposite algebra acting on H by the
  quantum adjoint action, with the adjoint coaction and trivial dual
  cocycle;
* the twisted mirror product: same action and coaction, but the second
  factor is the cocycle twist of H and a nontrivial dual cocycle appears;
* the conjugation product ("mbar"): H itself acting by the right adjoint
  action, with matching coaction and dual cocycle.

Every total is assembled two independent ways: (i) from the displayed
structure formulas, with the antipode obtained as a convolution inverse,
and (ii) by transporting the tensor-product Hopf structure through the
comparison isomorphism theta (whose matrix inverse is computed and also
checked against its closed form).  The transported structure is
canonical; any disagreement raises with a witness instead of guessing.

The counit of the total is eps (x) eps: applying eps (x) eps to
theta(h (x) a) = h_(1) (x) h_(2) a collapses the coproduct legs and
returns eps(h) eps(a), so no other counit is compatible with theta.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Optional

from .errors import AssemblyError, InputError
from .hopf import (
    CheckResult,
    HopfAlgebraData,
    HopfMorphismReport,
    check_morphism,
    compare_elements,
    compare_maps,
    convolution_inverse,
    structural_variant,
)
from .sweedler import EvaluationContext, evaluate, parse
from .tensor import LinearMap, SparseTensor, group_legs, invert_linear_map
from .twist import Cocycle, QuasitriangularStructure, StructureFailure, trivial_cocycle, twist_hopf, verify_cocycle


@dataclass
class CrossData:
    """Action, coaction and dual cocycle for one product construction."""

    host: HopfAlgebraData
    h_part: HopfAlgebraData
    a_part: HopfAlgebraData
    action: LinearMap       # A (x) H -> A
    coaction: LinearMap     # H -> A (x) H
    dual_cocycle: LinearMap  # H -> A (x) A
    kind: str
    cocycle: Optional[Cocycle] = None

    def __eq__(self, other):
        return (
            isinstance(other, CrossData)
            and self.h_part == other.h_part
            and self.a_part == other.a_part
            and self.action == other.action
            and self.coaction == other.coaction
            and self.dual_cocycle == other.dual_cocycle
        )


def expression_map(host: HopfAlgebraData, text: str, var_order, bindings=None) -> LinearMap:
    """Compile a Sweedler expression to the linear map it defines.

    The domain legs are the variables in ``var_order``; the codomain legs
    are the expression's tensor slots.
    """
    bindings = bindings or {}
    expr = parse(text, variables=var_order, cocycles=tuple(bindings))
    ctx = EvaluationContext(host, bindings)
    n = host.dim
    entries: dict = {}
    import itertools

    for combo in itertools.product(range(n), repeat=len(var_order)):
        value = evaluate(expr, ctx, dict(zip(var_order, combo)))
        for idx, v in value.entries.items():
            entries[idx + combo] = v
    domain = (n,) * len(var_order)
    codomain = (n,) * expr.slot_count
    return LinearMap(domain, codomain, SparseTensor(codomain + domain, entries, host.field, _trusted=True))


def _trivial_dual_cocycle(host: HopfAlgebraData) -> LinearMap:
    unit2 = LinearMap.from_element(host.unit.outer(host.unit))
    return host.counit.then_at(unit2, 0)


def mirror_data(h: HopfAlgebraData) -> CrossData:
    """Adjoint action a <| h = h_(1) a S(h_(2)), adjoint coaction
    beta(h) = h_(1) S(h_(3)) (x) h_(2), trivial dual cocycle."""
    return CrossData(
        host=h,
        h_part=structural_variant(h, "op"),
        a_part=h,
        action=expression_map(h, "h1 a1 S(h2)", ("a", "h")),
        coaction=expression_map(h, "h1 S(h3) (x) h2", ("h",)),
        dual_cocycle=_trivial_dual_cocycle(h),
        kind="mirror",
    )


#: dual cocycle of the twisted mirror product
TWISTED_DUAL_COCYCLE = "h1 X1 S(h4) Xi1 (x) h2 X2 S(h3) Xi2"


def twisted_mirror_data(h: HopfAlgebraData, c: Cocycle) -> CrossData:
    """Mirror action and coaction, twisted second factor, and the dual
    cocycle h_(1) chi^(1) S(h_(4)) chi^-(1) (x) h_(2) chi^(2) S(h_(3)) chi^-(2)."""
    if c.host is not h and c.host != h:
        raise InputError("cocycle host differs from the algebra being twisted")
    bindings = {"X": (c.element, c.inverse)}
    return CrossData(
        host=h,
        h_part=structural_variant(h, "op"),
        a_part=twist_hopf(c),
        action=expression_map(h, "h1 a1 S(h2)", ("a", "h")),
        coaction=expression_map(h, "h1 S(h3) (x) h2", ("h",)),
        dual_cocycle=expression_map(h, TWISTED_DUAL_COCYCLE, ("h",), bindings),
        kind="twisted_mirror",
        cocycle=c,
    )


def mbar_data(h: HopfAlgebraData) -> CrossData:
    """Right adjoint action S(h_(1)) a h_(2) of H on itself, coaction
    S(h_(1)) h_(3) (x) h_(2) and dual cocycle S(h_(1)) h_(3) (x) S(h_(2)) h_(4)."""
    h.antipode_inverse()  # bijective antipode is required; fail fast
    return CrossData(
        host=h,
        h_part=h,
        a_part=h,
        action=expression_map(h, "S(h1) a1 h2", ("a", "h")),
        coaction=expression_map(h, "S(h1) h3 (x) h2", ("h",)),
        dual_cocycle=expression_map(h, "S(h1) h3 (x) S(h2) h4", ("h",)),
        kind="mbar",
    )


def check_cross_data(data: CrossData) -> list:
    """Exhaustive module-algebra and counitality checks."""
    h, a = data.host, data.a_part
    na, nh = a.dim, h.dim
    field = h.field
    id3 = LinearMap.identity((na, na, nh), field)
    lhs = id3.then_at(a.mult, 0).then_at(data.action, 0)
    rhs = (
        id3.then_at(h.comult, 2)
        .permute_codomain((0, 2, 1, 3))
        .then_at(data.action, 0)
        .then_at(data.action, 1)
        .then_at(a.mult, 0)
    )
    checks = [compare_maps("module_algebra", lhs, rhs)]
    id1 = LinearMap.identity((nh,), field)
    eta_a = LinearMap.from_element(a.unit)
    checks.append(
        compare_maps(
            "unit_action",
            id1.then_at(eta_a, 0).then_at(data.action, 0),
            h.counit.then_at(eta_a, 0),
        )
    )
    checks.append(
        compare_maps("coaction_counital", data.coaction.then_at(a.counit, 0), id1)
    )
    eps_unit = h.counit.then_at(eta_a, 0)
    checks.append(
        compare_maps("dual_cocycle_counital_left", data.dual_cocycle.then_at(a.counit, 0), eps_unit)
    )
    checks.append(
        compare_maps("dual_cocycle_counital_right", data.dual_cocycle.then_at(a.counit, 1), eps_unit)
    )
    return checks


@dataclass
class Bicrossproduct:
    data: CrossData
    total: HopfAlgebraData
    theta: LinearMap          # tensor Hopf algebra -> total (flat indices)
    theta_inverse: LinearMap
    tensor_form: HopfAlgebraData  # h_part (x) a_part
    agreement: list = dc_field(default_factory=list)  # explicit-vs-transported checks


def _flatten_map(m: LinearMap, cod_groups, dom_groups) -> LinearMap:
    t = group_legs(m.tensor, tuple(cod_groups) + tuple(dom_groups))
    k = len(cod_groups)
    return LinearMap(t.shape[k:], t.shape[:k], t)


def _theta_maps(data: CrossData):
    """theta and its closed-form inverse, on flat product indices."""
    h = data.host
    nh, na = h.dim, data.a_part.dim
    id2 = LinearMap.identity((nh, na), h.field)
    plain = id2.then_at(h.comult, 0).then_at(h.mult, 1)
    with_s = id2.then_at(h.comult, 0).then_at(h.antipode, 1).then_at(h.mult, 1)
    if data.kind in ("mirror", "twisted_mirror"):
        theta_unflat, theta_inv_unflat = plain, with_s
    elif data.kind == "mbar":
        theta_unflat, theta_inv_unflat = with_s, plain
    else:
        raise InputError(f"unknown construction kind {data.kind!r}")
    flat = lambda m: _flatten_map(m, (2,), (2,))
    return flat(theta_unflat), flat(theta_inv_unflat)


def _explicit_structure(data: CrossData):
    h = data.host
    hp, a = data.h_part, data.a_part
    nh, na = hp.dim, a.dim
    field = h.field
    id4 = LinearMap.identity((nh, na, nh, na), field)
    mult = (
        id4.then_at(hp.comult, 2)
        .permute_codomain((0, 2, 1, 3, 4))
        .then_at(data.action, 2)
        .then_at(hp.mult, 0)
        .then_at(a.mult, 1)
    )
    id2 = LinearMap.identity((nh, na), field)
    comult = (
        id2.then_at(hp.comult, 0)
        .then_at(hp.comult, 1)
        .then_at(data.coaction, 1)
        .then_at(data.dual_cocycle, 3)
        .then_at(a.comult, 5)
        .permute_codomain((0, 1, 4, 2, 5, 3, 6))
        .then_at(a.mult, 1)
        .then_at(a.mult, 1)
        .then_at(a.mult, 3)
    )
    counit = id2.then_at(hp.counit, 0).then_at(a.counit, 0)
    unit = hp.unit.outer(a.unit)
    return mult, comult, counit, unit


def assemble(data: CrossData, theta_spec: Optional[str] = None) -> Bicrossproduct:
    """Build the product Hopf algebra both ways and require agreement.

    ``theta_spec`` overrides the comparison-map convention; by default it
    follows the construction kind.  The transported structure is the
    canonical result; the explicit route (including its independently
    solved convolution antipode) must agree coefficient-wise.
    """
    if theta_spec is not None:
        data = CrossData(
            data.host, data.h_part, data.a_part, data.action, data.coaction,
            data.dual_cocycle, theta_spec, data.cocycle,
        )
    hp, a = data.h_part, data.a_part
    nh, na = hp.dim, a.dim
    field = data.host.field
    big = nh * na

    theta, theta_inv_closed = _theta_maps(data)
    theta_inv = invert_linear_map(theta)
    if theta_inv is None:
        raise AssemblyError("theta is singular; no comparison isomorphism")
    agree = [compare_maps("theta_inverse_closed_form", theta_inv, theta_inv_closed)]
    if not agree[0].ok:
        raise AssemblyError(
            "solved theta inverse differs from its closed form", agree[0]
        )

    from .hopf import tensor_hopf

    tensor_form = tensor_hopf(hp, a)
    id_nn = LinearMap.identity((big, big), field)
    mult_t = id_nn.then_at(theta_inv, 0).then_at(theta_inv, 1).then_at(tensor_form.mult, 0).then_at(theta, 0)
    comult_t = theta_inv.then_at(tensor_form.comult, 0).then_at(theta, 0).then_at(theta, 1)
    counit_t = theta_inv.then_at(tensor_form.counit, 0)
    unit_t = theta.apply(tensor_form.unit)
    antipode_t = theta_inv.then_at(tensor_form.antipode, 0).then_at(theta, 0)

    mult_e, comult_e, counit_e, unit_e = _explicit_structure(data)
    mult_e = _flatten_map(mult_e, (2,), (2, 2))
    comult_e = _flatten_map(comult_e, (2, 2), (2,))
    counit_e = _flatten_map(counit_e, (), (2,))
    unit_e = group_legs(unit_e, (2,))

    labels = [f"{lh}(x){la}" for lh in hp.basis_labels for la in a.basis_labels]
    provisional = HopfAlgebraData(
        big, labels, unit_e, mult_e, counit_e, comult_e,
        LinearMap.identity((big,), field), field,
    )
    antipode_e = convolution_inverse(provisional.identity_map(1), provisional, provisional)
    if antipode_e is None:
        raise AssemblyError("explicit structure admits no convolution antipode")

    agree.extend(
        [
            compare_maps("mult_agreement", mult_e, mult_t),
            compare_maps("comult_agreement", comult_e, comult_t),
            compare_maps("counit_agreement", counit_e, counit_t),
            compare_elements("unit_agreement", unit_e, unit_t),
            compare_maps("antipode_agreement", antipode_e, antipode_t),
        ]
    )
    bad = [c for c in agree if not c.ok]
    if bad:
        raise AssemblyError(
            f"assembly routes disagree on {bad[0].name}: {bad[0].witness.render(field)}",
            bad[0],
        )
    total = HopfAlgebraData(big, labels, unit_t, mult_t, counit_t, comult_t, antipode_t, field)
    return Bicrossproduct(data, total, theta, theta_inv, tensor_form, agree)


#: displayed cross coproduct of the (twisted) mirror total, slots (H, A, H, A)
CROSS_COPRODUCT_DISPLAY = "h1 (x) h2 X1 S(h6) a1 Xi'1 (x) h3 (x) h4 X2 S(h5) a2 Xi'2"
#: displayed cross coproduct of the conjugation product
MBAR_COPRODUCT_DISPLAY = "h1 (x) S(h2) h5 a1 (x) h3 (x) S(h4) h6 a2"
#: conjugated-coproduct display fed through theta (x) theta
THETA_COPRODUCT_DISPLAY = "h1 (x) X1 a1 Xi'1 (x) h2 (x) X2 a2 Xi'2"


def _display_bindings(data: CrossData) -> dict:
    c = data.cocycle if data.cocycle is not None else trivial_cocycle(data.host)
    return {"X": (c.element, c.inverse)}


def coproduct_display_check(b: Bicrossproduct) -> CheckResult:
    """The assembled coproduct equals its displayed closed form."""
    host = b.data.host
    if b.data.kind == "mbar":
        m = expression_map(host, MBAR_COPRODUCT_DISPLAY, ("h", "a"))
    else:
        m = expression_map(host, CROSS_COPRODUCT_DISPLAY, ("h", "a"), _display_bindings(b.data))
    return compare_maps("coproduct_display", _flatten_map(m, (2, 2), (2,)), b.total.comult)


def theta_coproduct_check(b: Bicrossproduct) -> CheckResult:
    """Coproduct of theta(h (x) a) equals theta (x) theta of the displayed
    conjugated coproduct (the tensor-form coproduct for the mbar kind)."""
    host = b.data.host
    lhs = b.theta.then_at(b.total.comult, 0)
    if b.data.kind == "mbar":
        inner = b.tensor_form.comult
    else:
        m = expression_map(host, THETA_COPRODUCT_DISPLAY, ("h", "a"), _display_bindings(b.data))
        inner = _flatten_map(m, (2, 2), (2,))
    rhs = inner.then_at(b.theta, 0).then_at(b.theta, 1)
    return compare_maps("theta_coproduct_display", lhs, rhs)


@dataclass
class ExtensionReport:
    """Inclusion of the twisted factor and projection onto the other."""

    iota: HopfMorphismReport
    pi: HopfMorphismReport
    composite: CheckResult

    @property
    def ok(self) -> bool:
        return (
            self.iota.is_morphism
            and self.iota.is_injective
            and self.pi.is_morphism
            and self.pi.is_surjective
            and self.composite.ok
        )


def extension_maps(b: Bicrossproduct):
    """iota: a |-> 1 (x) a and pi: h (x) a |-> eps(a) h, flat indices."""
    hp, a = b.data.h_part, b.data.a_part
    field = b.total.field
    iota = _flatten_map(
        LinearMap.identity((a.dim,), field).then_at(LinearMap.from_element(hp.unit), 0),
        (2,), (1,),
    )
    pi = _flatten_map(
        LinearMap.identity((hp.dim, a.dim), field).then_at(a.counit, 1),
        (1,), (2,),
    )
    return iota, pi


def check_extension(b: Bicrossproduct) -> ExtensionReport:
    iota, pi = extension_maps(b)
    iota_rep = check_morphism(iota, b.data.a_part, b.total)
    pi_rep = check_morphism(pi, b.total, b.data.h_part)
    composite = compare_maps(
        "pi_after_iota",
        iota.then_at(pi, 0),
        b.data.a_part.counit.then_at(LinearMap.from_element(b.data.h_part.unit), 0),
    )
    return ExtensionReport(iota_rep, pi_rep, composite)


@dataclass
class CoincidenceReport:
    """Comparison of the twist-by-R product with the conjugation product
    of the co-opposite algebra, through the antipode identification."""

    morphism: HopfMorphismReport
    a_parts_equal: bool
    holds: bool


def quasitriangular_coincidence(
    h: HopfAlgebraData, q: QuasitriangularStructure
) -> CoincidenceReport:
    chi = verify_cocycle(h, q.element)
    if isinstance(chi, StructureFailure):
        raise AssemblyError(f"R-matrix is not a cocycle: {chi.kind}", chi.check)
    twisted = assemble(twisted_mirror_data(h, chi))
    hcop = structural_variant(h, "cop")
    conj = assemble(mbar_data(hcop))
    field = h.field
    phi = _flatten_map(
        LinearMap.identity((h.dim, h.dim), field).then_at(h.antipode, 0),
        (2,), (2,),
    )
    rep = check_morphism(phi, conj.total, twisted.total)
    return CoincidenceReport(
        morphism=rep,
        a_parts_equal=twisted.data.a_part == conj.data.a_part,
        holds=rep.is_isomorphism,
    )
