"""Exact computations with finite-dimensional Hopf algebras.

Structure constants over the rationals (or a prime field), Drinfeld
2-cocycles and twisting, quasitriangular structures, mirror-type
bicrossproducts assembled and cross-verified two independent ways, and a
small Sweedler-notation expression language for checking structure-map
identities exhaustively on a basis.
"""

__version__ = "0.1.0"

from .errors import (
    AssemblyError,
    CapabilityError,
    ConsistencyError,
    EvaluationError,
    InputError,
    ParseError,
    SchemaError,
    ShapeError,
    ToolkitError,
)
from .fields import ModP, PrimeField, Q, RationalField, field_from_spec
from .tensor import (
    LinearMap,
    SolveResult,
    SparseTensor,
    apply_at,
    group_legs,
    invert_linear_map,
    map_rank,
    solve_linear,
    split_leg,
    tensor_contract,
    tensor_permute,
)
from .hopf import (
    DIM_CAP,
    CheckResult,
    HopfAlgebraData,
    HopfMorphismReport,
    HopfReport,
    Witness,
    check_morphism,
    compare_elements,
    compare_maps,
    convolution_inverse,
    coproduct_columns,
    cyclic_table,
    dual_hopf,
    elt_mult,
    group_algebra,
    iterated_coproduct,
    mult_operator,
    permute_basis,
    product_table,
    structural_variant,
    sweedler_h4,
    symmetric_table,
    tensor_hopf,
    unit_element,
    validate_hopf,
)
from .sweedler import (
    EvaluationContext,
    IdentityResult,
    SweedlerExpr,
    check_identity,
    evaluate,
    parse,
)
from .twist import (
    CharacterData,
    Cocycle,
    QuasitriangularStructure,
    StructureFailure,
    abelian_characters,
    bicharacter_cocycle,
    h4_r_matrix,
    invert_tensor_element,
    r_as_cocycle,
    trivial_cocycle,
    twist_hopf,
    verify_cocycle,
    verify_quasitriangular,
)
from .bicross import (
    Bicrossproduct,
    CoincidenceReport,
    CrossData,
    ExtensionReport,
    assemble,
    check_cross_data,
    check_extension,
    expression_map,
    extension_maps,
    mbar_data,
    mirror_data,
    quasitriangular_coincidence,
    twisted_mirror_data,
)
from .files import (
    VerificationReport,
    canonical_json,
    emit_report,
    hopf_from_dict,
    hopf_to_dict,
    load_element,
    load_hopf,
    load_request,
    save_hopf,
)
