"""Exact kernel for the rank-one double affine Hecke algebra of type
(C1v, C1), the Askey-Wilson q-commutator algebra with Casimir element,
and their polynomial representation, together with a catalog of
mechanically verified identities.

All arithmetic is exact: coefficients are rational functions in the
parameters q, a, b, c, d over the rationals, optionally extended by a
square root s of abcd/q for the duality maps.
"""

from .errors import (
    BudgetExhausted,
    ConfigError,
    DegenerateParameters,
    DivisionByZero,
    ExtensionDisabled,
    InternalDenominatorResidue,
    KernelError,
    MissingAssignment,
    NotSymmetric,
    ParseError,
    UnknownIdentity,
)
from .ncalg import (
    AW_ALPHABET,
    DAHA_ALPHABET,
    DEFAULT_BUDGET,
    Element,
    NormalForm,
    RewriteSystem,
    antispherical,
    aw_equal,
    center_probe,
    centralizer_probe,
    check_step_identity,
    duality_image,
    embed_aw,
    embed_element,
    idempotents,
    is_o_of,
    iso_antispherical,
    iso_spherical,
    multiply,
    reduce,
    rewrite_system,
    shift_operator_identities,
    spherical,
)
from .params import (
    PARAM_NAMES,
    Params,
    RatFunc,
    StructureConstants,
    eigenvalue,
    elementary_symmetric,
    make_params,
    prob_equal,
    random_admissible_point,
    ratfunc_arith,
    structure_constants,
)
from .polyrep import (
    LaurentPoly,
    apply_dsym,
    apply_k1,
    apply_word,
    askey_wilson,
    casimir_apply,
    check_aw_relations_in_rep,
    qpochhammer,
    recurrence_coeffs,
    shifted_qn,
)
from .verify import (
    TOOL_VERSION,
    CheckResult,
    CheckSpec,
    Report,
    RunConfig,
    check_ids,
    emit_report,
    load_report,
    parse_expression,
    run_checks,
)

__version__ = TOOL_VERSION

__all__ = [
    "AW_ALPHABET",
    "BudgetExhausted",
    "CheckResult",
    "CheckSpec",
    "ConfigError",
    "DAHA_ALPHABET",
    "DEFAULT_BUDGET",
    "DegenerateParameters",
    "DivisionByZero",
    "Element",
    "ExtensionDisabled",
    "InternalDenominatorResidue",
    "KernelError",
    "LaurentPoly",
    "MissingAssignment",
    "NormalForm",
    "NotSymmetric",
    "PARAM_NAMES",
    "Params",
    "ParseError",
    "RatFunc",
    "Report",
    "RewriteSystem",
    "RunConfig",
    "StructureConstants",
    "TOOL_VERSION",
    "UnknownIdentity",
    "antispherical",
    "apply_dsym",
    "apply_k1",
    "apply_word",
    "askey_wilson",
    "aw_equal",
    "casimir_apply",
    "center_probe",
    "centralizer_probe",
    "check_aw_relations_in_rep",
    "check_ids",
    "check_step_identity",
    "duality_image",
    "eigenvalue",
    "elementary_symmetric",
    "embed_aw",
    "embed_element",
    "emit_report",
    "idempotents",
    "is_o_of",
    "iso_antispherical",
    "iso_spherical",
    "load_report",
    "make_params",
    "multiply",
    "parse_expression",
    "prob_equal",
    "qpochhammer",
    "random_admissible_point",
    "ratfunc_arith",
    "recurrence_coeffs",
    "reduce",
    "rewrite_system",
    "run_checks",
    "shift_operator_identities",
    "shifted_qn",
    "spherical",
    "structure_constants",
]
