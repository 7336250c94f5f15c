"""Exact-arithmetic Rankin-Cohen algebras over graded polynomial rings."""

from .algebra import (
    AlgebraError,
    AlgebraSpec,
    GradedPoly,
    InhomogeneousError,
    Monomial,
    ZERO,
    INHOMOGENEOUS,
    embed,
    exact_divide,
    gen_binomial,
    homogeneous_components,
    pochhammer,
    reduce_mod_relations,
    substitute,
    weight_of,
)
from .brackets import (
    CanonicalData,
    EMPTY_WINDOW,
    bracket_support_window,
    canonical_bracket,
    canonical_iterate,
    standard_bracket,
)
from .catalog import BUILTIN_NAMES, CLASSICAL_LAMBDA_COEFF, builtin
from .ckseries import CKPair, XSeries, a_n_term, ck_series, exp_series, verify_lemma42
from .derivations import (
    Derivation,
    apply,
    check_sl2_triple,
    commutator,
    iterate,
    weight_derivation,
)
from .exprs import ExprSyntaxError, format_poly, parse_expr
from .extension import (
    ExtensionSpec,
    build_extension,
    d_power_e2,
    e2_profile,
    kk_theta_e2,
    kk_theta_f,
    psi,
    verify_bracket_equality,
)
from .qseries import (
    QSeries,
    check_ramanujan,
    eisenstein,
    evaluate,
    express_in_basis,
    sigma,
)
from .rrc import (
    CaseI,
    CaseII,
    RRCShapeError,
    RRCSystem,
    certify_rrc,
    from_bracket_data,
    from_canonical,
    strip_rrc,
)
from .suites import SUITES, run_suite
