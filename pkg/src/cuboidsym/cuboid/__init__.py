"""Factor equations of the perfect cuboid problem."""

from .catalog import (
    CATALOG_IDS,
    FactorEquation,
    catalog_by_id,
    dump_catalog,
    factor_catalog,
    first_difference,
    is_normalized,
    load_catalog,
    normalize,
    verify_factor_equation,
)
from .derivation import (
    ALTERNATE_RULES,
    RECIPES,
    DerivationTrace,
    Recipe,
    Step,
    branch_results,
    combination_coefficients,
    compare_with_catalog,
    derivation_branch_equivalence,
    derive_factor_equations,
    dump_traces,
    eliminate_monomial,
    recipe,
    replay,
    run_recipe,
)
from .numeric import NumericReport, cuboid_point, numeric_residual, relative_residual, sample_edges
from .system import (
    CUBOID_VT,
    DISPLAY_ORDER,
    REDUCTION_ORDER,
    RULE_SETS,
    CuboidSystem,
    RewriteRule,
    Verification,
    cuboid_elementaries,
    cuboid_generators,
    cuboid_system,
    elementary_linear_rank,
    reduce_cuboid,
    reduce_with_quotients,
    rewrite,
    rule_set,
    verify_polynomial,
)

__all__ = [name for name in dir() if not name.startswith("_")]
