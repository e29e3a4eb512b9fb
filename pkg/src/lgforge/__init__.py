"""Exact arithmetic for toric Landau-Ginzburg models.

Laurent polynomial periods, mutations, toric mirrors and quantum-period
oracles, divisor-direction degenerations, and a machine-verified catalog
of models, all over exact rationals.
"""

from .catalog import CatalogEntry, Check, load_catalog, verify_all, verify_entry
from .degeneration import (
    DegenerationResult,
    DivisorOnFan,
    direction_degeneration,
    parameter_direction_limit,
    parameter_limit,
    restrict_model,
)
from .laurent import (
    LaurentError,
    LaurentPolynomial,
    NewtonPolytopeData,
    ParamPoly,
    laurent_divide,
)
from .mutation import (
    CoordStep,
    MutationChain,
    MutationData,
    MutationStep,
    NotMutableError,
    SubstStep,
    grade_by_weight,
    invert_mutation,
    mutate,
    run_chain,
    verify_chain,
)
from .parsing import ExpressionError, parse
from .period import (
    CLASSICAL,
    REGULARIZED,
    PeriodSeries,
    period_coefficients,
    period_distinct,
    period_equal_up_to_shift,
    shift_relation_check,
)
from .toric import (
    ClassGroupData,
    FanData,
    MarkovTriple,
    NefPartition,
    RelationMonoidSlice,
    ToricError,
    ci_quantum_period,
    class_group,
    fibre_fan,
    hori_vafa,
    markov_mutate,
    markov_solutions_up_to,
    markov_tree,
    relation_monoid,
    toric_pair_model,
    toric_quantum_period,
    wpp_fan_polytope,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
