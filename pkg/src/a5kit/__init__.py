"""Exact toolkit for the six-component symmetric Painleve system.

Modules:

- ``algebra``: exact rationals, polynomials, rational functions, Laurent data
- ``weyl``: the extended affine Weyl group acting on parameter tuples
- ``backlund``: solutions of the system and the group action on them
- ``local``: pole patterns, residue tables, the auxiliary function H
- ``classify``: executable existence criteria and solution synthesis
- ``cli``: command-line front end and JSON wire formats
"""

from .algebra import (
    INFINITY,
    AlgebraError,
    LaurentSeries,
    Poly,
    RatFunc,
    Rational,
    laurent_expand,
    pole_support,
    residue,
)
from .backlund import Solution, act_solution, act_solution_word, residual, verify_solution
from .classify import (
    ClassificationReport,
    ConditionId,
    StandardForm,
    check_conditions_A,
    check_conditions_B,
    check_conditions_C,
    classify,
    reduce_to_standard,
    seed_solution,
    synthesize_solution,
)
from .local import (
    FinitePoleCase,
    HamiltonianData,
    InfinityType,
    ZeroPattern,
    diagnose,
    expand_solution_ansatz,
    finite_pole_cases,
    h_constant_at_infinity,
    h_constant_at_zero,
    hamiltonian,
    hamiltonian_data,
    infinity_residue_table,
    infinity_type,
    obstruction_check,
    residue_integrality_check,
    zero_pattern,
)
from .weyl import (
    Generator,
    Params,
    TransformWord,
    act_params,
    act_params_word,
    orbit_search,
    parse_word,
    shift_word,
)

__all__ = [
    "INFINITY", "AlgebraError", "LaurentSeries", "Poly", "RatFunc", "Rational",
    "laurent_expand", "pole_support", "residue",
    "Solution", "act_solution", "act_solution_word", "residual", "verify_solution",
    "ClassificationReport", "ConditionId", "StandardForm",
    "check_conditions_A", "check_conditions_B", "check_conditions_C",
    "classify", "reduce_to_standard", "seed_solution", "synthesize_solution",
    "FinitePoleCase", "HamiltonianData", "InfinityType", "ZeroPattern",
    "diagnose", "expand_solution_ansatz", "finite_pole_cases",
    "h_constant_at_infinity", "h_constant_at_zero", "hamiltonian",
    "hamiltonian_data", "infinity_residue_table", "infinity_type",
    "obstruction_check", "residue_integrality_check", "zero_pattern",
    "Generator", "Params", "TransformWord", "act_params", "act_params_word",
    "orbit_search", "parse_word", "shift_word",
]
