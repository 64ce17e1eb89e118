from .builders import (
    FamilyId,
    UnsupportedFamily,
    counterexample_psi32,
    finite_class_members,
    make_family,
    optimal_member,
    p1_family,
    pade,
    pihat_numerator_coeffs,
    repeated_midpoint_function,
)
from .constants import NamedConstant, export_table, named_constants, validate_all
from .lemmas import (
    PolyLemmaInput,
    coefficient_bounds_check,
    lemma25_check,
    linear_combination_identity_check,
    trace_inequality_check,
)
from .systems import (
    S3P2,
    S4P2,
    FeasibilitySystem,
    feasibility_check,
    s4_branch_first,
    s4_branch_second,
    uniqueness_search,
    violation_witness,
)
