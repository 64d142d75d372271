"""Exact computation of rank-two cluster variable expansions.

Two independent routes compute the same objects: the defining recurrence
with exact Laurent polynomial division, and a closed-form constrained sum
over admissible integer tuples.  Euler characteristics of the associated
quiver Grassmannian cells fall out of either route and every identity
connecting them is executable and tested.
"""

from .combinat import (
    ClusterContext,
    SPrefix,
    a_seq,
    euler_form,
    mod_binom,
    s_prefix_extend,
)
from .laurent import ONE, X1, X2, InexactDivisionError, LaurentPoly2
from .recurrence import (
    ChiTable,
    ExpansionStructureError,
    chi_from_expansion,
    cluster_var_recurrence,
    scalar_cluster_value,
)
from .closedform import (
    chi_formula,
    chi_formula_summands,
    cluster_var_formula,
    cluster_var_formula_v2,
    enumerate_admissible,
)
from .identities import (
    RationalPoly,
    VPrefix,
    staged_chi_sum,
    v_prefix_extend,
    vandermonde_sides,
    vanishing_check,
)

__version__ = "0.1.0"

__all__ = [
    "ClusterContext",
    "SPrefix",
    "VPrefix",
    "RationalPoly",
    "LaurentPoly2",
    "ChiTable",
    "InexactDivisionError",
    "ExpansionStructureError",
    "X1",
    "X2",
    "ONE",
    "a_seq",
    "mod_binom",
    "euler_form",
    "s_prefix_extend",
    "v_prefix_extend",
    "cluster_var_recurrence",
    "scalar_cluster_value",
    "chi_from_expansion",
    "chi_formula",
    "chi_formula_summands",
    "cluster_var_formula",
    "cluster_var_formula_v2",
    "enumerate_admissible",
    "staged_chi_sum",
    "vandermonde_sides",
    "vanishing_check",
]
