"""Cochain spaces and the five differentials."""
from .cochains import (AlternatingCochain, AltSpace, Cochain, DendCochain, DendSpace,
                       DenseSpace, sort_with_sign)
from .ce import delta_ce
from .dendriform import delta_dendriform, delta_dendriform_expanded
from .hochschild import (ClosureFailure, ConstraintViolation, delta_hochschild, delta_perm,
                         perm_constraint_matrix, perm_subspace)
from .prelie import ansatz_subspace, delta_prelie, delta_prelie_display
from .rmaps import FormalIndexSum, IndexOutOfRange, r0_map, ri_map

__all__ = [
    "AlternatingCochain", "AltSpace", "Cochain", "DendCochain", "DendSpace", "DenseSpace",
    "sort_with_sign", "delta_ce", "delta_dendriform", "delta_dendriform_expanded",
    "ClosureFailure", "ConstraintViolation", "delta_hochschild", "delta_perm",
    "perm_constraint_matrix", "perm_subspace", "ansatz_subspace", "delta_prelie",
    "delta_prelie_display", "FormalIndexSum", "IndexOutOfRange", "r0_map", "ri_map",
]
