"""Dimensions of the O'Nan moonshine module from traces of singular moduli,
class number congruences and the related elliptic curve L-series."""

__version__ = "0.1.0"

from .arith import BigFloat, Discriminant, is_fundamental, is_square_mod, kronecker_chi
from .qforms import (
    QuadraticForm,
    class_number,
    class_representatives,
    cm_point,
    gamma0_class_number,
    reduce,
    weight,
)
from .modfun import J_onan, evaluate_J, j_coefficients, theta
from .traces import TraceResult, trace, trace_table, weighted_class_term
from .lfun import curve, count_points, dirichlet_L1, l_value_at_1, selmer_indicator

__all__ = [
    "BigFloat",
    "Discriminant",
    "J_onan",
    "QuadraticForm",
    "TraceResult",
    "class_number",
    "class_representatives",
    "cm_point",
    "count_points",
    "curve",
    "dirichlet_L1",
    "evaluate_J",
    "gamma0_class_number",
    "is_fundamental",
    "is_square_mod",
    "j_coefficients",
    "kronecker_chi",
    "l_value_at_1",
    "reduce",
    "selmer_indicator",
    "theta",
    "trace",
    "trace_table",
    "weight",
    "weighted_class_term",
]
