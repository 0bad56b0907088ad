"""Free p-central groups, their subgroup series, Schur multipliers and exponential ranks."""

from .cayley import (
    CayleyGroup,
    Subgroup,
    builtin_group,
    center,
    exponent,
    is_p_central,
    lambda_series,
    lower_central,
    n_subgroup,
    omega,
    power_subgroup,
    quotient,
    subgroup_closure,
)
from .collection import NormalForm, magnus_image, nf_commutator, nf_multiply, nf_power
from .commutators import basic_commutators, cumulative_count, witt_count
from .freepcentral import (
    FpcElement,
    FpcScheme,
    construct_free_pcentral,
    fpc_enumerate,
    fpc_multiply,
    fpc_order_exponent,
)
from .homology import (
    AbelianInvariants,
    IntegerMatrix,
    check_exp_multiplier,
    h2_integral,
    multiplier_free_pcentral,
    smith_normal_form,
)
from .semigroup import exponent_semigroup, exprank, is_power_endomorphism

__version__ = "0.1.0"

__all__ = [
    "CayleyGroup",
    "Subgroup",
    "builtin_group",
    "center",
    "exponent",
    "is_p_central",
    "lambda_series",
    "lower_central",
    "n_subgroup",
    "omega",
    "power_subgroup",
    "quotient",
    "subgroup_closure",
    "NormalForm",
    "magnus_image",
    "nf_commutator",
    "nf_multiply",
    "nf_power",
    "basic_commutators",
    "cumulative_count",
    "witt_count",
    "FpcElement",
    "FpcScheme",
    "construct_free_pcentral",
    "fpc_enumerate",
    "fpc_multiply",
    "fpc_order_exponent",
    "AbelianInvariants",
    "IntegerMatrix",
    "check_exp_multiplier",
    "h2_integral",
    "multiplier_free_pcentral",
    "smith_normal_form",
    "exponent_semigroup",
    "exprank",
    "is_power_endomorphism",
]

