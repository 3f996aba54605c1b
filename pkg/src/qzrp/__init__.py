"""Exact computations for the tableau chain and the multispecies TAZRP."""

from .exactalg import LaurentPoly, NotDivisible, gcd_is_unit, t_multinomial
from .shapes import Cell, Partition, compress, conjugate
from .tableaux import Filling, enumerate_fillings, proj, quinv, weight
from .zrp import ZrpConfig, ZrpParams, enumerate_configs, stationary_exact, tazrp_weight

__version__ = "0.1.0"

__all__ = [
    "Cell", "Filling", "LaurentPoly", "NotDivisible", "Partition", "ZrpConfig",
    "ZrpParams", "compress", "conjugate", "enumerate_configs", "enumerate_fillings",
    "gcd_is_unit", "proj", "quinv", "stationary_exact", "t_multinomial",
    "tazrp_weight", "weight",
]
