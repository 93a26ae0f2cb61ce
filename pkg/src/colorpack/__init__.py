"""Online and offline colored bin packing with exact rational sizes."""

from .core import (Bin, Instance, Item, Packing, Violation, bin_count, format_instance,
                   make_instance, parse_instance, read_instance, validate_packing,
                   write_instance, zero_instance)
from .discrepancy import DiscrepancyState, ds_update, lb1, lb2, lb2_oracle
from .offline import construct_lb2_packing, exact_opt
from .online import ALGORITHMS, make_algorithm, run_online

__all__ = [
    "Bin", "Instance", "Item", "Packing", "Violation", "bin_count", "format_instance",
    "make_instance", "parse_instance", "read_instance", "validate_packing",
    "write_instance", "zero_instance", "DiscrepancyState", "ds_update", "lb1", "lb2",
    "lb2_oracle", "construct_lb2_packing", "exact_opt", "ALGORITHMS", "make_algorithm",
    "run_online",
]
__version__ = "0.1.0"
