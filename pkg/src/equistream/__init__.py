"""Exact tools for equity axioms on infinite utility streams."""

__version__ = "0.1.0"

from .domains import UtilityDomain, classify, reference_domains
from .pairing import PairingFunction, brute_force_witness, find_witness, validate
from .streams import PeriodicIndexSet, Stream
from .swf import periodic_base_sum, w_min, w_prop1, w_prop2, w_rho_inf
from .swr import filter_compare, sorted_prefix

__all__ = [
    "PairingFunction",
    "PeriodicIndexSet",
    "Stream",
    "UtilityDomain",
    "brute_force_witness",
    "classify",
    "filter_compare",
    "find_witness",
    "reference_domains",
    "periodic_base_sum",
    "sorted_prefix",
    "validate",
    "w_min",
    "w_prop1",
    "w_prop2",
    "w_rho_inf",
]
