"""Exact van der Waerden number laboratory.

Certified computation of small W(r, k) by pruned DFS with verifiable
witness colorings, exact base-r expansion machinery, and the full suite
of digit-expansion bound checks over a registry of known values.
"""

from .bounds import (
    BoundReport,
    PowerBound,
    PrimeCaseReport,
    a_of,
    bound_report,
    condition1_check,
    condition2_check,
    corollary21_check,
    gowers_dominates,
    is_prime,
    k_from_a,
    n_from_a,
    prime_case,
    thm21_upper_bound,
    thm22_biconditional,
    thm24_surrogate,
    thm41_check,
    trichotomy_check,
    w_lt_r_pow_k_squared,
)
from .expansion import Expansion, expand, exponent_n, reconstruct
from .registry import (
    Registry,
    RegistryError,
    VdwRecord,
    bundled_registry_path,
    default_registry_path,
    load_default,
    reconcile,
)
from .search import (
    DEFAULT_BUDGET,
    Coloring,
    SearchOutcome,
    TractabilityError,
    WitnessResult,
    compute_w,
    find_witness,
    has_mono_ap,
    has_mono_ap_bitset,
    has_mono_ap_ending_at,
    verify_unavoidable_exhaustive,
)

__version__ = "0.1.0"
