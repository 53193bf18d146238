"""Exact computations with roots of E8 and related root lattices."""

__version__ = "0.1.0"

from .errors import (CeilingExceeded, InvariantViolation, LatticeError, UsageError,  # noqa: F401
                     VerificationFailure)
from .lattice import (LatticePreset, LatticeVector, build_preset, dot,  # noqa: F401
                      express_in_simple_roots, format_machine, format_text, parse_vector)
from .enumeration import (brute_force_enumerate, candidate_bound, enumerate_normal_forms,  # noqa: F401
                          randomized_search, representation_number)
from .orthocount import (count_orthogonal_roots, decompose_root_system, m0_m1,  # noqa: F401
                         quasi_pullback_weight, root_type, scan_range, smallest_d_for)
