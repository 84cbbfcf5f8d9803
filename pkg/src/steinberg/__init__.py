"""Jordan-Hoelder factors of locally analytic Steinberg representations.

Exact Weyl-group and Kazhdan-Lusztig combinatorics; representations appear
only as labelled multiplicities.
"""

from .errors import (
    CoefficientOverflow,
    FormatError,
    IndexOutOfRange,
    InternalInconsistency,
    InvalidJ,
    InvalidType,
    MixedRootSystems,
    NotDominant,
    NotMinimalRepresentative,
    SizeGuardExceeded,
    SteinbergError,
)
from .roots import CartanType, RootSystem, Weight, build_root_system, dot_action, is_dominant, pairing
from .weyl import SimpleSubset, WeylElem, WeylGroup, weyl_group
from .kl import KLPoly, KLStore, kl_polynomial, kl_table, mu, parabolic_verma_multiplicity, verma_multiplicity
from .jh import (
    FactorMultiset,
    JHFactor,
    coxeter_criterion,
    jh_generalized_steinberg,
    jh_induced,
    jh_steinberg,
    steinberg_multiplicity,
)
from .verify import Report, verify_smooth_complex, verify_tits_euler
from .cache import cache_load, cache_save

__version__ = "0.1.0"
