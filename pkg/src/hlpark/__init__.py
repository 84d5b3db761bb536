"""Haglund-Loehr pairs, admissible pairs and parking functions.

Encoders and decoders for both codings of parking functions, permutation
statistics, the small-maj shape tables, and an exact (optionally parallel and
checkpointed) computation of the generating polynomial R_n(q, t).
"""

__version__ = "0.1.0"

from ._backend import BACKEND
from .bs_codec import (
    bs_decode,
    bs_encode,
    classify_shape,
    is_admissible,
    iter_shapes,
    shape_from_l,
    shape_to_l,
    shape_to_permutation,
    sigma_from_kl,
)
from .core import (
    AdmissiblePair,
    BivariatePolynomial,
    HLPair,
    ParkingFunction,
    Permutation,
    ShapeDescriptor,
    ShapeVariant,
    inverse,
    validate_parking_function,
)
from .enumeration import (
    EnumerationJob,
    compute_r_polynomial,
    enumerate_admissible_pairs,
    enumerate_hl_pairs,
    enumerate_parking_functions,
    pf_statistics,
    verify_bijections,
)
from .hl_codec import hl_decode, hl_decode_with_strategy, hl_encode
from .stats import descent_set, is_hl_pair, maj, u_vector
