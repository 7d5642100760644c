"""Exact arithmetic for the integral shuffle algebra of quantum toroidal gl(1).

Sparse Laurent-polynomial arithmetic over Z[q1^{+-1}, q2^{+-1}], the zeta
shuffle product, the geometric-string divisibility membership test, the
generator families P / Pbar / H / Hbar / Hbar' / S' / F, the symmetric
pairing with its residue form, convex-path PBW expansion, and a batch CLI.
"""

from .arith import (
    C_ONE,
    C_ZERO,
    CoeffPoly,
    Q1,
    Q2,
    Q3,
    RatExpr,
    ZLaurent,
    divides,
    exact_div,
    geom_expand,
    monomial_symmetric,
    unit_quotient,
)
from .errors import (
    ArityCapExceeded,
    ArityMismatch,
    CalibrationFailure,
    InternalContradiction,
    NonTermination,
    NotDivisible,
    NotInS,
    NotInSpan,
    NotPolynomial,
    RegionViolation,
    TruncationUnstable,
    TshufError,
    ZeroDenominator,
)
from .generators import (
    FAMILIES,
    SlopePoint,
    f_to_h_sign,
    gen_F,
    gen_H,
    gen_Hbar,
    gen_Hbar_prime,
    gen_P,
    gen_P_alt,
    gen_Pbar,
    gen_Sprime,
    series_convert,
    z_lambda,
)
from .membership import (
    MembershipReport,
    Partition,
    divisibility_kernel,
    is_in_S,
    partitions_desc,
    phi,
    pi3,
    reduce_to_generators,
    wheel_check,
)
from .pairing import (
    ConvexPath,
    PairingValue,
    convex_paths,
    integrality_check,
    ordered_constant_term,
    pair,
    pair_against_path,
    pair_residue,
    path_element,
    path_kernel,
    pbw_expand,
    residue_sign,
    window_stable,
)
from .shuffle import (
    Kernel,
    ScaledElem,
    ShuffleElem,
    f_n,
    kernel_shuffle,
    shuffle_mul,
    shuffle_product,
    sym_full,
    zeta,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
