"""Distance from square pyramidal numbers to the nearest square.

a_n = |P_n - y_n^2| with P_n = 1^2 + ... + n^2 and y_n^2 the closest square.
The package generates the sequence exactly and checks its averages over
progressions, twisted sums, equidistribution of {sqrt(P_n)}, and the
associated Dirichlet series numerically.
"""
from .averages import (
    APQuery, AverageReport, average_a, average_a_ap, partition_check, residual_table,
    sum_a, sum_a_ap,
)
from .cache import CacheFormatError, cache_read, cache_write
from .characters import (
    DirichletCharacter, TwistedSumReport, UnitGroupStructure, ap_reconstruct,
    character_residue_sum, characters, eval_char, twisted_sum, unit_group_structure,
)
from .config import ResourceError, RunConfig
from .equidist import (
    BoundComparison, UnitSample, erdos_turan_bound, exp_sum, extreme_discrepancy,
    frac_family, kn_bound, pyramid_sqrt_derivatives, star_discrepancy,
)
from .exact import (
    FixedPointFraction, SequenceRecord, a, b_sieve, frac_sqrt_pyramidal, isqrt,
    nearest_square_distance, pyramidal, residual_c, sequence_range,
)
from .fit import FitResult, fit_exponent
from .kernels import BACKEND
from .series import (
    CesaroReport, PartialSeriesValue, F_via_G, cesaro_B, partial_F, partial_F_chi,
    partial_G, partial_H, residue_probe, zeta_partial, zeta_real,
)

__version__ = "0.1.0"
