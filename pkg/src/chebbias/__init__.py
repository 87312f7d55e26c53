"""Chebyshev's bias in prime races, Robin's B-function and the regularized bias."""

from .analysis import (
    BiasScanner,
    ChampionRecord,
    LogDensity,
    VerifyResult,
    Zone,
    bias_sum,
    champions,
    log_density,
    scan,
    verify_positivity,
    zones,
)
from .bias_core import BiasPoint, bias_point, delta, delta_reg, pi_approx, pi_reg, robin_B
from .explicit import ZeroTable, bundled, explicit_delta, variance
from .numerics import (
    ResidueClassification,
    SingularArgumentError,
    UnsupportedModulusError,
    c_term,
    classify_residues,
    euler_phi,
    legendre,
    logint,
    mobius,
)
from .primes import (
    PrimePower,
    ResidueTally,
    SieveSegment,
    iterate_prime_powers,
    pi,
    sieve_segment,
    tally_range,
    tally_to,
)

__version__ = "0.1.0"
