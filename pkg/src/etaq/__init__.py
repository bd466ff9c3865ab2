"""q-series and eta-quotient tools for t-regular partition congruences mod 2."""
from .eta import (
    Classification,
    EtaQuotient,
    Verdict,
    character,
    classify,
    classify_sum,
    cusp_order,
    expand_sum,
    parse_eta,
    q_expansion,
    weight_and_conditions,
)
from .arith import kronecker
from .hecke import HeckeReport, ResourceCapError, annihilation_test, hecke_tp, prime_search, sturm_bound
from .partitions import (
    OracleRangeError,
    ParityOracle,
    RegularCountTable,
    count_partitions,
    count_regular,
    oracle_series,
)
from .series import Ring, Series, dissect, euler_product, inflate, inverse, mul, power, to_gf2
from .congruences import (
    CongruenceReport,
    self_similarity_params,
    verify_identity,
    verify_kz_b25_vanishing,
    verify_theorem_b3,
    verify_theorem_b21,
    verify_theorem_b25,
)

__version__ = "0.1.0"
