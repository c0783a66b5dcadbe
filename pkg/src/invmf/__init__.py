"""Inverse images of multiplicative functions over the divisor lattice.

Given a target n with known factorization, compute the full pre-image set
of n under Euler's phi or a divisor power sum sigma_k, or aggregate that
pre-image (count, sum, sum of powers, min, max) directly without ever
materializing it. The oracle submodule (imported separately, needs numpy)
provides sieve-based brute-force checks.
"""

from .arith import (
    ONE,
    FactoredInteger,
    eval_phi,
    eval_sigma,
    factorize,
    integer_root,
    is_prime,
    primes_up_to,
    valuation,
)
from .engine import InverseReport, OpCounter, SparseSeries, initial_series, invert, multiply_restricted
from .errors import ResourceLimitError
from .functions import (
    AtomicSeries,
    MultiplicativeFunction,
    build_atomic_series,
    build_phi_atomics,
    build_sigma_atomics,
    phi,
    sigma,
)
from .lattice import DEFAULT_DIVISOR_CAP, DivisorEntry, DivisorLattice, build_lattice
from .semiring import (
    COUNT,
    MAX,
    MIN,
    SET,
    SUM,
    SUMPOW,
    Aggregator,
    coeff_add,
    coeff_mul,
    make_aggregator,
)

__version__ = "0.1.0"

__all__ = [
    "AtomicSeries",
    "Aggregator",
    "COUNT",
    "DEFAULT_DIVISOR_CAP",
    "DivisorEntry",
    "DivisorLattice",
    "FactoredInteger",
    "InverseReport",
    "MAX",
    "MIN",
    "MultiplicativeFunction",
    "ONE",
    "OpCounter",
    "ResourceLimitError",
    "SET",
    "SUM",
    "SUMPOW",
    "SparseSeries",
    "build_atomic_series",
    "build_lattice",
    "build_phi_atomics",
    "build_sigma_atomics",
    "coeff_add",
    "coeff_mul",
    "eval_phi",
    "eval_sigma",
    "factorize",
    "initial_series",
    "integer_root",
    "invert",
    "is_prime",
    "make_aggregator",
    "multiply_restricted",
    "phi",
    "primes_up_to",
    "sigma",
    "valuation",
]
