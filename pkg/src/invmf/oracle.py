"""Brute-force cross-checks, kept deliberately independent of the engine.

Everything here recomputes function values from scratch with sieves over a
candidate range and shares no arithmetic with the lattice machinery, so an
agreement between the two is meaningful. Bounds are the caller's problem:
for phi, every pre-image of n lies at or below 2 * n**2 (since
phi(m) >= sqrt(m / 2)); for sigma_k the pre-images of n never exceed n.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import ResourceLimitError
from .functions import MultiplicativeFunction

__all__ = [
    "DEFAULT_SIEVE_BUDGET",
    "sieve_phi",
    "sieve_sigma",
    "oracle_preimages",
    "preimage_table",
    "phi_preimage_bound",
]

DEFAULT_SIEVE_BUDGET = 1 << 26  # max sieve entries, about 256 MB at 4 bytes each


def phi_preimage_bound(n: int) -> int:
    """A bound B such that every m with phi(m) = n satisfies m <= B."""
    return 2 * n * n


def _check_budget(limit: int, budget: int) -> None:
    if limit + 1 > budget:
        raise ResourceLimitError(
            f"sieve of {limit + 1} entries exceeds the budget of {budget}"
        )


def sieve_phi(limit: int, budget: int = DEFAULT_SIEVE_BUDGET) -> np.ndarray:
    """phi(m) for all m <= limit, as an array indexed by m (entry 0 unused)."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    _check_budget(limit, budget)
    comp = np.zeros(limit + 1, dtype=bool)
    comp[:2] = True
    for p in range(2, math.isqrt(limit) + 1):
        if not comp[p]:
            comp[p * p :: p] = True
    primes = np.flatnonzero(~comp)
    dtype = np.int32 if limit < 2**31 else np.int64
    phi = np.arange(limit + 1, dtype=dtype)
    for p in primes.tolist():
        phi[p::p] -= phi[p::p] // p
    return phi


def sieve_sigma(limit: int, k: int = 1, budget: int = DEFAULT_SIEVE_BUDGET) -> np.ndarray:
    """sigma_k(m) for all m <= limit, as an int64 array indexed by m."""
    if limit < 1:
        raise ValueError("limit must be >= 1")
    if k < 1:
        raise ValueError("k must be >= 1")
    _check_budget(limit, budget)
    # sigma_k(m) < 2 * m**k * log(m); keep everything safely inside int64
    if k * limit.bit_length() > 61:
        raise ResourceLimitError(f"sigma_{k} values up to {limit} overflow the sieve")
    sig = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        sig[d::d] += d**k
    return sig


def _sieve_for(func: MultiplicativeFunction, bound: int, budget: int) -> np.ndarray:
    if func.name == "phi":
        return sieve_phi(bound, budget)
    if func.name == "sigma":
        return sieve_sigma(bound, func.k, budget)
    raise ValueError(f"no oracle for function {func.name!r}")


def oracle_preimages(
    func: MultiplicativeFunction,
    n: int,
    bound: int,
    budget: int = DEFAULT_SIEVE_BUDGET,
) -> list[int]:
    """All m <= bound with func(m) = n, by direct sieve evaluation."""
    if n < 1:
        raise ValueError("n must be >= 1")
    vals = _sieve_for(func, max(bound, 1), budget)
    hits = np.flatnonzero(vals[1 : bound + 1] == n) + 1
    return [int(m) for m in hits]


def preimage_table(
    func: MultiplicativeFunction,
    max_value: int,
    bound: int,
    budget: int = DEFAULT_SIEVE_BUDGET,
) -> dict[int, list[int]]:
    """Pre-images, from one sieve pass, of every target value <= max_value.

    Entry v lists all m <= bound with func(m) = v, ascending; values with
    no pre-image below the bound are simply missing. Equivalent to calling
    oracle_preimages for each v but paying for the sieve once.
    """
    vals = _sieve_for(func, max(bound, 1), budget)
    window = vals[1 : bound + 1]
    hits = np.flatnonzero((window >= 1) & (window <= max_value)) + 1
    table: dict[int, list[int]] = {}
    for m in hits.tolist():
        table.setdefault(int(vals[m]), []).append(m)
    return table
