"""Supported multiplicative functions and their per-prime series.

For a target n, each prime p that can contribute to a pre-image yields a
sparse series over the divisor lattice of n: one term per exponent e with
f(p**e) dividing n, keyed at the divisor f(p**e) and carrying the lifted
summary of {p**e}. The engine then folds these series together.

phi terms come from scanning the divisors d of n for which d + 1 is prime.
sigma_k terms come from solving sigma_k(p**e) = d for each divisor d: the
candidate root floor((d-1) ** (1/(e*k))) is provably the only possible p,
and the two neighbours are tried as well so no correctness claim ever rests
on root extraction alone. Every candidate is confirmed by exact evaluation
before it is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .arith import eval_phi, eval_sigma, integer_root, is_prime
from .lattice import DivisorLattice
from .semiring import Aggregator

__all__ = [
    "AtomicSeries",
    "MultiplicativeFunction",
    "phi",
    "sigma",
    "build_atomic_series",
    "build_phi_atomics",
    "build_sigma_atomics",
]


@dataclass
class AtomicSeries:
    """Sparse single-prime series over a divisor lattice.

    terms maps divisor index -> aggregated coefficient of the prime powers
    p**e whose function value is that divisor. The summary of {1} at
    divisor 1 is implicit and never stored; a stored entry at index 0 is a
    genuine f(p**e) = 1 contribution (only phi(2) = 1 produces one).
    """

    prime: int
    terms: dict[int, object]


@dataclass(frozen=True)
class MultiplicativeFunction:
    """A multiplicative function the engine can invert.

    eval(p, e) gives the value at a prime power. enumerate_terms(lattice)
    lists every (p, e, divisor_index) with f(p**e) equal to the indexed
    divisor; completeness of this enumeration is what makes inversion
    exact.
    """

    name: str
    k: int | None
    eval: Callable[[int, int], int]
    enumerate_terms: Callable[[DivisorLattice], list[tuple[int, int, int]]]


def _phi_terms(lat: DivisorLattice) -> list[tuple[int, int, int]]:
    n = lat.base
    index_of = lat.index_of
    out = []
    for entry in lat.divisors:
        p = entry.value + 1
        if not is_prime(p):
            continue
        # phi(p**e) = (p-1) * p**(e-1) divides n exactly for e <= nu_p(n) + 1,
        # given p - 1 already divides n; both parts are coprime.
        ppow = 1
        for e in range(1, n.valuation(p) + 2):
            out.append((p, e, index_of[entry.value * ppow]))
            ppow *= p
    return out


def _sigma_terms(lat: DivisorLattice, k: int) -> list[tuple[int, int, int]]:
    out = []
    for idx, entry in enumerate(lat.divisors):
        d = entry.value
        if d < 2:
            continue
        e = 1
        while (1 << (e * k)) < d:  # sigma_k(p**e) > p**(e*k) >= 2**(e*k)
            r = integer_root(d - 1, e * k)
            for p in (r - 1, r, r + 1):
                if p >= 2 and eval_sigma(p, e, k) == d and is_prime(p):
                    out.append((p, e, idx))
                    break
            e += 1
    return out


def phi() -> MultiplicativeFunction:
    """Euler's totient."""
    return MultiplicativeFunction("phi", None, eval_phi, _phi_terms)


def sigma(k: int = 1) -> MultiplicativeFunction:
    """Divisor power sum sigma_k."""
    if k < 1:
        raise ValueError("sigma needs k >= 1")
    return MultiplicativeFunction(
        "sigma",
        k,
        lambda p, e: eval_sigma(p, e, k),
        lambda lat: _sigma_terms(lat, k),
    )


def build_atomic_series(
    lat: DivisorLattice, func: MultiplicativeFunction, agg: Aggregator
) -> list[AtomicSeries]:
    """Group the function's terms into one series per prime, primes ascending.

    Terms of one prime landing on the same divisor are add-merged, although
    for phi and sigma_k the values at distinct exponents of a fixed prime
    are strictly increasing, so no merge ever fires there.
    """
    by_prime: dict[int, dict[int, object]] = {}
    for p, e, idx in func.enumerate_terms(lat):
        terms = by_prime.setdefault(p, {})
        c = agg.lift(p, e)
        terms[idx] = agg.add(terms[idx], c) if idx in terms else c
    return [AtomicSeries(p, by_prime[p]) for p in sorted(by_prime)]


def build_phi_atomics(lat: DivisorLattice, agg: Aggregator) -> list[AtomicSeries]:
    return build_atomic_series(lat, phi(), agg)


def build_sigma_atomics(lat: DivisorLattice, k: int, agg: Aggregator) -> list[AtomicSeries]:
    return build_atomic_series(lat, sigma(k), agg)
