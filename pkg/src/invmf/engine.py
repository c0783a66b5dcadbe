"""Fold per-prime series over the divisor lattice and report coefficients.

The running state is a sparse map from divisor index to coefficient. One
multiplication step folds in a single prime's series, restricted to the
lattice: for each divisor d and each explicit series term at d', with d'
dividing d, the old coefficient at d/d' times the term coefficient is added
into the new coefficient at d. Updates run in place over d in decreasing
value order, which is sound because every read is either at a proper
divisor of d (strictly smaller value, not yet overwritten) or is the old
value at d itself, read before the write.

Op counters record one mul per executed product of two present
coefficients and one add per merge of two present coefficients; skips via
absence are free. These counts are what the documented pair-enumeration
bound constrains.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .arith import FactoredInteger, factorize
from .functions import AtomicSeries, MultiplicativeFunction, build_atomic_series
from .lattice import DEFAULT_DIVISOR_CAP, DivisorLattice, build_lattice
from .semiring import SET, Aggregator

__all__ = [
    "OpCounter",
    "SparseSeries",
    "InverseReport",
    "initial_series",
    "multiply_restricted",
    "invert",
]


@dataclass
class OpCounter:
    mul_count: int = 0
    add_count: int = 0


@dataclass
class SparseSeries:
    """Sparse coefficients keyed by divisor index; missing key = empty pre-image."""

    coeffs: dict[int, object] = field(default_factory=dict)


def initial_series(agg: Aggregator) -> SparseSeries:
    """The unit series: summary of {1} at divisor 1, nothing elsewhere."""
    return SparseSeries({0: agg.one})


def multiply_restricted(
    series: SparseSeries,
    atomic: AtomicSeries,
    lat: DivisorLattice,
    agg: Aggregator,
    counter: OpCounter,
) -> SparseSeries:
    """Fold one prime's series into the running series, in place.

    The work is organized term-major: each explicit term at t contributes
    to every lattice multiple j of t, from the source quotient j/t. Bucketed
    by target j and applied in decreasing j order, this is exactly the
    in-place update described in the module docstring; the implicit identity
    term of the atomic series is the untouched old coefficient at j.
    """
    buckets: dict[int, list[tuple[int, object]]] = {}
    for t_idx, a in atomic.terms.items():
        for j, q in lat.multiples_of(t_idx):
            bucket = buckets.get(j)
            if bucket is None:
                buckets[j] = [(q, a)]
            else:
                bucket.append((q, a))
    coeffs = series.coeffs
    mul = agg.mul
    add = agg.add
    muls = adds = 0
    for j in sorted(buckets, reverse=True):
        acc = coeffs.get(j)
        for q, a in buckets[j]:
            b = coeffs.get(q)
            if b is None:
                continue
            prod = mul(b, a)
            muls += 1
            if acc is None:
                acc = prod
            else:
                acc = add(acc, prod)
                adds += 1
        if acc is not None:
            coeffs[j] = acc
    counter.mul_count += muls
    counter.add_count += adds
    return series


@dataclass
class InverseReport:
    """Result of one inversion run.

    coefficient is the aggregate over the full pre-image of n, None when
    the pre-image is empty. divisor_coefficients (only when requested)
    maps each divisor value of n with a nonempty pre-image to its
    aggregate. num_series is the number of contributing primes, tau the
    lattice size; together with the op counters they feed the documented
    work bound.
    """

    n: FactoredInteger
    function: str
    k: int | None
    aggregate: str
    coefficient: object | None
    divisor_coefficients: dict[int, object] | None
    ops: OpCounter
    num_series: int
    tau: int
    elapsed: float

    @property
    def empty(self) -> bool:
        return self.coefficient is None


def _check_set_coefficients(
    series: SparseSeries, lat: DivisorLattice, func: MultiplicativeFunction
) -> None:
    # Debug-only oracle-free sanity pass: every member of the set stored at
    # divisor d must map to d under the function.
    for idx, members in series.coeffs.items():
        target = lat.divisors[idx].value
        for m in members:
            val = 1
            for p, e in factorize(m).factors:
                val *= func.eval(p, e)
            if val != target:
                raise AssertionError(
                    f"set member {m} maps to {val}, stored under divisor {target}"
                )


def invert(
    n: FactoredInteger | int,
    func: MultiplicativeFunction,
    agg: Aggregator,
    *,
    all_divisors: bool = False,
    divisor_cap: int = DEFAULT_DIVISOR_CAP,
    validate: bool = False,
) -> InverseReport:
    """Aggregate the pre-image of n under func, without scanning candidates.

    Builds the divisor lattice, collects one series per contributing prime
    and folds them in ascending prime order. With all_divisors=True the
    report also carries the aggregate at every divisor of n, computed by
    the same single run. validate=True (set aggregator only) re-checks
    every materialized member against the function, for tests.
    """
    if isinstance(n, int):
        n = factorize(n)
    start = time.perf_counter()
    lat = build_lattice(n, cap=divisor_cap)
    series_list = build_atomic_series(lat, func, agg)
    counter = OpCounter()
    running = initial_series(agg)
    for atomic in series_list:
        multiply_restricted(running, atomic, lat, agg, counter)
    if validate and agg.kind == SET:
        _check_set_coefficients(running, lat, func)
    top = running.coeffs.get(len(lat) - 1)
    divisor_coeffs = None
    if all_divisors:
        divisor_coeffs = {
            lat.divisors[i].value: c for i, c in sorted(running.coeffs.items())
        }
    return InverseReport(
        n=n,
        function=func.name,
        k=func.k,
        aggregate=agg.describe(),
        coefficient=top,
        divisor_coefficients=divisor_coeffs,
        ops=counter,
        num_series=len(series_list),
        tau=len(lat),
        elapsed=time.perf_counter() - start,
    )
