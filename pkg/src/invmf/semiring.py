"""Aggregators: commutative-semiring summaries of finite integer sets.

An Aggregator describes how the engine folds pre-image sets without
necessarily materializing them. `one` is the summary of {1}, `lift(p, e)`
the summary of {p**e}; `mul` combines summaries of sets whose elements are
pairwise coprime, `add` merges summaries of disjoint sets. Those two side
conditions are what the engine guarantees at every call site, and the set
aggregator asserts them in debug runs.

The empty set deliberately has no summary value. Engine coefficients encode
it by absence (None), and coeff_add / coeff_mul below implement the
extended arithmetic: absence is the identity of add and absorbing for mul.
"""

from __future__ import annotations

import math
import operator

__all__ = [
    "SET",
    "COUNT",
    "SUM",
    "SUMPOW",
    "MIN",
    "MAX",
    "Aggregator",
    "make_aggregator",
    "coeff_add",
    "coeff_mul",
]

SET = "set"
COUNT = "count"
SUM = "sum"
SUMPOW = "sumpow"
MIN = "min"
MAX = "max"

KINDS = (SET, COUNT, SUM, SUMPOW, MIN, MAX)


class Aggregator:
    __slots__ = ("kind", "q", "one", "lift", "mul", "add")

    def __init__(self, kind, q, one, lift, mul, add):
        self.kind = kind
        self.q = q
        self.one = one
        self.lift = lift
        self.mul = mul
        self.add = add

    def describe(self) -> str:
        return f"{SUMPOW}:{self.q}" if self.kind == SUMPOW else self.kind

    def __repr__(self) -> str:
        return f"Aggregator({self.describe()})"


def _set_lift(p, e):
    return (p**e,)


def _set_mul(a, b):
    assert all(
        math.gcd(u, v) == 1 for u in a for v in b
    ), "set mul on non-coprime operands (engine bug)"
    return tuple(sorted(u * v for u in a for v in b))


def _set_add(a, b):
    assert not set(a).intersection(b), "set add on overlapping operands (engine bug)"
    return tuple(sorted(set(a).union(b)))


def make_aggregator(kind: str, q: int | None = None) -> Aggregator:
    """Build the aggregator named by kind; q applies to sumpow only.

    count and sum are the q = 0 and q = 1 specializations of sumpow and
    share its arithmetic.
    """
    if kind == SET:
        return Aggregator(SET, None, (1,), _set_lift, _set_mul, _set_add)
    if kind == COUNT:
        return Aggregator(COUNT, 0, 1, lambda p, e: 1, operator.mul, operator.add)
    if kind == SUM:
        return Aggregator(SUM, 1, 1, lambda p, e: p**e, operator.mul, operator.add)
    if kind == SUMPOW:
        if q is None or q < 0:
            raise ValueError("sumpow needs an exponent q >= 0")
        return Aggregator(
            SUMPOW, q, 1, lambda p, e: p ** (e * q), operator.mul, operator.add
        )
    if kind == MIN:
        return Aggregator(MIN, None, 1, lambda p, e: p**e, operator.mul, min)
    if kind == MAX:
        return Aggregator(MAX, None, 1, lambda p, e: p**e, operator.mul, max)
    raise ValueError(f"unknown aggregator kind {kind!r}")


def coeff_add(a, b, agg: Aggregator):
    """Coefficient add where None (empty pre-image) is the identity."""
    if a is None:
        return b
    if b is None:
        return a
    return agg.add(a, b)


def coeff_mul(a, b, agg: Aggregator):
    """Coefficient mul where None (empty pre-image) absorbs."""
    if a is None or b is None:
        return None
    return agg.mul(a, b)
