"""The divisor lattice of a factored integer.

Divisors are represented as exponent vectors against the fixed prime basis
of n, stored sorted by numeric value so that index order and value order
agree. Divisibility, quotients and (co)divisor enumeration are all vector
arithmetic, never big-integer division.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import NamedTuple

from .arith import FactoredInteger, factorize
from .errors import ResourceLimitError

__all__ = ["DivisorEntry", "DivisorLattice", "build_lattice", "DEFAULT_DIVISOR_CAP"]

DEFAULT_DIVISOR_CAP = 1 << 24


class DivisorEntry(NamedTuple):
    vector: tuple[int, ...]
    value: int


@dataclass
class DivisorLattice:
    """All divisors of base, sorted ascending by value.

    index_of maps a divisor's numeric value to its position; positions are
    what the engine works with. The structure is immutable after build and
    safe to share across threads.
    """

    base: FactoredInteger
    divisors: tuple[DivisorEntry, ...]
    index_of: dict[int, int]
    _by_vector: dict[tuple[int, ...], int] = field(repr=False)

    def __len__(self) -> int:
        return len(self.divisors)

    def value_at(self, i: int) -> int:
        return self.divisors[i].value

    def divides(self, i: int, j: int) -> bool:
        """True iff divisor i divides divisor j (componentwise on exponents)."""
        va = self.divisors[i].vector
        vb = self.divisors[j].vector
        return all(a <= b for a, b in zip(va, vb))

    def quotient(self, j: int, i: int) -> int:
        """Index of divisor j / divisor i. Raises ValueError if i does not divide j."""
        va = self.divisors[i].vector
        vb = self.divisors[j].vector
        diff = tuple(b - a for a, b in zip(va, vb))
        if any(d < 0 for d in diff):
            raise ValueError(f"divisor {self.divisors[i].value} does not divide {self.divisors[j].value}")
        return self._by_vector[diff]

    def divisors_of(self, j: int) -> list[int]:
        """Indices of all divisors of divisor j, in decreasing value order."""
        vec = self.divisors[j].vector
        idxs = [
            self._by_vector[sub]
            for sub in itertools.product(*(range(v + 1) for v in vec))
        ]
        idxs.sort(reverse=True)
        return idxs

    def multiples_of(self, i: int) -> list[tuple[int, int]]:
        """Pairs (j, q) over all multiples j of divisor i, with q = index of j/i."""
        vec = self.divisors[i].vector
        exps = self.base.exponents
        spans = [range(e - v + 1) for v, e in zip(vec, exps)]
        by_vector = self._by_vector
        out = []
        for off in itertools.product(*spans):
            mvec = tuple(v + o for v, o in zip(vec, off))
            out.append((by_vector[mvec], by_vector[off]))
        return out


def build_lattice(n: FactoredInteger | int, cap: int = DEFAULT_DIVISOR_CAP) -> DivisorLattice:
    """Enumerate the divisor lattice of n.

    The divisor count is computed from the exponents before any enumeration
    and checked against cap, so an oversized request fails fast instead of
    exhausting memory.
    """
    if isinstance(n, int):
        n = factorize(n)
    count = n.tau()
    if count > cap:
        raise ResourceLimitError(f"divisor lattice of {n} needs {count} entries, cap is {cap}")
    pows = [[p**j for j in range(e + 1)] for p, e in n.factors]
    entries = []
    for vec in itertools.product(*(range(e + 1) for e in n.exponents)):
        v = 1
        for table, i in zip(pows, vec):
            v *= table[i]
        entries.append(DivisorEntry(vec, v))
    entries.sort(key=lambda d: d.value)
    index_of = {d.value: i for i, d in enumerate(entries)}
    by_vector = {d.vector: i for i, d in enumerate(entries)}
    return DivisorLattice(n, tuple(entries), index_of, by_vector)
