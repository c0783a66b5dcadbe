"""Exact big-integer primitives.

Primality testing, integer roots, valuations, convenience factorization and
prime-power evaluation of the supported multiplicative functions. Nothing in
this module lets a floating-point rounding decide a result: floats appear
only as initial guesses that are always verified exactly.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

from .errors import ResourceLimitError

__all__ = [
    "FactoredInteger",
    "ONE",
    "eval_phi",
    "eval_sigma",
    "factorize",
    "integer_root",
    "is_prime",
    "primes_up_to",
    "valuation",
]


def primes_up_to(limit: int) -> list[int]:
    """All primes <= limit, by a plain byte sieve."""
    if limit < 2:
        return []
    flags = bytearray([1]) * (limit + 1)
    flags[0] = flags[1] = 0
    for i in range(2, math.isqrt(limit) + 1):
        if flags[i]:
            flags[i * i :: i] = bytes(len(range(i * i, limit + 1, i)))
    return [i for i in range(2, limit + 1) if flags[i]]


_SMALL_PRIMES = tuple(primes_up_to(1000))
_SMALL_PRIME_SQ = 1009 * 1009  # composites below this have a factor <= 1000

# Deterministic Miller-Rabin witness set, valid for all x < 2**64.
_DET_WITNESSES = (2, 325, 9375, 28178, 450775, 9780504, 1795265022)
_RANDOM_ROUNDS = 64


def _mr_composite(n: int, d: int, s: int, a: int) -> bool:
    """True if a witnesses compositeness of n, where n - 1 = d * 2**s, d odd."""
    a %= n
    if a == 0:
        return False
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return False
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return False
    return True


def _jacobi(a: int, n: int) -> int:
    # n odd and positive
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _strong_lucas_prp(n: int) -> bool:
    """Strong Lucas probable-prime test with Selfridge parameters.

    Assumes n is odd, has no prime factor <= 1000 and is not a perfect
    square (the D search below would not terminate on squares).
    """
    D = 5
    while _jacobi(D, n) != -1:
        D = -(D + 2) if D > 0 else -(D - 2)
    P = 1
    Q = (1 - D) // 4

    d = n + 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1

    # Lucas sequences by binary ladder: U(2k) = U*V, V(2k) = V*V - 2*Q^k,
    # then an odd step via U(k+1) = (P*U + V)/2, V(k+1) = (D*U + P*V)/2.
    U, V, Qk = 1, P, Q
    for bit in bin(d)[3:]:
        U = U * V % n
        V = (V * V - 2 * Qk) % n
        Qk = Qk * Qk % n
        if bit == "1":
            U, V = P * U + V, D * U + P * V
            if U & 1:
                U += n
            if V & 1:
                V += n
            U = (U >> 1) % n
            V = (V >> 1) % n
            Qk = Qk * Q % n
    if U == 0 or V == 0:
        return True
    for _ in range(s - 1):
        V = (V * V - 2 * Qk) % n
        if V == 0:
            return True
        Qk = Qk * Qk % n
    return False


def is_prime(x: int) -> bool:
    """Exact primality for x < 2**64, else Lucas + 64 Miller-Rabin rounds.

    The witness set decides every x below 2**64 deterministically. Above
    that, a strong Lucas test plus 64 random-base rounds leaves an error
    probability below 4**-64; the random bases are seeded from x so repeat
    calls agree.
    """
    if x < 2:
        return False
    for p in _SMALL_PRIMES:
        if x % p == 0:
            return x == p
    if x < _SMALL_PRIME_SQ:
        return True
    d = x - 1
    s = ((d & -d)).bit_length() - 1
    d >>= s
    if x < 1 << 64:
        return not any(_mr_composite(x, d, s, a) for a in _DET_WITNESSES)
    if math.isqrt(x) ** 2 == x:
        return False
    if not _strong_lucas_prp(x):
        return False
    rng = random.Random(x)
    return not any(
        _mr_composite(x, d, s, rng.randrange(2, x - 1)) for _ in range(_RANDOM_ROUNDS)
    )


def integer_root(x: int, r: int) -> int:
    """floor(x ** (1/r)) for x >= 1, r >= 1, computed exactly.

    A float guess seeds an integer Newton descent started at or above the
    true root; the final adjustment loops make the floor exact regardless
    of how good the guess was.
    """
    if x < 1 or r < 1:
        raise ValueError("integer_root needs x >= 1 and r >= 1")
    if r == 1 or x == 1:
        return x if r == 1 else 1
    if r == 2:
        return math.isqrt(x)
    bits = x.bit_length()
    if r >= bits:
        return 1
    try:
        guess = int(float(x) ** (1.0 / r)) + 1
    except OverflowError:
        guess = 0
    if guess and guess**r >= x:
        t = guess
    else:
        t = 1 << ((bits + r - 1) // r)  # 2**ceil(bits/r) >= x**(1/r)
    while True:
        u = ((r - 1) * t + x // t ** (r - 1)) // r
        if u >= t:
            break
        t = u
    while t**r > x:
        t -= 1
    while (t + 1) ** r <= x:
        t += 1
    return t


def eval_phi(p: int, e: int) -> int:
    """Euler phi at the prime power p**e."""
    return (p - 1) * p ** (e - 1)


def eval_sigma(p: int, e: int, k: int = 1) -> int:
    """Sum of k-th powers of the divisors of p**e, i.e. 1 + p^k + ... + p^(e*k)."""
    pk = p**k
    acc = 1
    for _ in range(e):
        acc = acc * pk + 1
    return acc


@dataclass(frozen=True)
class FactoredInteger:
    """A positive integer carried together with its prime factorization.

    factors is a tuple of (prime, exponent) pairs with strictly increasing
    primes and exponents >= 1; it is empty exactly for value 1. Construction
    verifies primality of every base and that the product matches value, so
    an instance can be trusted downstream.
    """

    value: int
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "factors", tuple((int(p), int(e)) for p, e in self.factors)
        )
        if self.value < 1:
            raise ValueError("value must be >= 1")
        prev = 1
        acc = 1
        for p, e in self.factors:
            if p <= prev:
                raise ValueError("primes must be strictly increasing")
            if e < 1:
                raise ValueError("exponents must be >= 1")
            if not is_prime(p):
                raise ValueError(f"{p} is not prime")
            prev = p
            acc *= p**e
        if acc != self.value:
            raise ValueError(f"factorization product {acc} != value {self.value}")

    @classmethod
    def from_pairs(cls, pairs) -> "FactoredInteger":
        """Build from (prime, exponent) pairs in any order, merging repeats."""
        merged: dict[int, int] = {}
        for p, e in pairs:
            merged[p] = merged.get(p, 0) + e
        canon = tuple(sorted((p, e) for p, e in merged.items() if e))
        value = 1
        for p, e in canon:
            value *= p**e
        return cls(value, canon)

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    @property
    def exponents(self) -> tuple[int, ...]:
        return tuple(e for _, e in self.factors)

    def valuation(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def tau(self) -> int:
        """Number of divisors."""
        t = 1
        for _, e in self.factors:
            t *= e + 1
        return t

    def __mul__(self, other: "FactoredInteger") -> "FactoredInteger":
        merged = dict(self.factors)
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return FactoredInteger(self.value * other.value, tuple(sorted(merged.items())))

    def __pow__(self, k: int) -> "FactoredInteger":
        if k < 0:
            raise ValueError("exponent must be >= 0")
        if k == 0:
            return ONE
        return FactoredInteger(
            self.value**k, tuple((p, e * k) for p, e in self.factors)
        )

    def __int__(self) -> int:
        return self.value

    def __str__(self) -> str:
        return str(self.value)

    def factor_string(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(f"{p}^{e}" if e > 1 else str(p) for p, e in self.factors)


ONE = FactoredInteger(1, ())


def valuation(p: int, x: FactoredInteger) -> int:
    """Exponent of the prime p in x."""
    return x.valuation(p)


def _brent_factor(n: int, rng: random.Random, budget: list[int]) -> int | None:
    """One nontrivial factor of the odd composite n, or None if out of budget."""
    while budget[0] > 0:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            budget[0] -= 2 * r
            if budget[0] <= 0 and g == 1:
                return None
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g < n:
            return g
        # cycle collapsed onto a multiple of n, retry with new parameters
    return None


def _perfect_power(n: int) -> tuple[int, int]:
    """Largest-exponent representation n = m**k; returns (n, 1) if none."""
    # prime exponents suffice: m**(a*b) is (m**a)**b
    for k in _SMALL_PRIMES:
        if k >= n.bit_length():
            break
        r = integer_root(n, k)
        if r**k == n:
            m, j = _perfect_power(r)
            return m, j * k
    return n, 1


def _factor_into(n: int, out: dict[int, int], rng: random.Random, budget: list[int]):
    if n == 1:
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    # rho stalls on perfect powers of large primes, so peel the exponent first
    n, power = _perfect_power(n)
    if power > 1:
        sub: dict[int, int] = {}
        _factor_into(n, sub, rng, budget)
        for p, e in sub.items():
            out[p] = out.get(p, 0) + e * power
        return
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _brent_factor(n, rng, budget)
    if f is None:
        raise ResourceLimitError(
            f"factorization budget exhausted on {n}; pass the input in factored form"
        )
    _factor_into(f, out, rng, budget)
    _factor_into(n // f, out, rng, budget)


def factorize(
    x: int, *, trial_limit: int = 1_000_000, rho_budget: int = 4_000_000
) -> FactoredInteger:
    """Factor x by trial division up to trial_limit, then Pollard rho (Brent).

    Meant for convenience input, not for adversarial sizes: when the rho
    work budget runs out a ResourceLimitError is raised and the caller
    should supply an explicit factorization instead.
    """
    if x < 1:
        raise ValueError("can only factor integers >= 1")
    n = x
    found: dict[int, int] = {}
    for p in _SMALL_PRIMES:
        if p * p > n:
            break
        while n % p == 0:
            found[p] = found.get(p, 0) + 1
            n //= p
    if n > 1 and n < _SMALL_PRIME_SQ:
        found[n] = found.get(n, 0) + 1
        n = 1
    if n > 1 and not is_prime(n):
        c = 1009
        while c <= trial_limit and c * c <= n:
            while n % c == 0:
                found[c] = found.get(c, 0) + 1
                n //= c
            c += 2
        if n > 1 and n < min(trial_limit, c) ** 2:
            found[n] = found.get(n, 0) + 1
            n = 1
    if n > 1:
        rng = random.Random(n)
        _factor_into(n, found, rng, [rho_budget])
    return FactoredInteger(x, tuple(sorted(found.items())))
