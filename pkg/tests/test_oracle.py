import random

import numpy as np
import pytest

from invmf.arith import eval_phi, eval_sigma, factorize
from invmf.errors import ResourceLimitError
from invmf.functions import phi, sigma
from invmf.oracle import (
    oracle_preimages,
    phi_preimage_bound,
    preimage_table,
    sieve_phi,
    sieve_sigma,
)


def test_sieve_phi_small():
    ph = sieve_phi(10)
    assert list(ph[1:7]) == [1, 1, 2, 2, 4, 2]
    assert ph[10] == 4
    assert sieve_phi(97)[97] == 96


def test_sieve_sigma_small():
    s1 = sieve_sigma(12, 1)
    assert s1[1] == 1 and s1[6] == 12 and s1[12] == 28
    s2 = sieve_sigma(10, 2)
    assert s2[4] == 21 and s2[3] == 10


def test_sieves_match_per_value_evaluation():
    limit = 100_000
    ph = sieve_phi(limit)
    for m in range(1, limit + 1):
        f = factorize(m)
        val = 1
        for p, e in f.factors:
            val *= eval_phi(p, e)
        assert ph[m] == val, m
    limit = 20_000
    for k in (1, 2):
        sg = sieve_sigma(limit, k)
        for m in range(1, limit + 1):
            val = 1
            for p, e in factorize(m).factors:
                val *= eval_sigma(p, e, k)
            assert sg[m] == val, (k, m)


def test_phi_lower_bound_inequality():
    # phi(m) >= sqrt(m / 2), the fact behind the 2*n^2 pre-image bound
    ph = sieve_phi(10**6).astype(np.int64)
    m = np.arange(10**6 + 1, dtype=np.int64)
    assert bool(np.all(2 * ph[1:] * ph[1:] >= m[1:]))
    assert phi_preimage_bound(10) == 200


def test_oracle_preimages_spot_values():
    assert oracle_preimages(phi(), 2, 8) == [3, 4, 6]
    assert oracle_preimages(phi(), 2, 4) == [3, 4]  # bound honoured
    assert oracle_preimages(sigma(1), 1, 1) == [1]
    assert oracle_preimages(phi(), 14, 392) == []  # nontotient
    assert oracle_preimages(sigma(1), 12, 12) == [6, 11]
    assert oracle_preimages(sigma(2), 10, 10) == [3]


def test_preimage_table_matches_oracle_preimages():
    table = preimage_table(phi(), 100, 2 * 100 * 100)
    for n in range(1, 101):
        assert table.get(n, []) == oracle_preimages(phi(), n, 2 * n * n), n
    rng = random.Random(3)
    t2 = preimage_table(sigma(1), 500, 500)
    for _ in range(50):
        n = rng.randrange(1, 501)
        assert t2.get(n, []) == oracle_preimages(sigma(1), n, n)


def test_budget_limits():
    with pytest.raises(ResourceLimitError):
        sieve_phi(10**7, budget=10**6)
    with pytest.raises(ResourceLimitError):
        oracle_preimages(phi(), 5, 10**7, budget=10**6)
    with pytest.raises(ResourceLimitError):
        sieve_sigma(10**6, k=8)  # values overflow int64


def test_input_validation():
    with pytest.raises(ValueError):
        sieve_phi(0)
    with pytest.raises(ValueError):
        sieve_sigma(10, 0)
    with pytest.raises(ValueError):
        oracle_preimages(phi(), 0, 10)
