import logging
from math import gcd, isqrt
from typing import List, Sequence

import gmpy2
import numpy as np
from cachetools import cached, LRUCache

from glasnerkit.core.exceptions import ValidationException
from glasnerkit.schemas.ArithModules.arith import Factorization

logger = logging.getLogger(__name__)

TRIAL_LIMIT = 10**6
MAX_SUPPORTED = 10**18
# Deterministic Miller-Rabin witnesses, valid for n < 3.3e24
MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


@cached(cache=LRUCache(maxsize=1))
def small_primes(limit: int = TRIAL_LIMIT) -> np.ndarray:
    """Primes <= limit by an Eratosthenes sieve."""
    sieve = np.ones(limit + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, int(limit ** 0.5) + 1):
        if sieve[p]:
            sieve[p * p::p] = False
    return np.flatnonzero(sieve).astype(np.int64)


def is_prime(n: int) -> bool:
    """Deterministic primality test for n < 3.3e24."""
    if n < 2:
        return False
    for p in MR_BASES:
        if n == p:
            return True
        if n % p == 0:
            return False
    return all(gmpy2.is_strong_prp(n, a) for a in MR_BASES)


def _pollard_brent(n: int) -> int:
    """A nontrivial factor of the odd composite n (Brent's cycle detection)."""
    for c in range(1, 1000):
        y, r, q_acc = 2, 1, 1
        g = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (gmpy2.powmod(y, 2, n) + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(128, r - k)):
                    y = (gmpy2.powmod(y, 2, n) + c) % n
                    q_acc = q_acc * abs(x - y) % n
                g = int(gmpy2.gcd(q_acc, n))
                k += 128
            r *= 2
        if g == n:
            # backtrack one step at a time
            g = 1
            while g == 1:
                ys = (gmpy2.powmod(ys, 2, n) + c) % n
                g = int(gmpy2.gcd(abs(x - ys), n))
        if g != n:
            return g
        logger.debug(f"rho cycle collapsed for {n} with c={c}, retrying")
    raise RuntimeError(f"Pollard rho failed to split {n}")


def _split_large(n: int) -> List[int]:
    """Prime factors (with repetition) of n having no prime factor below TRIAL_LIMIT."""
    if n == 1:
        return []
    if n < TRIAL_LIMIT * TRIAL_LIMIT or is_prime(n):
        return [n]
    root = int(gmpy2.isqrt(n))
    if root * root == n:
        return _split_large(root) * 2
    d = _pollard_brent(n)
    return _split_large(d) + _split_large(n // d)


@cached(cache=LRUCache(maxsize=8192))
def factorize(n: int) -> Factorization:
    """Prime factorization of 1 <= n <= 10^18."""
    if n < 1:
        raise ValidationException(f"factorize expects n >= 1, got {n}")
    if n > MAX_SUPPORTED:
        raise ValidationException(f"factorize supports n <= 10^18, got {n}")
    if n == 1:
        return Factorization(n=1, factors=[])

    primes = small_primes()
    # no prime factor above sqrt(n) needs trial division
    primes = primes[:int(np.searchsorted(primes, isqrt(n), side="right"))]
    factors = {}
    remaining = n
    for p in primes[remaining % primes == 0].tolist():
        a = 0
        while remaining % p == 0:
            remaining //= p
            a += 1
        factors[p] = a

    for p in _split_large(remaining):
        factors[p] = factors.get(p, 0) + 1

    return Factorization(n=n, factors=sorted(factors.items()))


def check_factorization(fact: Factorization) -> Factorization:
    """Reject a factorization with a composite base."""
    for p, _ in fact.factors:
        if not is_prime(p):
            raise ValidationException(f"factorization of {fact.n} lists {p}, which is not prime")
    return fact


def gcd_vec(a: Sequence[int], q: int) -> int:
    """gcd(a_1, ..., a_nu, q); equals q for the zero vector."""
    if q < 1:
        raise ValidationException(f"gcd_vec expects q >= 1, got {q}")
    g = q
    for x in a:
        g = gcd(g, int(x))
        if g == 1:
            break
    return g
