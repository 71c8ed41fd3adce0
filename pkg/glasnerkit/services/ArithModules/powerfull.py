import logging
from typing import List

import gmpy2

from glasnerkit.core.exceptions import ValidationException, BudgetExceededException
from glasnerkit.schemas.ArithModules.arith import PowerFullSet, PowerFullCount
from glasnerkit.services.ArithModules.factorization import factorize, small_primes

logger = logging.getLogger(__name__)

MAX_PRIME_BOUND = 10**7


def _check_nu(nu: int):
    if nu < 2:
        raise ValidationException(f"nu must be >= 2, got {nu}")


def is_power_full(n: int, nu: int) -> bool:
    """p | n implies p^nu | n. True for n = 1."""
    _check_nu(nu)
    return all(a >= nu for _, a in factorize(n).factors)


def is_power_free(n: int, nu: int) -> bool:
    """p | n implies p^nu does not divide n. True for n = 1."""
    _check_nu(nu)
    return all(a <= nu - 1 for _, a in factorize(n).factors)


def _primes_up_to(bound: int) -> List[int]:
    if bound < 2:
        return []
    primes = small_primes()
    if bound <= int(primes[-1]):
        return primes[primes <= bound].tolist()
    # beyond the sieve: continue with gmpy2's next_prime
    found = primes.tolist()
    p = gmpy2.next_prime(found[-1])
    while p <= bound:
        found.append(int(p))
        p = gmpy2.next_prime(p)
    return found


def enumerate_power_full(nu: int, lo: int, hi: int) -> PowerFullSet:
    """All nu-full integers in [lo, hi] via DFS over prime exponent vectors."""
    _check_nu(nu)
    if lo < 1 or hi < 1:
        raise ValidationException(f"range bounds must be positive, got [{lo}, {hi}]")
    if lo > hi:
        raise ValidationException(f"empty range: lo = {lo} > hi = {hi}")

    root = int(gmpy2.iroot(hi, nu)[0])
    if root > MAX_PRIME_BOUND:
        raise BudgetExceededException(
            "power-full enumeration", root, MAX_PRIME_BOUND, f"Lower hi or raise nu (hi^(1/nu) = {root})."
        )
    primes = _primes_up_to(root)
    found = []

    # stack of (index of next usable prime, partial product)
    stack = [(0, 1)]
    while stack:
        start, current = stack.pop()
        if current >= lo:
            found.append(current)
        for idx in range(start, len(primes)):
            power = primes[idx] ** nu
            if current * power > hi:
                break
            while current * power <= hi:
                stack.append((idx + 1, current * power))
                power *= primes[idx]

    found.sort()
    logger.debug(f"{len(found)} {nu}-full integers in [{lo}, {hi}]")
    return PowerFullSet(nu=nu, lo=lo, limit=hi, members=found)


def power_full_shell(nu: int, x: int) -> List[int]:
    """G_nu(x) = F_nu(x) minus F_nu(x/2): the nu-full n with x/2 < n <= x."""
    lo = x // 2 + 1
    if lo > x:
        return []
    return enumerate_power_full(nu, lo, x).members


def power_full_count(nu: int, x: int) -> PowerFullCount:
    members = enumerate_power_full(nu, 1, x).members
    shell = sum(1 for m in members if 2 * m > x)
    return PowerFullCount(
        nu=nu,
        x=x,
        count=len(members),
        ratio=len(members) / x ** (1.0 / nu),
        shell_count=shell,
    )
