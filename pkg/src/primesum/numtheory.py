"""Integer arithmetic used by every other module.

Primality (Miller-Rabin), small-prime sieving, CRT and the search for the
least prime in an arithmetic progression.  All functions work on Python
ints, so there is no size limit beyond memory.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

# Jaeschke / Sorenson-Webster: these bases are a proof of primality for n < 2^64.
DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DEFAULT_THRESHOLD = 1 << 64

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


class BudgetExceeded(RuntimeError):
    """Raised when a bounded prime search runs out of candidates."""


@dataclass(frozen=True)
class PrimalityConfig:
    deterministic_threshold: int = DEFAULT_THRESHOLD
    probabilistic_rounds: int = 64
    rng_seed: int = 0

    def __post_init__(self):
        if self.deterministic_threshold < 0:
            raise ValueError("deterministic_threshold must be nonnegative")
        if self.deterministic_threshold > DEFAULT_THRESHOLD:
            raise ValueError("deterministic_threshold cannot exceed 2^64 (witness set is only proven below it)")
        if self.probabilistic_rounds < 1:
            raise ValueError("probabilistic_rounds must be positive")


DEFAULT_PRIMALITY = PrimalityConfig()


def _strong_probable_prime(n: int, a: int, d: int, s: int) -> bool:
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_prime(n: int, cfg: PrimalityConfig = DEFAULT_PRIMALITY) -> bool:
    """Miller-Rabin test.

    Exact below ``cfg.deterministic_threshold``.  Above it, ``cfg.probabilistic_rounds``
    random bases drawn from a generator seeded by ``(cfg.rng_seed, n)``, so
    the answer for a given ``n`` and config never changes between calls.
    """
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n == p:
            return True
        if n % p == 0:
            return False
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if n < cfg.deterministic_threshold:
        bases: Iterable[int] = DETERMINISTIC_BASES
    else:
        rng = random.Random(f"{cfg.rng_seed}:{n}")
        bases = (rng.randrange(2, n - 1) for _ in range(cfg.probabilistic_rounds))
    return all(_strong_probable_prime(n, a, d, s) for a in bases)


def gcd(a: int, b: int) -> int:
    return math.gcd(a, b)


def sieve(limit: int) -> np.ndarray:
    """Boolean array ``flags`` of length ``limit + 1`` with ``flags[k]`` true iff k is prime."""
    flags = np.ones(max(limit + 1, 2), dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(limit) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    return flags[: limit + 1]


def primes_up_to(limit: int) -> list[int]:
    return np.flatnonzero(sieve(limit)).tolist()


def primes_from_5(d: int) -> list[int]:
    """The first ``d`` primes that are at least 5."""
    if d < 0:
        raise ValueError("d must be nonnegative")
    out: list[int] = []
    candidate = 5
    while len(out) < d:
        if is_prime(candidate):
            out.append(candidate)
        candidate += 2
    return out


def crt_solve(congruences: Sequence[tuple[int, int]]) -> int:
    """Least nonnegative x with x = r (mod m) for every pair (r, m).

    Raises ValueError for an empty system, a modulus below 2, an unreduced
    residue, or moduli that are not pairwise coprime.
    """
    if not congruences:
        raise ValueError("empty congruence system")
    x, modulus = 0, 1
    for r, m in congruences:
        if m < 2:
            raise ValueError(f"modulus {m} must be at least 2")
        if not 0 <= r < m:
            raise ValueError(f"residue {r} not reduced modulo {m}")
        if math.gcd(modulus, m) != 1:
            raise ValueError(f"modulus {m} shares a factor with earlier moduli")
        # x + modulus*t = r (mod m)
        t = (r - x) * pow(modulus, -1, m) % m
        x += modulus * t
        modulus *= m
    return x


def next_prime_in_ap(
    a: int,
    q: int,
    x_min: int,
    cfg: PrimalityConfig = DEFAULT_PRIMALITY,
    budget: int | None = None,
) -> int:
    """Smallest prime P >= x_min with P = a (mod q).

    Dirichlet's theorem guarantees termination whenever gcd(a, q) = 1.
    ``budget`` caps the number of primality tests; running out raises
    :class:`BudgetExceeded`.
    """
    if q < 1:
        raise ValueError("modulus must be positive")
    if math.gcd(a, q) != 1:
        raise ValueError(f"gcd({a}, {q}) > 1: progression holds at most one prime")
    a %= q
    x_min = max(x_min, 2)
    if x_min <= a:
        candidate = a
    else:
        candidate = a + -(-(x_min - a) // q) * q
    # with q odd the progression alternates parity; with q even it has constant odd parity
    step = 2 * q if q % 2 else q
    if q % 2 and candidate % 2 == 0:
        if candidate == 2:
            return 2
        candidate += q
    tested = 0
    while True:
        if budget is not None and tested >= budget:
            raise BudgetExceeded(f"no prime = {a} (mod {q}) found after {budget} candidates from {x_min}")
        tested += 1
        if is_prime(candidate, cfg):
            return candidate
        candidate += step
