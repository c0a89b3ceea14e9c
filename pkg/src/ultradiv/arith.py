"""Exact divisor-lattice primitives over unbounded positive integers.

Everything here is pure and exact: Python bignums throughout, no floats.
Conceptually infinite sets (upward divisibility closures) are always cut
at an explicit window W and the window travels with the result.
"""

from __future__ import annotations

import math
from itertools import combinations

__all__ = [
    "NatSet",
    "factorize",
    "smallest_prime_factor",
    "up_closure",
    "down_closure",
    "quotient_set",
    "coprime_product",
    "coprime_power",
    "elementwise_power",
    "level_of",
    "drop_to_two",
    "nth_prime",
    "prime_index",
    "primes_upto",
    "first_primes",
    "is_prime",
    "divisors",
]

# Trial division uses a cached, growing prime list; inputs whose
# unfactored part survives past this bound go to Pollard rho.
TRIAL_DIVISION_BOUND = 10**6

_primes: list[int] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47]
_sieved_to: int = 48


def _extend_sieve(limit: int) -> None:
    global _primes, _sieved_to
    if limit <= _sieved_to:
        return
    limit = max(limit, 2 * _sieved_to)
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = b"\x00" * len(sieve[p * p :: p])
    _primes = [i for i in range(2, limit + 1) if sieve[i]]
    _sieved_to = limit


def primes_upto(limit: int) -> list[int]:
    """All primes <= limit, increasing."""
    _extend_sieve(limit)
    import bisect

    return _primes[: bisect.bisect_right(_primes, limit)]


def first_primes(count: int) -> list[int]:
    """The first `count` primes, increasing."""
    if count < 0:
        raise ValueError("count must be >= 0")
    while len(_primes) < count:
        # p_n < n(ln n + ln ln n) for n >= 6
        n = max(count, 6)
        _extend_sieve(int(n * (math.log(n) + math.log(math.log(n)))) + 10)
    return _primes[:count]


def nth_prime(i: int) -> int:
    """The i-th prime in increasing order; nth_prime(1) = 2."""
    if i < 1:
        raise ValueError("prime index must be >= 1")
    return first_primes(i)[i - 1]


def prime_index(p: int) -> int:
    """Position of the prime p in the increasing enumeration (1-based)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _extend_sieve(p)
    import bisect

    return bisect.bisect_right(_primes, p)


def is_prime(n: int) -> bool:
    """Deterministic primality test (trial division, then Miller-Rabin)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    if n < 41 * 41:
        return True
    # deterministic witness set for n < 3.3 * 10^24
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_rho(n: int) -> int:
    """A nontrivial factor of composite odd n (Brent's cycle variant)."""
    if n % 2 == 0:
        return 2
    for c in range(1, n):
        x = y = 2
        d = 1
        while d == 1:
            x = (x * x + c) % n
            y = (y * y + c) % n
            y = (y * y + c) % n
            d = math.gcd(abs(x - y), n)
        if d != n:
            return d
    raise ArithmeticError(f"rho failed on {n}")  # unreachable for composite n


def factorize(n: int) -> dict[int, int]:
    """Exact prime factorization as a prime -> exponent map; 1 -> {}."""
    if n < 1:
        raise ValueError("factorize is defined on positive integers")
    out: dict[int, int] = {}
    if n == 1:
        return out
    bound = min(math.isqrt(n), TRIAL_DIVISION_BOUND)
    _extend_sieve(min(bound + 1, TRIAL_DIVISION_BOUND))
    for p in _primes:
        if p > bound:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
            bound = min(math.isqrt(n), TRIAL_DIVISION_BOUND)
    if n == 1:
        return out
    if is_prime(n):
        out[n] = out.get(n, 0) + 1
        return out
    # remaining part is composite with all prime factors > trial bound
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _pollard_rho(m)
        stack.append(d)
        stack.append(m // d)
    return out


def smallest_prime_factor(n: int) -> int:
    """Least prime dividing n; defined for n >= 2 only."""
    if n < 2:
        raise ValueError("smallest_prime_factor is undefined on 1")
    bound = math.isqrt(n)
    if bound <= TRIAL_DIVISION_BOUND:
        _extend_sieve(bound + 1)
        for p in _primes:
            if p > bound:
                break
            if n % p == 0:
                return p
        return n  # no factor up to sqrt(n): n is prime
    return min(factorize(n))


def divisors(n: int) -> list[int]:
    """All positive divisors of n, increasing."""
    if n < 1:
        raise ValueError("divisors is defined on positive integers")
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


class NatSet(frozenset):
    """Finite set of positive integers, optionally windowed.

    A window W marks the set as the visible part S ∩ {1..W} of a
    conceptually unbounded S.  Window is metadata: equality and hashing
    are those of the underlying frozenset.
    """

    window: int | None

    def __new__(cls, elements=(), window: int | None = None):
        self = super().__new__(cls, elements)
        if self and min(self) < 1:
            raise ValueError("NatSet elements must be integers >= 1")
        if window is not None:
            if window < 1:
                raise ValueError("window must be >= 1")
            if self and max(self) > window:
                raise ValueError("NatSet element exceeds its window")
        self.window = window
        return self

    def __repr__(self) -> str:
        body = "{" + ", ".join(map(str, sorted(self))) + "}"
        return f"NatSet({body}, window={self.window})" if self.window else f"NatSet({body})"


def _elems(A) -> frozenset:
    return A if isinstance(A, frozenset) else frozenset(A)


def up_closure(A, W: int) -> NatSet:
    """Multiples within the window: {n <= W : some a in A divides n}.

    Elements of A larger than W contribute nothing (they have no
    multiples in the window).
    """
    if W < 1:
        raise ValueError("window must be >= 1")
    out: set[int] = set()
    for a in sorted(_elems(A)):
        if a > W:
            break
        if a in out:  # a multiple of an earlier element: already covered
            continue
        out.update(range(a, W + 1, a))
    return NatSet(out, window=W)


def down_closure(A) -> NatSet:
    """All divisors of all elements of A (finite, no window needed)."""
    out: set[int] = set()
    for a in _elems(A):
        out.update(divisors(a))
    return NatSet(out)


def quotient_set(A, n: int) -> NatSet:
    """A/n = {m : m*n in A}.  Empty when n divides no element."""
    if n < 1:
        raise ValueError("quotient divisor must be >= 1")
    elems = _elems(A)
    out = {a // n for a in elems if a % n == 0}
    window = None
    if isinstance(A, NatSet) and A.window is not None:
        window = max(1, A.window // n)
    return NatSet(out, window=window)


def coprime_product(A, B) -> NatSet:
    """{a*b : a in A, b in B, gcd(a,b) = 1}."""
    out = {a * b for a in _elems(A) for b in _elems(B) if math.gcd(a, b) == 1}
    return NatSet(out)


def coprime_power(A, n: int) -> NatSet:
    """n-fold coprime product of A with itself.

    For A a set of primes this is all products of n distinct members.
    """
    if n < 1:
        raise ValueError("coprime power needs n >= 1")
    elems = sorted(_elems(A))
    if all(is_prime(a) for a in elems):
        # distinct-prime fast path, same result as folding the binary product
        return NatSet(
            math.prod(c) for c in combinations(elems, n)
        )
    acc = NatSet(elems)
    for _ in range(n - 1):
        acc = coprime_product(acc, elems)
    return acc


def elementwise_power(A, n: int) -> NatSet:
    """{a^n : a in A}; the 0-th power of anything is {1}."""
    if n < 0:
        raise ValueError("exponent must be >= 0")
    if n == 0:
        return NatSet({1})
    return NatSet(a**n for a in _elems(A))


def level_of(n: int) -> int:
    """Number of prime factors counted with multiplicity; level_of(1) = 0."""
    return sum(factorize(n).values())


def drop_to_two(n: int) -> int:
    """Product of the two smallest prime factors of n, with multiplicity.

    Defined only off primes and 1 (needs at least two prime factors).
    """
    fac = factorize(n)
    if sum(fac.values()) < 2:
        raise ValueError("defined only for numbers with at least two prime factors")
    flat: list[int] = []
    for p in sorted(fac):
        flat.extend([p] * fac[p])
        if len(flat) >= 2:
            break
    return flat[0] * flat[1]
