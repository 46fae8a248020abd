"""Small elementary number theory helpers (desk scale, trial division)."""

from math import gcd
from functools import lru_cache


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def factorize(n: int) -> dict[int, int]:
    """Prime factorization as {p: exponent}."""
    if n <= 0:
        raise ValueError("factorize expects a positive integer")
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


@lru_cache(maxsize=None)
def euler_phi(n: int) -> int:
    phi = 1
    for p, e in factorize(n).items():
        phi *= (p - 1) * p ** (e - 1)
    return phi


@lru_cache(maxsize=None)
def units_mod(n: int) -> tuple[int, ...]:
    if n == 1:
        return (1,)
    return tuple(a for a in range(1, n) if gcd(a, n) == 1)


def subgroup_generated(n: int, gens) -> tuple[int, ...]:
    """Subgroup of (Z/n)^x generated by gens, as a sorted tuple."""
    n = int(n)
    for g in gens:
        if gcd(g % n, n) != 1:
            raise ValueError(f"{g} is not a unit mod {n}")
    if n == 1:
        return (1,)
    seen = {1}
    frontier = [1]
    gens = [g % n for g in gens]
    while frontier:
        a = frontier.pop()
        for g in gens:
            b = a * g % n
            if b not in seen:
                seen.add(b)
                frontier.append(b)
    return tuple(sorted(seen))


def multiplicative_order(a: int, n: int) -> int:
    if gcd(a, n) != 1:
        raise ValueError(f"{a} is not a unit mod {n}")
    k, x = 1, a % n
    while x != 1 % n:
        x = x * a % n
        k += 1
    return k


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b
