"""Small exact integer helpers shared across the package."""

from __future__ import annotations

import math

# Deterministic Miller-Rabin witness set, valid for n < 3.3 * 10**24.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)

# Trial division gives up past this bound; callers never factor anything
# with two prime factors both above it.
_TRIAL_LIMIT = 10**7


def is_prime(n: int) -> bool:
    """Deterministic primality for n below 3.3e24 (Miller-Rabin)."""
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
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


def factorize(n: int) -> dict[int, int]:
    """Full factorization by trial division; raises if n resists it."""
    if n < 1:
        raise ValueError(f"factorize expects n >= 1, got {n}")
    out: dict[int, int] = {}
    for p in (2, 3):
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
    f = 5
    while f * f <= n and f <= _TRIAL_LIMIT:
        for p in (f, f + 2):
            while n % p == 0:
                out[p] = out.get(p, 0) + 1
                n //= p
        f += 6
    if n > 1:
        if is_prime(n):
            out[n] = out.get(n, 0) + 1
        else:
            pk = perfect_power(n)
            if pk is None:
                raise ValueError(f"cannot fully factor {n}: composite cofactor")
            p, k = pk
            out[p] = out.get(p, 0) + k
    return out


def perfect_power(n: int) -> tuple[int, int] | None:
    """(p, k) with n = p**k, k >= 2 and p prime, else None."""
    if n < 4:
        return None
    for k in range(n.bit_length(), 1, -1):
        r = integer_kth_root(n, k)
        if r**k == n and is_prime(r):
            return r, k
    return None


def integer_kth_root(n: int, k: int) -> int:
    """Floor of the k-th root of n >= 0."""
    if n < 0 or k < 1:
        raise ValueError("integer_kth_root needs n >= 0, k >= 1")
    if n == 0:
        return 0
    if k == 1:
        return n
    r = int(round(n ** (1.0 / k)))
    while r > 0 and r**k > n:
        r -= 1
    while (r + 1) ** k <= n:
        r += 1
    return r


def valuation(n: int, p: int) -> int:
    """Largest e with p**e | n; n must be nonzero."""
    if n == 0:
        raise ValueError("valuation of 0 is infinite")
    n = abs(n)
    e = 0
    while n % p == 0:
        n //= p
        e += 1
    return e


def modinv(a: int, m: int) -> int:
    return pow(a, -1, m)


def crt(residues: list[tuple[int, int]]) -> tuple[int, int]:
    """Combine pairwise-coprime congruences x = r (mod m) -> (x, prod m)."""
    x, m = 0, 1
    for r, mod in residues:
        if mod == 1:
            continue
        g = math.gcd(m, mod)
        if g != 1:
            raise ValueError("crt expects pairwise coprime moduli")
        # x' = x + m * t with t chosen so x' = r (mod mod)
        t = ((r - x) * modinv(m % mod, mod)) % mod
        x = x + m * t
        m = m * mod
    return x % m, m


def primes_upto(n: int) -> list[int]:
    """All primes <= n, plain byte sieve; meant for small n."""
    if n < 2:
        return []
    mask = bytearray([1]) * (n + 1)
    mask[0] = mask[1] = 0
    for i in range(2, math.isqrt(n) + 1):
        if mask[i]:
            mask[i * i :: i] = bytearray(len(mask[i * i :: i]))
    return [i for i in range(2, n + 1) if mask[i]]


def divisors(n: int) -> list[int]:
    """Sorted positive divisors of n >= 1."""
    fact = factorize(n)
    out = [1]
    for p, e in fact.items():
        out = [d * p**j for d in out for j in range(e + 1)]
    return sorted(out)
