"""Prime and Chen-prime generation and verification.

A Chen prime is a prime p such that p + 2 is either prime or a product
of two primes p1, p2 each exceeding p^(3/11).  The cutoff is evaluated
as the exact integer inequality min(p1, p2)^11 > p^3; p1 = p2 is
allowed (p = 2 qualifies through 4 = 2*2).

At the bottom sits a segmented least-prime-factor sieve: spf[n] is the
least prime factor of n, from which primality (spf[n] == n) and the
two-factor splits both fall out.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .intpoly import DomainError

_SEGMENT = 1 << 20
_DEFAULT_CAP = 10**8


@dataclass(frozen=True)
class PrimeTable:
    """Primality and least-prime-factor data for 1..N (spf through N+2,
    so p+2 is factorable for every prime p <= N)."""

    limit: int
    spf: np.ndarray  # spf[n] = least prime factor of n, spf[1] = 1

    def __post_init__(self) -> None:
        self.spf.flags.writeable = False

    def is_prime(self, n: int) -> bool:
        if not 2 <= n <= self.limit + 2:
            raise DomainError(f"{n} outside table range [2, {self.limit + 2}]")
        return int(self.spf[n]) == n

    def primes(self, upto: int | None = None) -> np.ndarray:
        """All primes <= upto (default: the table limit), ascending."""
        hi = self.limit if upto is None else upto
        if hi > self.limit:
            raise DomainError(f"{hi} exceeds table limit {self.limit}")
        ns = np.arange(2, hi + 1, dtype=self.spf.dtype)
        return ns[self.spf[2 : hi + 1] == ns]

    def prime_count(self, upto: int | None = None) -> int:
        return len(self.primes(upto))

    def factor_with_multiplicity(self, n: int) -> list[int]:
        """Prime factors of n with multiplicity, ascending."""
        if not 1 <= n <= self.limit + 2:
            raise DomainError(f"{n} outside table range [1, {self.limit + 2}]")
        out: list[int] = []
        while n > 1:
            p = int(self.spf[n])
            out.append(p)
            n //= p
        return out


def sieve(N: int, cap: int = _DEFAULT_CAP) -> PrimeTable:
    """Least-prime-factor table for 1..N+2, built segment by segment.

    Exactness is the contract; the fixed 2^20 segment keeps the working
    set cache-sized.  N beyond the memory cap is rejected.
    """
    if N < 1:
        raise DomainError("N must be >= 1")
    if N > cap:
        raise DomainError(f"N={N} exceeds the memory cap {cap}")
    top = N + 2
    spf = np.zeros(top + 1, dtype=np.int32)
    spf[1] = 1
    # base primes up to sqrt(top), by the same rule on a small prefix
    root = math.isqrt(top)
    base: list[int] = []
    small = np.zeros(root + 1, dtype=np.int32)
    for i in range(2, root + 1):
        if small[i] == 0:
            base.append(i)
            small[i * i :: i][small[i * i :: i] == 0] = i
    for lo in range(2, top + 1, _SEGMENT):
        hi = min(lo + _SEGMENT, top + 1)
        seg = spf[lo:hi]
        for p in base:
            start = max(p * p, ((lo + p - 1) // p) * p)
            if start >= hi:
                continue
            idx = np.arange(start - lo, hi - lo, p)
            idx = idx[seg[idx] == 0]
            seg[idx] = p
        # what remains unmarked in [max(lo,2), hi) is prime
        rest = np.nonzero(seg == 0)[0]
        seg[rest] = rest + lo
    return PrimeTable(N, spf)


@dataclass(frozen=True)
class ChenClassification:
    """Why p is or is not a Chen prime.

    kind: "prime" (p+2 prime), "semiprime" (p+2 = p1*p2 with the exact
    cutoff satisfied), or "not_chen" (reason says which clause failed).
    """

    p: int
    kind: str
    p1: int | None = None
    p2: int | None = None
    reason: str | None = None

    @property
    def is_chen(self) -> bool:
        return self.kind != "not_chen"

    def as_dict(self) -> dict:
        out: dict = {"p": self.p, "kind": self.kind, "is_chen": self.is_chen}
        if self.p1 is not None:
            out["p1"] = self.p1
            out["p2"] = self.p2
        if self.reason is not None:
            out["reason"] = self.reason
        return out


def classify_chen(p: int, table: PrimeTable) -> ChenClassification:
    """Exact Chen classification of a prime p with p <= table limit."""
    if p > table.limit:
        raise DomainError(f"table limit {table.limit} too small for p={p}")
    if not table.is_prime(p):
        raise DomainError(f"{p} is not prime")
    n = p + 2
    if table.is_prime(n):
        return ChenClassification(p, "prime")
    fac = table.factor_with_multiplicity(n)
    if len(fac) != 2:
        return ChenClassification(
            p, "not_chen", reason=f"{n} has {len(fac)} prime factors with multiplicity"
        )
    p1, p2 = fac
    # integer-exact form of min(p1, p2) > p^(3/11)
    if min(p1, p2) ** 11 > p**3:
        return ChenClassification(p, "semiprime", p1=p1, p2=p2)
    return ChenClassification(
        p,
        "not_chen",
        p1=p1,
        p2=p2,
        reason=f"min factor {min(p1, p2)}^11 <= {p}^3",
    )


@dataclass(frozen=True)
class ChenTable:
    """Classification of every prime up to the limit."""

    limit: int
    classifications: tuple[ChenClassification, ...]

    def chen_primes(self) -> list[int]:
        return [c.p for c in self.classifications if c.is_chen]


def build_chen_table(table: PrimeTable, upto: int | None = None) -> ChenTable:
    hi = table.limit if upto is None else upto
    rows = tuple(classify_chen(int(p), table) for p in table.primes(hi))
    return ChenTable(hi, rows)


def chen_primes(table: PrimeTable, upto: int | None = None) -> list[int]:
    """All Chen primes <= upto (default: table limit), ascending."""
    hi = table.limit if upto is None else upto
    return [int(p) for p in table.primes(hi) if classify_chen(int(p), table).is_chen]


@dataclass(frozen=True)
class DensityRow:
    n: int
    primes: int
    chen: int
    ratio: float  # chen * log(n)^2 / n


@dataclass(frozen=True)
class DensityReport:
    limit: int
    rows: tuple[DensityRow, ...]

    def as_csv(self) -> str:
        lines = ["N,primes,chen,ratio"]
        for r in self.rows:
            lines.append(f"{r.n},{r.primes},{r.chen},{r.ratio:.6f}")
        return "\n".join(lines)


def density_report(N: int, table: PrimeTable | None = None) -> DensityReport:
    """Prime and Chen-prime counts at checkpoints N/10, 2N/10, ..., N.

    The ratio column chen(n) * log(n)^2 / n is reported for inspection
    only; no constant is asserted.
    """
    if N < 100:
        raise DomainError("N must be >= 100")
    if table is None:
        table = sieve(N)
    elif table.limit < N:
        raise DomainError(f"table limit {table.limit} too small for N={N}")
    ps = [int(p) for p in table.primes(N)]
    chen_flags = [classify_chen(p, table).is_chen for p in ps]
    rows = []
    idx = 0
    primes_so_far = 0
    chen_so_far = 0
    for i in range(1, 11):
        checkpoint = N * i // 10
        while idx < len(ps) and ps[idx] <= checkpoint:
            primes_so_far += 1
            chen_so_far += chen_flags[idx]
            idx += 1
        ratio = chen_so_far * math.log(checkpoint) ** 2 / checkpoint
        rows.append(DensityRow(checkpoint, primes_so_far, chen_so_far, ratio))
    return DensityReport(N, tuple(rows))
