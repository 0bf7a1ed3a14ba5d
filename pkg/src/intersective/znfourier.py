"""Fourier analysis on Z_N, polynomial-weighted indicators, and moment
computations with an exact combinatorial cross-check.

Normalization (kept verbatim throughout the package): the forward
transform averages with a positive exponent,

    fhat(xi) = (1/N) * sum_x f(x) * exp(+2*pi*i*x*xi/N),

and inversion sums with the negative exponent,

    f(x) = sum_xi fhat(xi) * exp(-2*pi*i*x*xi/N).

numpy's ifft/fft implement exactly these two maps, in that order.
Norms on the frequency side are plain sums over the full spectrum,
||g||_p = (sum_xi |g(xi)|^p)^(1/p), with no averaging.

The weighted indicator of a polynomial f puts mass f'(n) at f(n) for
each n >= 0 with 0 < f(n) < N/2; its 2s-th moment can be computed
either through the transform or by exact integer counting of solutions
of f(n_1)+...+f(n_s) = f(m_1)+...+f(m_s), and the two routes must agree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .intpoly import DomainError, IntPoly

TIME = "time"
FREQ = "freq"

_COUNT_CAP = 50_000_000  # cap on len(support)^s table growth


@dataclass(frozen=True)
class ZnFun:
    """A function on Z_N with a domain tag; values are complex doubles
    and immutable after construction."""

    N: int
    values: np.ndarray
    domain: str

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError("N must be >= 1")
        if self.domain not in (TIME, FREQ):
            raise DomainError(f"unknown domain tag {self.domain!r}")
        vals = np.asarray(self.values, dtype=np.complex128)
        if vals.shape != (self.N,):
            raise DomainError(f"expected {self.N} values, got shape {vals.shape}")
        vals = vals.copy()
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @classmethod
    def time(cls, values) -> "ZnFun":
        arr = np.asarray(values)
        return cls(len(arr), arr, TIME)

    @classmethod
    def freq(cls, values) -> "ZnFun":
        arr = np.asarray(values)
        return cls(len(arr), arr, FREQ)

    @classmethod
    def indicator(cls, N: int, points) -> "ZnFun":
        vals = np.zeros(N)
        for x in points:
            vals[x % N] = 1.0
        return cls(N, vals, TIME)

    def mean(self) -> complex:
        return complex(np.mean(self.values))


def _require(f: ZnFun, domain: str) -> None:
    if f.domain != domain:
        raise DomainError(f"expected a {domain}-domain function, got {f.domain}")


def dft(f: ZnFun) -> ZnFun:
    """Averaged forward transform with positive exponent (see module doc)."""
    _require(f, TIME)
    return ZnFun(f.N, np.fft.ifft(f.values), FREQ)


def idft(g: ZnFun) -> ZnFun:
    """Summed inverse transform with negative exponent; idft(dft(f)) == f."""
    _require(g, FREQ)
    return ZnFun(g.N, np.fft.fft(g.values), TIME)


def convolve(f: ZnFun, g: ZnFun) -> ZnFun:
    """(f*g)(x) = (1/N) * sum_y f(y) g(x-y); transforms multiply."""
    _require(f, TIME)
    _require(g, TIME)
    if f.N != g.N:
        raise DomainError(f"mismatched lengths {f.N} and {g.N}")
    return ZnFun(f.N, np.fft.fft(np.fft.ifft(f.values) * np.fft.ifft(g.values)), TIME)


def moment_norm(g: ZnFun, p: float) -> float:
    """||g||_p = (sum over the full spectrum of |g|^p)^(1/p)."""
    _require(g, FREQ)
    if p < 1:
        raise DomainError("p must be >= 1")
    return float(np.sum(np.abs(g.values) ** p) ** (1.0 / p))


# ---------------------------------------------------------------------------
# polynomial-weighted indicators


def _support_points(f: IntPoly, N: int) -> list[tuple[int, int]]:
    """[(f(n), f'(n)) for n >= 0 with 0 < f(n) < N/2], scanning upward.

    Requires a positive leading coefficient, and strict increase from
    the first positive value onward (which makes the representing n
    unique); earlier dips below zero are fine.
    """
    if f.degree < 1 or f.leading <= 0:
        raise DomainError("positive leading coefficient and degree >= 1 required")
    fp = f.derivative()
    out: list[tuple[int, int]] = []
    prev: int | None = None
    n = 0
    while True:
        v = f(n)
        if prev is not None and prev > 0 and v <= prev:
            raise DomainError(f"not strictly increasing at n={n} (values {prev}, {v})")
        if v > 0 and 2 * v >= N:
            return out
        if v > 0:
            out.append((v, fp(n)))
        prev = v
        n += 1


def build_S(f: IntPoly, N: int) -> ZnFun:
    """Weighted indicator: mass f'(n) at x = f(n) for 0 < f(n) < N/2."""
    if N < 1:
        raise DomainError("N must be >= 1")
    vals = np.zeros(N)
    for v, w in _support_points(f, N):
        vals[v] = w
    return ZnFun(N, vals, TIME)


def moment_by_counting(f: IntPoly, N: int, s: int) -> float:
    """||dft(build_S(f, N))||_{2s}^{2s} by exact solution counting.

    Sums prod f'(n_i) * prod f'(m_j) over solutions of
    f(n_1)+...+f(n_s) = f(m_1)+...+f(m_s) drawn from the indicator's
    support, divided by N^(2s-1).  Valid (and enforced) only without
    wraparound: s * max f(n) < N, so sums mod N equal integer sums.
    Accumulation is pure integer arithmetic; division happens once.
    """
    if s < 1:
        raise DomainError("s must be >= 1")
    pts = _support_points(f, N)
    if not pts:
        return 0.0
    top = max(v for v, _ in pts)
    if s * top >= N:
        raise DomainError(f"wraparound: s*f(M) = {s * top} >= N = {N}")
    # table of s-fold sums: value -> sum of weight products
    table: dict[int, int] = {0: 1}
    for _ in range(s):
        nxt: dict[int, int] = {}
        for t, acc in table.items():
            for v, w in pts:
                nxt[t + v] = nxt.get(t + v, 0) + acc * w
        if len(nxt) * len(pts) > _COUNT_CAP:
            raise DomainError("solution table exceeds the configured cap")
        table = nxt
    total = sum(acc * acc for acc in table.values())
    return float(Fraction(total, N ** (2 * s - 1)))


def bilinear_count(f: ZnFun, S: ZnFun) -> float:
    """sum_{a,d in Z_N} f(a) f(a+d) S(d), via the spectrum.

    Writing everything in transforms collapses the double sum to
    N^2 * sum_xi fhat(xi) fhat(-xi) Shat(xi); for real f the product
    fhat(xi) fhat(-xi) is |fhat(xi)|^2, so the result is real.
    """
    _require(f, TIME)
    _require(S, TIME)
    if f.N != S.N:
        raise DomainError(f"mismatched lengths {f.N} and {S.N}")
    if np.max(np.abs(f.values.imag)) > 1e-12 or np.max(np.abs(S.values.imag)) > 1e-12:
        raise DomainError("bilinear_count expects real-valued inputs")
    N = f.N
    fh = np.fft.ifft(f.values)
    Sh = np.fft.ifft(S.values)
    fh_neg = np.concatenate((fh[:1], fh[1:][::-1]))  # xi -> fhat(-xi)
    return float((N * N * np.sum(fh * fh_neg * Sh)).real)
