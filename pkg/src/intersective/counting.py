"""Difference-pattern counting over integer sets.

Three consumers share one scan: enumeration of the pairs (a, a') with
a - a' = h(n), the weighted count R(A) = sum_n h'(n) * r(n, A) used by the
density lower bounds, and the extremal problem of the largest subset of
{1..N} avoiding every positive value of h as a difference.

Sets live in [0, N].  Ordinary sets occupy [1, N]; index 0 is admitted so
preimage sets anchored at the origin (n = 0 allowed) fit the same container.
"""

from __future__ import annotations

import bisect
import math
import operator
from dataclasses import dataclass

import numpy as np

from .intpoly import DomainError, IntPoly, growth_bounds

__all__ = [
    "EXACT",
    "GREEDY",
    "IntSet",
    "PairWitness",
    "WeightBreakdown",
    "difference_pairs",
    "extremal_dff",
    "forbidden_gaps",
    "weighted_R",
    "weighted_R_breakdown",
]

EXACT = "exact"
GREEDY = "greedy"

_EXACT_CAP = 64
_GREEDY_CAP = 10**6


@dataclass(frozen=True)
class IntSet:
    """A sorted, deduplicated set of integers in [0, N]."""

    N: int
    members: tuple

    def __post_init__(self) -> None:
        if self.N < 1:
            raise DomainError("ambient bound must be >= 1")
        cleaned = sorted({operator.index(m) for m in self.members})
        for m in cleaned:
            if not 0 <= m <= self.N:
                raise DomainError(f"member {m} outside [0, {self.N}]")
        object.__setattr__(self, "members", tuple(cleaned))

    @classmethod
    def from_iterable(cls, N: int, items) -> "IntSet":
        return cls(N, tuple(items))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __contains__(self, x) -> bool:
        i = bisect.bisect_left(self.members, x)
        return i < len(self.members) and self.members[i] == x


@dataclass(frozen=True)
class PairWitness:
    """A pair a > a' from the set with a - a' = h(n)."""

    a: int
    a_prime: int
    n: int

    @property
    def difference(self) -> int:
        return self.a - self.a_prime

    def as_dict(self) -> dict:
        return {"a": self.a, "a_prime": self.a_prime, "n": self.n}


def _require_growing(h: IntPoly) -> None:
    if h.degree < 1:
        raise DomainError("polynomial must be nonconstant")
    if h.leading <= 0:
        raise DomainError("polynomial must have a positive leading coefficient")


def _scan_values(h: IntPoly, limit: int) -> tuple[list, list]:
    """All (n, h(n)) with 0 < h(n) <= limit, plus the n with h(n) = 0.

    Complete: beyond max(1, ceil(B(h)), ceil(B(h'))) the polynomial is
    positive with positive derivative, so the first value above the limit
    past that point ends the scan; everything earlier is tested one by one.
    """
    _require_growing(h)
    _, growth = growth_bounds(h)
    start = max(1, math.ceil(growth))
    deriv = h.derivative()
    if deriv.degree >= 1:
        _, dgrowth = growth_bounds(deriv)
        start = max(start, math.ceil(dgrowth))
    positives = []
    zeros = []
    n = 0
    while True:
        v = h(n)
        if v == 0:
            zeros.append(n)
        elif 0 < v <= limit:
            positives.append((n, v))
        if n >= start and v > limit:
            return positives, zeros
        n += 1


def difference_pairs(A: IntSet, h: IntPoly) -> list:
    """Every (a, a', n) in A x A x Z>=0 with a - a' = h(n) > 0 and h(n) <= N.

    Ordered by n, then by a.  Complete by construction: each candidate
    value of h is tested against a membership bitset.
    """
    positives, _ = _scan_values(h, A.N)
    present = bytearray(A.N + 1)
    for m in A.members:
        present[m] = 1
    out = []
    for n, v in positives:
        for a in A.members:
            b = a - v
            if b >= 0 and present[b]:
                out.append(PairWitness(a, b, n))
    return out


@dataclass(frozen=True)
class WeightBreakdown:
    """Exact weighted pair count with the degenerate diagonal split out.

    total uses the unordered convention (each pair with a > a' once);
    ordered_total counts both orientations.  degenerate collects the
    h'(n) * |A| contribution of every n with h(n) = 0, where the literal
    formula counts the couples (a, a).
    """

    total: int
    degenerate: int
    ordered_total: int
    terms: tuple

    def as_dict(self) -> dict:
        return {
            "total": self.total,
            "degenerate": self.degenerate,
            "ordered_total": self.ordered_total,
            "terms": [
                {"n": n, "value": v, "weight": w, "pairs": r}
                for (n, v, w, r) in self.terms
            ],
        }


def weighted_R_breakdown(A: IntSet, h: IntPoly) -> WeightBreakdown:
    positives, zeros = _scan_values(h, A.N)
    deriv = h.derivative()
    present = bytearray(A.N + 1)
    for m in A.members:
        present[m] = 1
    terms = []
    pair_sum = 0
    for n, v in positives:
        r = 0
        for a in A.members:
            b = a - v
            if b >= 0 and present[b]:
                r += 1
        w = deriv(n)
        terms.append((n, v, w, r))
        pair_sum += w * r
    degenerate = sum(deriv(n) * len(A.members) for n in zeros)
    return WeightBreakdown(
        total=pair_sum + degenerate,
        degenerate=degenerate,
        ordered_total=2 * pair_sum + degenerate,
        terms=tuple(terms),
    )


def weighted_R(A: IntSet, h: IntPoly) -> int:
    """sum_{n >= 0} h'(n) * #{(a, a') in A^2 : a - a' = h(n)}, exactly."""
    return weighted_R_breakdown(A, h).total


def forbidden_gaps(h: IntPoly, N: int) -> list:
    """Sorted distinct values of h in [1, N-1]: the differences to avoid."""
    if N < 1:
        raise DomainError("N must be >= 1")
    if N == 1:
        _require_growing(h)
        return []
    positives, _ = _scan_values(h, N - 1)
    return sorted({v for _, v in positives})


def _verify_difference_free(members, gaps, N) -> None:
    chosen = bytearray(N + 1)
    for m in members:
        chosen[m] = 1
    for g in gaps:
        for m in members:
            if m + g <= N and chosen[m + g]:
                raise AssertionError(f"witness not difference-free: {m} and {m + g}")


def _greedy_select(N: int, gaps: list) -> list:
    """First-fit scan: take x whenever no chosen y < x has x - y forbidden."""
    if not gaps:
        return list(range(1, N + 1))
    garr = np.asarray(gaps, dtype=np.int64)
    blocked = np.zeros(2 * N + 2, dtype=bool)
    chosen = []
    for x in range(1, N + 1):
        if not blocked[x]:
            chosen.append(x)
            blocked[x + garr] = True
    return chosen


def _exact_select(N: int, gaps: list) -> list:
    """True maximum via branch and bound on the forbidden-difference graph.

    Vertices are relabeled in descending degree order; the search walks the
    complement graph looking for a maximum clique, pruning with a greedy
    coloring bound.  Deterministic: fixed branching order, strict improvement.
    """
    n = N
    adj = [0] * n
    for g in gaps:
        for i in range(n - g):
            adj[i] |= 1 << (i + g)
            adj[i + g] |= 1 << i
    order = sorted(range(n), key=lambda v: (-bin(adj[v]).count("1"), v))
    pos = {v: i for i, v in enumerate(order)}
    radj = [0] * n
    for new_i, old_v in enumerate(order):
        mask = adj[old_v]
        m = 0
        while mask:
            bit = mask & -mask
            m |= 1 << pos[bit.bit_length() - 1]
            mask &= mask - 1
        radj[new_i] = m
    full = (1 << n) - 1
    comp = [full & ~radj[v] & ~(1 << v) for v in range(n)]

    # seed the bound with the greedy solution (relabeled)
    greedy = _greedy_select(N, gaps)
    best_mask = 0
    for x in greedy:
        best_mask |= 1 << pos[x - 1]
    best_size = len(greedy)

    def expand(r_size: int, r_mask: int, p_mask: int) -> None:
        nonlocal best_size, best_mask
        if p_mask == 0:
            if r_size > best_size:
                best_size, best_mask = r_size, r_mask
            return
        colors = []
        verts = []
        uncolored = p_mask
        color = 0
        while uncolored:
            color += 1
            q = uncolored
            while q:
                vbit = q & -q
                v = vbit.bit_length() - 1
                verts.append(v)
                colors.append(color)
                q &= ~comp[v]
                q &= ~vbit
                uncolored &= ~vbit
        p = p_mask
        for i in range(len(verts) - 1, -1, -1):
            if r_size + colors[i] <= best_size:
                return
            v = verts[i]
            vbit = 1 << v
            expand(r_size + 1, r_mask | vbit, p & comp[v])
            p &= ~vbit

    expand(0, 0, full)
    out = []
    mask = best_mask
    while mask:
        bit = mask & -mask
        out.append(order[bit.bit_length() - 1] + 1)
        mask &= mask - 1
    return sorted(out)


def extremal_dff(h: IntPoly, N: int, mode: str = EXACT) -> tuple:
    """Largest (exact) or large (greedy) subset of {1..N} avoiding the
    positive values of h as differences.  Returns (size, witness)."""
    if mode not in (EXACT, GREEDY):
        raise DomainError(f"mode must be {EXACT!r} or {GREEDY!r}")
    if N < 1:
        raise DomainError("N must be >= 1")
    if mode == EXACT and N > _EXACT_CAP:
        raise DomainError(f"exact mode handles N <= {_EXACT_CAP}, got {N}")
    if N > _GREEDY_CAP:
        raise DomainError(f"N <= {_GREEDY_CAP} required, got {N}")
    gaps = forbidden_gaps(h, N)
    members = _exact_select(N, gaps) if mode == EXACT else _greedy_select(N, gaps)
    _verify_difference_free(members, gaps, N)
    return len(members), IntSet(N, tuple(members))
