"""Roots of integer polynomials modulo prime powers, canonical p-adic
roots, and intersectivity verdicts.

One fact carries the whole module.  Let g be primitive and squarefree
with R = Res(g, g') != 0, and let v = v_p(R) for a prime p.  Because
A*g + B*g' = R for some integer polynomials A, B, any root r of g mod
p^j with j >= v+1 forces v_p(g'(r)) <= v; with j >= 2v+1 that makes r a
Newton-certified approximation of a genuine root in the p-adic integers
(v_p(g(r)) >= j > 2*v_p(g'(r))).  So the finite statement "g has a root
mod p^(2v+1)" is equivalent to the infinite one "g has a p-adic integer
root", and roots mod p^j for j up to 2v+1 decide everything.

For a general h = unit * prod g_i^(e_i) the decision runs on the
squarefree part prod g_i, which has the same p-adic roots; refutation
witnesses are then re-derived on h itself so they stay checkable by
exhaustive enumeration.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ._arith import factorize, is_prime, modinv, primes_upto, valuation
from .intpoly import (
    DomainError,
    IntPoly,
    SquarefreeDecomposition,
    resultant,
    scalar_divexact,
    squarefree_decomposition,
)

# largest modulus scanned exhaustively; larger moduli must be prime powers
# (or factor into them) so the lifting path applies
_SCAN_LIMIT = 10**7
# largest root set materialized before giving up
_SET_CAP = 10**6
_CHUNK = 1 << 20


class NoLocalRoot(ValueError):
    """No p-adic integer root exists.  ``witness`` is the smallest power
    of p such that the polynomial has no root at all modulo it, which any
    third party can re-check by enumerating residues."""

    def __init__(self, p: int, witness: int) -> None:
        super().__init__(f"no p-adic root for p={p}: no roots modulo {witness}")
        self.p = p
        self.witness = witness


@dataclass(frozen=True)
class PAdicRootCert:
    """Truncated p-adic integer root with certified multiplicity.

    ``digits[j-1]`` is the root reduced mod p^j; consecutive entries are
    compatible (digits[j] == digits[j-1] mod p^j).  ``multiplicity`` is
    the exponent of the unique squarefree factor of the source polynomial
    that vanishes at this root, and ``factor_index`` points at that
    factor in the source's squarefree decomposition.
    """

    p: int
    digits: tuple[int, ...]
    multiplicity: int
    factor_index: int

    @property
    def precision(self) -> int:
        return len(self.digits)

    def residue(self, j: int) -> int:
        """The root mod p^j, for 1 <= j <= precision."""
        if not 1 <= j <= len(self.digits):
            raise DomainError(f"digit index {j} outside [1, {len(self.digits)}]")
        return self.digits[j - 1]


@dataclass(frozen=True)
class IntersectivityVerdict:
    """Outcome of an intersectivity check.

    kind is one of:
      * "not_intersective": ``witness`` is a modulus with no root;
      * "certified_intersective": ``certificate`` is an integer root,
        valid for every modulus at once;
      * "verified_up_to_bound": no obstruction among primes <= the bound;
        explicitly not a proof for larger moduli.
    """

    kind: str
    witness: int | None = None
    certificate: int | None = None
    prime_bound: int | None = None

    @classmethod
    def not_intersective(cls, witness: int) -> "IntersectivityVerdict":
        return cls("not_intersective", witness=witness)

    @classmethod
    def certified(cls, root: int) -> "IntersectivityVerdict":
        return cls("certified_intersective", certificate=root)

    @classmethod
    def verified_up_to(cls, bound: int) -> "IntersectivityVerdict":
        return cls("verified_up_to_bound", prime_bound=bound)

    @property
    def is_proof(self) -> bool:
        return self.kind != "verified_up_to_bound"

    def as_dict(self) -> dict:
        out: dict = {"kind": self.kind}
        if self.kind == "not_intersective":
            out["witness_modulus"] = self.witness
        elif self.kind == "certified_intersective":
            out["integer_root"] = self.certificate
        else:
            out["prime_bound"] = self.prime_bound
            out["note"] = (
                "no obstruction among primes up to the bound; "
                "not a proof for larger moduli"
            )
        return out


# ---------------------------------------------------------------------------
# exhaustive scans (vectorized) and one-level lifting


def _scan_roots(f: IntPoly, m: int) -> list[int]:
    """All x in [0, m) with f(x) ≡ 0 (mod m), ascending, by evaluation."""
    cs = [c % m for c in reversed(f.coeffs)]
    if all(c == 0 for c in cs):
        if m > _SET_CAP:
            raise DomainError(f"every residue mod {m} is a root; set too large")
        return list(range(m))
    out: list[int] = []
    for start in range(0, m, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, m), dtype=np.int64)
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in cs:
            acc = (acc * xs + c) % m
        out.extend(int(x) for x in xs[acc == 0])
        if len(out) > _SET_CAP:
            raise DomainError(f"more than {_SET_CAP} roots mod {m}")
    return out


def _has_root_mod_p(f: IntPoly, p: int) -> bool:
    """Early-exit existence version of the scan."""
    cs = [c % p for c in reversed(f.coeffs)]
    if all(c == 0 for c in cs):
        return True
    for start in range(0, p, _CHUNK):
        xs = np.arange(start, min(start + _CHUNK, p), dtype=np.int64)
        acc = np.zeros(len(xs), dtype=np.int64)
        for c in cs:
            acc = (acc * xs + c) % p
        if bool(np.any(acc == 0)):
            return True
    return False


def _lift_level(f: IntPoly, fprime: IntPoly, p: int, pj: int, roots: list[int]) -> list[int]:
    """Roots of f mod p*pj from the roots mod pj (pj = p^j, j >= 1).

    Nonsingular roots lift uniquely by a Newton step; singular ones
    (f'(r) ≡ 0 mod p) lift to all p children or to none, depending on
    whether f(r) ≡ 0 mod p*pj already.
    """
    pj1 = pj * p
    out: list[int] = []
    for r in roots:
        val = f.eval_mod(r, pj1)
        dv = fprime.eval_mod(r, p)
        if dv:
            t = (-(val // pj) * modinv(dv, p)) % p
            out.append(r + t * pj)
        elif val == 0:
            if len(out) + p > _SET_CAP:
                raise DomainError(f"more than {_SET_CAP} roots mod {pj1}")
            out.extend(r + t * pj for t in range(p))
        if len(out) > _SET_CAP:
            raise DomainError(f"more than {_SET_CAP} roots mod {pj1}")
    return out


def lift_roots(f: IntPoly, p: int, alpha: int) -> set[int]:
    """All roots of f mod p^alpha via level-by-level lifting from mod p.

    Agrees with roots_mod(f, p**alpha) wherever both apply; this path
    works for p**alpha far beyond the exhaustive scan limit, as long as
    p itself is scannable (p <= 10^7).
    """
    if not is_prime(p):
        raise DomainError(f"{p} is not prime")
    if alpha < 1:
        raise DomainError("alpha must be >= 1")
    if p > _SCAN_LIMIT:
        raise DomainError(f"base prime {p} exceeds the scan limit {_SCAN_LIMIT}")
    roots = _scan_roots(f, p)
    fp = f.derivative()
    pj = p
    for _ in range(1, alpha):
        roots = _lift_level(f, fp, p, pj, roots)
        pj *= p
    return set(roots)


def roots_mod(f: IntPoly, m: int) -> set[int]:
    """Exactly the residues x in [0, m) with f(x) ≡ 0 (mod m).

    m <= 10^7 is scanned exhaustively; larger m is factored and handled
    prime power by prime power via lifting, then recombined by the
    Chinese remainder theorem.
    """
    if m < 1:
        raise DomainError("modulus must be >= 1")
    if m <= _SCAN_LIMIT:
        return set(_scan_roots(f, m))
    try:
        fac = factorize(m)
    except ValueError as exc:
        raise DomainError(f"modulus {m} exceeds the scan limit and resists factoring: {exc}") from None
    parts: list[tuple[list[int], int]] = []
    for p, a in sorted(fac.items()):
        rs = lift_roots(f, p, a)
        if not rs:
            return set()
        parts.append((sorted(rs), p**a))
    combined: list[tuple[int, int]] = [(0, 1)]
    for rs, q in parts:
        if len(combined) * len(rs) > _SET_CAP:
            raise DomainError(f"more than {_SET_CAP} roots mod {m}")
        new: list[tuple[int, int]] = []
        for x, mm in combined:
            inv = modinv(mm % q, q)
            for r in rs:
                new.append((x + mm * (((r - x) * inv) % q), mm * q))
        combined = new
    return {x for x, _ in combined}


# ---------------------------------------------------------------------------
# canonical p-adic root selection


Selector = Callable[[Sequence[int], int, int], int]
"""Hook choosing among certified residues: (ascending candidates, p, level) -> pick."""


def _smallest_residue(candidates: Sequence[int], p: int, level: int) -> int:
    return candidates[0]


def _cert_valuation(n: int, p: int, level: int) -> int | None:
    """v_p(n) when 2*v_p(n) < level (the Newton certification cutoff),
    else None.  n == 0 never certifies."""
    if n == 0:
        return None
    w = 0
    while n % p == 0:
        n //= p
        w += 1
        if 2 * w >= level:
            return None
    return w


@dataclass
class _PrimeState:
    anchor: int
    level: int
    w: int  # v_p of the squarefree part's derivative at the root, stable
    digits: list[int]
    multiplicity: int
    factor_index: int


class LocalRootSystem:
    """Canonical p-adic roots of one polynomial, across all primes.

    One root per prime is pinned deterministically: ascend precision
    j = 1, 2, ... through the roots of the squarefree part mod p^j; at
    the first level where some root r is Newton-certified
    (2*v_p(g'(r)) < j), pick the smallest such residue (or defer to the
    configured selector).  The certified root extends to any precision
    without ever rewriting earlier digits, which is what downstream CRT
    constructions need for coherence across composite moduli.
    """

    def __init__(self, h: IntPoly, selector: Selector | None = None) -> None:
        if h.degree < 1:
            raise DomainError("nonconstant polynomial required")
        self.h = h
        self.decomposition: SquarefreeDecomposition = squarefree_decomposition(h)
        self.squarefree_part: IntPoly = self.decomposition.squarefree_part()
        self._g = self.squarefree_part
        self._gp = self._g.derivative()
        self._res = resultant(self._g, self._gp)
        if self._res == 0:
            raise AssertionError("squarefree part has zero resultant with its derivative")
        self._selector = selector or _smallest_residue
        self._states: dict[int, _PrimeState] = {}
        self._no_root: dict[int, int] = {}

    # -- public surface -------------------------------------------------

    def certificate(self, p: int, precision: int) -> PAdicRootCert:
        """The canonical root's certificate to the requested precision.

        Raises NoLocalRoot (with an exhaustively checkable witness
        modulus) when no p-adic root exists.
        """
        if precision < 1:
            raise DomainError("precision must be >= 1")
        st = self._state(p)
        self._extend(p, st, precision)
        return PAdicRootCert(p, tuple(st.digits[:precision]), st.multiplicity, st.factor_index)

    def multiplicity(self, p: int) -> int:
        return self._state(p).multiplicity

    def root_residue(self, p: int, j: int) -> int:
        """The canonical root mod p^j."""
        if j < 1:
            raise DomainError("precision must be >= 1")
        st = self._state(p)
        self._extend(p, st, j)
        return st.digits[j - 1]

    # -- selection ------------------------------------------------------

    def _state(self, p: int) -> _PrimeState:
        if p in self._no_root:
            raise NoLocalRoot(p, self._no_root[p])
        st = self._states.get(p)
        if st is None:
            st = self._select(p)
            self._states[p] = st
        return st

    def _select(self, p: int) -> _PrimeState:
        if not is_prime(p):
            raise DomainError(f"{p} is not prime")
        if p > _SCAN_LIMIT:
            raise DomainError(f"prime {p} exceeds the scan limit {_SCAN_LIMIT}")
        v = valuation(abs(self._res), p)
        gamma = 2 * v + 1
        frontier = _scan_roots(self._g, p)
        pj = p
        j = 1
        while True:
            if not frontier:
                witness = self._refutation_modulus(p)
                self._no_root[p] = witness
                raise NoLocalRoot(p, witness)
            certified: list[tuple[int, int]] = []
            for r in frontier:
                w = _cert_valuation(self._gp(r), p, j)
                if w is not None:
                    certified.append((r, w))
            if certified:
                certified.sort()
                pick = self._selector([r for r, _ in certified], p, j)
                wmap = dict(certified)
                if pick not in wmap:
                    raise DomainError("selector returned a residue that is not certified")
                digits = [pick % p**i for i in range(1, j + 1)]
                st = _PrimeState(pick, j, wmap[pick], digits, 0, 0)
                st.multiplicity, st.factor_index = self._identify_factor(p, st)
                return st
            if j >= gamma:  # unreachable: at level gamma every root certifies
                raise AssertionError("uncertified roots past the lifting threshold")
            frontier = _lift_level(self._g, self._gp, p, pj, frontier)
            pj *= p
            j += 1

    def _extend(self, p: int, st: _PrimeState, target: int) -> None:
        # one linear Newton step per digit; valid because level >= 2w+1
        while len(st.digits) < target:
            j = len(st.digits)
            r = st.digits[-1]
            val = self._g(r)  # divisible by p^(j+w)
            u = (self._gp(r) // p**st.w) % p
            t = (-(val // p ** (j + st.w)) * modinv(u, p)) % p
            st.digits.append(r + t * p**j)

    def _identify_factor(self, p: int, st: _PrimeState) -> tuple[int, int]:
        """Which squarefree factor vanishes at the pinned root.

        Exactly one factor has the root p-adically (pairwise coprimality
        forces distinct factors' values to have bounded common p-power).
        Deepen the digits until a single factor still matches.
        """
        factors = self.decomposition.factors
        if len(factors) == 1:
            return factors[0][1], 0
        cands = list(range(len(factors)))
        j = st.level
        while True:
            self._extend(p, st, j)
            r = st.digits[j - 1]
            pj = p**j
            cands = [i for i in cands if factors[i][0].eval_mod(r, pj) == 0]
            if len(cands) == 1:
                return factors[cands[0]][1], cands[0]
            if not cands:
                raise AssertionError("certified root matches no squarefree factor")
            j += 1

    def _refutation_modulus(self, p: int) -> int:
        """Smallest p-power modulus with no root of h itself.

        Levels up to the p-part of the integer content have every residue
        as a root, so strip that part first and lift the rest until the
        frontier dies; guaranteed to happen once no p-adic root exists.
        """
        g = 0
        for c in self.h.coeffs:
            g = math.gcd(g, c)
        u = valuation(g, p) if g % p == 0 else 0
        hh = scalar_divexact(self.h, p**u) if u else self.h
        frontier = _scan_roots(hh, p)
        hp = hh.derivative()
        pj = p
        j = 1
        while frontier:
            frontier = _lift_level(hh, hp, p, pj, frontier)
            pj *= p
            j += 1
            if j > 10_000:
                raise AssertionError("refutation search failed to terminate")
        return p ** (u + j)


def select_padic_root(
    h: IntPoly, p: int, precision: int, selector: Selector | None = None
) -> PAdicRootCert:
    """Canonical p-adic root certificate of h at p (see LocalRootSystem)."""
    return LocalRootSystem(h, selector).certificate(p, precision)


# ---------------------------------------------------------------------------
# intersectivity


_DIVISOR_TRIAL = 10**5


def _integer_root(h: IntPoly) -> int | None:
    """An integer root, or None.  Candidates are divisors of the constant
    term; enumeration is complete for |constant| <= 10^10 and otherwise
    covers divisors with a cofactor below 10^5 (a miss can only demote a
    verdict to verified-up-to-bound, never corrupt a refutation)."""
    c0 = h.coeffs[0]
    if c0 == 0:
        return 0
    a0 = abs(c0)
    cands: set[int] = set()
    n = 1
    while n * n <= a0 and n <= _DIVISOR_TRIAL:
        if a0 % n == 0:
            cands.add(n)
            cands.add(a0 // n)
        n += 1
    for c in sorted(cands):
        if h(c) == 0:
            return c
        if h(-c) == 0:
            return -c
    return None


def check_intersective(h: IntPoly, prime_bound: int) -> IntersectivityVerdict:
    """Decide "h has a root mod d for every d", prime by prime up to the bound.

    An integer root certifies the property for all moduli at once.
    Otherwise every prime p <= prime_bound is decided exactly:
    a missing root mod p refutes immediately, and for the finitely many
    primes dividing the squarefree part's resultant invariant the p-adic
    decision runs to the lifting threshold.  Primes beyond the bound are
    not touched, hence the explicitly non-proof verdict on success.

    Cost is dominated by the per-prime scans: about sum(p) operations
    over p <= prime_bound, fine for bounds up to ~10^5.
    """
    if h.degree < 1:
        raise DomainError("nonconstant polynomial required")
    if prime_bound < 1:
        raise DomainError("prime bound must be >= 1")
    root = _integer_root(h)
    if root is not None:
        return IntersectivityVerdict.certified(root)
    primes = primes_upto(prime_bound)
    for p in primes:
        if not _has_root_mod_p(h, p):
            return IntersectivityVerdict.not_intersective(p)
    system = LocalRootSystem(h)
    hard = abs(system._res * system.decomposition.unit)
    for p in primes:
        if hard % p:
            continue
        try:
            system.certificate(p, 1)
        except NoLocalRoot as exc:
            return IntersectivityVerdict.not_intersective(exc.witness)
    return IntersectivityVerdict.verified_up_to(prime_bound)
