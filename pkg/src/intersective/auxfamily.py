"""Lucier's auxiliary polynomial family h_d and its verified properties.

Fix a polynomial h of degree k that has a p-adic integer root z_p at
every prime of interest, one canonical root per prime.  For d >= 1 with
prime factorization prod p^a:

* lambda(d) = prod p^(m_p * a), where m_p is the certified multiplicity
  of z_p (completely multiplicative by construction);
* r_d is the unique integer in (-d, 0] congruent to z_p mod p^a for
  every p^a dividing d;
* h_d(x) = h(r_d + d*x) / lambda(d), which is again an integer
  polynomial of degree k.

The family composes: (h_d)_q = h_(dq) exactly, provided h_d inherits
its local roots from h ((z_p - r_d)/d is the root handed to h_d).  That
inheritance is what AuxFamily manages; verify_aux_family checks the six
contracted properties (integrality/degree, eventual positivity and
monotonicity, composition, leading-coefficient bounds, growth-threshold
bound, content bound) with exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from ._arith import crt, factorize, modinv, valuation
from .intpoly import (
    DomainError,
    IntPoly,
    affine_compose,
    content,
    growth_bounds,
    scalar_divexact,
    semidiscriminant,
)
from .localroots import LocalRootSystem, PAdicRootCert, Selector

_DEFAULT_D_CAP = 10**4
_WINDOW_LENGTH = 1000


@dataclass(frozen=True)
class AuxPoly:
    """One member h_d of the family, with its construction data.

    Invariants (validated on construction): -d < r_d <= 0;
    d | lambda_d | d^k; lambda_d * poly == base(r_d + d*x) identically;
    poly has degree k = deg(base).
    """

    base: IntPoly
    d: int
    r_d: int
    lambda_d: int
    poly: IntPoly

    def __post_init__(self) -> None:
        if self.d < 1:
            raise DomainError("d must be >= 1")
        if not -self.d < self.r_d <= 0:
            raise DomainError(f"r_d={self.r_d} outside (-{self.d}, 0]")
        k = self.base.degree
        if self.lambda_d < 1 or self.lambda_d % self.d or self.d**k % self.lambda_d:
            raise DomainError(f"lambda={self.lambda_d} violates d | lambda | d^k")
        if self.poly.degree != k:
            raise DomainError("degree not preserved")
        if self.lambda_d * self.poly != affine_compose(self.base, self.d, self.r_d):
            raise DomainError("lambda * poly != base(r_d + d*x)")


@dataclass(frozen=True)
class AuxVerifyReport:
    """Pass/fail per contracted family property, with exact-arithmetic
    details.  positivity_monotonicity is checked on a finite window (and
    the leading sign), so a pass there certifies the window plus eventual
    behavior, not every integer in between."""

    d: int
    q: int
    degree_integrality: bool
    positivity_monotonicity: bool
    composition: bool
    leading_bounds: bool
    threshold_bound: bool
    content_bound: bool
    window: tuple[int, int]
    details: tuple[str, ...]

    @property
    def all_passed(self) -> bool:
        return (
            self.degree_integrality
            and self.positivity_monotonicity
            and self.composition
            and self.leading_bounds
            and self.threshold_bound
            and self.content_bound
        )

    def as_dict(self) -> dict:
        return {
            "d": self.d,
            "q": self.q,
            "items": {
                "degree_integrality": self.degree_integrality,
                "positivity_monotonicity": self.positivity_monotonicity,
                "composition": self.composition,
                "leading_bounds": self.leading_bounds,
                "threshold_bound": self.threshold_bound,
                "content_bound": self.content_bound,
            },
            "window": list(self.window),
            "all_passed": self.all_passed,
            "details": list(self.details),
        }


class _MappingProvider:
    """Adapter so callers may hand in precomputed certificates."""

    def __init__(self, certs: Mapping[int, PAdicRootCert]) -> None:
        self._certs = dict(certs)

    def certificate(self, p: int, precision: int) -> PAdicRootCert:
        cert = self._certs.get(p)
        if cert is None:
            raise DomainError(f"missing certificate for prime {p}")
        if cert.precision < precision:
            raise DomainError(
                f"certificate for prime {p} has precision {cert.precision}, need {precision}"
            )
        return cert


def _provider(h: IntPoly, roots: Mapping[int, PAdicRootCert] | LocalRootSystem | None):
    if roots is None:
        return LocalRootSystem(h)
    if isinstance(roots, LocalRootSystem):
        return roots
    return _MappingProvider(roots)


class AuxFamily:
    """The family {h_d} of one base polynomial, with shared local roots.

    All members draw digits from a single LocalRootSystem, which is what
    makes lambda completely multiplicative and the composition identity
    (h_d)_q = h_(dq) exact.  Construction for unreachable primes raises
    NoLocalRoot with a checkable witness.
    """

    def __init__(
        self,
        h: IntPoly,
        selector: Selector | None = None,
        d_cap: int = _DEFAULT_D_CAP,
    ) -> None:
        if h.degree < 1:
            raise DomainError("nonconstant polynomial required")
        self.h = h
        self.d_cap = d_cap
        self.system = LocalRootSystem(h, selector)
        self._cache: dict[int, AuxPoly] = {}

    # -- scalar data ----------------------------------------------------

    def _per_prime(self, d: int) -> tuple[int, list[tuple[int, int]]]:
        """(lambda(d), [(z_p mod p^a, p^a), ...]) for d's prime powers."""
        if d < 1:
            raise DomainError("d must be >= 1")
        if d > self.d_cap:
            raise DomainError(f"d={d} exceeds the configured cap {self.d_cap}")
        lam = 1
        residues: list[tuple[int, int]] = []
        for p, a in sorted(factorize(d).items()):
            cert = self.system.certificate(p, a)
            lam *= p ** (cert.multiplicity * a)
            residues.append((cert.residue(a), p**a))
        return lam, residues

    def lambda_of(self, d: int) -> int:
        return self._per_prime(d)[0]

    def r_of(self, d: int) -> int:
        _, residues = self._per_prime(d)
        x0, _ = crt(residues)
        return x0 - d if x0 > 0 else 0

    # -- members ----------------------------------------------------------

    def aux(self, d: int) -> AuxPoly:
        got = self._cache.get(d)
        if got is None:
            lam, residues = self._per_prime(d)
            x0, _ = crt(residues)
            r = x0 - d if x0 > 0 else 0
            # integrality is a theorem for the inherited-root construction;
            # InexactDivision here would mean an implementation bug
            poly = scalar_divexact(affine_compose(self.h, d, r), lam)
            got = AuxPoly(self.h, d, r, lam, poly)
            self._cache[d] = got
        return got

    def compose(self, d: int, q: int) -> AuxPoly:
        """(h_d)_q: apply the construction to h_d with inherited roots.

        For p^b || q and p^a || d the root handed to h_d is
        (z_p - r_d) / d, realized on digits as an exact division by p^a
        and a unit inverse mod p^b.  Multiplicities carry over unchanged.
        """
        if q < 1:
            raise DomainError("q must be >= 1")
        base = self.aux(d)
        lam_q = 1
        residues: list[tuple[int, int]] = []
        for p, b in sorted(factorize(q).items()):
            a = valuation(d, p) if d % p == 0 else 0
            cert = self.system.certificate(p, a + b)
            pb = p**b
            diff = cert.residue(a + b) - base.r_d  # >= 0 and divisible by p^a
            if diff % p**a:
                raise AssertionError("inherited digit not divisible by the d-part")
            y = ((diff // p**a) * modinv((d // p**a) % pb, pb)) % pb
            lam_q *= p ** (cert.multiplicity * b)
            residues.append((y, pb))
        x0, _ = crt(residues)
        rq = x0 - q if x0 > 0 else 0
        poly = scalar_divexact(affine_compose(base.poly, q, rq), lam_q)
        return AuxPoly(base.poly, q, rq, lam_q, poly)

    # -- verification -----------------------------------------------------

    def verify(self, d: int, q: int) -> AuxVerifyReport:
        h = self.h
        k = h.degree
        hd = self.aux(d)
        details: list[str] = []

        item1 = hd.poly.degree == k and self.lambda_of(d) * hd.poly == affine_compose(
            h, d, hd.r_d
        )
        details.append(f"h_d degree {hd.poly.degree} (base degree {k})")

        _, b_hd_threshold = growth_bounds(hd.poly)
        start = max(1, math.ceil(b_hd_threshold))
        window = (start, start + _WINDOW_LENGTH)
        item2 = hd.poly.leading > 0
        for g in (hd.poly, hd.poly.derivative(), hd.poly.derivative().derivative()):
            prev = None
            for x in range(window[0], window[1] + 1):
                val = g(x)
                if val <= 0 or (prev is not None and val < prev):
                    item2 = False
                    break
                prev = val
            if not item2:
                break
        details.append(f"window [{window[0]}, {window[1]}] checked, leading sign included")

        composed = self.compose(d, q)
        target = self.aux(d * q)
        item3 = (
            composed.poly == target.poly
            and composed.lambda_d * hd.lambda_d == target.lambda_d
            and hd.r_d + d * composed.r_d == target.r_d
        )
        details.append(
            f"(h_{d})_{q} coeffs {list(composed.poly.coeffs)} vs h_{d*q} {list(target.poly.coeffs)}"
        )

        b_h = h.leading
        b_hd = hd.poly.leading
        item4 = b_h <= b_hd <= d ** (k - 1) * b_h
        details.append(f"leading: {b_h} <= {b_hd} <= {d ** (k - 1) * b_h}")

        _, b_h_threshold = growth_bounds(h)
        bound5 = 2 ** (k - 1) * k * (b_h_threshold + 2)
        item5 = b_hd_threshold <= bound5
        details.append(f"threshold: {b_hd_threshold} <= {bound5}")

        delta = abs(semidiscriminant(h))
        c_h = content(h)
        c_hd = content(hd.poly)
        item6 = c_hd**2 <= delta ** (k - 1) * c_h**2
        details.append(f"content^2: {c_hd**2} <= {delta ** (k - 1) * c_h**2}")

        return AuxVerifyReport(
            d=d,
            q=q,
            degree_integrality=item1,
            positivity_monotonicity=item2,
            composition=item3,
            leading_bounds=item4,
            threshold_bound=item5,
            content_bound=item6,
            window=window,
            details=tuple(details),
        )


# ---------------------------------------------------------------------------
# functional entry points


def lambda_of(
    h: IntPoly,
    d: int,
    roots: Mapping[int, PAdicRootCert] | LocalRootSystem | None = None,
) -> int:
    """lambda(d) = prod p^(m_p * a_p) over d = prod p^a_p; lambda(1) = 1.

    ``roots`` may supply precomputed certificates (mapping prime -> cert
    or a LocalRootSystem); otherwise canonical roots are derived from h.
    For bulk work across many d, use AuxFamily, which shares the root
    system.
    """
    if d < 1:
        raise DomainError("d must be >= 1")
    prov = _provider(h, roots)
    lam = 1
    for p, a in sorted(factorize(d).items()):
        lam *= p ** (prov.certificate(p, a).multiplicity * a)
    return lam


def r_of(
    h: IntPoly,
    d: int,
    roots: Mapping[int, PAdicRootCert] | LocalRootSystem | None = None,
) -> int:
    """The unique r in (-d, 0] with r ≡ z_p (mod p^a) for every p^a || d."""
    if d < 1:
        raise DomainError("d must be >= 1")
    prov = _provider(h, roots)
    residues = [(prov.certificate(p, a).residue(a), p**a) for p, a in sorted(factorize(d).items())]
    x0, _ = crt(residues)
    return x0 - d if x0 > 0 else 0


def aux_poly(h: IntPoly, d: int, selector: Selector | None = None) -> AuxPoly:
    """h_d built from canonical local roots of h (see AuxFamily)."""
    return AuxFamily(h, selector=selector, d_cap=max(_DEFAULT_D_CAP, d)).aux(d)


def verify_aux_family(
    h: IntPoly, d: int, q: int, selector: Selector | None = None
) -> AuxVerifyReport:
    """Check the six family properties for (h, d, q) with exact arithmetic."""
    cap = max(_DEFAULT_D_CAP, d * q)
    return AuxFamily(h, selector=selector, d_cap=cap).verify(d, q)
