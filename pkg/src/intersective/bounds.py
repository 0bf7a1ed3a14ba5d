"""Closed-form constants and thresholds for degree-k difference problems.

Everything here is a direct evaluation of a printed formula.  Constants
that no printed formula pins down (the c1 in the density lower bound, the
implied constants in asymptotic comparisons) are caller-supplied parameters
defaulting to 1, and outputs involving them are shape-only: the growth
shape is right, the vertical scale is not calibrated.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .intpoly import DomainError

__all__ = [
    "BoundProfile",
    "DensityThresholds",
    "density_thresholds",
    "lucier_c",
    "profile",
    "theta",
]

# below exp(exp(e)) the quadruple logarithm is nonpositive
_MIN_ITERATED_N = math.exp(math.exp(math.e))


def _mu(k: int) -> int:
    return 3 if k == 2 else 2


@dataclass(frozen=True)
class BoundProfile:
    """The named constants attached to degree k.

    Exact fields stay Fraction (s0 aside, which is an integer); rho and
    kappa1 degrade to floats for k >= 3 where the defining formula is
    transcendental.
    """

    k: int
    mu: int
    s0: int
    rho: object
    kappa1: object
    kappa2: Fraction
    kappa: object
    q_low: Fraction
    q_high: Fraction

    def as_dict(self) -> dict:
        def enc(v):
            return str(v) if isinstance(v, Fraction) else float(v)

        return {
            "k": self.k,
            "mu": self.mu,
            "s0": self.s0,
            "rho": enc(self.rho),
            "kappa1": enc(self.kappa1),
            "kappa2": enc(self.kappa2),
            "kappa": enc(self.kappa),
            "q_low": enc(self.q_low),
            "q_high": enc(self.q_high),
        }


def profile(k: int) -> BoundProfile:
    """Evaluate every named constant at degree k >= 2."""
    if k < 2:
        raise DomainError(f"degree must be >= 2, got {k}")
    s0 = k * 2 ** (k + 1)
    if k == 2:
        rho: object = Fraction(1, 4)
        kappa1: object = Fraction(1, 4) / (16 * k * k)
    else:
        rho = 1.0 / (8 * k * k * (math.log(k) + 1.5 * math.log(math.log(k)) + 4.2))
        kappa1 = rho / (16 * k * k)
    kappa2 = Fraction(1, k)
    kappa = kappa1 if kappa1 < kappa2 else kappa2
    out = BoundProfile(
        k=k,
        mu=_mu(k),
        s0=s0,
        rho=rho,
        kappa1=kappa1,
        kappa2=kappa2,
        kappa=kappa,
        q_low=Fraction(2),
        q_high=Fraction(4 * s0, 2 * s0 - 1),
    )
    assert out.q_high > 2  # 4*s0 > 2*(2*s0 - 1) always
    return out


def lucier_c(k: int, delta: float, c1: float = 1.0) -> float:
    """exp(-c1 * delta^-(k-1) * log^mu(2/delta)): the density-dependent
    factor in the weighted-count lower bound.  Shape-only unless the
    caller knows the true c1 for their polynomial."""
    if k < 2:
        raise DomainError(f"degree must be >= 2, got {k}")
    if not 0.0 < delta < 1.0:
        raise DomainError(f"delta={delta} outside (0, 1)")
    if c1 <= 0.0:
        raise DomainError(f"c1={c1} must be positive")
    return math.exp(-c1 * delta ** (-(k - 1)) * math.log(2.0 / delta) ** _mu(k))


def theta(x: float, k: int) -> float:
    """Density-increment step size: x/(2 log(2/x)) in degree 2, x^(k-1) above."""
    if k < 2:
        raise DomainError(f"degree must be >= 2, got {k}")
    if not 0.0 < x < 1.0:
        raise DomainError(f"x={x} outside (0, 1)")
    if k == 2:
        return x / (2.0 * math.log(2.0 / x))
    return x ** (k - 1)


@dataclass(frozen=True)
class DensityThresholds:
    """Shape-only evaluations of the three printed density thresholds.

    integer_threshold: largest size of a difference-free subset of [N]
    guaranteed to contain a pattern (power-saving in log N).
    sparse_threshold: the iterated-log bound for squares.
    relative_threshold: the relative density inside the primes at which
    the transference argument applies.
    """

    N: float
    k: int
    integer_threshold: float
    sparse_threshold: float
    relative_threshold: float

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "k": self.k,
            "integer_threshold": self.integer_threshold,
            "sparse_threshold": self.sparse_threshold,
            "relative_threshold": self.relative_threshold,
            "shape_only": True,
        }


def density_thresholds(N: float, k: int) -> DensityThresholds:
    """Evaluate the three density-threshold shapes at N (constants set to 1)."""
    if k < 2:
        raise DomainError(f"degree must be >= 2, got {k}")
    if N <= _MIN_ITERATED_N:
        raise DomainError(
            "triple logarithm log log log N must exceed 1; "
            f"need N > exp(exp(e)) ~ {_MIN_ITERATED_N:.1f}, got {N}"
        )
    l1 = math.log(N)
    l2 = math.log(l1)
    l3 = math.log(l2)
    l4 = math.log(l3)
    mu = _mu(k)
    integer = N * l2 ** (mu / (k - 1)) / l1 ** (1.0 / (k - 1))
    sparse = N * l1 ** (-0.25 * l4)
    relative = l4 ** (mu / (k - 1)) / l3 ** (1.0 / (k - 1))
    return DensityThresholds(
        N=float(N),
        k=k,
        integer_threshold=integer,
        sparse_threshold=sparse,
        relative_threshold=relative,
    )
