"""Large spectra, Bohr sets, and the smoothing decomposition f = f1 + f2.

Given f: Z_N -> R and a threshold eps, the large spectrum collects the
frequencies where |f^(a)| >= eps, and the Bohr set B collects the shifts
m that barely move every such frequency: |1 - e_N(a*m)| <= eps for all a
in the spectrum.  Averaging f over differences of two elements of B,

    f1(n) = E_{m1,m2 in B} f(n + m1 - m2),

produces a smoothed part whose spectrum is pointwise dominated by f's,
whose mean equals f's, and whose complement f2 = f - f1 has uniformly
small transform: ||f2^||_inf <= 3(1+eta)eps whenever f is majorized by a
pseudorandom weight nu with |nu^(xi) - 1_{xi=0}| <= eta.

The double average is evaluated spectrally: with u the indicator of B
normalized to mean one, f1^ = f^ * |u^|^2, which the tests confirm agrees
with the literal double sum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .intpoly import DomainError
from .znfourier import FREQ, TIME, ZnFun, dft, idft

__all__ = [
    "BohrSet",
    "SmoothDiagnostics",
    "SpectrumSet",
    "bohr_set",
    "large_spectrum",
    "smooth_decompose",
]

_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class SpectrumSet:
    """Frequencies where the stored transform is at least epsilon in modulus."""

    N: int
    epsilon: float
    members: frozenset
    transform: ZnFun

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon={self.epsilon} outside (0, 1)")
        if self.transform.domain != FREQ or self.transform.N != self.N:
            raise DomainError("transform must live on the frequency side of Z_N")
        for a in self.members:
            if not 0 <= a < self.N:
                raise DomainError(f"frequency {a} outside Z_{self.N}")


@dataclass(frozen=True, eq=False)
class BohrSet:
    """Shifts m with |1 - e_N(a*m)| <= epsilon for every generator frequency."""

    N: int
    generators: SpectrumSet
    epsilon: float
    members: frozenset

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise DomainError(f"epsilon={self.epsilon} outside (0, 1)")
        # 0 always qualifies; membership is stable under negation mod N
        if 0 not in self.members:
            raise DomainError("Bohr set must contain 0")
        for m in self.members:
            if (-m) % self.N not in self.members:
                raise DomainError("Bohr set must be symmetric under negation")

    def indicator(self) -> ZnFun:
        return ZnFun.indicator(self.N, self.members)


def large_spectrum(f: ZnFun, eps: float) -> SpectrumSet:
    """Collect the frequencies a with |f^(a)| >= eps for a time-side f."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps={eps} outside (0, 1)")
    if f.domain != TIME:
        raise DomainError("large_spectrum expects a time-side function")
    fh = dft(f)
    mags = np.abs(fh.values)
    members = frozenset(int(a) for a in np.nonzero(mags >= eps)[0])
    return SpectrumSet(f.N, float(eps), members, fh)


def bohr_set(omega: SpectrumSet, eps: float) -> BohrSet:
    """Exact scan of Z_N for the shifts every generator moves by at most eps."""
    if not 0.0 < eps < 1.0:
        raise DomainError(f"eps={eps} outside (0, 1)")
    N = omega.N
    m = np.arange(N, dtype=np.int64)
    keep = np.ones(N, dtype=bool)
    for a in sorted(omega.members):
        # |1 - e_N(am)| = 2|sin(pi*a*m/N)|
        keep &= 2.0 * np.abs(np.sin(np.pi * ((a * m) % N) / N)) <= eps
    members = frozenset(int(x) for x in np.nonzero(keep)[0])
    return BohrSet(N, omega, float(eps), members)


@dataclass(frozen=True, eq=False)
class SmoothDiagnostics:
    """Measured values for the four decomposition properties.

    range_* fields are None when no majorant data was supplied; the range
    check needs eta (and the majorant, to confirm f <= nu) to mean anything.
    """

    N: int
    eps: float
    eta: float
    spectrum_size: int
    bohr_size: int
    mean_f: float
    mean_f1: float
    mean_gap: float
    mean_ok: bool
    domination_excess: float
    domination_ok: bool
    sup_f2_hat: float
    uniform_bound: float
    uniform_ok: bool
    reconstruction_gap: float
    f1_min: float
    f1_max: float
    range_bound: float | None
    range_ok: bool | None
    majorant_ok: bool | None

    def all_passed(self) -> bool:
        checks = [self.mean_ok, self.domination_ok, self.uniform_ok]
        if self.range_ok is not None:
            checks.append(self.range_ok)
        return all(checks)

    def as_dict(self) -> dict:
        return {
            "N": self.N,
            "eps": self.eps,
            "eta": self.eta,
            "spectrum_size": self.spectrum_size,
            "bohr_size": self.bohr_size,
            "mean_f": self.mean_f,
            "mean_f1": self.mean_f1,
            "mean_gap": self.mean_gap,
            "mean_ok": self.mean_ok,
            "domination_excess": self.domination_excess,
            "domination_ok": self.domination_ok,
            "sup_f2_hat": self.sup_f2_hat,
            "uniform_bound": self.uniform_bound,
            "uniform_ok": self.uniform_ok,
            "reconstruction_gap": self.reconstruction_gap,
            "f1_min": self.f1_min,
            "f1_max": self.f1_max,
            "range_bound": self.range_bound,
            "range_ok": self.range_ok,
            "majorant_ok": self.majorant_ok,
            "all_passed": self.all_passed(),
        }


def smooth_decompose(
    f: ZnFun,
    eps: float,
    nu: ZnFun | None = None,
    eta: float = 0.0,
) -> tuple[ZnFun, ZnFun, SmoothDiagnostics]:
    """Split f into a Bohr-smoothed part f1 and a uniform remainder f2.

    f must be real-valued on the time side.  nu, when given, is a majorant
    of f used only for the range diagnostic on f1; eta enters the uniform
    bound 3(1+eta)eps and the range bound 1 + (N/|B|)eta.
    """
    if f.domain != TIME:
        raise DomainError("smooth_decompose expects a time-side function")
    if eta < 0.0:
        raise DomainError(f"eta={eta} must be nonnegative")
    if np.max(np.abs(f.values.imag)) > _TOL:
        raise DomainError("smooth_decompose expects real values")

    omega = large_spectrum(f, eps)
    bohr = bohr_set(omega, eps)
    N = f.N
    size_b = len(bohr.members)

    # u = (N/|B|) 1_B has mean one, so u^(0) = 1 and |u^| <= 1 everywhere
    uh = dft(bohr.indicator())
    weight = np.abs(uh.values * (N / size_b)) ** 2
    fh = omega.transform
    f1h = fh.values * weight
    f1 = idft(ZnFun(N, f1h, FREQ))
    f1_real = f1.values.real
    f2_real = f.values.real - f1_real

    f2h = fh.values - f1h
    abs_f = np.abs(fh.values)
    excess = max(
        float(np.max(np.abs(f1h) - abs_f)),
        float(np.max(np.abs(f2h) - abs_f)),
    )
    mean_f = float(f.values.real.mean())
    mean_f1 = float(f1_real.mean())
    sup_f2 = float(np.max(np.abs(f2h)))
    bound = 3.0 * (1.0 + eta) * eps
    recon = float(np.max(np.abs(f.values.real - (f1_real + f2_real))))

    range_bound: float | None = None
    range_ok: bool | None = None
    majorant_ok: bool | None = None
    if nu is not None:
        if nu.domain != TIME or nu.N != N:
            raise DomainError("majorant must be a time-side function on the same Z_N")
        majorant_ok = bool(np.all(f.values.real <= nu.values.real + _TOL))
        range_bound = 1.0 + (N / size_b) * eta
        range_ok = bool(
            f1_real.min() >= -_TOL and f1_real.max() <= range_bound + _TOL
        )

    diag = SmoothDiagnostics(
        N=N,
        eps=float(eps),
        eta=float(eta),
        spectrum_size=len(omega.members),
        bohr_size=size_b,
        mean_f=mean_f,
        mean_f1=mean_f1,
        mean_gap=abs(mean_f - mean_f1),
        mean_ok=abs(mean_f - mean_f1) < _TOL,
        domination_excess=excess,
        domination_ok=excess < _TOL,
        sup_f2_hat=sup_f2,
        uniform_bound=bound,
        uniform_ok=sup_f2 <= bound + _TOL,
        reconstruction_gap=recon,
        f1_min=float(f1_real.min()),
        f1_max=float(f1_real.max()),
        range_bound=range_bound,
        range_ok=range_ok,
        majorant_ok=majorant_ok,
    )
    return ZnFun(N, f1_real, TIME), ZnFun(N, f2_real, TIME), diag
