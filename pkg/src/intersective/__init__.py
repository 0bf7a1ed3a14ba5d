"""Intersective polynomials and prime difference experiments.

Exact integer-polynomial invariants, p-adic root certificates, the
auxiliary polynomial family h_d(x) = h(r_d + d x) / lambda(d), Fourier
analysis on Z_N, Bohr-set smoothing, Chen prime classification, and the
W-trick search for prime pairs p1 - p2 = h(n).
"""

from __future__ import annotations

__version__ = "0.1.0"

from .intpoly import (
    DomainError,
    InexactDivision,
    IntPoly,
    ParseError,
    affine_compose,
    content,
    growth_bounds,
    parse_poly,
    semidiscriminant,
    squarefree_decomposition,
)
from .localroots import (
    IntersectivityVerdict,
    LocalRootSystem,
    NoLocalRoot,
    PAdicRootCert,
    check_intersective,
    lift_roots,
    roots_mod,
    select_padic_root,
)
from .auxfamily import AuxFamily, AuxPoly, aux_poly, lambda_of, r_of, verify_aux_family

__all__ = [
    "AuxFamily",
    "AuxPoly",
    "DomainError",
    "InexactDivision",
    "IntPoly",
    "IntersectivityVerdict",
    "LocalRootSystem",
    "NoLocalRoot",
    "PAdicRootCert",
    "ParseError",
    "affine_compose",
    "aux_poly",
    "check_intersective",
    "content",
    "growth_bounds",
    "lambda_of",
    "lift_roots",
    "parse_poly",
    "r_of",
    "roots_mod",
    "select_padic_root",
    "semidiscriminant",
    "squarefree_decomposition",
    "verify_aux_family",
]
