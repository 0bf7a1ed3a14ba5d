"""Exact arithmetic and scalar invariants for integer polynomials.

Coefficients are arbitrary-precision Python ints stored low degree first,
so ``coeffs[i]`` multiplies x**i.  Nothing here rounds.

The scalar invariants drive the auxiliary-polynomial machinery downstream:

* leading coefficient b(f);
* growth threshold B(f) = (2/|b_k|) * (|b_{k-1}| + ... + |b_0|), past which
  (1/2) b x^k <= f(x) <= (3/2) b x^k for every integer x >= B(f);
* content c(f) = gcd of the coefficients of x^1..x^k, the constant term
  deliberately excluded;
* semidiscriminant Delta(f) = a^(2k-2) * prod_{i != j} (eta_i - eta_j)^(e_i e_j)
  over the distinct complex roots eta_i with multiplicities e_i.  For
  separable f this differs from the classical discriminant only by the sign
  (-1)^(k(k-1)/2); the ordered-pair product is implemented literally and
  assembled exactly from resultants of the squarefree factors.
"""

from __future__ import annotations

import math
import operator
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class ParseError(ValueError):
    """Malformed polynomial expression; ``position`` is a 0-based offset."""

    def __init__(self, message: str, position: int) -> None:
        super().__init__(f"{message} (at position {position})")
        self.position = position


class DomainError(ValueError):
    """Input outside an operation's documented domain."""


class InexactDivision(ArithmeticError):
    """A division that should have been exact left a remainder."""


@dataclass(frozen=True)
class IntPoly:
    """Dense integer polynomial; the zero polynomial is the empty tuple.

    Instances normalize on construction (trailing zeros stripped) and are
    immutable; ring operations return new instances.
    """

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        try:
            cs = tuple(int(operator.index(c)) for c in self.coeffs)
        except TypeError as exc:
            raise DomainError(f"integer coefficients required: {exc}") from None
        while cs and cs[-1] == 0:
            cs = cs[:-1]
        object.__setattr__(self, "coeffs", cs)

    # -- constructors -------------------------------------------------

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int]) -> "IntPoly":
        return cls(tuple(coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPoly":
        return cls((c,))

    @classmethod
    def monomial(cls, power: int, coeff: int = 1) -> "IntPoly":
        if power < 0:
            raise DomainError("monomial power must be >= 0")
        return cls((0,) * power + (coeff,))

    # -- structure ----------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        """Horner evaluation reduced mod m at every step."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    # -- ring operations ----------------------------------------------

    def __add__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPoly(tuple(out))

    def __radd__(self, other: int) -> "IntPoly":
        return self.__add__(other)

    def __neg__(self) -> "IntPoly":
        return IntPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "IntPoly | int") -> "IntPoly":
        return self.__add__(-_coerce(other))

    def __rsub__(self, other: int) -> "IntPoly":
        return (-self).__add__(other)

    def __mul__(self, other: "IntPoly | int") -> "IntPoly":
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return IntPoly(())
        a, b = self.coeffs, other.coeffs
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPoly(tuple(out))

    def __rmul__(self, other: int) -> "IntPoly":
        return self.__mul__(other)

    def __pow__(self, e: int) -> "IntPoly":
        if e < 0:
            raise DomainError("negative polynomial powers are not defined")
        out = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def derivative(self) -> "IntPoly":
        return IntPoly(tuple((i + 1) * c for i, c in enumerate(self.coeffs[1:])))

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts: list[str] = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            sign = "-" if c < 0 else ("+" if parts else "")
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                body = xs if mag == 1 else f"{mag}{xs}"
            parts.append(sign + body)
        return "".join(parts)


def _coerce(v: "IntPoly | int") -> IntPoly:
    if isinstance(v, IntPoly):
        return v
    return IntPoly((int(operator.index(v)),))


ZERO = IntPoly(())
ONE = IntPoly((1,))
X = IntPoly((0, 1))


# ---------------------------------------------------------------------------
# parsing


_INT_RE = re.compile(r"[+-]?\d+")


def parse_poly(text: str) -> IntPoly:
    """Parse ``"2x^3+3x^2+x"`` or the list form ``"[a0,a1,...,ak]"``.

    Whitespace-insensitive.  Repeated powers accumulate ("x+x" is 2x).
    Non-integer coefficients and negative exponents are rejected with the
    offending position.
    """
    if not text or not text.strip():
        raise ParseError("empty polynomial expression", 0)
    if text.lstrip().startswith("["):
        return _parse_list_form(text)
    return _parse_expr_form(text)


def _parse_list_form(text: str) -> IntPoly:
    open_i = text.index("[")
    close_i = text.rfind("]")
    if close_i < open_i:
        raise ParseError("unterminated coefficient list", len(text) - 1)
    if text[close_i + 1 :].strip():
        raise ParseError("trailing input after ']'", close_i + 1)
    body = text[open_i + 1 : close_i]
    if not body.strip():
        raise ParseError("empty coefficient list", open_i + 1)
    coeffs: list[int] = []
    pos = open_i + 1
    for item in body.split(","):
        s = item.strip()
        if not _INT_RE.fullmatch(s or ""):
            raise ParseError(f"expected an integer, got {s!r}", pos)
        coeffs.append(int(s))
        pos += len(item) + 1
    return IntPoly(tuple(coeffs))


def _parse_expr_form(text: str) -> IntPoly:
    n = len(text)
    powers: dict[int, int] = {}

    def skip_ws(j: int) -> int:
        while j < n and text[j].isspace():
            j += 1
        return j

    i = skip_ws(0)
    first = True
    while i < n:
        sign = 1
        if text[i] in "+-":
            sign = -1 if text[i] == "-" else 1
            i = skip_ws(i + 1)
            if i == n:
                raise ParseError("dangling sign", i)
        elif not first:
            raise ParseError("expected '+' or '-' between terms", i)

        start = i
        while i < n and text[i].isdigit():
            i += 1
        coeff = int(text[start:i]) if i > start else None
        j = skip_ws(i)
        power = 0
        if j < n and text[j] in "xX":
            i = skip_ws(j + 1)
            power = 1
            if i < n and text[i] == "^":
                i = skip_ws(i + 1)
                d0 = i
                while i < n and text[i].isdigit():
                    i += 1
                if i == d0:
                    raise ParseError("expected exponent digits after '^'", i)
                power = int(text[d0:i])
            if coeff is None:
                coeff = 1
        elif coeff is None:
            raise ParseError("expected a coefficient or 'x'", i)
        powers[power] = powers.get(power, 0) + sign * coeff
        first = False
        i = skip_ws(i)
        if i < n and text[i] not in "+-":
            raise ParseError("expected '+' or '-' after term", i)

    top = max(powers)
    coeffs = [0] * (top + 1)
    for p, c in powers.items():
        coeffs[p] = c
    return IntPoly(tuple(coeffs))


# ---------------------------------------------------------------------------
# invariants


def evaluate(f: IntPoly, x: int) -> int:
    """Exact Horner evaluation at an integer point."""
    return f(x)


def derivative(f: IntPoly) -> IntPoly:
    return f.derivative()


def content(f: IntPoly) -> int:
    """gcd of the coefficients of x^1..x^k; the constant term is excluded."""
    if f.degree < 1:
        raise DomainError("content needs degree >= 1")
    g = 0
    for c in f.coeffs[1:]:
        g = math.gcd(g, c)
    return g


def growth_bounds(f: IntPoly) -> tuple[int, Fraction]:
    """(b, B) with b the leading coefficient and B the sandwich threshold.

    For b > 0 and every integer x >= B, (1/2) b x^k <= f(x) <= (3/2) b x^k.
    B is returned as an exact Fraction.
    """
    if f.degree < 1:
        raise DomainError("growth bounds need a nonconstant polynomial")
    b = f.leading
    tail = sum(abs(c) for c in f.coeffs[:-1])
    return b, Fraction(2 * tail, abs(b))


def affine_compose(f: IntPoly, a: int, b: int) -> IntPoly:
    """f(a x + b), expanded exactly; a must be nonzero."""
    if a == 0:
        raise DomainError("affine_compose needs a != 0")
    lin = IntPoly((b, a))
    acc = ZERO
    for c in reversed(f.coeffs):
        acc = acc * lin + c
    return acc


def scalar_divexact(f: IntPoly, n: int) -> IntPoly:
    """f / n when every coefficient is divisible by n."""
    if n == 0:
        raise DomainError("division by zero")
    out = []
    for c in f.coeffs:
        q, r = divmod(c, n)
        if r:
            raise InexactDivision(f"coefficient {c} not divisible by {n}")
        out.append(q)
    return IntPoly(tuple(out))


# ---------------------------------------------------------------------------
# gcd / exact division over Z (via exact rational arithmetic; degrees here
# are single digits, so clarity beats asymptotics)


def _to_frac_desc(f: IntPoly) -> list[Fraction]:
    return [Fraction(c) for c in reversed(f.coeffs)]


def _frac_divmod(num: list[Fraction], den: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    num = list(num)
    q: list[Fraction] = []
    dn = len(den)
    while len(num) >= dn:
        c = num[0] / den[0]
        q.append(c)
        for i in range(dn):
            num[i] -= c * den[i]
        num.pop(0)
    while num and num[0] == 0:
        num.pop(0)
    return q, num


def _primitive_from_frac_desc(desc: list[Fraction]) -> IntPoly:
    if not desc:
        return ZERO
    denom = 1
    for c in desc:
        denom = denom * c.denominator // math.gcd(denom, c.denominator)
    ints = [int(c * denom) for c in desc]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g:
        ints = [c // g for c in ints]
    if ints[0] < 0:
        ints = [-c for c in ints]
    return IntPoly(tuple(reversed(ints)))


def poly_gcd(f: IntPoly, g: IntPoly) -> IntPoly:
    """Primitive gcd over Z with positive leading coefficient."""
    if f.is_zero and g.is_zero:
        return ZERO
    a, b = _to_frac_desc(f), _to_frac_desc(g)
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    return _primitive_from_frac_desc(a)


def poly_divexact(f: IntPoly, g: IntPoly) -> IntPoly:
    """f / g when g divides f over Z; raises InexactDivision otherwise."""
    if g.is_zero:
        raise DomainError("division by the zero polynomial")
    q, r = _frac_divmod(_to_frac_desc(f), _to_frac_desc(g))
    if r:
        raise InexactDivision(f"{g} does not divide {f}")
    out: list[int] = []
    for c in q:
        if c.denominator != 1:
            raise InexactDivision(f"{g} does not divide {f} over Z")
        out.append(int(c))
    return IntPoly(tuple(reversed(out)))


# ---------------------------------------------------------------------------
# squarefree decomposition (Yun) and the semidiscriminant


@dataclass(frozen=True)
class SquarefreeDecomposition:
    """f = unit * prod g_i**e_i with g_i primitive, squarefree, pairwise
    coprime, positive leading coefficients; unit is a signed integer."""

    unit: int
    factors: tuple[tuple[IntPoly, int], ...]

    def expand(self) -> IntPoly:
        acc = IntPoly((self.unit,))
        for g, e in self.factors:
            acc = acc * g**e
        return acc

    def squarefree_part(self) -> IntPoly:
        acc = ONE
        for g, _ in self.factors:
            acc = acc * g
        return acc

    def total_multiplicity(self) -> int:
        return sum(e for _, e in self.factors)


def squarefree_decomposition(f: IntPoly) -> SquarefreeDecomposition:
    """Yun's algorithm over Z; verified by exact re-expansion."""
    if f.is_zero:
        raise DomainError("squarefree decomposition of 0 is undefined")
    cont = 0
    for c in f.coeffs:
        cont = math.gcd(cont, c)
    unit = cont if f.leading > 0 else -cont
    pp = scalar_divexact(f, unit)
    factors: list[tuple[IntPoly, int]] = []
    if pp.degree >= 1:
        d = poly_gcd(pp, pp.derivative())
        w = poly_divexact(pp, d)
        y = poly_divexact(pp.derivative(), d)
        z = y - w.derivative()
        i = 1
        while w.degree > 0:
            a = poly_gcd(w, z) if not z.is_zero else w
            if a.degree > 0:
                factors.append((a, i))
            w = poly_divexact(w, a)
            y = poly_divexact(z, a) if not z.is_zero else ZERO
            z = y - w.derivative()
            i += 1
        # leftover integer factor from non-monic bookkeeping folds into unit
        if w.degree == 0 and w.leading != 1:
            unit *= w.leading
    factors.sort(key=lambda ge: (ge[1], ge[0].degree, ge[0].coeffs))
    dec = SquarefreeDecomposition(unit, tuple(factors))
    if dec.expand() != f:
        raise InexactDivision(f"squarefree decomposition failed to re-expand {f}")
    return dec


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Res(f, g) = lc(f)^deg(g) * prod g(alpha) over roots alpha of f.

    Exact integer Sylvester determinant (fraction-free Bareiss).
    """
    if f.is_zero or g.is_zero:
        return 0
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return 1
    if n == 0:
        return g.leading**m
    if m == 0:
        return f.leading**n
    size = m + n
    fc = list(reversed(f.coeffs))
    gc = list(reversed(g.coeffs))
    rows: list[list[int]] = []
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _det_bareiss(rows)


def _det_bareiss(m: list[list[int]]) -> int:
    n = len(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * pivot - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = pivot
    return sign * m[n - 1][n - 1]


def semidiscriminant(f: IntPoly) -> int:
    """Delta(f) = a^(2k-2) * prod_{i != j} (eta_i - eta_j)^(e_i e_j).

    Distinct roots eta_i come from the squarefree factors g_i; the ordered
    product is assembled exactly from Res(g_i, g_i') and Res(g_i, g_j):

      prod_{r != s within g} (eta_r - eta_s) = Res(g, g') / lc(g)^(2d-1),
      prod over both orders across g_i, g_j
        = (-1)^(d_i d_j) Res(g_i, g_j)^2 / (lc_i^(2 d_j) lc_j^(2 d_i)).

    Always a nonzero integer.
    """
    if f.degree < 1:
        raise DomainError("semidiscriminant needs degree >= 1")
    dec = squarefree_decomposition(f)
    k = f.degree
    a = f.leading
    acc = Fraction(a) ** (2 * k - 2)
    facs = dec.factors
    for g, e in facs:
        d, c = g.degree, g.leading
        s = Fraction(resultant(g, g.derivative()), c ** (2 * d - 1))
        acc *= s ** (e * e)
    for i in range(len(facs)):
        gi, ei = facs[i]
        for j in range(i + 1, len(facs)):
            gj, ej = facs[j]
            di, dj = gi.degree, gj.degree
            r = resultant(gi, gj)
            x = Fraction(r * r, gi.leading ** (2 * dj) * gj.leading ** (2 * di))
            if (di * dj) % 2:
                x = -x
            acc *= x ** (ei * ej)
    if acc == 0 or acc.denominator != 1:
        raise InexactDivision(f"semidiscriminant assembly failed for {f}")
    return int(acc)
