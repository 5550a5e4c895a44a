"""Symbol calculus on generic projective configurations.

A generic (n+1)-tuple of points of P^{n-1} (or of the positive
projective space P_+^{n-1}) carries a canonical symbol: a sign for the
plain projective space, and a leading sign plus n coefficient signs for
the positive one.  Canonicalization rewrites the latter into the free
basis {a+ : 0 <= a <= floor(n/2)} (ascending a).  Alternating face sums
of these symbols are the quantities whose vanishing the test-suite
checks wholesale.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Literal, Sequence

from .exactmath import (
    Scalar,
    abs_scalar,
    determinant,
    exact_div,
    is_linearly_generic,
    sign,
    solve_square,
)
from .witt import WittElement

Point = Sequence[Scalar]


class GenericityError(ValueError):
    """A point tuple failed the genericity required by a symbol."""


def proj_normalize(v: Point) -> tuple[Scalar, ...]:
    """Canonical lift of a point of P^{n-1}: first nonzero coordinate 1."""
    for x in v:
        if x:
            return tuple(exact_div(y, x) for y in v)
    raise ValueError("zero vector does not define a projective point")


def pplus_normalize(v: Point) -> tuple[Scalar, ...]:
    """Canonical lift of a point of P_+^{n-1}: first nonzero coordinate +-1."""
    for x in v:
        if x:
            a = abs_scalar(x)
            return tuple(exact_div(y, a) for y in v)
    raise ValueError("zero vector does not define a projective point")


def is_generic_tuple(points: Sequence[Point], n: int | None = None) -> bool:
    """Every subsequence of lifts of length <= n linearly independent."""
    if not points:
        return True
    n = len(points[0]) if n is None else n
    return is_linearly_generic(list(points), n)


@dataclass(frozen=True)
class USymbol:
    """Value in the sign coefficient group of P^{n-1} tuples, n even: c * [+]."""

    n: int
    coefficient: int

    def __post_init__(self):
        if self.n % 2:
            raise ValueError("the coefficient group is zero for odd n")

    def __add__(self, other: "USymbol") -> "USymbol":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return USymbol(self.n, self.coefficient + other.coefficient)

    def __neg__(self) -> "USymbol":
        return USymbol(self.n, -self.coefficient)

    def __str__(self):
        c = self.coefficient
        if c == 0:
            return "0"
        if c == 1:
            return "[+]"
        if c == -1:
            return "-[+]"
        return f"{c}*[+]"


@dataclass(frozen=True)
class RawPlusSymbol:
    """Uncanonicalized symbol [s; s_1 ... s_n] of a positive-space tuple."""

    leading: int
    tail: tuple[int, ...]

    def __post_init__(self):
        if self.leading not in (-1, 1) or any(s not in (-1, 1) for s in self.tail):
            raise ValueError("signs must be +-1")

    @property
    def n(self) -> int:
        return len(self.tail)

    def __str__(self):
        lead = "+" if self.leading > 0 else "-"
        tail = "".join("+" if s > 0 else "-" for s in self.tail)
        return f"[{lead};{tail}]"


@dataclass(frozen=True)
class UPlusSymbol:
    """Canonical coefficients on the basis {a+ : a = 0..floor(n/2)}."""

    n: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if len(self.coefficients) != self.n // 2 + 1:
            raise ValueError("coefficient vector has wrong length")

    @classmethod
    def zero(cls, n: int) -> "UPlusSymbol":
        return cls(n, (0,) * (n // 2 + 1))

    @classmethod
    def basis(cls, n: int, a: int, coeff: int = 1) -> "UPlusSymbol":
        v = [0] * (n // 2 + 1)
        v[a] = coeff
        return cls(n, tuple(v))

    def __add__(self, other: "UPlusSymbol") -> "UPlusSymbol":
        if other.n != self.n:
            raise ValueError("dimension mismatch")
        return UPlusSymbol(
            self.n, tuple(a + b for a, b in zip(self.coefficients, other.coefficients))
        )

    def __neg__(self) -> "UPlusSymbol":
        return UPlusSymbol(self.n, tuple(-a for a in self.coefficients))

    def scale(self, m: int) -> "UPlusSymbol":
        return UPlusSymbol(self.n, tuple(m * a for a in self.coefficients))

    def is_zero(self) -> bool:
        return all(a == 0 for a in self.coefficients)

    def to_json(self) -> list[int]:
        return list(self.coefficients)

    def __str__(self):
        parts = []
        for a, c in enumerate(self.coefficients):
            if c:
                parts.append(f"{c}*{a}+" if c != 1 else f"{a}+")
        return " + ".join(parts) if parts else "0"


def _relation_coefficients(points: Sequence[Point]) -> tuple[Scalar, list[Scalar]]:
    """det(v_1..v_n) and the coefficients of v_{n+1} = sum a_i v_i."""
    n = len(points) - 1
    basis = [tuple(p) for p in points[:n]]
    det = determinant(basis)
    if not det:
        raise GenericityError("first n lifts are linearly dependent")
    coeffs = solve_square(list(basis), tuple(points[n]))
    return det, coeffs


def u_symbol(points: Sequence[Point]) -> USymbol:
    """Orbit symbol of a generic (n+1)-tuple in P^{n-1}, n even.

    Equals sgn(det(v_1,...,v_n) * a_1 * ... * a_n) on the generator [+],
    where v_{n+1} = sum a_i v_i.
    """
    n = len(points) - 1
    if n % 2:
        raise ValueError("u_symbol needs even n")
    if any(len(p) != n for p in points):
        raise ValueError(f"need n+1 points of P^{n - 1}")
    det, coeffs = _relation_coefficients(points)
    s = sign(det)
    for c in coeffs:
        sc = sign(c)
        if sc == 0:
            raise GenericityError("tuple is not generic")
        s *= sc
    return USymbol(n, s)


def uplus_raw_symbol(points: Sequence[Point]) -> RawPlusSymbol:
    """Symbol [s; s_1..s_n] of a generic (n+1)-tuple in P_+^{n-1}.

    Independent of the choice of positive-scalar lifts.
    """
    n = len(points) - 1
    if any(len(p) != n for p in points):
        raise ValueError(f"need n+1 points of P_+^{n - 1}")
    det, coeffs = _relation_coefficients(points)
    tail = []
    for c in coeffs:
        sc = sign(c)
        if sc == 0:
            raise GenericityError("tuple is not generic")
        tail.append(sc)
    return RawPlusSymbol(sign(det), tuple(tail))


def uplus_canonicalize(raw: RawPlusSymbol) -> UPlusSymbol:
    """Write a raw symbol in the basis {a+}.

    Rule order (the two relations commute, which tests assert): first
    flip a negative leading sign via a- = -(a+), then fold a from above
    the midpoint via a+ = -(n+1-a)+.  For odd n the midpoint class is
    2-torsion and dies: the result is 0.
    """
    n = raw.n
    a = sum(1 for s in raw.tail if s > 0)
    coeff = 1
    if raw.leading < 0:
        coeff = -coeff
    if n % 2 and 2 * a == n + 1:
        return UPlusSymbol.zero(n)
    if a > n // 2:
        coeff = -coeff
        a = n + 1 - a
    return UPlusSymbol.basis(n, a, coeff)


def uplus_symbol(points: Sequence[Point]) -> UPlusSymbol:
    return uplus_canonicalize(uplus_raw_symbol(points))


def witt_triple_symbol(u: Point, v: Point, w: Point) -> WittElement:
    """<det(u,v) det(v,w) det(w,u)> for pairwise independent u,v,w in Q^2."""
    d1 = determinant([tuple(u), tuple(v)])
    d2 = determinant([tuple(v), tuple(w)])
    d3 = determinant([tuple(w), tuple(u)])
    prod = Fraction(d1) * Fraction(d2) * Fraction(d3)
    if prod == 0:
        raise GenericityError("triple contains a linearly dependent pair")
    return WittElement.symbol(prod)


Mode = Literal["P", "P+", "witt"]


def boundary_symbol_sum(points: Sequence[Point], mode: Mode):
    """Alternating sum of face symbols of a generic (n+2)-tuple.

    Returns an integer coefficient (mode "P"), a UPlusSymbol (mode
    "P+"), or a WittElement (mode "witt", n = 2).  The boundary
    relations are trivial, so the result is always zero; computing it
    lets tests assert exactly that.
    """
    n = len(points) - 2
    if not is_generic_tuple(points, n):
        raise GenericityError("tuple is not generic")
    if mode == "P":
        total = 0
        for j in range(len(points)):
            face = [p for i, p in enumerate(points) if i != j]
            term = u_symbol(face).coefficient
            total += term if j % 2 == 0 else -term
        return total
    if mode == "P+":
        total = UPlusSymbol.zero(n)
        for j in range(len(points)):
            face = [p for i, p in enumerate(points) if i != j]
            term = uplus_symbol(face)
            total = total + (term if j % 2 == 0 else -term)
        return total
    if mode == "witt":
        if n != 2:
            raise ValueError("witt mode needs 2-dimensional lifts")
        total = WittElement.zero()
        for j in range(len(points)):
            face = [p for i, p in enumerate(points) if i != j]
            term = witt_triple_symbol(*face)
            total = total + (term if j % 2 == 0 else -term)
        return total
    raise ValueError(f"unknown mode {mode!r}")


def homological_core_check(c: UPlusSymbol) -> bool:
    """True iff sum_a c_a * (n - 2a + 1) = 0.

    This is membership in the kernel of the induced boundary map, the
    subgroup where all values on cycles must land.
    """
    n = c.n
    return sum(ca * (n - 2 * a + 1) for a, ca in enumerate(c.coefficients)) == 0
