"""The Witt group of Q with a complete, exact equality decision.

Elements are integer combinations of square classes of Q (squarefree
integers).  Zero-testing goes through the classical invariants of the
associated diagonal form: dimension parity, signature, discriminant and
Hasse invariants at the relevant places, computed with the convention
eps(q) = prod_{i<j} (a_i, a_j)_p.

Over a real quadratic field only the two real signatures are exposed;
anything they cannot decide is reported as undecided.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Iterable, Union

from .exactmath import QuadExt, sign

Rational = Union[int, Fraction]

DEFAULT_FACTOR_BOUND = 10**6


class FactorizationError(ArithmeticError):
    """Trial division hit the configured bound before finishing."""


class SenselessSymbolError(ValueError):
    """The symbol <0> has no meaning in the group of square classes."""


def _factorize(n: int, bound: int) -> dict[int, int]:
    """Prime factorization of n > 0 by trial division up to bound."""
    out: dict[int, int] = {}
    p = 2
    while p * p <= n and p <= bound:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        root = _isqrt(n)
        if root * root == n:
            # even exponents never influence a square class, so the root
            # need not be certified prime here
            out[root] = out.get(root, 0) + 2
        elif n <= bound * bound:
            # all factors <= bound were removed, so a composite here would
            # have a factor <= sqrt(n) <= bound: n is prime
            out[n] = out.get(n, 0) + 1
        else:
            raise FactorizationError(f"cofactor {n} exceeds bound {bound}")
    return out


def _isqrt(n: int) -> int:
    import math

    return math.isqrt(n)


def square_class(q: Rational, bound: int = DEFAULT_FACTOR_BOUND) -> int:
    """The unique squarefree integer in q * (Q*)^2.  Errors on q = 0."""
    q = Fraction(q)
    if q == 0:
        raise SenselessSymbolError("the symbol <0> is senseless")
    n = abs(q.numerator * q.denominator)
    out = 1
    for p, e in _factorize(n, bound).items():
        if e % 2:
            out *= p
    return out if q > 0 else -out


def _val_unit(q: Fraction, p: int) -> tuple[int, Fraction]:
    """p-adic valuation and unit part of a nonzero rational."""
    num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return v, Fraction(num, den)


def _legendre(u: Fraction, p: int) -> int:
    """Legendre symbol of a p-adic unit modulo an odd prime p."""
    a = (u.numerator * u.denominator) % p
    t = pow(a, (p - 1) // 2, p)
    return -1 if t == p - 1 else 1


def _mod8(u: Fraction) -> int:
    # for odd den, den^2 = 1 mod 8, so num*den represents u mod 8
    return (u.numerator * u.denominator) % 8


def hilbert_symbol(a: Rational, b: Rational, place) -> int:
    """The Hilbert symbol (a, b) at a finite prime or at infinity.

    place is a prime number or the string "inf".
    """
    a, b = Fraction(a), Fraction(b)
    if a == 0 or b == 0:
        raise ValueError("Hilbert symbol needs nonzero arguments")
    if place == "inf":
        return -1 if (a < 0 and b < 0) else 1
    p = place
    if not isinstance(p, int) or p < 2 or any(p % q == 0 for q in range(2, _isqrt(p) + 1)):
        raise ValueError(f"place must be a prime or 'inf', got {place!r}")
    alpha, u = _val_unit(a, p)
    beta, v = _val_unit(b, p)
    if p != 2:
        out = 1
        if (alpha * beta) % 2 and (p - 1) // 2 % 2:
            out = -out
        if beta % 2 and _legendre(u, p) < 0:
            out = -out
        if alpha % 2 and _legendre(v, p) < 0:
            out = -out
        return out
    eps_u = (_mod8(u) % 4 - 1) // 2  # 0 for u=1 mod 4, 1 for u=3 mod 4
    eps_v = (_mod8(v) % 4 - 1) // 2
    omega_u = 0 if _mod8(u) in (1, 7) else 1
    omega_v = 0 if _mod8(v) in (1, 7) else 1
    exponent = eps_u * eps_v + alpha * omega_v + beta * omega_u
    return -1 if exponent % 2 else 1


class WittElement:
    """An element of W(Q): a finite Z-combination of square classes."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Iterable[tuple[int, int]] = ()):
        acc: dict[int, int] = {}
        for rep, mult in terms:
            if rep == 0:
                raise SenselessSymbolError("the symbol <0> is senseless")
            rep = square_class(rep)
            acc[rep] = acc.get(rep, 0) + mult
        object.__setattr__(
            self,
            "_terms",
            tuple(sorted((r, m) for r, m in acc.items() if m != 0)),
        )

    def __setattr__(self, *args):
        raise AttributeError("WittElement is immutable")

    @classmethod
    def symbol(cls, q: Rational) -> "WittElement":
        """The generator <q>, canonicalized to its square class."""
        return cls([(square_class(q), 1)])

    @classmethod
    def zero(cls) -> "WittElement":
        return cls()

    @property
    def terms(self) -> tuple[tuple[int, int], ...]:
        return self._terms

    def __add__(self, other: "WittElement") -> "WittElement":
        return WittElement(list(self._terms) + list(other._terms))

    def __neg__(self) -> "WittElement":
        return WittElement([(r, -m) for r, m in self._terms])

    def __sub__(self, other: "WittElement") -> "WittElement":
        return self + (-other)

    def scale(self, m: int) -> "WittElement":
        return WittElement([(r, k * m) for r, k in self._terms])

    def __eq__(self, other):
        if not isinstance(other, WittElement):
            return NotImplemented
        return (self - other).is_zero()

    def __hash__(self):
        raise TypeError("WittElement equality is up to Witt equivalence; unhashable")

    def diagonal_entries(self) -> list[int]:
        """Diagonal form entries; negative multiplicity contributes <-rep>."""
        out = []
        for rep, mult in self._terms:
            entry = rep if mult > 0 else -rep
            out.extend([entry] * abs(mult))
        return out

    def dimension(self) -> int:
        return sum(abs(m) for _, m in self._terms)

    def signature(self) -> int:
        return sum(m * sign(r) for r, m in self._terms)

    def discriminant(self) -> int:
        """Square class of the product of the diagonal entries."""
        prod = 1
        for e in self.diagonal_entries():
            prod *= e
        return square_class(prod) if prod else 1

    def relevant_places(self) -> list:
        primes = {2}
        for e in self.diagonal_entries():
            for p in _factorize(abs(e), DEFAULT_FACTOR_BOUND):
                primes.add(p)
        return sorted(primes)

    def hasse_invariant(self, p) -> int:
        entries = self.diagonal_entries()
        out = 1
        for i in range(len(entries)):
            for j in range(i + 1, len(entries)):
                out *= hilbert_symbol(entries[i], entries[j], p)
        return out

    def is_zero(self) -> bool:
        """Exact Witt-triviality over Q via the classical invariants."""
        entries = self.diagonal_entries()
        n = len(entries)
        if n == 0:
            return True
        if n % 2:
            return False
        if self.signature() != 0:
            return False
        m = n // 2
        if self.discriminant() != square_class((-1) ** m):
            return False
        hyp_exp = (m * (m - 1) // 2) % 2
        for p in self.relevant_places():
            hyperbolic = hilbert_symbol(-1, -1, p) ** hyp_exp
            if self.hasse_invariant(p) != hyperbolic:
                return False
        return True

    def invariants(self) -> dict:
        """Signature, discriminant and Hasse data, for reports."""
        return {
            "dimension": self.dimension(),
            "signature": self.signature(),
            "discriminant": self.discriminant(),
            "hasse": {str(p): self.hasse_invariant(p) for p in self.relevant_places()},
            "is_zero": self.is_zero(),
        }

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"{m}*<{r}>" for r, m in self._terms)

    def to_json(self) -> list[list[int]]:
        return [[r, m] for r, m in self._terms]

    @classmethod
    def from_json(cls, data) -> "WittElement":
        if isinstance(data, str):
            data = json.loads(data)
        return cls([(int(r), int(m)) for r, m in data])

    def __repr__(self):
        return f"WittElement({self.to_text()})"


def witt_add(w1: WittElement, w2: WittElement) -> WittElement:
    return w1 + w2


def witt_negate(w: WittElement) -> WittElement:
    return -w


def witt_scale(w: WittElement, m: int) -> WittElement:
    return w.scale(m)


def witt_is_zero(w: WittElement) -> bool:
    return w.is_zero()


def signature(w: WittElement) -> int:
    return w.signature()


# ---------------------------------------------------------------------------
# real quadratic fields: only the two real signatures are decidable here
# ---------------------------------------------------------------------------


def quad_signatures(symbols: Iterable[tuple[QuadExt, int]]) -> tuple[int, int]:
    """Signatures of a combination of symbols <x> under both embeddings."""
    s1 = s2 = 0
    for x, mult in symbols:
        if not x:
            raise SenselessSymbolError("the symbol <0> is senseless")
        s1 += mult * sign(x)
        s2 += mult * sign(x.conjugate())
    return s1, s2


def quad_witt_is_zero(symbols: Iterable[tuple[QuadExt, int]]) -> bool | None:
    """False when a real signature obstructs vanishing, else None (undecided)."""
    s1, s2 = quad_signatures(symbols)
    if s1 != 0 or s2 != 0:
        return False
    return None
