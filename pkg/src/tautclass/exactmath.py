"""Exact ordered-field arithmetic and fraction-free linear algebra.

Scalars are Python ``int``/``Fraction`` (the rationals) or ``QuadExt``
(a real quadratic extension Q(sqrt(d)), embedded with sqrt(d) > 0).
Every sign is decided exactly; there is no floating point anywhere in
this module.  Determinants funnel through the integer Bareiss kernel
after clearing denominators, which keeps the many 4x4 determinants of
the product pipeline desk-sized.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations
from math import lcm
from typing import Iterable, Sequence, Union

from ._kernels import det_int, rank_int

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "QuadExt"]


class QuadExt:
    """An element a + b*sqrt(d) of Q(sqrt(d)), d a squarefree positive integer.

    Ordered by the real embedding with sqrt(d) > 0.  Immutable.
    """

    __slots__ = ("a", "b", "d")

    def __init__(self, a: Rational, b: Rational, d: int):
        if d <= 1 or not _is_squarefree(d):
            raise ValueError(f"d must be a squarefree integer > 1, got {d}")
        object.__setattr__(self, "a", Fraction(a))
        object.__setattr__(self, "b", Fraction(b))
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("QuadExt is immutable")

    def _coerce(self, other) -> "QuadExt | None":
        if isinstance(other, QuadExt):
            if other.d != self.d:
                raise ValueError("mixed quadratic fields")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadExt(other, 0, self.d)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a + o.a, self.b + o.b, self.d)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(self.a - o.a, self.b - o.b, self.d)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(o.a - self.a, o.b - self.b, self.d)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return QuadExt(
            self.a * o.a + self.b * o.b * self.d, self.a * o.b + self.b * o.a, self.d
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        norm = o.a * o.a - o.b * o.b * o.d
        if norm == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt(d))")
        return self * QuadExt(o.a / norm, -o.b / norm, self.d)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __neg__(self):
        return QuadExt(-self.a, -self.b, self.d)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if isinstance(other, QuadExt):
            return self.d == other.d and self.a == other.a and self.b == other.b
        return NotImplemented

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b, self.d))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def conjugate(self) -> "QuadExt":
        return QuadExt(self.a, -self.b, self.d)

    def __float__(self):
        return float(self.a) + float(self.b) * self.d**0.5

    def __repr__(self):
        return f"QuadExt({self.a}, {self.b}, d={self.d})"

    def __str__(self):
        return render_scalar(self)


def _is_squarefree(n: int) -> bool:
    if n <= 0:
        return False
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def _sign_rational(x: Rational) -> int:
    return (x > 0) - (x < 0)


def sign(x: Scalar) -> int:
    """Exact sign in {-1, 0, +1} under the real embedding.

    For a + b*sqrt(d) the sign is decided from the signs of a and b and
    the exact comparison of a**2 with b**2 * d.
    """
    if isinstance(x, (int, Fraction)):
        return _sign_rational(x)
    a, b = x.a, x.b
    if b == 0:
        return _sign_rational(a)
    if a == 0:
        return _sign_rational(b)
    sa, sb = _sign_rational(a), _sign_rational(b)
    if sa == sb:
        return sa
    # opposite component signs: compare |a| with |b|*sqrt(d) exactly
    cmp = _sign_rational(a * a - b * b * x.d)
    return sa if cmp > 0 else sb


def abs_scalar(x: Scalar) -> Scalar:
    return -x if sign(x) < 0 else x


def exact_div(a: Scalar, b: Scalar) -> Scalar:
    """a / b staying in Q or Q(sqrt(d)); int/int promotes to Fraction."""
    if isinstance(a, int):
        a = Fraction(a)
    return a / b


class RationalField:
    """The field Q.  Elements are ints and Fractions."""

    name = "Q"

    def zero(self) -> Fraction:
        return Fraction(0)

    def one(self) -> Fraction:
        return Fraction(1)

    def coerce(self, x) -> Fraction:
        if isinstance(x, QuadExt):
            if x.b != 0:
                raise ValueError(f"{x} is not rational")
            return x.a
        return Fraction(x)

    def from_pair(self, a: Rational, b: Rational) -> Fraction:
        if b != 0:
            raise ValueError("rational field has no sqrt generator")
        return Fraction(a)

    def parse(self, s: str) -> Fraction:
        return parse_scalar(s, self)

    def to_json(self):
        return "Q"

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"


class QuadraticField:
    """The real quadratic field Q(sqrt(d)), d squarefree > 1."""

    def __init__(self, d: int):
        if d <= 1 or not _is_squarefree(d):
            raise ValueError(f"d must be a squarefree integer > 1, got {d}")
        self.d = d
        self.name = f"Q(sqrt({d}))"

    def zero(self) -> QuadExt:
        return QuadExt(0, 0, self.d)

    def one(self) -> QuadExt:
        return QuadExt(1, 0, self.d)

    def sqrt_gen(self) -> QuadExt:
        return QuadExt(0, 1, self.d)

    def coerce(self, x) -> QuadExt:
        if isinstance(x, QuadExt):
            if x.d != self.d:
                raise ValueError("mixed quadratic fields")
            return x
        return QuadExt(Fraction(x), 0, self.d)

    def from_pair(self, a: Rational, b: Rational) -> QuadExt:
        return QuadExt(a, b, self.d)

    def parse(self, s: str) -> QuadExt:
        return self.coerce(parse_scalar(s, self))

    def to_json(self):
        return {"quad": self.d}

    def __eq__(self, other):
        return isinstance(other, QuadraticField) and other.d == self.d

    def __hash__(self):
        return hash(("quad", self.d))

    def __repr__(self):
        return f"QuadraticField({self.d})"


QQ = RationalField()

Field = Union[RationalField, QuadraticField]


def field_from_json(obj) -> Field:
    if obj == "Q":
        return QQ
    if isinstance(obj, dict) and set(obj) == {"quad"}:
        return QuadraticField(int(obj["quad"]))
    raise ValueError(f"bad field spec {obj!r}")


_RAT_RE = re.compile(r"^[+-]?\d+(/\d+)?$")
_SQRT_RE = re.compile(
    r"^(?P<a>[+-]?\d+(?:/\d+)?)?"
    r"(?P<op>[+-])?"
    r"(?:(?P<b>\d+(?:/\d+)?)\*)?sqrt\((?P<d>\d+)\)$"
)


def parse_scalar(s: str, field: Field = QQ) -> Scalar:
    """Parse "p/q" or "a+b*sqrt(d)" literals.

    Plain rationals coerce into a quadratic field when one is supplied.
    """
    s = s.strip().replace(" ", "")
    if _RAT_RE.match(s):
        return field.coerce(Fraction(s))
    m = _SQRT_RE.match(s)
    if not m:
        raise ValueError(f"cannot parse scalar literal {s!r}")
    d = int(m.group("d"))
    a = Fraction(m.group("a")) if m.group("a") else Fraction(0)
    b = Fraction(m.group("b")) if m.group("b") else Fraction(1)
    if m.group("op") == "-":
        b = -b
    elif m.group("op") is None and m.group("a") is not None:
        raise ValueError(f"missing sign between terms in {s!r}")
    if isinstance(field, QuadraticField):
        if d != field.d:
            raise ValueError(f"sqrt({d}) literal in field {field.name}")
        return QuadExt(a, b, d)
    if b == 0:
        return a
    return QuadExt(a, b, d)


def render_scalar(x: Scalar) -> str:
    """Inverse of parse_scalar, canonical form."""
    if isinstance(x, int):
        return str(x)
    if isinstance(x, Fraction):
        return str(x)
    if x.b == 0:
        return str(x.a)
    b = f"{abs(x.b)}*sqrt({x.d})"
    op = "-" if x.b < 0 else "+"
    if x.a == 0:
        return b if op == "+" else f"-{b}"
    return f"{x.a}{op}{b}"


# ---------------------------------------------------------------------------
# linear algebra
# ---------------------------------------------------------------------------


def _clear_row_denominators(row: Sequence[Rational]) -> tuple[list[int], int]:
    mult = lcm(*(Fraction(x).denominator for x in row)) if row else 1
    return [int(Fraction(x) * mult) for x in row], mult


def _det_rational(rows: Sequence[Sequence[Rational]]) -> Fraction:
    cleared = []
    denom = 1
    for row in rows:
        ints, mult = _clear_row_denominators(row)
        cleared.append(ints)
        denom *= mult
    return Fraction(det_int(cleared), denom)


def _det_generic(rows: Sequence[Sequence[Scalar]]):
    # Bareiss over the field; exact because divisions happen in a field.
    n = len(rows)
    m = [list(r) for r in rows]
    sgn = 1
    prev = None
    for k in range(n - 1):
        if not m[k][k]:
            for i in range(k + 1, n):
                if m[i][k]:
                    m[k], m[i] = m[i], m[k]
                    sgn = -sgn
                    break
            else:
                return rows[0][0] * 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if prev is None else exact_div(num, prev)
            m[i][k] = pivot * 0
        prev = pivot
    return m[n - 1][n - 1] * sgn


def determinant(rows: Sequence[Sequence[Scalar]]) -> Scalar:
    """Exact determinant of a square matrix given as rows."""
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return Fraction(1)
    if all(isinstance(x, int) for row in rows for x in row):
        return det_int([list(r) for r in rows])
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        return _det_rational(rows)
    return _det_generic(rows)


def rank(rows: Sequence[Sequence[Scalar]], ncols: int | None = None) -> int:
    """Exact rank of a matrix given as rows."""
    if not rows:
        return 0
    ncols = len(rows[0]) if ncols is None else ncols
    if all(isinstance(x, (int, Fraction)) for row in rows for x in row):
        cleared = [_clear_row_denominators(row)[0] for row in rows]
        return rank_int(cleared, ncols)
    # generic field echelon
    m = [list(r) for r in rows]
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pivot = m[rk][col]
        for i in range(rk + 1, len(m)):
            factor = exact_div(m[i][col], pivot)
            for j in range(col, ncols):
                m[i][j] = m[i][j] - factor * m[rk][j]
        rk += 1
        if rk == len(m):
            break
    return rk


def solve_square(
    columns: Sequence[Sequence[Scalar]], target: Sequence[Scalar]
) -> list[Scalar]:
    """Solve M x = target where M has the given columns; M must be invertible."""
    n = len(columns)
    rows = [[columns[j][i] for j in range(n)] for i in range(n)]
    det = determinant(rows)
    if not det:
        raise ValueError("singular system")
    out = []
    for j in range(n):
        repl = [
            [target[i] if jj == j else columns[jj][i] for jj in range(n)]
            for i in range(n)
        ]
        out.append(exact_div(determinant(repl), det))
    return out


class LinearGenericityError(ValueError):
    """A tuple of vectors failed the required genericity."""


def unique_relation(
    vectors: Sequence[Sequence[Scalar]],
) -> tuple[list[Scalar], bool]:
    """The projectively unique linear relation among n+1 vectors in K^n.

    Returns (coefficients, zero_sum).  The coefficients satisfy
    sum(c_i * v_i) = 0 with all c_i nonzero; they are normalized to
    sum 1 when the coefficient sum is nonzero, otherwise the first
    coefficient is normalized to 1 and zero_sum is True.

    Raises LinearGenericityError unless every n of the vectors are
    linearly independent.
    """
    n = len(vectors) - 1
    if n < 1 or any(len(v) != n for v in vectors):
        raise ValueError("need n+1 vectors in K^n")
    coeffs: list[Scalar] = []
    s = 1
    for i in range(n + 1):
        minor = [vectors[j] for j in range(n + 1) if j != i]
        d = determinant(minor)
        if not d:
            raise LinearGenericityError("vectors are not linearly generic")
        coeffs.append(d if s > 0 else -d)
        s = -s
    total = coeffs[0]
    for c in coeffs[1:]:
        total = total + c
    if total:
        return [exact_div(c, total) for c in coeffs], False
    first = coeffs[0]
    return [exact_div(c, first) for c in coeffs], True


def is_linearly_generic(vectors: Sequence[Sequence[Scalar]], n: int) -> bool:
    """True iff every subsequence of length <= n is linearly independent."""
    k = len(vectors)
    if any(len(v) != n for v in vectors):
        raise ValueError("ambient dimension mismatch")
    m = min(n, k)
    if m < k:
        # enough to check all subsequences of length exactly n
        for subset in combinations(range(k), m):
            if determinant([vectors[i] for i in subset]) == 0:
                return False
        return True
    return rank(list(vectors), n) == k


class Matrix:
    """Immutable exact matrix over Q or Q(sqrt(d))."""

    __slots__ = ("rows",)

    def __init__(self, rows: Iterable[Iterable[Scalar]]):
        object.__setattr__(self, "rows", tuple(tuple(r) for r in rows))
        if self.rows and any(len(r) != len(self.rows[0]) for r in self.rows):
            raise ValueError("ragged matrix")

    def __setattr__(self, *args):
        raise AttributeError("Matrix is immutable")

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.rows[0]) if self.rows else 0

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def block_diag(cls, a: "Matrix", b: "Matrix") -> "Matrix":
        n, k = a.nrows, b.nrows
        rows = [list(a.rows[i]) + [0] * k for i in range(n)]
        rows += [[0] * n + list(b.rows[i]) for i in range(k)]
        return cls(rows)

    def det(self) -> Scalar:
        return determinant(self.rows)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError("shape mismatch")
        ot = list(zip(*other.rows))
        return Matrix(
            [[_dot(row, col) for col in ot] for row in self.rows]
        )

    def apply(self, vec: Sequence[Scalar]) -> tuple[Scalar, ...]:
        if len(vec) != self.ncols:
            raise ValueError("shape mismatch")
        return tuple(_dot(row, vec) for row in self.rows)

    def inverse(self) -> "Matrix":
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        d = self.det()
        if not d:
            raise ValueError("singular matrix")
        cols = [
            solve_square(
                list(zip(*self.rows)), [1 if i == j else 0 for i in range(n)]
            )
            for j in range(n)
        ]
        return Matrix([[cols[j][i] for j in range(n)] for i in range(n)])

    def transpose(self) -> "Matrix":
        return Matrix(zip(*self.rows))

    def __neg__(self) -> "Matrix":
        return Matrix([[-x for x in row] for row in self.rows])

    def __eq__(self, other):
        return isinstance(other, Matrix) and _rows_equal(self.rows, other.rows)

    def __hash__(self):
        return hash(tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in r) for r in self.rows))

    def is_identity(self) -> bool:
        return self == Matrix.identity(self.nrows)

    def scalar_multiple_of_identity(self) -> Scalar | None:
        """The scalar c with self == c*I, or None."""
        n = self.nrows
        if n != self.ncols or n == 0:
            return None
        c = self.rows[0][0]
        for i in range(n):
            for j in range(n):
                if i == j:
                    if not _eq_scalar(self.rows[i][j], c):
                        return None
                elif self.rows[i][j]:
                    return None
        return c

    def __repr__(self):
        body = "; ".join(
            " ".join(render_scalar(x) for x in row) for row in self.rows
        )
        return f"Matrix[{body}]"

    def to_json(self) -> list[list[str]]:
        return [[render_scalar(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, rows: list[list[str]], field: Field = QQ) -> "Matrix":
        return cls([[parse_scalar(s, field) for s in row] for row in rows])


def _dot(u: Sequence[Scalar], v: Sequence[Scalar]) -> Scalar:
    acc = u[0] * v[0]
    for a, b in zip(u[1:], v[1:]):
        acc = acc + a * b
    return acc


def _eq_scalar(x: Scalar, y: Scalar) -> bool:
    return not (x - y)


def _rows_equal(r1, r2) -> bool:
    if len(r1) != len(r2):
        return False
    for a, b in zip(r1, r2):
        if len(a) != len(b):
            return False
        if any(not _eq_scalar(x, y) for x, y in zip(a, b)):
            return False
    return True


def nullspace(rows: Sequence[Sequence[Scalar]], ncols: int) -> list[tuple[Scalar, ...]]:
    """Basis of {f in K^ncols : row . f = 0 for every row}, exact."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    rk = 0
    for col in range(ncols):
        piv = None
        for i in range(rk, len(m)):
            if m[i][col]:
                piv = i
                break
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        pivot = m[rk][col]
        for i in range(len(m)):
            if i != rk and m[i][col]:
                factor = exact_div(m[i][col], pivot)
                for j in range(col, ncols):
                    m[i][j] = m[i][j] - factor * m[rk][j]
        pivots.append(col)
        rk += 1
        if rk == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec: list[Scalar] = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for r, pc in enumerate(pivots):
            vec[pc] = exact_div(-m[r][fc], m[r][pc])
        basis.append(tuple(vec))
    return basis


def vec_add(u: Sequence[Scalar], v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c: Scalar, v: Sequence[Scalar]) -> tuple[Scalar, ...]:
    return tuple(c * x for x in v)


def vec_is_zero(v: Sequence[Scalar]) -> bool:
    return all(not x for x in v)
