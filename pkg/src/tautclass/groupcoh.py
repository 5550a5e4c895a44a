"""Bar-complex group cohomology for the projective line over Q.

The explicit 2-cocycle sends a homogeneous triple (g0, g1, g2) and a
basepoint vector u to the square-class symbol of
det(g0 u, g1 u) det(g1 u, g2 u) det(g2 u, g0 u); coincident projective
points yield the zero element.  Matrices represent classes up to sign,
and every evaluation is invariant under changing lifts, which tests
assert.  Surface representations produce bar 2-cycles matching the
fundamental cycles of the one-vertex surface complexes, which bridges
the group-cohomology picture and the bundle pipeline.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .complexes import surface_complex
from .exactmath import Matrix, Scalar, determinant, sign, vec_is_zero
from .flatbundles import bundle_from_surface_rep
from .witt import WittElement

Vector = Sequence[Scalar]
Cocycle = Callable[[Matrix, Matrix, Matrix, Vector], WittElement]


def _proportional(u: Vector, v: Vector) -> bool:
    return not determinant([tuple(u), tuple(v)])


def witt_cocycle(g0: Matrix, g1: Matrix, g2: Matrix, u: Vector) -> WittElement:
    """The Witt-valued group 2-cocycle at a homogeneous triple.

    Zero when any two of the three points [g_i u] coincide; otherwise
    the triple symbol of the three image vectors.
    """
    if vec_is_zero(u):
        raise ValueError("basepoint vector must be nonzero")
    pts = [g.apply(tuple(u)) for g in (g0, g1, g2)]
    for i in range(3):
        for j in range(i + 1, 3):
            if _proportional(pts[i], pts[j]):
                return WittElement.zero()
    from .configs import witt_triple_symbol

    return witt_triple_symbol(*pts)


def cocycle_identity_residual(
    gs: Sequence[Matrix], u: Vector, cocycle: Cocycle = witt_cocycle
) -> WittElement:
    """Alternating sum of the cocycle over the faces of a 4-tuple.

    Always Witt-zero; computing it lets tests assert exactly that, in
    particular through configurations with one coincident point pair.
    """
    if len(gs) != 4:
        raise ValueError("need a quadruple")
    acc = WittElement.zero()
    for i in range(4):
        face = [g for j, g in enumerate(gs) if j != i]
        term = cocycle(*face, u)
        acc = acc + (term if i % 2 == 0 else -term)
    return acc


def psl_equal(a: Matrix, b: Matrix) -> bool:
    """Equality in PSL(2, Q): equal up to sign."""
    return a == b or a == -b


def psl_canonical(m: Matrix) -> Matrix:
    """Sign-normalized lift: first nonzero entry positive."""
    for row in m.rows:
        for x in row:
            s = sign(x)
            if s < 0:
                return -m
            if s > 0:
                return m
    return m


@dataclass
class BarChain2:
    """An integer combination of homogeneous triples of PSL(2,Q) matrices."""

    terms: list[tuple[int, tuple[Matrix, Matrix, Matrix]]]

    def __add__(self, other: "BarChain2") -> "BarChain2":
        return BarChain2(self.terms + other.terms)

    def __neg__(self) -> "BarChain2":
        return BarChain2([(-c, t) for c, t in self.terms])

    def boundary_classes(self) -> dict:
        """Coefficients of the bar boundary on coinvariant pair classes.

        The pair (a, b) is G-equivalent to (1, a^-1 b); the returned map
        sends the sign-normalized value of a^-1 b to its total
        coefficient.  An empty map means the chain is a 2-cycle.
        """
        out: dict = {}
        for c, (g0, g1, g2) in self.terms:
            for s, (a, b) in (
                (1, (g1, g2)),
                (-1, (g0, g2)),
                (1, (g0, g1)),
            ):
                key = psl_canonical(a.inverse() @ b)
                out[key] = out.get(key, 0) + s * c
        return {k: v for k, v in out.items() if v != 0}

    def is_cycle(self) -> bool:
        return not self.boundary_classes()

    def to_json(self) -> list:
        return [
            {"coeff": c, "triple": [g.to_json() for g in triple]}
            for c, triple in self.terms
        ]


def evaluate_bar(cocycle: Cocycle, chain: BarChain2, u: Vector) -> WittElement:
    """Linear extension of a cocycle over a bar 2-chain."""
    acc = WittElement.zero()
    for c, (g0, g1, g2) in chain.terms:
        acc = acc + cocycle(g0, g1, g2, u).scale(c)
    return acc


def commuting_pair_cycle(g: Matrix, h: Matrix) -> BarChain2:
    """The bar 2-cycle (1, g, gh) - (1, h, hg) of a commuting pair."""
    gh = g @ h
    if not psl_equal(gh, h @ g):
        raise ValueError("matrices do not commute in PSL(2, Q)")
    one = Matrix.identity(g.nrows)
    return BarChain2([(1, (one, g, gh)), (-1, (one, h, h @ g))])


def surface_cycle_from_rep(genus: int, matrices: Sequence[Matrix]) -> BarChain2:
    """Bar 2-cycle of a surface representation.

    One homogeneous triple of corner-to-base transports per triangle of
    the one-vertex surface model, weighted by the fundamental cycle's
    coefficients.
    """
    sc, fundamental = surface_complex(genus)
    bundle = bundle_from_surface_rep(sc, list(matrices), tag="SL")
    terms = []
    for sid, c in sorted(fundamental.coeffs.items()):
        triple = tuple(bundle.transport_to_base(2, sid, i) for i in range(3))
        terms.append((c, triple))
    return BarChain2(terms)
