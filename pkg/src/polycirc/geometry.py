"""Exact geometric primitives: rational scalars, points, and integer half-spaces.

Everything downstream (LP, cell decomposition, measures) is built on the
types here. Scalars are arbitrary-precision rationals; half-space data is
integer so hyperplane identity and lattice reasoning stay exact. No floats
enter the kernel at any point.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionMismatchError, ZeroRowError

Scalar = Fraction
Point = tuple[Fraction, ...]

LE = "LE"
GT = "GT"


def as_point(coords: Iterable) -> Point:
    """Coerce an iterable of rationals/ints into an exact Point."""
    return tuple(Fraction(c) for c in coords)


def format_scalar(x: Fraction) -> str:
    """Render an exact rational as `p` or `p/q` (always in lowest terms)."""
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_scalar(text: str) -> Fraction:
    """Parse `p` or `p/q` into an exact rational."""
    return Fraction(text.strip())


class Sign(Enum):
    """Exact classification of a point against a hyperplane a.x = b."""

    SATISFIED_STRICTLY = "satisfied-strictly"
    ON_BOUNDARY = "on-boundary"
    VIOLATED = "violated"


@dataclass(frozen=True)
class LinearInequality:
    """Half-space a.x <= b, or a.x < b when strict, with integer data.

    The coefficient vector must not be all zero: a zero row is a constant,
    not a hyperplane, and is rejected at construction.
    """

    a: tuple[int, ...]
    b: int
    strict: bool = False

    def __post_init__(self):
        a = tuple(int(c) for c in self.a)
        if not a or not any(a):
            raise ZeroRowError("zero coefficient row is not a hyperplane")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", int(self.b))

    @property
    def dim(self) -> int:
        return len(self.a)

    def lhs(self, p: Point) -> Fraction:
        if len(p) != len(self.a):
            raise DimensionMismatchError(
                f"point has dim {len(p)}, inequality has dim {len(self.a)}"
            )
        return sum((c * x for c, x in zip(self.a, p)), Fraction(0))

    def satisfied_by(self, p: Point) -> bool:
        """Membership in the half-space, honouring strictness."""
        v = self.lhs(p)
        return v < self.b if self.strict else v <= self.b

    def closed(self) -> "LinearInequality":
        """The same half-space with the boundary included."""
        if not self.strict:
            return self
        return LinearInequality(self.a, self.b, False)

    def negated(self) -> "LinearInequality":
        """The complementary half-space (De Morgan at the leaf)."""
        return LinearInequality(tuple(-c for c in self.a), -self.b, not self.strict)

    def __str__(self) -> str:
        rel = "<" if self.strict else "<="
        terms = " + ".join(f"{c}*x{i + 1}" for i, c in enumerate(self.a) if c)
        return f"{terms} {rel} {self.b}"


def eval_sign(ineq: LinearInequality, p: Point) -> Sign:
    """Classify p against the hyperplane of ineq; strictness is ignored."""
    v = ineq.lhs(p)
    if v < ineq.b:
        return Sign.SATISFIED_STRICTLY
    if v == ineq.b:
        return Sign.ON_BOUNDARY
    return Sign.VIOLATED


HyperplaneKey = tuple[tuple[int, ...], int]


def normalize_hyperplane(ineq: LinearInequality) -> tuple[HyperplaneKey, str]:
    """Canonical key for the hyperplane of ineq plus the selected side.

    The key (a', b') is scaled so gcd of all entries (b' included) is 1 and
    the first nonzero coefficient is positive. The side is LE when the
    inequality selects {a'.x <= b'} and GT when it selects {a'.x >= b'};
    strictness is not part of the key and is carried by the caller.
    """
    g = 0
    for c in ineq.a:
        g = gcd(g, abs(c))
    g = gcd(g, abs(ineq.b))
    a = tuple(c // g for c in ineq.a)
    b = ineq.b // g
    first = next(c for c in a if c)
    if first < 0:
        return ((tuple(-c for c in a), -b), GT)
    return ((a, b), LE)


@dataclass(frozen=True)
class HPolyhedron:
    """Intersection of half-spaces in fixed dimension (H-representation)."""

    dim: int
    rows: tuple[LinearInequality, ...]

    def __post_init__(self):
        rows = tuple(self.rows)
        for r in rows:
            if r.dim != self.dim:
                raise DimensionMismatchError(
                    f"row of dim {r.dim} in polyhedron of dim {self.dim}"
                )
        object.__setattr__(self, "rows", rows)

    def contains(self, p: Point) -> bool:
        return all(r.satisfied_by(p) for r in self.rows)


def box(bounds: Sequence[tuple]) -> HPolyhedron:
    """Axis-aligned box given per-coordinate (lo, hi) rational bounds.

    Rational bounds are scaled to integer rows: x_i <= p/q becomes
    q*x_i <= p.
    """
    d = len(bounds)
    rows = []
    for i, (lo, hi) in enumerate(bounds):
        lo, hi = Fraction(lo), Fraction(hi)
        e = [0] * d
        e[i] = hi.denominator
        rows.append(LinearInequality(tuple(e), hi.numerator))
        e = [0] * d
        e[i] = -lo.denominator
        rows.append(LinearInequality(tuple(e), -lo.numerator))
    return HPolyhedron(d, tuple(rows))
