"""Single-polyhedron oracles: exact volume, lattice count, integer feasibility.

These are deliberately simple exact methods, exponential in the (fixed,
small) dimension:

* volume: vertex enumeration, then a recursive fan triangulation pulled
  from the lexicographically smallest vertex, summing |det|/d! per simplex;
* lattice count: Fourier-Motzkin elimination once per polytope, then
  integer range enumeration level by level (all integer arithmetic);
* integer feasibility: LP-guided search that rounds the relaxation point,
  branches on a bounded coordinate, reduces along a constraint normal with
  a pinned or bounded value range via unimodular lattice substitution, and
  finally falls back to a doubling bounding box with a hard cap.

Each oracle can be swapped for an external program through a line-oriented
process protocol (see PluginBackend).
"""

from __future__ import annotations

import itertools
import subprocess
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial, floor
from typing import Callable, Optional, Sequence

from .errors import IlpIncompleteError, UnboundedPolytopeError
from .geometry import HPolyhedron, LinearInequality, Point, as_point, format_scalar
from .linalg import det_fraction, rank
from .lp import LpStatus, enumerate_vertices, is_bounded, solve_lp

ILP_BOX_CAP = 2**30


# ---------------------------------------------------------------------------
# volume


def _affine_rank(points: Sequence[Point]) -> int:
    if len(points) <= 1:
        return 0
    p0 = points[0]
    return rank([[x - y for x, y in zip(p, p0)] for p in points[1:]])


def _fan(points: list[Point], adim: int, rows: Sequence[LinearInequality]):
    """Triangulate a face (given by its vertices) by pulling from its min vertex."""
    if adim == 0:
        return [(points[0],)]
    apex = points[0]
    simplices = []
    seen = set()
    for r in rows:
        tight = [v for v in points if r.lhs(v) == r.b]
        if not tight or apex in tight:
            continue
        fs = frozenset(tight)
        if fs in seen:
            continue
        seen.add(fs)
        if _affine_rank(tight) != adim - 1:
            continue
        for sub in _fan(sorted(tight), adim - 1, rows):
            simplices.append((apex,) + sub)
    return simplices


def polytope_volume(poly: HPolyhedron) -> Fraction:
    """Exact volume of a bounded polyhedron (0 when empty or lower-dimensional)."""
    verts = enumerate_vertices(poly.rows, poly.dim)
    if len(verts) < poly.dim + 1:
        return Fraction(0)
    if _affine_rank(verts) < poly.dim:
        return Fraction(0)
    total = Fraction(0)
    for s in _fan(list(verts), poly.dim, poly.rows):
        mat = [[x - y for x, y in zip(v, s[0])] for v in s[1:]]
        total += abs(det_fraction(mat))
    return total / factorial(poly.dim)


# ---------------------------------------------------------------------------
# lattice counting


def _reduce_row(a: tuple[int, ...], b: int):
    from math import gcd

    g = 0
    for c in a:
        g = gcd(g, abs(c))
    g = gcd(g, abs(b))
    if g > 1:
        return tuple(c // g for c in a), b // g
    return a, b


def _fm_levels(rows, dim):
    """Per-level integer constraint systems; None when real-infeasible."""
    cur = set()
    for r in rows:
        cur.add(_reduce_row(tuple(r.a), r.b))
    levels = {}
    for j in range(dim, 0, -1):
        with_var = [(a, b) for a, b in cur if a[j - 1] != 0]
        without = [(a, b) for a, b in cur if a[j - 1] == 0]
        levels[j] = sorted(with_var)
        if j == 1:
            if without:
                raise RuntimeError("constant row leaked to level 1")
            break
        nxt = {(a[: j - 1], b) for a, b in without}
        pos = [(a, b) for a, b in with_var if a[j - 1] > 0]
        neg = [(a, b) for a, b in with_var if a[j - 1] < 0]
        for ap, bp in pos:
            cp = ap[j - 1]
            for aq, bq in neg:
                cq = aq[j - 1]
                na = tuple(cp * aq[i] - cq * ap[i] for i in range(j - 1))
                nb = cp * bq - cq * bp
                if not any(na):
                    if nb < 0:
                        return None
                    continue
                nxt.add(_reduce_row(na, nb))
        cur = nxt
    return levels


def _level_bounds(level_rows, assign):
    lo = hi = None
    j = len(assign) + 1
    for a, b in level_rows:
        s = 0
        for i in range(j - 1):
            s += a[i] * assign[i]
        c = a[j - 1]
        if c > 0:
            v = (b - s) // c
            hi = v if hi is None or v < hi else hi
        else:
            v = -((b - s) // (-c))
            lo = v if lo is None or v > lo else lo
    return lo, hi


def polytope_lattice_count(poly: HPolyhedron) -> int:
    """Exact number of integer points in a bounded polyhedron."""
    for r in poly.rows:
        if r.strict:
            raise ValueError("lattice counting requires non-strict rows")
    if not is_bounded(poly.rows, poly.dim):
        raise UnboundedPolytopeError("cannot count lattice points of an unbounded set")
    levels = _fm_levels(poly.rows, poly.dim)
    if levels is None:
        return 0
    dim = poly.dim

    def count_from(j, assign):
        lo, hi = _level_bounds(levels[j], assign)
        if lo is None or hi is None:
            raise RuntimeError("unbounded level in a bounded polytope")
        if lo > hi:
            return 0
        if j == dim:
            return hi - lo + 1
        return sum(count_from(j + 1, assign + [t]) for t in range(lo, hi + 1))

    return count_from(1, [])


# ---------------------------------------------------------------------------
# integer feasibility


def _egcd(x: int, y: int):
    """(g, u, v) with u*x + v*y = g and g = gcd(x, y) >= 0."""
    old_r, r = x, y
    old_u, u = 1, 0
    old_v, v = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_u, u = u, old_u - q * u
        old_v, v = v, old_v - q * v
    if old_r < 0:
        old_r, old_u, old_v = -old_r, -old_u, -old_v
    return old_r, old_u, old_v


def _unimodular_columns(a: tuple[int, ...]):
    """(g, cols): integer columns with a.cols[0] = g = gcd(a), a.cols[j>0] = 0."""
    d = len(a)
    cols = [[1 if i == j else 0 for i in range(d)] for j in range(d)]
    g = a[0]
    for i in range(1, d):
        g2, u, v = _egcd(g, a[i])
        c0, ci = cols[0], cols[i]
        new0 = [u * x + v * y for x, y in zip(c0, ci)]
        newi = [-(a[i] // g2) * x + (g // g2) * y for x, y in zip(c0, ci)]
        cols[0], cols[i] = new0, newi
        g = g2
    if g < 0:
        g = -g
        cols[0] = [-x for x in cols[0]]
    return g, cols


def _substitute_equality(rows, a: tuple[int, ...], t: int):
    """Rows over y after substituting x = x0 + sum y_j * basis_j on {a.x = t}.

    Returns (new_rows, x0, basis) or None when a.x = t has no integer
    solution or contradicts a constant row.
    """
    g, cols = _unimodular_columns(a)
    if t % g != 0:
        return None
    x0 = tuple((t // g) * c for c in cols[0])
    basis = cols[1:]
    new_rows = []
    for r in rows:
        coeffs = tuple(sum(r.a[i] * col[i] for i in range(len(a))) for col in basis)
        shift = sum(r.a[i] * x0[i] for i in range(len(a)))
        nb = r.b - shift
        if not any(coeffs):
            if nb < 0:
                return None
            continue
        new_rows.append(LinearInequality(coeffs, nb))
    return new_rows, x0, basis


def _substitute_coordinate(rows, dim, j, t):
    """Rows over the remaining coordinates after fixing x_j = t; None if inconsistent."""
    new_rows = []
    for r in rows:
        coeffs = r.a[:j] + r.a[j + 1 :]
        nb = r.b - r.a[j] * t
        if not any(coeffs):
            if nb < 0:
                return None
            continue
        new_rows.append(LinearInequality(coeffs, nb))
    return new_rows


def _outward(lo: int, hi: int, center: int):
    """Integers of [lo, hi] ordered by distance from center (ties: larger first)."""
    c = min(max(center, lo), hi)
    yield c
    step = 1
    while True:
        emitted = False
        if c + step <= hi:
            yield c + step
            emitted = True
        if c - step >= lo:
            yield c - step
            emitted = True
        if not emitted:
            return
        step += 1


def _round_half_up(x: Fraction) -> int:
    return floor(x + Fraction(1, 2))


def _ilp_1d(rows):
    lo = hi = None
    for r in rows:
        c, b = r.a[0], r.b
        if c > 0:
            v = b // c
            hi = v if hi is None or v < hi else hi
        else:
            v = -(b // (-c))
            lo = v if lo is None or v > lo else lo
    if lo is not None and hi is not None and lo > hi:
        return None
    pick = lo if lo is not None else hi
    return (pick,)


def _ilp_search(rows, dim, boxed: bool):
    """An integer point of {a_i.x <= b_i}, or None; may raise IlpIncompleteError."""
    if dim == 1:
        return _ilp_1d(rows)

    feas = solve_lp(rows, [0] * dim, "max")
    if feas.status is LpStatus.INFEASIBLE:
        return None
    center = tuple(_round_half_up(x) for x in feas.point)
    if all(sum(r.a[i] * center[i] for i in range(dim)) <= r.b for r in rows):
        return tuple(Fraction(t) for t in center)

    ranges = []
    branch_j = None
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        top = solve_lp(rows, e, "max")
        bot = solve_lp(rows, e, "min")
        lo = bot.value if bot.status is LpStatus.OPTIMAL else None
        hi = top.value if top.status is LpStatus.OPTIMAL else None
        ranges.append((lo, hi))
        if lo is not None and hi is not None:
            ilo, ihi = -floor(-lo), floor(hi)
            if ilo > ihi:
                return None
            if lo == hi:
                if lo.denominator != 1:
                    return None
                sub = _substitute_coordinate(rows, dim, j, lo.numerator)
                if sub is None:
                    return None
                inner = _ilp_search(sub, dim - 1, boxed)
                if inner is None:
                    return None
                return inner[:j] + (Fraction(lo),) + inner[j:]
            if branch_j is None:
                branch_j = (j, ilo, ihi)

    if branch_j is not None:
        j, ilo, ihi = branch_j
        for t in _outward(ilo, ihi, center[j]):
            sub = _substitute_coordinate(rows, dim, j, t)
            if sub is None:
                continue
            inner = _ilp_search(sub, dim - 1, boxed)
            if inner is not None:
                return inner[:j] + (Fraction(t),) + inner[j:]
        return None

    # No coordinate is bounded: look for a constraint normal with a bounded
    # value range and reduce along it with a lattice substitution.
    from math import gcd

    seen = set()
    for r in rows:
        g = 0
        for c in r.a:
            g = gcd(g, abs(c))
        a = tuple(c // g for c in r.a)
        first = next(c for c in a if c)
        if first < 0:
            a = tuple(-c for c in a)
        if a in seen:
            continue
        seen.add(a)
        top = solve_lp(rows, a, "max")
        bot = solve_lp(rows, a, "min")
        if top.status is not LpStatus.OPTIMAL or bot.status is not LpStatus.OPTIMAL:
            continue
        lo, hi = bot.value, top.value
        ilo, ihi = -floor(-lo), floor(hi)
        if ilo > ihi:
            return None
        mid = _round_half_up(
            sum((Fraction(c) * x for c, x in zip(a, feas.point)), Fraction(0))
        )
        for t in _outward(ilo, ihi, mid):
            sub = _substitute_equality(rows, a, t)
            if sub is None:
                continue
            new_rows, x0, basis = sub
            if not new_rows:
                return as_point(x0)
            inner = (
                _ilp_1d(new_rows)
                if len(basis) == 1
                else _ilp_search(new_rows, len(basis), boxed)
            )
            if inner is not None:
                point = list(x0)
                for yj, col in zip(inner, basis):
                    for i in range(dim):
                        point[i] += yj * col[i]
                return as_point(point)
        return None

    if boxed:
        raise RuntimeError("boxed search must have bounded coordinates")
    half = 1
    while half <= ILP_BOX_CAP:
        boxed_rows = list(rows)
        for j in range(dim):
            e = [0] * dim
            e[j] = 1
            boxed_rows.append(LinearInequality(tuple(e), half))
            boxed_rows.append(LinearInequality(tuple(-c for c in e), half))
        found = _ilp_search(boxed_rows, dim, boxed=True)
        if found is not None:
            return found
        half *= 2
    raise IlpIncompleteError(
        f"no integer point within the +-{ILP_BOX_CAP} box and emptiness not provable"
    )


def ilp_feasible_point(poly: HPolyhedron) -> Optional[Point]:
    """An integer point of the polyhedron, or None when it has none.

    Unbounded input is allowed. Raises IlpIncompleteError when the
    doubling-box fallback hits its cap without an answer.
    """
    for r in poly.rows:
        if r.strict:
            raise ValueError("integer feasibility requires non-strict rows")
    res = _ilp_search(list(poly.rows), poly.dim, boxed=False)
    if res is None:
        return None
    return as_point(res)


# ---------------------------------------------------------------------------
# backend plumbing


def _serialize_poly(poly: HPolyhedron) -> str:
    lines = [f"{poly.dim} {len(poly.rows)}"]
    for r in poly.rows:
        lines.append(" ".join(str(c) for c in r.a) + f" {r.b}")
    return "\n".join(lines) + "\n"


class PluginBackend:
    """External oracle: one process invocation per query, text in/text out.

    The request is `d m` followed by m rows of `a_1 .. a_d b`. The reply is
    a single line: a fraction for volume, an integer for lattice counts,
    and either `none` or d fractions for integer feasibility.
    """

    def __init__(self, argv: Sequence[str], kind: str):
        if kind not in ("volume", "lattice", "ilp"):
            raise ValueError(f"unknown oracle kind {kind!r}")
        self.argv = list(argv)
        self.kind = kind

    def __call__(self, poly: HPolyhedron):
        proc = subprocess.run(
            self.argv,
            input=_serialize_poly(poly),
            capture_output=True,
            text=True,
            check=True,
        )
        reply = proc.stdout.strip()
        if self.kind == "volume":
            return Fraction(reply)
        if self.kind == "lattice":
            return int(reply)
        if reply == "none":
            return None
        return as_point(Fraction(tok) for tok in reply.split())


@dataclass
class OracleSuite:
    """The three single-polyhedron backends plus shared call counters."""

    volume_backend: Callable[[HPolyhedron], Fraction]
    lattice_backend: Callable[[HPolyhedron], int]
    ilp_backend: Callable[[HPolyhedron], Optional[Point]]
    volume_calls: int = 0
    lattice_calls: int = 0
    ilp_calls: int = 0

    @classmethod
    def default(cls) -> "OracleSuite":
        return cls(polytope_volume, polytope_lattice_count, ilp_feasible_point)

    def polytope_volume(self, poly: HPolyhedron) -> Fraction:
        self.volume_calls += 1
        return self.volume_backend(poly)

    def polytope_lattice_count(self, poly: HPolyhedron) -> int:
        self.lattice_calls += 1
        return self.lattice_backend(poly)

    def ilp_feasible_point(self, poly: HPolyhedron) -> Optional[Point]:
        self.ilp_calls += 1
        return self.ilp_backend(poly)
