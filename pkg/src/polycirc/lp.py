"""Exact rational linear programming and derived geometric queries.

The solver is a dense two-phase primal simplex with Bland's pivoting rule,
so it terminates on every input and is fully deterministic. Free variables
are handled with a shared subtrahend (x_j = u_j - u0), which keeps the
tableau at d+1 structural columns.

For speed every tableau row is stored as an integer vector with one
positive denominator (value_j = num_j / den), reduced by a single gcd pass
per pivot; ratio tests compare by cross-multiplication, so no rational
objects are built inside the pivot loop. Results are exact Fractions.

On top of the solver sit the queries the rest of the package needs:
strict interior points via a slack-maximising program, boundedness tests
by coordinate optimisation, and vertex enumeration for bounded polyhedra
by basis enumeration.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd
from typing import Optional, Sequence

from .errors import UnboundedPolytopeError
from .geometry import LinearInequality, Point
from .linalg import solve_int


class LpStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LpResult:
    """Outcome of an exact LP solve.

    For OPTIMAL, point is a basic feasible solution attaining value and
    satisfying every constraint exactly; otherwise both are None.
    """

    status: LpStatus
    point: Optional[Point] = None
    value: Optional[Fraction] = None


def _reduce(nums: list[int], den: int) -> tuple[list[int], int]:
    g = den
    for x in nums:
        if x:
            g = gcd(g, x)
            if g == 1:
                return nums, den
    if g > 1:
        return [x // g for x in nums], den // g
    return nums, den


class _Tableau:
    """Integer-row simplex state: rows[i] holds nums, dens[i] the denominator."""

    __slots__ = ("rows", "dens", "basis", "obj", "obj_den")

    def __init__(self):
        self.rows: list[list[int]] = []
        self.dens: list[int] = []
        self.basis: list[int] = []
        self.obj: list[int] = []
        self.obj_den: int = 1

    def value(self, i: int, j: int) -> Fraction:
        return Fraction(self.rows[i][j], self.dens[i])

    def set_objective(self, coeffs: list[int]):
        """Objective row from integer costs, eliminating current basic columns."""
        obj, od = list(coeffs), 1
        for r, bv in enumerate(self.basis):
            f = obj[bv]
            if f:
                pn, pd = self.rows[r], self.dens[r]
                obj = [x * pd - f * y for x, y in zip(obj, pn)]
                obj, od = _reduce(obj, od * pd)
        self.obj, self.obj_den = obj, od

    def pivot(self, r: int, c: int):
        pn, p = self.rows[r], self.rows[r][c]
        if p < 0:
            pn = [-x for x in pn]
            p = -p
        pn, pd = _reduce(pn, p)
        self.rows[r], self.dens[r] = pn, pd
        self.basis[r] = c
        for i in range(len(self.rows)):
            if i == r:
                continue
            f = self.rows[i][c]
            if f:
                di = self.dens[i]
                nums = [x * pd - f * y for x, y in zip(self.rows[i], pn)]
                self.rows[i], self.dens[i] = _reduce(nums, di * pd)
        f = self.obj[c]
        if f:
            nums = [x * pd - f * y for x, y in zip(self.obj, pn)]
            self.obj, self.obj_den = _reduce(nums, self.obj_den * pd)

    def bland(self, ncols: int) -> bool:
        """Iterate to optimality; False when the objective is unbounded."""
        while True:
            obj = self.obj
            col = next((j for j in range(ncols) if obj[j] > 0), None)
            if col is None:
                return True
            best_r = -1
            best_num = best_den = 0  # ratio best_num / best_den
            for r, row in enumerate(self.rows):
                coef = row[col]
                if coef <= 0:
                    continue
                num, den = row[-1], coef
                if best_r < 0:
                    better = True
                else:
                    lhs = num * best_den
                    rhs = best_num * den
                    better = lhs < rhs or (lhs == rhs and self.basis[r] < self.basis[best_r])
                if better:
                    best_r, best_num, best_den = r, num, den
            if best_r < 0:
                return False
            self.pivot(best_r, col)


def solve_lp(
    rows: Sequence[LinearInequality],
    objective: Sequence,
    sense: str = "max",
) -> LpResult:
    """Optimise objective . x over {x : a_i . x <= b_i} exactly.

    Rows must be non-strict. Variables are free. Returns an exact optimum
    at a basic feasible solution, or an INFEASIBLE/UNBOUNDED verdict.
    """
    if sense not in ("max", "min"):
        raise ValueError(f"unknown sense {sense!r}")
    c_exact = [Fraction(v) for v in objective]
    if sense == "min":
        c_exact = [-v for v in c_exact]
    d = len(c_exact)
    for r in rows:
        if r.strict:
            raise ValueError("solve_lp requires non-strict rows")
        if r.dim != d:
            raise ValueError("row dimension does not match objective")
    scale = 1
    for v in c_exact:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    c_int = [int(v * scale) for v in c_exact]

    m = len(rows)
    nstruct = d + 1  # u_0..u_{d-1} plus the shared subtrahend
    nv = nstruct + m
    t = _Tableau()
    art_rows = []
    for i, r in enumerate(rows):
        line = list(r.a) + [-sum(r.a)] + [0] * m + [r.b]
        line[nstruct + i] = 1
        if r.b < 0:
            line = [-x for x in line]
            art_rows.append(i)
            t.basis.append(-1)
        else:
            t.basis.append(nstruct + i)
        t.rows.append(line)
        t.dens.append(1)

    na = len(art_rows)
    if na:
        for line in t.rows:
            line[-1:-1] = [0] * na
        for k, i in enumerate(art_rows):
            t.rows[i][nv + k] = 1
            t.basis[i] = nv + k
        costs = [0] * (nv + na + 1)
        for k in range(na):
            costs[nv + k] = -1
        t.set_objective(costs)
        t.bland(nv + na)
        if t.obj[-1] > 0:  # phase-1 value is -obj[-1]/obj_den < 0: infeasible
            return LpResult(LpStatus.INFEASIBLE)
        # Drive surviving artificials out of the basis, dropping redundant rows.
        for r in range(len(t.rows) - 1, -1, -1):
            if t.basis[r] >= nv:
                col = next((j for j in range(nv) if t.rows[r][j] != 0), None)
                if col is None:
                    del t.rows[r]
                    del t.dens[r]
                    del t.basis[r]
                else:
                    t.pivot(r, col)
        t.rows = [line[:nv] + line[-1:] for line in t.rows]

    costs = [0] * (nv + 1)
    costs[:d] = c_int
    costs[d] = -sum(c_int)
    t.set_objective(costs)
    if not t.bland(nv):
        return LpResult(LpStatus.UNBOUNDED)

    vals = {bv: t.value(r, -1) for r, bv in enumerate(t.basis)}
    shift = vals.get(d, Fraction(0))
    point = tuple(vals.get(j, Fraction(0)) - shift for j in range(d))
    for r in rows:
        if r.lhs(point) > r.b:
            raise RuntimeError("simplex returned an infeasible point")
    value = sum((ci * xi for ci, xi in zip(c_exact, point)), Fraction(0))
    if sense == "min":
        value = -value
    return LpResult(LpStatus.OPTIMAL, point, value)


def interior_point(
    rows: Sequence[LinearInequality], dim: Optional[int] = None
) -> Optional[Point]:
    """A point satisfying every row strictly, or None when none exists.

    Solves max t subject to a_i . x + t*|a_i|_1 <= b_i and t <= 1; the
    open region is nonempty exactly when the optimum is positive. The cap
    keeps the program bounded on under-constrained inputs.
    """
    if dim is None:
        if not rows:
            raise ValueError("dim is required when rows is empty")
        dim = rows[0].dim
    ext = []
    for r in rows:
        if r.strict:
            raise ValueError("interior_point requires non-strict rows")
        ext.append(LinearInequality(r.a + (sum(abs(c) for c in r.a),), r.b))
    ext.append(LinearInequality((0,) * dim + (1,), 1))
    res = solve_lp(ext, [0] * dim + [1], "max")
    if res.status is not LpStatus.OPTIMAL:
        raise RuntimeError("slack program must have a bounded optimum")
    if res.value > 0:
        return res.point[:dim]
    return None


def is_bounded(rows: Sequence[LinearInequality], dim: int) -> bool:
    """True when the feasible set is bounded; the empty set counts as bounded."""
    for j in range(dim):
        e = [0] * dim
        e[j] = 1
        for sense in ("max", "min"):
            res = solve_lp(rows, e, sense)
            if res.status is LpStatus.INFEASIBLE:
                return True
            if res.status is LpStatus.UNBOUNDED:
                return False
    return True


def enumerate_vertices(
    rows: Sequence[LinearInequality], dim: int
) -> tuple[Point, ...]:
    """Exact vertex set of a bounded polyhedron, sorted lexicographically.

    Candidate vertices are the solutions of d-row square subsystems;
    degenerate duplicates collapse under exact comparison.
    """
    for r in rows:
        if r.strict:
            raise ValueError("enumerate_vertices requires non-strict rows")
    if not is_bounded(rows, dim):
        raise UnboundedPolytopeError("unbounded input")
    seen = set()
    for combo in itertools.combinations(range(len(rows)), dim):
        m = [rows[i].a for i in combo]
        rhs = [rows[i].b for i in combo]
        sol = solve_int(m, rhs)
        if sol is None:
            continue
        if sol not in seen and all(r.lhs(sol) <= r.b for r in rows):
            seen.add(sol)
    return tuple(sorted(seen))
