"""Atomic-cell decomposition of the hyperplane arrangement of an inequality set.

Hyperplanes are deduplicated by normalized key; every cell is the
intersection of one side per key, the LE side closed (a.x <= b) and the GT
side open (a.x > b). Nonempty cells of this partition are always
full-dimensional (opposite closed sides of one hyperplane can never
co-occur, and all keys are lex-positive), so incremental insertion with a
strict-feasibility test per side enumerates exactly the cells, each with a
strict interior witness.

For lattice work the keys are shifted so that every integer-data
inequality coincides with one side of its key on all integer points:
a closed row whose normalized side is GT (a'.x >= b') equals the open side
of the shifted key (a', b'-1) on the integer grid.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import factorial
from typing import Optional, Sequence

from .errors import CellCapError
from .geometry import (
    GT,
    LE,
    HPolyhedron,
    HyperplaneKey,
    LinearInequality,
    Point,
    normalize_hyperplane,
)
from .lp import interior_point

DEFAULT_CELL_CAP = 10**6


@dataclass(frozen=True)
class AtomicCell:
    """One cell of the partition: side choices, closed representative, witnesses.

    The closed representative is the all-closed version of the cell in
    interior mode, and the integer-shifted version (GT side a.x >= b+1) in
    lattice mode; in the latter case it contains exactly the cell's
    integer points.
    """

    signs: tuple[str, ...]
    closed_rep: HPolyhedron
    interior_witness: Point
    integer_witness: Optional[Point] = None

    @property
    def sign_string(self) -> str:
        return "".join(s[0] for s in self.signs)


@dataclass
class ArrangementStats:
    """Bookkeeping for one decomposition run."""

    n: int
    dim: int
    cell_count: int
    region_bound_lower: Fraction
    region_bound_upper: Fraction
    keys: tuple[HyperplaneKey, ...]
    lp_calls: int = 0
    ilp_calls: int = 0


def region_bounds(n: int, d: int) -> tuple[Fraction, Fraction]:
    """Closed-form lower/upper bounds on the maximal cell count of n hyperplanes.

    Lower: floor(n/d)^d. Upper: n^d/d! + (n+1)^(d-1). Exact rationals.
    """
    if n < 0 or d < 1:
        raise ValueError("need n >= 0 and d >= 1")
    lower = Fraction((n // d) ** d)
    upper = Fraction(n**d, factorial(d)) + (n + 1) ** (d - 1)
    return lower, upper


def interior_keys(ineqs: Sequence[LinearInequality]) -> tuple[HyperplaneKey, ...]:
    """Deduplicated hyperplane keys in first-appearance order (strictness ignored)."""
    return tuple(dict.fromkeys(normalize_hyperplane(iq)[0] for iq in ineqs))


def lattice_key(iq: LinearInequality) -> HyperplaneKey:
    """Hyperplane key aligned with the integer grid for one inequality.

    Strict rows are closed first (b-1); rows whose normalized side is GT
    contribute the shifted key so the row equals the open GT side on every
    integer point.
    """
    closed = LinearInequality(iq.a, iq.b - 1) if iq.strict else iq.closed()
    key, side = normalize_hyperplane(closed)
    if side == GT:
        a, b = key
        key, _ = normalize_hyperplane(LinearInequality(a, b - 1))
    return key


def lattice_keys(ineqs: Sequence[LinearInequality]) -> tuple[HyperplaneKey, ...]:
    return tuple(dict.fromkeys(lattice_key(iq) for iq in ineqs))


def _le_row(key: HyperplaneKey) -> LinearInequality:
    a, b = key
    return LinearInequality(a, b)


def _ge_row(key: HyperplaneKey, shift: int = 0) -> LinearInequality:
    a, b = key
    return LinearInequality(tuple(-c for c in a), -(b + shift))


def _split_cells(keys, dim, cap, stats):
    """Incremental insertion; yields (sides per key in insertion order, witness)."""
    origin = (Fraction(0),) * dim
    cells = [([], [], origin)]
    for a, b in keys:
        row_le = _le_row((a, b))
        row_ge = _ge_row((a, b))
        grown = []
        for rows, sides, w in cells:
            v = sum((c * x for c, x in zip(a, w)), Fraction(0))
            if v != b:
                near = LE if v < b else GT
                near_row = row_le if near == LE else row_ge
                far = GT if near == LE else LE
                far_row = row_ge if near == LE else row_le
                grown.append((rows + [near_row], sides + [near], w))
                stats.lp_calls += 1
                p = interior_point(rows + [far_row], dim)
                if p is not None:
                    grown.append((rows + [far_row], sides + [far], p))
            else:
                for side, srow in ((LE, row_le), (GT, row_ge)):
                    stats.lp_calls += 1
                    p = interior_point(rows + [srow], dim)
                    if p is not None:
                        grown.append((rows + [srow], sides + [side], p))
        if len(grown) > cap:
            raise CellCapError(
                f"cell count exceeded cap {cap} after inserting {len(sides)} hyperplanes"
            )
        cells = grown
    return cells


def _finish(keys, cells_raw, dim, stats, integer_shift):
    cells = []
    for _, sides, w in cells_raw:
        signs = tuple(sides)
        rows = tuple(
            _le_row(k) if s == LE else _ge_row(k, 1 if integer_shift else 0)
            for k, s in zip(keys, signs)
        )
        cells.append(AtomicCell(signs, HPolyhedron(dim, rows), w))
    cells.sort(key=lambda c: c.signs)
    stats.cell_count = len(cells)
    return cells


def decompose_interior(
    ineqs: Sequence[LinearInequality], cap: int = DEFAULT_CELL_CAP
) -> tuple[list[AtomicCell], ArrangementStats]:
    """All full-dimensional cells of the arrangement, each with a strict witness."""
    if not ineqs:
        raise ValueError("need at least one inequality")
    dim = ineqs[0].dim
    keys = interior_keys(ineqs)
    lo, hi = region_bounds(len(keys), dim)
    stats = ArrangementStats(len(keys), dim, 0, lo, hi, keys)
    cells_raw = _split_cells(keys, dim, cap, stats)
    cells = _finish(keys, cells_raw, dim, stats, integer_shift=False)
    return cells, stats


def decompose_integer(
    ineqs: Sequence[LinearInequality],
    cap: int = DEFAULT_CELL_CAP,
    suite=None,
) -> tuple[list[AtomicCell], ArrangementStats]:
    """Cells over lattice-aligned keys, each with an integer witness if one exists.

    The witness is found by the integer-feasibility oracle on the cell's
    shifted closed representative; None marks a proven integer-empty cell.
    """
    from .oracles import OracleSuite

    if not ineqs:
        raise ValueError("need at least one inequality")
    if suite is None:
        suite = OracleSuite.default()
    dim = ineqs[0].dim
    keys = lattice_keys(ineqs)
    lo, hi = region_bounds(len(keys), dim)
    stats = ArrangementStats(len(keys), dim, 0, lo, hi, keys)
    cells_raw = _split_cells(keys, dim, cap, stats)
    cells = _finish(keys, cells_raw, dim, stats, integer_shift=True)
    witnessed = []
    for cell in cells:
        stats.ilp_calls += 1
        w = suite.ilp_feasible_point(cell.closed_rep)
        witnessed.append(
            AtomicCell(cell.signs, cell.closed_rep, cell.interior_witness, w)
        )
    return witnessed, stats


def locate(ineqs: Sequence[LinearInequality], p: Point) -> tuple[str, ...]:
    """Sign vector of the cell containing p (boundary points join the LE side).

    Signs are ordered by first appearance of each deduplicated hyperplane,
    matching the signs field of decompose_interior cells.
    """
    keys = interior_keys(ineqs)
    signs = []
    for a, b in keys:
        v = sum((c * x for c, x in zip(a, p)), Fraction(0))
        signs.append(LE if v <= b else GT)
    return tuple(signs)
