"""Exact measures of circuit regions: d-dimensional volume and lattice count.

Both measures follow the same plan: canonicalize the leaves, decompose the
arrangement of the leaf hyperplanes into atomic cells, evaluate the
circuit once per cell on that cell's witness, and sum the per-cell oracle
measure over the selected cells. The region is a disjoint union of cells
and every leaf is constant on each (open cell for volume; integer points
of each cell for counting), so witness evaluation decides the whole cell.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .arrangement import DEFAULT_CELL_CAP, decompose_integer, decompose_interior
from .circuit import (
    PolyhedraCircuit,
    canonicalize_for_lattice,
    canonicalize_for_volume,
    contains,
    union_circuit,
)
from .errors import UnboundedPolytopeError, UnboundedRegionError
from .geometry import HPolyhedron
from .oracles import OracleSuite


@dataclass(frozen=True)
class MeasureReport:
    """Result of one volume/count run with cell and oracle-call statistics.

    unbounded is the boundedness verdict for the measured region: it is
    False in every successful report, since an unbounded selected cell
    raises UnboundedRegionError instead of returning.
    """

    value: Union[Fraction, int]
    cells_total: int
    cells_selected: int
    volume_oracle_calls: int
    lattice_oracle_calls: int
    ilp_oracle_calls: int
    lp_calls: int
    unbounded: bool = False


def circuit_volume(
    c: PolyhedraCircuit,
    cap: int = DEFAULT_CELL_CAP,
    suite: Optional[OracleSuite] = None,
) -> MeasureReport:
    """Exact volume of the circuit region; strict leaves change nothing."""
    if suite is None:
        suite = OracleSuite.default()
    v0 = suite.volume_calls
    cc = canonicalize_for_volume(c)
    cells, stats = decompose_interior(cc.leaves(), cap)
    total = Fraction(0)
    selected = 0
    for cell in cells:
        if contains(cc, cell.interior_witness):
            selected += 1
            try:
                total += suite.polytope_volume(cell.closed_rep)
            except UnboundedPolytopeError:
                raise UnboundedRegionError(
                    f"selected cell {cell.sign_string} is unbounded"
                ) from None
    return MeasureReport(
        value=total,
        cells_total=len(cells),
        cells_selected=selected,
        volume_oracle_calls=suite.volume_calls - v0,
        lattice_oracle_calls=0,
        ilp_oracle_calls=0,
        lp_calls=stats.lp_calls,
    )


def circuit_lattice_count(
    c: PolyhedraCircuit,
    cap: int = DEFAULT_CELL_CAP,
    suite: Optional[OracleSuite] = None,
) -> MeasureReport:
    """Exact number of integer points in the circuit region.

    Cells proven integer-empty never reach the counting oracle; a selected
    cell with infinitely many integer points raises UnboundedRegionError.
    """
    if suite is None:
        suite = OracleSuite.default()
    l0, i0 = suite.lattice_calls, suite.ilp_calls
    cc = canonicalize_for_lattice(c)
    cells, stats = decompose_integer(cc.leaves(), cap, suite)
    total = 0
    selected = 0
    for cell in cells:
        w = cell.integer_witness
        if w is None or not contains(cc, w):
            continue
        selected += 1
        try:
            total += suite.polytope_lattice_count(cell.closed_rep)
        except UnboundedPolytopeError:
            raise UnboundedRegionError(
                f"selected cell {cell.sign_string} is unbounded"
            ) from None
    return MeasureReport(
        value=total,
        cells_total=len(cells),
        cells_selected=selected,
        volume_oracle_calls=0,
        lattice_oracle_calls=suite.lattice_calls - l0,
        ilp_oracle_calls=suite.ilp_calls - i0,
        lp_calls=stats.lp_calls,
    )


def union_volume(
    polys: Sequence[HPolyhedron],
    cap: int = DEFAULT_CELL_CAP,
    suite: Optional[OracleSuite] = None,
) -> MeasureReport:
    """Exact volume of the union of polyhedra."""
    return circuit_volume(union_circuit(polys), cap, suite)


def union_lattice_count(
    polys: Sequence[HPolyhedron],
    cap: int = DEFAULT_CELL_CAP,
    suite: Optional[OracleSuite] = None,
) -> MeasureReport:
    """Exact number of integer points in the union of polyhedra."""
    return circuit_lattice_count(union_circuit(polys), cap, suite)
