"""polycirc: exact measures of regions built from half-space circuits.

Regions are described by circuits whose leaves are integer half-spaces and
whose gates take unions and intersections. The package computes the exact
volume and the exact lattice-point count of such regions over rational
arithmetic, and applies those measures to greedy maximum-coverage and
set-cover solvers.
"""

__version__ = "0.1.0"

from .arrangement import (
    ArrangementStats,
    AtomicCell,
    decompose_integer,
    decompose_interior,
    locate,
    region_bounds,
)
from .circuit import (
    PolyhedraCircuit,
    canonicalize_for_lattice,
    canonicalize_for_volume,
    clip_circuit,
    contains,
    format_circuit,
    parse_circuit,
    parse_circuit_with_diagnostics,
    union_circuit,
)
from .coverage import (
    CoverageInstance,
    CoverParams,
    GreedyTrace,
    MeasureMode,
    brute_force_min_cover,
    brute_force_opt,
    greedy_cover_lattice,
    greedy_cover_volume,
    greedy_max_lattice,
    greedy_max_volume,
    reduce_classical,
)
from .geometry import (
    HPolyhedron,
    LinearInequality,
    Point,
    Scalar,
    Sign,
    box,
    eval_sign,
    normalize_hyperplane,
)
from .lp import LpResult, LpStatus, enumerate_vertices, interior_point, is_bounded, solve_lp
from .measure import (
    MeasureReport,
    circuit_lattice_count,
    circuit_volume,
    union_lattice_count,
    union_volume,
)
from .oracles import OracleSuite, ilp_feasible_point, polytope_lattice_count, polytope_volume
from .render import render_svg
