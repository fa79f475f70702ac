import random
from fractions import Fraction as F
from pathlib import Path

import pytest

from helpers import (
    box_tree_circuit,
    boxed_random_circuit,
    breakpoint_volume_oracle,
    complement_circuit,
    grid_count_oracle,
)
from polycirc.circuit import (
    InputGate,
    PolyhedraCircuit,
    canonicalize_for_lattice,
    clip_circuit,
    parse_circuit,
    union_circuit,
)
from polycirc.errors import UnboundedRegionError
from polycirc.geometry import LinearInequality as LI, box
from polycirc.measure import (
    circuit_lattice_count,
    circuit_volume,
    union_lattice_count,
    union_volume,
)

SEC3 = (Path(__file__).parent.parent / "examples" / "sec3.pc").read_text()


def test_worked_example_volume():
    report = circuit_volume(parse_circuit(SEC3))
    assert report.value == 4
    assert report.cells_selected <= report.cells_total
    assert not report.unbounded


def test_worked_example_count():
    report = circuit_lattice_count(parse_circuit(SEC3))
    assert report.value == 4
    assert report.ilp_oracle_calls == report.cells_total


def test_overlapping_boxes():
    b1, b2 = box([(0, 2), (0, 2)]), box([(1, 3), (1, 3)])
    assert union_volume([b1, b2]).value == 7
    assert union_lattice_count([b1, b2]).value == 14


def test_disjoint_box_intersection_is_empty():
    b1, b2 = box([(0, 1), (0, 1)]), box([(2, 3), (2, 3)])
    gates = [InputGate(r) for r in b1.rows + b2.rows]
    from polycirc.circuit import AND, OpGate

    gates.append(OpGate(AND, tuple(range(8))))
    c = PolyhedraCircuit(2, tuple(gates), 8, tuple(f"g{i}" for i in range(9)))
    assert circuit_volume(c).value == 0
    assert circuit_lattice_count(c).value == 0


def test_union_examples():
    assert union_volume([box([(0, 1), (0, 1)]), box([(2, 3), (2, 3)])]).value == 2
    assert union_volume([box([(0, 2)]), box([(1, 3)])]).value == 3
    assert union_lattice_count([box([(0, 2)]), box([(1, 3)])]).value == 4
    assert union_lattice_count([box([(0, 1), (0, 1)])]).value == 4


def test_unbounded_region_raises():
    half = parse_circuit("dim 1\nineq h: 1 x1 <= 0\noutput h\n")
    with pytest.raises(UnboundedRegionError):
        circuit_volume(half)
    with pytest.raises(UnboundedRegionError):
        circuit_lattice_count(half)


def test_unselected_unbounded_cells_are_fine():
    # a bounded region still has unbounded cells outside the selection
    c = union_circuit([box([(0, 1)])])
    assert circuit_volume(c).value == 1
    assert circuit_lattice_count(c).value == 2


def test_clip_makes_halfspace_measurable():
    half = parse_circuit("dim 1\nineq h: 1 x1 <= 0\noutput h\n")
    clipped = clip_circuit(half, [(-5, 5)])
    assert circuit_volume(clipped).value == 5
    assert circuit_lattice_count(clipped).value == 6


def test_strictness_flips_leave_volume_unchanged():
    rng = random.Random(41)
    for _ in range(25):
        d = rng.randint(1, 2)
        c = boxed_random_circuit(rng, d, 3)
        base = circuit_volume(c).value
        gates = [
            InputGate(LI(g.ineq.a, g.ineq.b, not g.ineq.strict))
            if isinstance(g, InputGate) and rng.random() < 0.5
            else g
            for g in c.gates
        ]
        flipped = PolyhedraCircuit(c.dim, tuple(gates), c.output, c.names)
        assert circuit_volume(flipped).value == base


def test_lattice_canonicalization_preserves_count():
    rng = random.Random(42)
    for _ in range(15):
        c = boxed_random_circuit(rng, rng.randint(1, 2), 3)
        assert (
            circuit_lattice_count(c).value
            == circuit_lattice_count(canonicalize_for_lattice(c)).value
        )


def test_count_matches_grid_oracle():
    rng = random.Random(43)
    for _ in range(15):
        d = rng.randint(1, 3)
        c = boxed_random_circuit(rng, d, 3, lo=-5, hi=5)
        assert circuit_lattice_count(c).value == grid_count_oracle(c, -6, 6)


def test_volume_matches_breakpoint_oracle():
    rng = random.Random(44)
    for _ in range(15):
        c, _boxes = box_tree_circuit(rng, rng.randint(1, 4))
        assert circuit_volume(c).value == breakpoint_volume_oracle(c)


def test_complement_identity():
    rng = random.Random(45)
    bbox = box([(-6, 6), (-6, 6)])
    total = F(144)
    for _ in range(10):
        c, _ = box_tree_circuit(rng, rng.randint(1, 3), lo=-5, hi=5)
        cbar = complement_circuit(c)
        inside = circuit_volume(clip_circuit(c, [(-6, 6), (-6, 6)])).value
        outside = circuit_volume(clip_circuit(cbar, [(-6, 6), (-6, 6)])).value
        assert inside + outside == total
    assert circuit_volume(union_circuit([bbox])).value == total


def test_union_volume_monotone_in_regions():
    rng = random.Random(46)
    polys = []
    prev = F(0)
    for _ in range(5):
        polys.append(
            box([(rng.randint(-5, 0), rng.randint(1, 5)) for _ in range(2)])
        )
        cur = union_volume(polys).value
        assert cur >= prev
        prev = cur


def test_suite_counters_are_per_run():
    from polycirc.oracles import OracleSuite

    suite = OracleSuite.default()
    c = parse_circuit(SEC3)
    r1 = circuit_volume(c, suite=suite)
    r2 = circuit_volume(c, suite=suite)
    assert r1.volume_oracle_calls == r2.volume_oracle_calls == r1.cells_selected
    assert suite.volume_calls == r1.volume_oracle_calls * 2
