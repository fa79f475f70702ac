"""Shared builders for the test suite: random circuits, oracles, complements."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from polycirc.circuit import (
    AND,
    OR,
    InputGate,
    OpGate,
    PolyhedraCircuit,
    union_circuit,
)
from polycirc.geometry import HPolyhedron, LinearInequality, box


def boxed_random_circuit(rng: random.Random, d: int, n_cuts: int, lo=-6, hi=6,
                         coef=3, strict_p=0.5) -> PolyhedraCircuit:
    """Random and/or tree over random half-space leaves, clipped by [lo, hi]^d.

    The top-level intersection with the box keeps the region bounded, so
    both measures are defined.
    """
    gates, names = [], []
    for i, row in enumerate(box([(lo, hi)] * d).rows):
        gates.append(InputGate(row))
        names.append(f"b{i}")
    leaf_ids = []
    for i in range(n_cuts):
        while True:
            a = tuple(rng.randint(-coef, coef) for _ in range(d))
            if any(a):
                break
        b = rng.randint(lo, hi)
        gates.append(InputGate(LinearInequality(a, b, rng.random() < strict_p)))
        names.append(f"c{i}")
        leaf_ids.append(len(gates) - 1)
    ids = leaf_ids[:]
    gi = 0
    while len(ids) > 1:
        k = rng.randint(2, min(3, len(ids)))
        kids = [ids.pop(rng.randrange(len(ids))) for _ in range(k)]
        gates.append(OpGate(rng.choice([AND, OR]), tuple(sorted(kids))))
        names.append(f"g{gi}")
        gi += 1
        ids.append(len(gates) - 1)
    gates.append(OpGate(AND, tuple(range(2 * d)) + (ids[0],)))
    names.append("clipped")
    return PolyhedraCircuit(d, tuple(gates), len(gates) - 1, tuple(names))


def random_box(rng: random.Random, d: int, lo=-6, hi=6, min_side=1) -> HPolyhedron:
    bounds = []
    for _ in range(d):
        a = rng.randint(lo, hi - min_side)
        b = rng.randint(a + min_side, hi)
        bounds.append((a, b))
    return box(bounds)


def box_tree_circuit(rng: random.Random, n_boxes: int, d=2, lo=0, hi=8):
    """Random and/or tree whose leaves are whole boxes; returns (circuit, boxes)."""
    boxes = [random_box(rng, d, lo, hi) for _ in range(n_boxes)]
    gates, names = [], []
    tops = []
    for i, poly in enumerate(boxes):
        kids = []
        for j, row in enumerate(poly.rows):
            gates.append(InputGate(row))
            names.append(f"h{i}_{j}")
            kids.append(len(gates) - 1)
        gates.append(OpGate(AND, tuple(kids)))
        names.append(f"p{i}")
        tops.append(len(gates) - 1)
    ids = tops[:]
    gi = 0
    while len(ids) > 1:
        k = rng.randint(2, min(3, len(ids)))
        kids = [ids.pop(rng.randrange(len(ids))) for _ in range(k)]
        gates.append(OpGate(rng.choice([AND, OR]), tuple(sorted(kids))))
        names.append(f"t{gi}")
        gi += 1
        ids.append(len(gates) - 1)
    c = PolyhedraCircuit(d, tuple(gates), ids[0], tuple(names))
    return c, boxes


def complement_circuit(c: PolyhedraCircuit) -> PolyhedraCircuit:
    """De Morgan dual: negated leaves, and/or gates swapped."""
    gates = []
    for g in c.gates:
        if isinstance(g, InputGate):
            gates.append(InputGate(g.ineq.negated()))
        else:
            gates.append(OpGate(OR if g.op == AND else AND, g.children))
    return PolyhedraCircuit(c.dim, tuple(gates), c.output, c.names)


def grid_points(d: int, lo: int, hi: int):
    for p in itertools.product(range(lo, hi + 1), repeat=d):
        yield tuple(Fraction(x) for x in p)


def grid_count_oracle(c: PolyhedraCircuit, lo: int, hi: int) -> int:
    """Independent lattice oracle: exhaustive membership over the integer grid."""
    from polycirc.circuit import contains

    return sum(1 for p in grid_points(c.dim, lo, hi) if contains(c, p))


def breakpoint_volume_oracle(c: PolyhedraCircuit) -> Fraction:
    """Independent area oracle for circuits whose leaves are axis-aligned.

    Collects the leaf bounds per axis, cuts the plane into elementary
    cells, and classifies each cell by its center; every leaf is constant
    on every elementary cell, so this is exact.
    """
    from polycirc.circuit import contains

    cuts = [set() for _ in range(c.dim)]
    for iq in c.leaves():
        nz = [i for i, v in enumerate(iq.a) if v]
        assert len(nz) == 1, "oracle needs axis-aligned leaves"
        i = nz[0]
        cuts[i].add(Fraction(iq.b, iq.a[i]))
    axes = [sorted(s) for s in cuts]
    total = Fraction(0)
    for cell in itertools.product(*(range(len(ax) - 1) for ax in axes)):
        widths = [axes[i][j + 1] - axes[i][j] for i, j in enumerate(cell)]
        center = tuple(
            (axes[i][j] + axes[i][j + 1]) / 2 for i, j in enumerate(cell)
        )
        if contains(c, center):
            area = Fraction(1)
            for w in widths:
                area *= w
            total += area
    return total


def interval_circuit(lo: int, hi: int) -> PolyhedraCircuit:
    return union_circuit([box([(lo, hi)])])


def generic_lines(rng: random.Random, n: int):
    """n lines in the plane, no two parallel, no three concurrent."""
    while True:
        lines = []
        for _ in range(n):
            while True:
                a = (rng.randint(-4, 4), rng.randint(-4, 4))
                if any(a):
                    break
            lines.append(LinearInequality(a, rng.randint(-5, 5)))
        pts = set()
        ok = True
        for r, s in itertools.combinations(lines, 2):
            det = r.a[0] * s.a[1] - r.a[1] * s.a[0]
            if det == 0:
                ok = False
                break
            x = Fraction(r.b * s.a[1] - s.b * r.a[1], det)
            y = Fraction(r.a[0] * s.b - s.a[0] * r.b, det)
            pts.add((x, y))
        if ok and len(pts) == n * (n - 1) // 2:
            return lines
