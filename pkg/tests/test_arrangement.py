import itertools
import random
from fractions import Fraction as F

import pytest

from helpers import generic_lines
from polycirc.arrangement import (
    decompose_integer,
    decompose_interior,
    interior_keys,
    lattice_key,
    locate,
    region_bounds,
)
from polycirc.errors import CellCapError
from polycirc.geometry import GT, LE, LinearInequality as LI, Sign, eval_sign
from polycirc.lp import interior_point


def test_one_hyperplane_two_cells():
    cells, stats = decompose_interior([LI((1, 1), 0)])
    assert len(cells) == 2 and stats.cell_count == 2


def test_crossing_lines_four_cells():
    cells, _ = decompose_interior([LI((1, 0), 0), LI((0, 1), 0)])
    assert len(cells) == 4
    assert sorted(c.signs for c in cells) == [
        (GT, GT), (GT, LE), (LE, GT), (LE, LE)
    ]


def test_three_generic_lines_seven_cells():
    cells, _ = decompose_interior([LI((1, 0), 0), LI((0, 1), 0), LI((1, 1), 1)])
    assert len(cells) == 7


def test_duplicate_and_scaled_rows_are_merged():
    cells, stats = decompose_interior([LI((1, 0), 0), LI((2, 0), 0), LI((-3, 0), 0)])
    assert stats.n == 1 and len(cells) == 2


def test_region_bounds_values():
    assert region_bounds(3, 2) == (F(1), F(17, 2))
    assert region_bounds(0, 3) == (F(0), F(1))
    # in one dimension the upper closed form is n + 1, which is tight
    assert region_bounds(4, 1) == (F(4), F(5))


def test_region_bounds_validation():
    with pytest.raises(ValueError):
        region_bounds(-1, 2)
    with pytest.raises(ValueError):
        region_bounds(3, 0)


def test_integer_decompose_single_hyperplane():
    cells, _ = decompose_integer([LI((1,), 0)])
    by_sign = {c.signs: c.integer_witness for c in cells}
    assert by_sign == {(LE,): (F(0),), (GT,): (F(1),)}


def test_integer_decompose_shifted_sides():
    cells, _ = decompose_integer([LI((1,), 0), LI((1,), 1)])
    witnesses = sorted(c.integer_witness[0] for c in cells)
    assert witnesses == [0, 1, 2]


def test_integer_decompose_empty_middle_cell():
    cells, _ = decompose_integer([LI((3,), 1), LI((3,), 2)])
    assert len(cells) == 3
    middle = next(c for c in cells if c.signs == (GT, LE))
    assert middle.integer_witness is None


def test_lattice_key_shifts_ge_rows():
    # x >= 1 agrees with the open side of x > 0 on every integer
    assert lattice_key(LI((-1,), -1)) == ((1,), 0)
    assert lattice_key(LI((1,), 1)) == ((1,), 1)
    assert lattice_key(LI((1,), 1, strict=True)) == ((1,), 0)
    assert lattice_key(LI((-2, -4), -7)) == ((1, 2), 3)


def test_locate_examples():
    assert locate([LI((1,), 0)], (F(0),)) == (LE,)
    assert locate([LI((1,), 0)], (F(1),)) == (GT,)
    assert locate([LI((1, 0), 0), LI((0, 1), 0)], (F(-1), F(5))) == (LE, GT)


def test_locate_matches_exactly_one_cell():
    rng = random.Random(21)
    ineqs = [LI((1, 0), 0), LI((0, 1), 1), LI((1, -1), 0), LI((1, 2), 3)]
    cells, _ = decompose_interior(ineqs)
    for _ in range(200):
        p = (F(rng.randint(-40, 40), 4), F(rng.randint(-40, 40), 4))
        signs = locate(ineqs, p)
        assert sum(1 for c in cells if c.signs == signs) == 1


def test_interior_witnesses_are_strict():
    rng = random.Random(22)
    for _ in range(10):
        ineqs = []
        for _ in range(rng.randint(1, 5)):
            while True:
                a = (rng.randint(-3, 3), rng.randint(-3, 3))
                if any(a):
                    break
            ineqs.append(LI(a, rng.randint(-4, 4)))
        cells, stats = decompose_interior(ineqs)
        for cell in cells:
            for (a, b), side in zip(stats.keys, cell.signs):
                row = LI(a, b) if side == LE else LI(tuple(-c for c in a), -b)
                assert eval_sign(row, cell.interior_witness) is Sign.SATISFIED_STRICTLY


def test_integer_witnesses_lie_in_their_cell():
    cells, stats = decompose_integer([LI((1, 1), 2), LI((1, -1), 0), LI((0, 1), 3)])
    for cell in cells:
        w = cell.integer_witness
        if w is None:
            continue
        assert all(x.denominator == 1 for x in w)
        for (a, b), side in zip(stats.keys, cell.signs):
            v = sum(c * x for c, x in zip(a, w))
            assert v <= b if side == LE else v > b


def test_cell_count_matches_sign_vector_brute_force():
    rng = random.Random(23)
    for n in (2, 3, 4, 5):
        lines = generic_lines(rng, n)
        cells, stats = decompose_interior(lines)
        count = 0
        for sides in itertools.product((LE, GT), repeat=stats.n):
            rows = [
                LI(a, b) if s == LE else LI(tuple(-c for c in a), -b)
                for (a, b), s in zip(stats.keys, sides)
            ]
            if interior_point(rows, 2) is not None:
                count += 1
        assert len(cells) == count == 1 + n + n * (n - 1) // 2
        assert stats.region_bound_lower <= len(cells) <= stats.region_bound_upper


def test_permutation_of_inputs_yields_same_sign_vectors():
    rng = random.Random(24)
    ineqs = [LI((1, 0), 0), LI((0, 1), 1), LI((1, 1), 2), LI((1, -2), 1)]

    def cell_set(order):
        cells, stats = decompose_interior(order)
        return {frozenset(zip(stats.keys, c.signs)) for c in cells}

    base = cell_set(ineqs)
    for _ in range(5):
        perm = ineqs[:]
        rng.shuffle(perm)
        assert cell_set(perm) == base


def test_cell_cap_aborts():
    ineqs = [LI((1, 0), 0), LI((0, 1), 0), LI((1, 1), 1)]
    with pytest.raises(CellCapError):
        decompose_interior(ineqs, cap=3)


def test_interior_keys_ignore_strictness():
    assert interior_keys([LI((2,), 4, strict=True)]) == (((1,), 2),)
