"""Greedy coverage solvers over circuit regions, with brute-force verifiers.

Two problem families share one greedy engine: pick-k maximum coverage
(budgeted, value measured as volume or lattice count) and fractional set
cover (pick until a (1-alpha)(1-beta) share of the total union measure is
reached). Every marginal gain is recomputed from scratch through the
measure pipeline; there is no incremental caching, so oracle-call counts
mirror the per-step union measures.

Also here: the instance generator that embeds a classical set-cover input
into the plane (one unit square per universe element, plus a shared
zero-area rectangle), making geometric union area equal classical union
cardinality.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Optional, Sequence, Union

from .circuit import PolyhedraCircuit, merge_as_union, parse_circuit, union_circuit
from .errors import TooLargeError
from .geometry import HPolyhedron, LinearInequality, box, parse_scalar
from .measure import circuit_lattice_count, circuit_volume

BRUTE_FORCE_GUARD = 10**5


class MeasureMode(Enum):
    VOLUME = "volume"
    LATTICE = "lattice"


@dataclass(frozen=True)
class CoverageInstance:
    """A family of candidate regions sharing one ambient dimension."""

    dim: int
    regions: tuple[PolyhedraCircuit, ...]
    names: tuple[str, ...]
    mode: MeasureMode

    def __post_init__(self):
        if not self.regions:
            raise ValueError("instance needs at least one region")
        if len(self.names) != len(self.regions):
            raise ValueError("one name per region required")
        for r in self.regions:
            if r.dim != self.dim:
                raise ValueError("region dimension mismatch")

    @classmethod
    def of(cls, regions, mode: MeasureMode, names=None, dim=None):
        regions = tuple(regions)
        if names is None:
            names = tuple(f"S{i}" for i in range(1, len(regions) + 1))
        if dim is None:
            dim = regions[0].dim
        return cls(dim, regions, tuple(names), mode)


@dataclass(frozen=True)
class CoverParams:
    """Fractional set-cover parameters: alpha in (0,1), beta in [0,1)."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        if not 0 < self.alpha < 1:
            raise ValueError("alpha must lie in (0, 1)")
        if not 0 <= self.beta < 1:
            raise ValueError("beta must lie in [0, 1)")


@dataclass(frozen=True)
class GreedyTrace:
    """Pick-by-pick record of one greedy run.

    picks are 1-based region indices in pick order; cumulative[t] is the
    union measure after pick t+1. stop_reason is "budget" or "target";
    padded_from marks the first 1-based step filled by zero-gain padding,
    when the budget outlived the instance's useful picks.
    """

    picks: tuple[int, ...]
    gains: tuple[Union[Fraction, int], ...]
    cumulative: tuple[Union[Fraction, int], ...]
    stop_reason: str
    padded_from: Optional[int] = None

    @property
    def value(self):
        return self.cumulative[-1] if self.cumulative else 0


def measure_subset(inst: CoverageInstance, indices: Sequence[int], mode=None):
    """Union measure of the regions at the given 0-based indices (0 if empty)."""
    mode = mode or inst.mode
    if not indices:
        return Fraction(0) if mode is MeasureMode.VOLUME else 0
    merged = merge_as_union([inst.regions[i] for i in indices])
    if mode is MeasureMode.VOLUME:
        return circuit_volume(merged).value
    return circuit_lattice_count(merged).value


def _greedy(inst, mode, k=None, target=None) -> GreedyTrace:
    m = len(inst.regions)
    budget = m if k is None else k
    picked: list[int] = []
    gains: list = []
    cumulative: list = []
    value = Fraction(0) if mode is MeasureMode.VOLUME else 0
    padded_from = None
    while len(picked) < budget:
        if target is not None and value >= target:
            return GreedyTrace(
                tuple(i + 1 for i in picked),
                tuple(gains),
                tuple(cumulative),
                "target",
            )
        best = None
        for j in range(m):
            if j in picked:
                continue
            v = measure_subset(inst, picked + [j], mode)
            gain = v - value
            if best is None or gain > best[1]:
                best = (j, gain, v)
        j, gain, v = best
        if target is None and gain == 0:
            # Nothing left to gain: pad the remaining budget with the lowest
            # unused indices so the trace still has k picks.
            padded_from = len(picked) + 1
            for jj in range(m):
                if len(picked) >= budget:
                    break
                if jj not in picked:
                    picked.append(jj)
                    gains.append(gain - gain)  # zero of the right type
                    cumulative.append(value)
            break
        picked.append(j)
        gains.append(gain)
        value = v
        cumulative.append(value)
    if target is not None:
        if value < target:
            raise RuntimeError("cover greedy exhausted all regions below target")
        return GreedyTrace(
            tuple(i + 1 for i in picked), tuple(gains), tuple(cumulative), "target"
        )
    return GreedyTrace(
        tuple(i + 1 for i in picked),
        tuple(gains),
        tuple(cumulative),
        "budget",
        padded_from,
    )


def greedy_max_volume(inst: CoverageInstance, k: int) -> GreedyTrace:
    """k greedy picks maximising marginal union volume (ties: lowest index)."""
    if not 1 <= k <= len(inst.regions):
        raise ValueError("k must satisfy 1 <= k <= m")
    return _greedy(inst, MeasureMode.VOLUME, k=k)


def greedy_max_lattice(inst: CoverageInstance, k: int) -> GreedyTrace:
    """k greedy picks maximising marginal lattice-point coverage."""
    if not 1 <= k <= len(inst.regions):
        raise ValueError("k must satisfy 1 <= k <= m")
    return _greedy(inst, MeasureMode.LATTICE, k=k)


def greedy_cover_lattice(inst: CoverageInstance, params: CoverParams) -> GreedyTrace:
    """Greedy picks until coverage reaches (1-alpha)(1-beta) of the total count."""
    total = measure_subset(inst, range(len(inst.regions)), MeasureMode.LATTICE)
    target = (1 - params.alpha) * (1 - params.beta) * total
    return _greedy(inst, MeasureMode.LATTICE, target=target)


def greedy_cover_volume(inst: CoverageInstance, params: CoverParams) -> GreedyTrace:
    """Greedy picks until coverage reaches (1-alpha)(1-beta) of the total volume."""
    total = measure_subset(inst, range(len(inst.regions)), MeasureMode.VOLUME)
    target = (1 - params.alpha) * (1 - params.beta) * total
    return _greedy(inst, MeasureMode.VOLUME, target=target)


def brute_force_opt(inst: CoverageInstance, k: int):
    """Exact optimum of the pick-k problem by trying every k-subset."""
    m = len(inst.regions)
    if not 1 <= k <= m:
        raise ValueError("k must satisfy 1 <= k <= m")
    if math.comb(m, k) > BRUTE_FORCE_GUARD:
        raise TooLargeError(f"C({m},{k}) exceeds the brute-force guard")
    return max(measure_subset(inst, c) for c in combinations(range(m), k))


def brute_force_min_cover(inst: CoverageInstance, params: CoverParams) -> int:
    """Smallest subset size whose union measure reaches (1-beta) of the total."""
    m = len(inst.regions)
    if 2**m > BRUTE_FORCE_GUARD:
        raise TooLargeError(f"2^{m} exceeds the brute-force guard")
    total = measure_subset(inst, range(m))
    target = (1 - params.beta) * total
    for size in range(m + 1):
        for c in combinations(range(m), size):
            if measure_subset(inst, c) >= target:
                return size
    raise RuntimeError("the full set must reach any (1-beta) target")


def reduce_classical(sets: Sequence, n: int) -> CoverageInstance:
    """Embed a classical coverage instance over universe {1..n} into the plane.

    Element j becomes the unit square with lower-left corner (2(j-1), 0);
    every region also contains a shared zero-height rectangle at height
    1/2, so the area of any union of regions equals the cardinality of the
    corresponding set union.
    """
    if n < 1:
        raise ValueError("universe size must be at least 1")
    for s in sets:
        for e in s:
            if not 1 <= int(e) <= n:
                raise ValueError(f"element {e} outside universe 1..{n}")
    strip = HPolyhedron(
        2,
        (
            LinearInequality((-1, 0), 0),
            LinearInequality((1, 0), 2 * n - 1),
            LinearInequality((0, 2), 1),
            LinearInequality((0, -2), -1),
        ),
    )
    regions = []
    for s in sets:
        squares = [box([(2 * (j - 1), 2 * j - 1), (0, 1)]) for j in sorted(set(s))]
        regions.append(union_circuit([strip] + squares))
    return CoverageInstance.of(regions, MeasureMode.VOLUME)


def load_manifest(path) -> tuple[CoverageInstance, Optional[int], Optional[CoverParams]]:
    """Read a JSON instance manifest; returns (instance, k, params).

    Schema: {"dim": d, "mode": "volume"|"lattice",
             "regions": [{"name": str, "circuit": path-or-inline-text}],
             "k": int} or {"alpha": "p/q", "beta": "p/q"}.
    A circuit value containing a newline is inline text; otherwise it is a
    path resolved relative to the manifest file.
    """
    path = Path(path)
    data = json.loads(path.read_text(encoding="utf-8"))
    dim = int(data["dim"])
    mode = MeasureMode(data["mode"])
    regions = []
    names = []
    for entry in data["regions"]:
        names.append(str(entry["name"]))
        src = entry["circuit"]
        if "\n" in src:
            text = src
        else:
            text = (path.parent / src).read_text(encoding="utf-8")
        regions.append(parse_circuit(text))
    inst = CoverageInstance(dim, tuple(regions), tuple(names), mode)
    k = int(data["k"]) if "k" in data else None
    params = None
    if "alpha" in data or "beta" in data:
        params = CoverParams(
            parse_scalar(str(data.get("alpha", "1/2"))),
            parse_scalar(str(data.get("beta", "0"))),
        )
    return inst, k, params
