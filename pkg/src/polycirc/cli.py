"""Command-line interface.

Subcommands: validate, decompose, volume, count, cover-max, cover-set,
reduce, render. All machine-readable numbers are exact integers or reduced
fractions p/q; `--decimal N` appends a rounded decimal column marked
approximate. Exit codes: 0 success, 1 usage or parse error, 2 unbounded
region, 3 incomplete integer search, 4 cell cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import shlex
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .arrangement import DEFAULT_CELL_CAP, decompose_integer, decompose_interior
from .circuit import (
    canonicalize_for_lattice,
    canonicalize_for_volume,
    clip_circuit,
    format_circuit,
    parse_circuit_with_diagnostics,
)
from .coverage import (
    CoverParams,
    MeasureMode,
    brute_force_min_cover,
    brute_force_opt,
    greedy_cover_lattice,
    greedy_cover_volume,
    greedy_max_lattice,
    greedy_max_volume,
    load_manifest,
    reduce_classical,
)
from .errors import (
    CellCapError,
    CircuitParseError,
    IlpIncompleteError,
    PolycircError,
    TooLargeError,
    UnboundedRegionError,
)
from .geometry import format_scalar, parse_scalar
from .measure import circuit_lattice_count, circuit_volume
from .oracles import OracleSuite, PluginBackend
from .render import render_svg


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def _decimal_column(value: Fraction, digits: int) -> str:
    scaled = value * 10**digits
    n = (2 * scaled.numerator + scaled.denominator) // (2 * scaled.denominator)
    sign = "-" if n < 0 else ""
    n = abs(n)
    if digits == 0:
        return f"{sign}{n}"
    return f"{sign}{n // 10**digits}.{n % 10**digits:0{digits}d}"


def _print_value(value, args):
    line = format_scalar(Fraction(value))
    if args.decimal is not None:
        line += f" ~ {_decimal_column(Fraction(value), args.decimal)}"
    print(line)


def _read_circuit(path: str):
    text = Path(path).read_text(encoding="utf-8")
    circuit, diags = parse_circuit_with_diagnostics(text)
    if circuit is None:
        raise CircuitParseError([d for d in diags if d.severity == "error"])
    for d in diags:
        print(f"{path}: {d}", file=sys.stderr)
    return circuit


def _cell_cap(args) -> int:
    if getattr(args, "cell_cap", None) is not None:
        return args.cell_cap
    env = os.environ.get("POLYCIRC_CELL_CAP")
    return int(env) if env else DEFAULT_CELL_CAP


def _suite(args) -> OracleSuite:
    suite = OracleSuite.default()
    for spec in getattr(args, "oracle", None) or []:
        key, _, value = spec.partition("=")
        if not value:
            raise _UsageError(f"--oracle expects key=value, got {spec!r}")
        if key == "volume":
            if value != "tri":
                suite.volume_backend = PluginBackend(shlex.split(value), "volume")
        elif key == "lattice":
            if value != "enum":
                suite.lattice_backend = PluginBackend(shlex.split(value), "lattice")
        elif key == "ilp":
            if value != "bb":
                suite.ilp_backend = PluginBackend(shlex.split(value), "ilp")
        else:
            raise _UsageError(f"unknown oracle kind {key!r}")
    return suite


def _apply_clip(circuit, args):
    if not getattr(args, "clip", None):
        return circuit
    vals = [parse_scalar(v) for v in args.clip]
    if len(vals) != 2 * circuit.dim:
        raise _UsageError(
            f"--clip needs {2 * circuit.dim} values for a dim-{circuit.dim} circuit"
        )
    bounds = [(vals[2 * i], vals[2 * i + 1]) for i in range(circuit.dim)]
    return clip_circuit(circuit, bounds)


def _cmd_validate(args):
    circuit = _read_circuit(args.file)
    print(f"ok: dim {circuit.dim}, {len(circuit.gates)} gates")
    if args.echo:
        sys.stdout.write(format_circuit(circuit))
    return 0


def _cmd_decompose(args):
    circuit = _read_circuit(args.file)
    cap = _cell_cap(args)
    if args.lattice:
        cc = canonicalize_for_lattice(circuit)
        cells, stats = decompose_integer(cc.leaves(), cap, _suite(args))
        for cell in cells:
            if cell.integer_witness is None:
                print(f"{cell.sign_string} -")
            else:
                coords = " ".join(format_scalar(x) for x in cell.integer_witness)
                print(f"{cell.sign_string} {coords}")
    else:
        cc = canonicalize_for_volume(circuit)
        cells, stats = decompose_interior(cc.leaves(), cap)
        for cell in cells:
            coords = " ".join(format_scalar(x) for x in cell.interior_witness)
            print(f"{cell.sign_string} {coords}")
    if args.stats:
        print(f"# n {stats.n}")
        print(f"# dim {stats.dim}")
        print(f"# cells {stats.cell_count}")
        print(f"# region_bound_lower {format_scalar(stats.region_bound_lower)}")
        print(f"# region_bound_upper {format_scalar(stats.region_bound_upper)}")
        print(f"# lp_calls {stats.lp_calls}")
        print(f"# ilp_calls {stats.ilp_calls}")
    return 0


def _measure_command(args, kind):
    circuit = _apply_clip(_read_circuit(args.file), args)
    suite = _suite(args)
    cap = _cell_cap(args)
    if kind == "volume":
        report = circuit_volume(circuit, cap, suite)
    else:
        report = circuit_lattice_count(circuit, cap, suite)
    _print_value(report.value, args)
    if args.report:
        print(f"# cells_total {report.cells_total}")
        print(f"# cells_selected {report.cells_selected}")
        print(f"# volume_oracle_calls {report.volume_oracle_calls}")
        print(f"# lattice_oracle_calls {report.lattice_oracle_calls}")
        print(f"# ilp_oracle_calls {report.ilp_oracle_calls}")
        print(f"# lp_calls {report.lp_calls}")
        print(f"# unbounded {'true' if report.unbounded else 'false'}")
    return 0


def _print_trace(inst, trace):
    for t, (idx, gain, cum) in enumerate(
        zip(trace.picks, trace.gains, trace.cumulative), start=1
    ):
        name = inst.names[idx - 1]
        print(
            f"{t} {idx} {name} {format_scalar(Fraction(gain))} "
            f"{format_scalar(Fraction(cum))}"
        )


def _cmd_cover_max(args):
    inst, k, _params = load_manifest(args.manifest)
    if k is None:
        raise _UsageError("cover-max needs a manifest with a k field")
    if inst.mode is MeasureMode.VOLUME:
        trace = greedy_max_volume(inst, k)
    else:
        trace = greedy_max_lattice(inst, k)
    _print_trace(inst, trace)
    print(f"# stop {trace.stop_reason}")
    if trace.padded_from is not None:
        print(f"# padded_from {trace.padded_from}")
    if args.verify_ratio:
        try:
            opt = brute_force_opt(inst, k)
        except TooLargeError:
            print("# ratio skipped (instance too large)")
            return 0
        print(f"# opt {format_scalar(Fraction(opt))}")
        if opt == 0:
            print("# ratio n/a")
        else:
            print(f"# ratio {format_scalar(Fraction(trace.value) / Fraction(opt))}")
    return 0


def _cmd_cover_set(args):
    inst, _k, params = load_manifest(args.manifest)
    if params is None:
        raise _UsageError("cover-set needs a manifest with alpha/beta fields")
    if inst.mode is MeasureMode.VOLUME:
        trace = greedy_cover_volume(inst, params)
    else:
        trace = greedy_cover_lattice(inst, params)
    _print_trace(inst, trace)
    print(f"# stop {trace.stop_reason}")
    print(f"# k {len(trace.picks)}")
    if args.verify_ratio:
        try:
            h = brute_force_min_cover(inst, params)
        except TooLargeError:
            print("# optimal_cover_size skipped (instance too large)")
            return 0
        print(f"# optimal_cover_size {h}")
        import math

        bound = (1 + Fraction(math.log(1 / params.alpha)) + Fraction(1, 10**9)) * h
        print(f"# k_bound_ok {'true' if len(trace.picks) <= bound else 'false'}")
    return 0


def _cmd_reduce(args):
    data = json.loads(Path(args.sets).read_text(encoding="utf-8"))
    n = int(data["n"])
    sets = [list(map(int, s)) for s in data["sets"]]
    inst = reduce_classical(sets, n)
    manifest = {
        "dim": inst.dim,
        "mode": inst.mode.value,
        "regions": [
            {"name": name, "circuit": format_circuit(region)}
            for name, region in zip(inst.names, inst.regions)
        ],
    }
    print(json.dumps(manifest, indent=2, sort_keys=True))
    return 0


def _cmd_render(args):
    circuit = _read_circuit(args.file)
    vals = [parse_scalar(v) for v in args.bbox]
    bounds = [(vals[2 * i], vals[2 * i + 1]) for i in range(len(vals) // 2)]
    if len(vals) != 4:
        raise _UsageError("--bbox needs 4 values: x_lo x_hi y_lo y_hi")
    svg = render_svg(circuit, bounds)
    if args.out:
        Path(args.out).write_bytes(svg.encode("utf-8"))
    else:
        sys.stdout.write(svg)
    return 0


def _build_parser() -> _Parser:
    p = _Parser(prog="polycirc", description=__doc__)
    p.add_argument("--version", action="version", version=f"polycirc {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common_measure(sp):
        sp.add_argument("--clip", nargs="+", metavar="BOUND",
                        help="closed box to intersect first: x1_lo x1_hi ... xd_lo xd_hi")
        sp.add_argument("--report", action="store_true",
                        help="print cell and oracle-call statistics")
        sp.add_argument("--decimal", type=int, metavar="N",
                        help="append an approximate decimal column with N digits")
        sp.add_argument("--oracle", action="append", metavar="KIND=BACKEND",
                        help="volume=tri|CMD, lattice=enum|CMD, ilp=bb|CMD")
        sp.add_argument("--cell-cap", type=int,
                        help="abort if the decomposition exceeds this many cells")

    sp = sub.add_parser("validate", help="parse a circuit file and report diagnostics")
    sp.add_argument("file")
    sp.add_argument("--echo", action="store_true", help="print the canonical text form")
    sp.set_defaults(fn=_cmd_validate)

    sp = sub.add_parser("decompose", help="list atomic cells with witnesses")
    sp.add_argument("file")
    sp.add_argument("--lattice", action="store_true",
                    help="use lattice-aligned hyperplanes and integer witnesses")
    sp.add_argument("--stats", action="store_true")
    sp.add_argument("--oracle", action="append", metavar="KIND=BACKEND")
    sp.add_argument("--cell-cap", type=int)
    sp.set_defaults(fn=_cmd_decompose)

    sp = sub.add_parser("volume", help="exact volume of the circuit region")
    sp.add_argument("file")
    common_measure(sp)
    sp.set_defaults(fn=lambda a: _measure_command(a, "volume"))

    sp = sub.add_parser("count", help="exact lattice-point count of the region")
    sp.add_argument("file")
    common_measure(sp)
    sp.set_defaults(fn=lambda a: _measure_command(a, "count"))

    sp = sub.add_parser("cover-max", help="greedy pick-k maximum coverage")
    sp.add_argument("manifest")
    sp.add_argument("--verify-ratio", action="store_true",
                    help="also run the brute-force optimum and print the ratio")
    sp.set_defaults(fn=_cmd_cover_max)

    sp = sub.add_parser("cover-set", help="greedy fractional set cover")
    sp.add_argument("manifest")
    sp.add_argument("--verify-ratio", action="store_true")
    sp.set_defaults(fn=_cmd_cover_set)

    sp = sub.add_parser("reduce", help="embed a classical coverage instance in the plane")
    sp.add_argument("sets", help="JSON file: {\"n\": int, \"sets\": [[...], ...]}")
    sp.set_defaults(fn=_cmd_reduce)

    sp = sub.add_parser("render", help="render a 2D circuit region to SVG")
    sp.add_argument("file")
    sp.add_argument("--bbox", nargs=4, required=True, metavar="B",
                    help="x_lo x_hi y_lo y_hi")
    sp.add_argument("-o", "--out", help="output path (default: stdout)")
    sp.set_defaults(fn=_cmd_render)

    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"polycirc: {e}", file=sys.stderr)
        return 1
    try:
        return args.fn(args)
    except _UsageError as e:
        print(f"polycirc: {e}", file=sys.stderr)
        return 1
    except CircuitParseError as e:
        for d in e.diagnostics:
            print(str(d), file=sys.stderr)
        return 1
    except UnboundedRegionError as e:
        print(f"unbounded region: {e}", file=sys.stderr)
        return 2
    except IlpIncompleteError as e:
        print(f"integer search incomplete: {e}", file=sys.stderr)
        return 3
    except CellCapError as e:
        print(f"cell cap exceeded: {e}", file=sys.stderr)
        return 4
    except (PolycircError, OSError, ValueError, KeyError, json.JSONDecodeError) as e:
        print(f"polycirc: {e}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
