"""Command-line driver: project, verify, bench, compile.

Exit codes: 0 success, 1 verification failure, 2 usage or configuration
error, 3 engine-internal invariant breach.  All CSV output is deterministic
for a fixed configuration (including seeds) except wall-clock columns.
"""

from __future__ import annotations

import argparse
import csv
import statistics
import sys
import time
from pathlib import Path
from typing import Optional, Sequence, TextIO

import numpy as np

from .engines import ENGINE_NAMES, applicable_engines, compute_amplitude
from .errors import CircuitParseError, LatticeProjError
from .evaluate import lattice_width_profile
from .factorize import ProjectionSpec, load_angles
from .graph import (
    ClusterGraph,
    build_cross_chain,
    build_lattice,
    build_line,
    fixture_path,
    load_graph,
    save_graph,
)
from .mbqc import (
    compile_circuit,
    parse_circuit,
    pattern_rotation_angles,
    rotation_projector_to_spec,
)


class ConfigError(Exception):
    """Bad flags, missing files, or an engine that does not fit the graph."""


def _fmt_float(v: float) -> str:
    v = v + 0.0  # normalize -0.0
    s = f"{v:.10g}"
    if "." not in s and "e" not in s and "inf" not in s and "nan" not in s:
        s += ".0"
    return s


def _resolve_graph(args: argparse.Namespace) -> tuple[str, ClusterGraph]:
    if args.builder and args.graph:
        raise ConfigError("give either --builder or --graph, not both")
    if args.builder:
        kind, _, rest = args.builder.partition(":")
        try:
            if kind == "line":
                return args.builder, build_line(int(rest))
            if kind == "cross":
                return args.builder, build_cross_chain(int(rest))
            if kind == "lattice":
                m, _, n = rest.partition("x")
                return args.builder, build_lattice(int(m), int(n))
        except (ValueError, LatticeProjError) as exc:
            raise ConfigError(f"bad --builder {args.builder!r}: {exc}")
        raise ConfigError(f"unknown builder {kind!r} (use line:N, cross:K, lattice:MxN)")
    if args.graph:
        path = Path(args.graph)
        if not path.exists():
            packaged = fixture_path(path.name)
            if packaged.exists():
                path = packaged
            else:
                raise ConfigError(f"graph file {args.graph!r} not found")
        try:
            return path.name, load_graph(path)
        except LatticeProjError as exc:
            raise ConfigError(f"bad graph file {path}: {exc}")
    raise ConfigError("a graph is required (--builder or --graph)")


def _resolve_angles(args: argparse.Namespace, n: int) -> ProjectionSpec:
    if args.random:
        rng = np.random.default_rng(args.seed)
        return ProjectionSpec.random(n, rng)
    if not args.angles:
        raise ConfigError("angles are required (--angles or --random)")
    if args.angles.startswith("all:"):
        try:
            theta, phi = (float(x) for x in args.angles[4:].split(","))
        except ValueError:
            raise ConfigError(f"bad --angles {args.angles!r} (use all:THETA,PHI)")
        return ProjectionSpec.constant(n, theta, phi)
    path = Path(args.angles)
    if not path.exists():
        raise ConfigError(f"angle file {args.angles!r} not found")
    try:
        spec = load_angles(path)
    except LatticeProjError as exc:
        raise ConfigError(f"bad angle file {path}: {exc}")
    if spec.n != n:
        raise ConfigError(f"angle file holds {spec.n} qubits, graph has {n}")
    return spec


def _open_output(path: Optional[str]) -> TextIO:
    return open(path, "w", newline="") if path else sys.stdout


# ---------------------------------------------------------------------------
# project


def cmd_project(args: argparse.Namespace) -> int:
    name, g = _resolve_graph(args)
    spec = _resolve_angles(args, g.n)
    if args.engine not in ENGINE_NAMES:
        raise ConfigError(f"unknown engine {args.engine!r} (choose from {ENGINE_NAMES})")
    if args.engine not in applicable_engines(g):
        raise ConfigError(f"engine {args.engine!r} does not fit graph {name}")
    report = compute_amplitude(g, spec, args.engine, ordering=args.ordering)
    line = f"{_fmt_float(report.amplitude.real)} {_fmt_float(report.amplitude.imag)}"
    if args.output:
        Path(args.output).write_text(line + "\n")
    else:
        print(line)
    return 0


# ---------------------------------------------------------------------------
# verify


def run_verify(
    g: ClusterGraph,
    engines: Sequence[str],
    trials: int,
    seed: int,
    ordering: str = "auto",
) -> tuple[list[dict], float]:
    """Per-trial amplitudes for every engine plus the worst pairwise delta."""
    rows = []
    worst = 0.0
    for trial in range(trials):
        trial_seed = seed + trial
        spec = ProjectionSpec.random(g.n, np.random.default_rng(trial_seed))
        amps = {
            e: compute_amplitude(g, spec, e, ordering=ordering).amplitude
            for e in engines
        }
        values = list(amps.values())
        delta = max(
            (abs(a - b) for i, a in enumerate(values) for b in values[i + 1 :]),
            default=0.0,
        )
        worst = max(worst, delta)
        row: dict = {"trial": trial, "seed": trial_seed}
        for e in engines:
            key = e.replace("-", "_")
            row[f"{key}_re"] = repr(amps[e].real)
            row[f"{key}_im"] = repr(amps[e].imag)
        row["max_abs_delta"] = repr(delta)
        rows.append(row)
    return rows, worst


def cmd_verify(args: argparse.Namespace) -> int:
    name, g = _resolve_graph(args)
    if args.trials < 1:
        raise ConfigError("--trials must be at least 1")
    available = applicable_engines(g)
    if args.engines:
        engines = [e.strip() for e in args.engines.split(",")]
        for e in engines:
            if e not in ENGINE_NAMES:
                raise ConfigError(f"unknown engine {e!r}")
            if e not in available:
                raise ConfigError(f"engine {e!r} does not fit graph {name}")
    else:
        engines = available
    if len(engines) < 2:
        raise ConfigError("verification needs at least two engines")

    rows, worst = run_verify(g, engines, args.trials, args.seed, args.ordering)
    out = _open_output(args.output)
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    if worst > args.tolerance:
        print(
            f"FAIL: max engine delta {worst:.3e} exceeds tolerance {args.tolerance:.3e}",
            file=sys.stderr,
        )
        return 1
    return 0


# ---------------------------------------------------------------------------
# bench


def bench_point(
    name: str,
    g: ClusterGraph,
    engines: Sequence[str],
    trials: int,
    seed: int,
) -> list[dict]:
    """Time each engine over the same per-trial random projections.

    Timing runs are sequential on purpose; medians keep stray scheduling
    noise out of the comparisons.
    """
    specs = [
        ProjectionSpec.random(g.n, np.random.default_rng(seed + t)) for t in range(trials)
    ]
    rows = []
    for engine in engines:
        times = []
        muls: list[int] = []
        adds: list[int] = []
        livs: list[int] = []
        for spec in specs:
            start = time.perf_counter()
            report = compute_amplitude(g, spec, engine)
            times.append(time.perf_counter() - start)
            muls.append(report.mul_count)
            adds.append(report.add_count)
            livs.append(report.max_live_terms)
        rows.append(
            {
                "graph": name,
                "qubits": g.n,
                "engine": engine,
                "trials": trials,
                "median_s": repr(statistics.median(times)),
                "mean_s": repr(statistics.fmean(times)),
                "stddev_s": repr(statistics.pstdev(times)),
                "mul_count": int(statistics.median(muls)),
                "add_count": int(statistics.median(adds)),
                "max_live_terms": int(statistics.median(livs)),
            }
        )
    return rows


def bench_fig10(trials: int = 25, seed: int = 0) -> list[dict]:
    """Scaling study on the 4/7/12-qubit fixtures, three engines per point."""
    rows = []
    for fixture in ("fig10_a4.graph", "fig10_b7.graph", "fig10_c12.graph"):
        g = load_graph(fixture_path(fixture))
        rows.extend(
            bench_point(fixture, g, ("statevector", "sweep", "line-recursion"), trials, seed)
        )
    return rows


def bench_line_scaling(trials: int = 25, seed: int = 0) -> list[dict]:
    rows = []
    for n in (64, 128, 256):
        g = build_line(n)
        rows.extend(bench_point(f"line:{n}", g, ("line-recursion", "sweep"), trials, seed))
    return rows


def bench_lattice_width(seed: int = 0, height: int = 2) -> list[dict]:
    return lattice_width_profile(height, range(2, 7), seed)


def cmd_bench(args: argparse.Namespace) -> int:
    if args.suite == "fig10":
        rows = bench_fig10(args.trials, args.seed)
    elif args.suite == "line-scaling":
        rows = bench_line_scaling(args.trials, args.seed)
    elif args.suite == "lattice-width":
        rows = bench_lattice_width(args.seed)
    else:
        raise ConfigError(f"unknown suite {args.suite!r}")
    out = _open_output(args.output)
    try:
        writer = csv.DictWriter(out, fieldnames=list(rows[0].keys()))
        writer.writeheader()
        writer.writerows(rows)
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


# ---------------------------------------------------------------------------
# compile


def cmd_compile(args: argparse.Namespace) -> int:
    path = Path(args.circuit)
    if not path.exists():
        raise ConfigError(f"circuit file {args.circuit!r} not found")
    try:
        gates = parse_circuit(path.read_text())
        pattern = compile_circuit(gates)
    except CircuitParseError as exc:
        raise ConfigError(f"cannot compile {args.circuit}: {exc}")
    graph_path = Path(args.out + ".graph")
    angles_path = Path(args.out + ".angles")
    save_graph(pattern.graph, graph_path, header=f"pattern compiled from {path.name}")
    rotations = pattern_rotation_angles(pattern)
    lines = [f"# projector angles (theta phi) per qubit; outputs default to <+|"]
    for q, rot in enumerate(rotations):
        theta, phi = rotation_projector_to_spec(rot)
        role = "output" if q in pattern.outputs else "measured"
        lines.append(f"{theta!r} {phi!r}  # qubit {q} ({role}, rotation {rot!r})")
    angles_path.write_text("\n".join(lines) + "\n")
    for wire, q in enumerate(pattern.inputs):
        print(f"input wire {wire} -> qubit {q}")
    for wire, q in enumerate(pattern.outputs):
        print(f"output wire {wire} -> qubit {q}")
    print(f"wrote {graph_path} and {angles_path}")
    return 0


# ---------------------------------------------------------------------------
# argument parsing


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--builder", help="line:N | cross:K | lattice:MxN")
    p.add_argument("--graph", help="graph file path (packaged fixtures resolve by name)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="latticeproj",
        description="Local projections on cluster states, factorized and brute force.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("project", help="print one amplitude as 're im'")
    _add_graph_args(p)
    p.add_argument("--angles", help="all:THETA,PHI or an angle file path")
    p.add_argument("--random", action="store_true", help="draw angles uniform on [0, 2pi)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--engine", default="sweep", help=f"one of {', '.join(ENGINE_NAMES)}")
    p.add_argument("--ordering", default="auto",
                   choices=("auto", "as-built", "row-major", "anti-diagonal"))
    p.add_argument("--output", help="write the amplitude here instead of stdout")
    p.set_defaults(func=cmd_project)

    p = sub.add_parser("verify", help="cross-check engines over random trials (CSV)")
    _add_graph_args(p)
    p.add_argument("--engines", help="comma-separated engine list (default: all applicable)")
    p.add_argument("--trials", type=int, default=31)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tolerance", type=float, default=1e-9)
    p.add_argument("--ordering", default="auto",
                   choices=("auto", "as-built", "row-major", "anti-diagonal"))
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("bench", help="timing and op-count tables (CSV)")
    p.add_argument("--suite", required=True,
                   choices=("fig10", "line-scaling", "lattice-width"))
    p.add_argument("--trials", type=int, default=25)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--output", help="CSV path (default stdout)")
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("compile", help="compile a circuit file to pattern files")
    p.add_argument("--circuit", required=True, help="circuit DSL file")
    p.add_argument("--out", required=True, help="output prefix for .graph/.angles")
    p.set_defaults(func=cmd_compile)

    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except LatticeProjError as exc:
        print(f"engine error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
