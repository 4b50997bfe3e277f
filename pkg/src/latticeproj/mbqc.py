"""Compile small gate circuits to measurement patterns and verify them.

A measurement pattern is a cluster graph plus a set of measured qubits, each
projected on <theta|_R = <0| H exp(-i theta Z), plus designated input and
output qubits.  Simulation is post-selected: the fixed-outcome branch is
taken as-is, no feed-forward corrections.  Every compiled pattern carries
its declared gate semantics as an explicit matrix (logical wires ordered as
the pattern's inputs, first wire = most significant bit); equivalence checks
are up to one nonzero scalar, since post-selection makes norms non-physical.

Notes on the CPhase pattern (square with two diagonal tails, measurement
angles +theta/4 and -theta/4): with the control qubit left untouched, any
fixed-projector pattern realizes a controlled block of determinant +-1, so
the pattern implements diag(1, 1, e^{-i theta/2}, e^{+i theta/2}) - the
CPhase gate times a phase on the control branch that circuit decompositions
absorb into their global phase.  That exact matrix is what the pattern
declares.  compile_cphase_exact appends a two-qubit wire on the control that
turns the residual into a true global phase.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    ArityMismatch,
    CircuitParseError,
    QubitCollision,
    SizeMismatch,
    ZeroBranch,
)
from .factorize import ProjectionSpec
from .graph import ClusterGraph, build_from_edges

HADAMARD = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / math.sqrt(2.0)
PLUS = np.array([1.0, 1.0], dtype=complex) / math.sqrt(2.0)


def rz_matrix(theta: float) -> np.ndarray:
    """R_Z(theta) = exp(-i theta Z)."""
    return np.diag([np.exp(-1j * theta), np.exp(1j * theta)])


def rx_matrix(theta: float) -> np.ndarray:
    """R_X(theta) = exp(-i theta X)."""
    return math.cos(theta) * np.eye(2) - 1j * math.sin(theta) * np.array(
        [[0.0, 1.0], [1.0, 0.0]]
    )


CZ_MATRIX = np.diag([1.0, 1.0, 1.0, -1.0]).astype(complex)
CNOT_MATRIX = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)


def cphase_matrix(theta: float) -> np.ndarray:
    return np.diag([1.0, 1.0, 1.0, np.exp(1j * theta)]).astype(complex)


def rotation_bra(theta: float) -> np.ndarray:
    """<theta|_R = <0| H exp(-i theta Z), kept with its exact global phase."""
    return np.array([np.exp(-1j * theta), np.exp(1j * theta)], dtype=complex) / math.sqrt(2.0)


def rotation_projector_to_spec(theta: float) -> tuple[float, float]:
    """(theta_p, phi_p) whose bra is proportional to <theta|_R.

    <theta|_R = e^{-i theta} (cos(pi/4)<0| + e^{2 i theta} sin(pi/4)<1|),
    so the C/S parameterization drops one phase of e^{-i theta} per qubit.
    """
    return (math.pi / 4.0, 2.0 * theta)


# ---------------------------------------------------------------------------
# patterns


@dataclass
class MeasurementPattern:
    """Graph + fixed projectors + input/output designation + declared gate."""

    graph: ClusterGraph
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    measurements: dict[int, float]
    semantics: np.ndarray
    name: str = ""

    def __post_init__(self) -> None:
        qubits = set(range(self.graph.n))
        measured = set(self.measurements)
        if measured & set(self.outputs):
            raise SizeMismatch("output qubits must not carry projectors")
        if measured | set(self.outputs) != qubits:
            raise SizeMismatch("measured and output qubits must cover the pattern")
        if not set(self.inputs) <= qubits:
            raise SizeMismatch("input qubits must belong to the graph")
        dim = 1 << len(self.inputs)
        if self.semantics.shape != (1 << len(self.outputs), dim):
            raise SizeMismatch("declared semantics has the wrong dimensions")


@dataclass(frozen=True)
class Gate:
    kind: str
    qubits: tuple[int, ...]
    angle: Optional[float] = None


def compile_z_rotation(theta: float) -> MeasurementPattern:
    """Single-qubit teleportation: 2-qubit line, input measured at theta.

    The output qubit carries H R_Z(theta) |psi>, up to a nonzero scalar.
    """
    graph = build_from_edges(2, [(0, 1)])
    return MeasurementPattern(
        graph=graph,
        inputs=(0,),
        outputs=(1,),
        measurements={0: theta},
        semantics=HADAMARD @ rz_matrix(theta),
        name=f"z-rotation({theta:g})",
    )


def compile_rotation(theta: float, zeta: float, xi: float) -> MeasurementPattern:
    """Arbitrary rotation: 4-qubit line measured at (theta, zeta, xi).

    The fourth qubit carries H R_Z(xi) R_X(zeta) R_Z(theta) |psi>.
    """
    graph = build_from_edges(4, [(0, 1), (1, 2), (2, 3)])
    return MeasurementPattern(
        graph=graph,
        inputs=(0,),
        outputs=(3,),
        measurements={0: theta, 1: zeta, 2: xi},
        semantics=HADAMARD @ rz_matrix(xi) @ rx_matrix(zeta) @ rz_matrix(theta),
        name=f"rotation({theta:g},{zeta:g},{xi:g})",
    )


def compile_cnot() -> MeasurementPattern:
    """The I-shape pattern: two 5-qubit wires bridged at their middles.

    All non-output qubits are measured at theta = 0 (<+|).  Each wire
    teleports its input through two identity hops to the middle, the bridge
    edge applies the entangling phase there, and two more hops deliver the
    result, so the outputs carry exactly CZ |psi>|phi> - the CNOT of the
    figure with its control in the X basis.
    """
    edges = [(0, 1), (1, 2), (2, 3), (3, 4), (5, 6), (6, 7), (7, 8), (8, 9), (2, 7)]
    graph = build_from_edges(10, edges)
    return MeasurementPattern(
        graph=graph,
        inputs=(0, 5),
        outputs=(4, 9),
        measurements={q: 0.0 for q in (0, 1, 2, 3, 5, 6, 7, 8)},
        semantics=CZ_MATRIX.copy(),
        name="cnot-I-shape",
    )


def _cphase_core(theta: float) -> tuple[ClusterGraph, dict[int, float]]:
    # Square 1-2-3-4 with tails 0-1 and 3-5 on the diagonal corners; the
    # target flows 0 -> 1 -> 4 -> 3 -> 5, the control is corner 2.
    graph = build_from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (1, 4), (3, 5)])
    measurements = {0: theta / 4.0, 1: 0.0, 4: -theta / 4.0, 3: 0.0}
    return graph, measurements


def compile_cphase(theta: float) -> MeasurementPattern:
    """The square-with-two-tails CPhase pattern, angles +-theta/4.

    Conditioned on the control value c, the target wire sees
    H Z^c [H R_Z(-theta/4)] H Z^c [H R_Z(theta/4)], which collapses to the
    identity for c = 0 and to R_Z(theta/2) for c = 1.  The declared
    semantics is therefore diag(1, 1, e^{-i theta/2}, e^{+i theta/2}):
    CPhase(theta) times the control-branch phase discussed in the module
    docstring.  At theta = pi this is the CZ gate up to that recorded
    phase (see compile_cphase_exact for the fully corrected variant).
    """
    graph, measurements = _cphase_core(theta)
    half = np.exp(-0.5j * theta)
    semantics = np.diag([1.0, 1.0, half, np.conj(half)]).astype(complex)
    return MeasurementPattern(
        graph=graph,
        inputs=(2, 0),
        outputs=(2, 5),
        measurements=measurements,
        semantics=semantics,
        name=f"cphase({theta:g})",
    )


def compile_cphase_exact(theta: float) -> MeasurementPattern:
    """CPhase pattern with a control-side wire absorbing the residual phase.

    Teleporting the control through two extra qubits measured at
    (theta/4, 0) multiplies its branches by R_Z(theta/4), which turns the
    declared semantics into e^{-i theta/4} CPhase(theta): the gate exactly,
    up to a true global phase.
    """
    graph, measurements = _cphase_core(theta)
    edges = list(graph.sorted_edges()) + [(2, 6), (6, 7)]
    graph = build_from_edges(8, edges)
    measurements = dict(measurements)
    measurements[2] = theta / 4.0
    measurements[6] = 0.0
    semantics = np.exp(-0.25j * theta) * cphase_matrix(theta)
    return MeasurementPattern(
        graph=graph,
        inputs=(2, 0),
        outputs=(7, 5),
        measurements=measurements,
        semantics=semantics,
        name=f"cphase-exact({theta:g})",
    )


# ---------------------------------------------------------------------------
# composition


def _apply_to_axes(tensor: np.ndarray, mat: np.ndarray, axes: Sequence[int]) -> np.ndarray:
    """Contract a 2^k x 2^k operator onto the given tensor axes, in place order."""
    k = len(axes)
    t = mat.reshape([2] * (2 * k))
    out = np.tensordot(t, tensor, axes=(list(range(k, 2 * k)), list(axes)))
    return np.moveaxis(out, range(k), axes)


def _embed_operator(mat: np.ndarray, positions: Sequence[int], width: int) -> np.ndarray:
    """Expand an operator on the given bit positions to the full 2^width space."""
    full = np.eye(1 << width, dtype=complex).reshape([2] * (2 * width))
    full = _apply_to_axes(full, mat, positions)
    return full.reshape(1 << width, 1 << width)


def compose(
    patterns: Sequence[MeasurementPattern],
    wiring: Sequence[Sequence[int]],
) -> MeasurementPattern:
    """Glue patterns stage by stage along named logical wires.

    ``wiring[k]`` lists the wires stage k acts on, matching its input (and
    output) order.  A stage's input qubits are identified with the wires'
    current end qubits; its outputs become the new ends.  The composite's
    declared semantics is the ordered product of the stages' semantics, on
    the sorted wire set (first wire = most significant bit).
    """
    if len(patterns) != len(wiring):
        raise ArityMismatch("one wire tuple is needed per pattern")
    all_wires = sorted({w for ws in wiring for w in ws})
    if not all_wires:
        raise ArityMismatch("composition needs at least one wire")
    wire_pos = {w: i for i, w in enumerate(all_wires)}

    current: dict[int, int] = {}
    first_qubit: dict[int, int] = {}
    edges: set[tuple[int, int]] = set()
    measurements: dict[int, float] = {}
    total = np.eye(1 << len(all_wires), dtype=complex)
    next_id = 0

    for stage, (pattern, wires) in enumerate(zip(patterns, wiring)):
        wires = tuple(wires)
        if len(set(wires)) != len(wires):
            raise QubitCollision(f"stage {stage} lists wire {wires} twice")
        if len(wires) != len(pattern.inputs) or len(pattern.inputs) != len(pattern.outputs):
            raise ArityMismatch(
                f"stage {stage} has {len(pattern.inputs)} inputs / "
                f"{len(pattern.outputs)} outputs but {len(wires)} wires"
            )
        mapping: dict[int, int] = {}
        for i, w in enumerate(wires):
            q = pattern.inputs[i]
            if w in current:
                mapping[q] = current[w]
            # a fresh wire keeps its fresh id assigned below
        for q in range(pattern.graph.n):
            if q not in mapping:
                mapping[q] = next_id
                next_id += 1
        for i, w in enumerate(wires):
            if w not in current:
                first_qubit[w] = mapping[pattern.inputs[i]]
        for a, b in pattern.graph.sorted_edges():
            e = tuple(sorted((mapping[a], mapping[b])))
            if e in edges:
                raise QubitCollision(f"stage {stage} duplicates edge {e}")
            edges.add(e)
        for q, angle in pattern.measurements.items():
            target = mapping[q]
            if target in measurements:
                raise QubitCollision(f"stage {stage} measures qubit {target} twice")
            measurements[target] = angle
        for i, w in enumerate(wires):
            current[w] = mapping[pattern.outputs[i]]
        total = _embed_operator(
            pattern.semantics, [wire_pos[w] for w in wires], len(all_wires)
        ) @ total

    graph = build_from_edges(max(next_id, 1), sorted(edges))
    return MeasurementPattern(
        graph=graph,
        inputs=tuple(first_qubit[w] for w in all_wires),
        outputs=tuple(current[w] for w in all_wires),
        measurements=measurements,
        semantics=total,
        name="composite",
    )


# ---------------------------------------------------------------------------
# simulation


def simulate_pattern(
    pattern: MeasurementPattern, input_state: np.ndarray
) -> np.ndarray:
    """Post-selected run: embed the input, apply all CZs, apply all bras.

    Returns the unnormalized residual vector on the outputs, in the
    pattern's declared output order.  Raises ZeroBranch when the
    post-selected branch vanishes identically.
    """
    n = pattern.graph.n
    k = len(pattern.inputs)
    vec = np.asarray(input_state, dtype=complex).reshape(-1)
    if vec.shape[0] != 1 << k:
        raise SizeMismatch(f"input needs dimension {1 << k}, got {vec.shape[0]}")
    ancillas = sorted(set(range(n)) - set(pattern.inputs))

    arr = vec.reshape([2] * k) if k else np.array(1.0 + 0.0j)
    for _ in ancillas:
        arr = np.multiply.outer(arr, PLUS)
    axis_owner = list(pattern.inputs) + ancillas
    # transpose so that axis q belongs to physical qubit q
    arr = np.ascontiguousarray(np.transpose(arr, [axis_owner.index(q) for q in range(n)]))

    for a, b in pattern.graph.sorted_edges():
        idx: list = [slice(None)] * n
        idx[a] = 1
        idx[b] = 1
        arr[tuple(idx)] *= -1.0

    axis_of = {q: q for q in range(n)}
    for q in sorted(pattern.measurements):
        bra = rotation_bra(pattern.measurements[q])
        arr = np.tensordot(bra, arr, axes=([0], [axis_of[q]]))
        gone = axis_of.pop(q)
        for other, ax in axis_of.items():
            if ax > gone:
                axis_of[other] = ax - 1

    out_axes = [axis_of[q] for q in pattern.outputs]
    arr = np.moveaxis(arr, out_axes, range(len(out_axes)))
    out = arr.reshape(-1)
    scale = float(np.linalg.norm(vec))
    if float(np.linalg.norm(out)) <= 1e-13 * max(scale, 1.0):
        raise ZeroBranch("post-selected branch of the pattern is identically zero")
    return out


def pattern_action_matrix(pattern: MeasurementPattern) -> np.ndarray:
    """The pattern's actual linear action, one simulated basis column at a time."""
    dim_in = 1 << len(pattern.inputs)
    dim_out = 1 << len(pattern.outputs)
    mat = np.zeros((dim_out, dim_in), dtype=complex)
    for x in range(dim_in):
        basis = np.zeros(dim_in, dtype=complex)
        basis[x] = 1.0
        mat[:, x] = simulate_pattern(pattern, basis)
    return mat


def pattern_projection_spec(
    pattern: MeasurementPattern, output_thetas: Optional[dict[int, float]] = None
) -> ProjectionSpec:
    """Angles projecting every qubit, for evaluation through the main engine.

    Measured qubits use their own rotation angle; output qubits use the
    provided ones (default 0, i.e. <+|).  Each qubit's bra drops a phase of
    e^{-i theta} relative to the exact <theta|_R, so the engine amplitude
    matches the simulated scalar up to exp(-i * sum of all angles).
    """
    output_thetas = output_thetas or {}
    theta = np.empty(pattern.graph.n)
    phi = np.empty(pattern.graph.n)
    for q in range(pattern.graph.n):
        rot = pattern.measurements.get(q, output_thetas.get(q, 0.0))
        theta[q], phi[q] = rotation_projector_to_spec(rot)
    return ProjectionSpec(theta, phi)


def pattern_rotation_angles(
    pattern: MeasurementPattern, output_thetas: Optional[dict[int, float]] = None
) -> list[float]:
    """Rotation angle per qubit as used by pattern_projection_spec."""
    output_thetas = output_thetas or {}
    return [
        pattern.measurements.get(q, output_thetas.get(q, 0.0))
        for q in range(pattern.graph.n)
    ]


# ---------------------------------------------------------------------------
# circuit DSL: one gate per line, e.g. "RZ 0 0.5", "CZ 0 1", "CPHASE 0 1 3.14"


_GATE_SHAPES = {
    "RZ": (1, True),
    "RX": (1, True),
    "H": (1, False),
    "CZ": (2, False),
    "CNOT": (2, False),
    "CPHASE": (2, True),
}


def parse_circuit(text: str) -> list[Gate]:
    gates: list[Gate] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        kind = fields[0].upper()
        if kind not in _GATE_SHAPES:
            raise CircuitParseError(f"unknown gate {fields[0]!r}", lineno)
        nq, has_angle = _GATE_SHAPES[kind]
        want = 1 + nq + (1 if has_angle else 0)
        if len(fields) != want:
            raise CircuitParseError(
                f"{kind} takes {nq} qubit(s){' and an angle' if has_angle else ''}",
                lineno,
            )
        try:
            qubits = tuple(int(f) for f in fields[1 : 1 + nq])
            angle = float(fields[1 + nq]) if has_angle else None
        except ValueError as exc:
            raise CircuitParseError(str(exc), lineno)
        if any(q < 0 for q in qubits):
            raise CircuitParseError("qubit indices must be non-negative", lineno)
        if len(set(qubits)) != len(qubits):
            raise CircuitParseError("gate operands must be distinct", lineno)
        gates.append(Gate(kind, qubits, angle))
    return gates


def compile_circuit(gates: Sequence[Gate]) -> MeasurementPattern:
    """Map each gate to its pattern and compose along the circuit's wires.

    Gate patterns: RZ/RX/H ride the teleportation primitives (each carries
    the inherent leading Hadamard in its declared semantics), CZ uses the
    I-shape, CNOT wraps it in Hadamard teleports on the target, CPHASE uses
    the square-with-tails pattern.  The composite's declared semantics is
    the product of the stage semantics; consult it for the exact gate
    realized, residual Hadamards included.
    """
    if not gates:
        raise CircuitParseError("no gates", 0)
    stages: list[MeasurementPattern] = []
    wiring: list[tuple[int, ...]] = []

    def add(pattern: MeasurementPattern, wires: tuple[int, ...]) -> None:
        stages.append(pattern)
        wiring.append(wires)

    for gate in gates:
        if gate.kind == "RZ":
            add(compile_z_rotation(gate.angle), gate.qubits)
        elif gate.kind == "RX":
            add(compile_rotation(0.0, gate.angle, 0.0), gate.qubits)
        elif gate.kind == "H":
            add(compile_z_rotation(0.0), gate.qubits)
        elif gate.kind == "CZ":
            add(compile_cnot(), gate.qubits)
        elif gate.kind == "CNOT":
            target = (gate.qubits[1],)
            add(compile_z_rotation(0.0), target)
            add(compile_cnot(), gate.qubits)
            add(compile_z_rotation(0.0), target)
        elif gate.kind == "CPHASE":
            add(compile_cphase(gate.angle), gate.qubits)
        else:  # pragma: no cover - parse_circuit guards this
            raise CircuitParseError(f"unknown gate {gate.kind}", 0)
    return compose(stages, wiring)
