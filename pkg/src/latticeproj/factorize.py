"""Turn (graph, slot assignment, projector angles) into a factorized polynomial.

The projection amplitude onto the product bra with per-qubit coefficients
C_p = cos(theta_p), S_p = exp(i phi_p) sin(theta_p) equals

    2^(-N/2) * Tr{ prod_p [ C_p * W_c(p) + S_p * W_s(p) ] }

with one binomial factor per qubit.  The words are fixed by the slot
assignment: an owner contributes U (c branch) or D (s branch) at its own
slot; every qubit additionally contributes Z, in its s branch, at the slot
of each incident edge assigned to the other endpoint.  All letters commute,
so the amplitude is invariant under reordering of the factors; what the
order changes is how many slots are simultaneously active during a sweep.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Mapping, Optional, Sequence, Union

import numpy as np

from .algebra import Letter, TensorWord
from .errors import InvalidPermutation, NotALattice, SizeMismatch
from .graph import (
    ClusterGraph,
    SlotAssignment,
    adjacency,
    assign_slots,
    detect_lattice,
    lattice_center,
    lattice_corner,
)


class ProjectionSpec:
    """Per-qubit projector angles (theta_p, phi_p), with C/S precomputed.

    Qubit p contributes the bra C_p<0| + S_p<1| where C_p = cos(theta_p)
    and S_p = exp(i phi_p) sin(theta_p).  The bra is applied as written,
    without conjugating S_p.
    """

    __slots__ = ("theta", "phi", "c", "s")

    def __init__(self, theta: Sequence[float], phi: Sequence[float]):
        theta_arr = np.atleast_1d(np.asarray(theta, dtype=float))
        phi_arr = np.atleast_1d(np.asarray(phi, dtype=float))
        if theta_arr.ndim != 1 or theta_arr.shape != phi_arr.shape:
            raise SizeMismatch(
                f"theta and phi must be equal-length 1-d arrays, "
                f"got {theta_arr.shape} and {phi_arr.shape}"
            )
        if not (np.isfinite(theta_arr).all() and np.isfinite(phi_arr).all()):
            raise ValueError("projection angles must be finite")
        for arr in (theta_arr, phi_arr):
            arr.setflags(write=False)
        self.theta = theta_arr
        self.phi = phi_arr
        self.c = np.cos(theta_arr)
        self.s = np.exp(1j * phi_arr) * np.sin(theta_arr)
        self.c.setflags(write=False)
        self.s.setflags(write=False)

    @property
    def n(self) -> int:
        return self.theta.shape[0]

    @classmethod
    def constant(cls, n: int, theta: float, phi: float) -> "ProjectionSpec":
        return cls(np.full(n, theta), np.full(n, phi))

    @classmethod
    def random(cls, n: int, rng: np.random.Generator) -> "ProjectionSpec":
        """Angles drawn uniformly from [0, 2*pi), independently per qubit."""
        return cls(rng.uniform(0.0, 2.0 * np.pi, n), rng.uniform(0.0, 2.0 * np.pi, n))

    def __repr__(self) -> str:
        return f"ProjectionSpec(n={self.n})"


def coeffs(spec: ProjectionSpec, p: int) -> tuple[complex, complex]:
    """(C_p, S_p) for qubit p."""
    if not 0 <= p < spec.n:
        raise SizeMismatch(f"qubit {p} outside spec of size {spec.n}")
    return complex(spec.c[p]), complex(spec.s[p])


@dataclass(frozen=True)
class Factor:
    """One qubit's binomial: c_coeff*c_word + s_coeff*s_word."""

    qubit: int
    c_coeff: complex
    c_word: TensorWord
    s_coeff: complex
    s_word: TensorWord

    def branches(self) -> tuple[tuple[complex, TensorWord], tuple[complex, TensorWord]]:
        return (self.c_coeff, self.c_word), (self.s_coeff, self.s_word)

    def touched_slots(self) -> frozenset[int]:
        return frozenset(self.c_word.slots()) | frozenset(self.s_word.slots())


def _factor_from_adjacency(
    p: int,
    a: SlotAssignment,
    adj: Mapping[int, tuple[int, ...]],
    spec: ProjectionSpec,
) -> Factor:
    c, s = complex(spec.c[p]), complex(spec.s[p])
    c_entries: list[tuple[int, Letter]] = []
    s_entries: dict[int, Letter] = {}
    if p in a.owners:
        own = a.slot_of[p]
        c_entries.append((own, Letter.U))
        s_entries[own] = Letter.D
    for nbr in adj[p]:
        e = (p, nbr) if p < nbr else (nbr, p)
        owner = a.edge_owner[e]
        if owner != p:
            s_entries[a.slot_of[owner]] = Letter.Z
    return Factor(
        qubit=p,
        c_coeff=c,
        c_word=TensorWord(c_entries),
        s_coeff=s,
        s_word=TensorWord(s_entries.items()),
    )


def build_factor(
    p: int, a: SlotAssignment, g: ClusterGraph, spec: ProjectionSpec
) -> Factor:
    """Factor for qubit p under the given slot assignment."""
    if not 0 <= p < spec.n:
        raise SizeMismatch(f"qubit {p} outside spec of size {spec.n}")
    return _factor_from_adjacency(p, a, adjacency(g), spec)


class FactorizedPolynomial:
    """Ordered sequence of factors plus per-slot activity bookkeeping.

    norm_exponent is the qubit count N; the physical amplitude carries the
    2^(-N/2) prefactor.  For every slot, activity is the index interval
    [first touch, last touch] over the current factor order; the owner's
    factor (the U/D contribution) always lies inside it.
    """

    def __init__(
        self,
        graph: ClusterGraph,
        assignment: SlotAssignment,
        factors: Sequence[Factor],
    ):
        if sorted(f.qubit for f in factors) != list(range(graph.n)):
            raise SizeMismatch("polynomial needs exactly one factor per qubit")
        self.graph = graph
        self.assignment = assignment
        self.factors = tuple(factors)
        self.norm_exponent = graph.n
        self.slot_count = assignment.slot_count

        first: dict[int, int] = {}
        last: dict[int, int] = {}
        owner_pos: dict[int, int] = {}
        for pos, f in enumerate(self.factors):
            for slot, letter in f.c_word.entries:
                first.setdefault(slot, pos)
                last[slot] = pos
                if letter is Letter.U:
                    if slot in owner_pos:
                        raise ValueError(f"slot {slot} has two owner factors")
                    owner_pos[slot] = pos
            for slot, _ in f.s_word.entries:
                first.setdefault(slot, pos)
                last[slot] = pos
        if set(owner_pos) != set(range(self.slot_count)):
            raise ValueError("every slot needs exactly one owner factor")
        self.activity = {s: (first[s], last[s]) for s in first}
        self.owner_position = owner_pos

    def with_factor_order(self, order: Sequence[int]) -> "FactorizedPolynomial":
        """New polynomial with factors permuted; activity is recomputed."""
        if sorted(order) != list(range(len(self.factors))):
            raise InvalidPermutation(
                "factor order must be a permutation of range(len(factors))"
            )
        return FactorizedPolynomial(
            self.graph, self.assignment, [self.factors[i] for i in order]
        )

    def bind_spec(self, spec: ProjectionSpec) -> "FactorizedPolynomial":
        """Same words, order and activity, with coefficients from a new spec.

        The word structure is fixed by the graph and assignment alone, so
        re-projecting only needs new C/S values.
        """
        if spec.n != self.graph.n:
            raise SizeMismatch(f"spec has {spec.n} qubits, graph has {self.graph.n}")
        clone = FactorizedPolynomial.__new__(FactorizedPolynomial)
        clone.graph = self.graph
        clone.assignment = self.assignment
        clone.factors = tuple(
            Factor(
                qubit=f.qubit,
                c_coeff=complex(spec.c[f.qubit]),
                c_word=f.c_word,
                s_coeff=complex(spec.s[f.qubit]),
                s_word=f.s_word,
            )
            for f in self.factors
        )
        clone.norm_exponent = self.norm_exponent
        clone.slot_count = self.slot_count
        clone.activity = self.activity
        clone.owner_position = self.owner_position
        return clone

    def __repr__(self) -> str:
        return (
            f"FactorizedPolynomial(qubits={self.norm_exponent}, "
            f"slots={self.slot_count})"
        )


def build_polynomial(
    g: ClusterGraph,
    spec: ProjectionSpec,
    assignment: Union[SlotAssignment, str, None] = None,
) -> FactorizedPolynomial:
    """Polynomial with factors in qubit-index order (the as-built order).

    ``assignment`` may be a ready SlotAssignment or a strategy name for
    graph.assign_slots; None means the bipartite strategy.
    """
    if spec.n != g.n:
        raise SizeMismatch(f"spec has {spec.n} qubits, graph has {g.n}")
    if assignment is None:
        assignment = assign_slots(g, "bipartite")
    elif isinstance(assignment, str):
        assignment = assign_slots(g, assignment)
    adj = adjacency(g)
    factors = [_factor_from_adjacency(p, assignment, adj, spec) for p in range(g.n)]
    return FactorizedPolynomial(g, assignment, factors)


# ---------------------------------------------------------------------------
# factor ordering strategies


def _anti_diagonal_corner_order(m: int, n: int) -> list[tuple[int, int]]:
    # Snake over anti-diagonals of the (m+1) x (n+1) corner grid: even
    # diagonals run top-to-bottom, odd ones bottom-to-top, reproducing the
    # visit order 0 -> (n+2) -> 1 -> 2 -> (n+3) -> (2n+3) -> ...
    order = []
    for d in range(m + n + 1):
        rows = range(max(0, d - n), min(m, d) + 1)
        if d % 2:
            rows = reversed(rows)
        order.extend((r, d - r) for r in rows)
    return order


def _lattice_anti_diagonal_order(g: ClusterGraph, shape: tuple[int, int]) -> list[int]:
    m, n = shape
    order: list[int] = []
    corners_seen: set[tuple[int, int]] = set()
    pending = {
        (i, j): {(i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)}
        for i in range(m)
        for j in range(n)
    }
    for r, c in _anti_diagonal_corner_order(m, n):
        order.append(lattice_corner(m, n, r, c))
        corners_seen.add((r, c))
        for (i, j) in sorted(pending):
            if pending[(i, j)] <= corners_seen:
                order.append(lattice_center(m, n, i, j))
                del pending[(i, j)]
    return order


def _lattice_row_major_order(g: ClusterGraph, shape: tuple[int, int]) -> list[int]:
    # Sweep the lattice by rows, interleaving each center row right after
    # the corner row above it so slots retire one row behind the frontier.
    m, n = shape
    order: list[int] = []
    for r in range(m + 1):
        order.extend(lattice_corner(m, n, r, c) for c in range(n + 1))
        if r < m:
            order.extend(lattice_center(m, n, r, j) for j in range(n))
    return order


def order_factors(
    poly: FactorizedPolynomial,
    strategy: str = "as-built",
    permutation: Optional[Sequence[int]] = None,
) -> FactorizedPolynomial:
    """Reorder the factors; the amplitude is invariant, the boundary is not.

    Strategies: ``as-built`` (qubit-index order), ``row-major`` (lattices:
    interleave corner and center rows; other graphs: index order),
    ``anti-diagonal`` (lattices only), ``custom`` (explicit permutation of
    qubit indices).
    """
    pos_of_qubit = {f.qubit: i for i, f in enumerate(poly.factors)}
    if strategy == "as-built":
        order = [pos_of_qubit[q] for q in range(poly.graph.n)]
    elif strategy == "row-major":
        shape = detect_lattice(poly.graph)
        if shape is None:
            order = [pos_of_qubit[q] for q in range(poly.graph.n)]
        else:
            order = [pos_of_qubit[q] for q in _lattice_row_major_order(poly.graph, shape)]
    elif strategy == "anti-diagonal":
        shape = detect_lattice(poly.graph)
        if shape is None:
            raise NotALattice("anti-diagonal ordering needs a canonical cross lattice")
        order = [pos_of_qubit[q] for q in _lattice_anti_diagonal_order(poly.graph, shape)]
    elif strategy == "custom":
        if permutation is None:
            raise InvalidPermutation("custom ordering needs an explicit permutation")
        if sorted(permutation) != list(range(poly.graph.n)):
            raise InvalidPermutation("custom order must be a permutation of the qubits")
        order = [pos_of_qubit[q] for q in permutation]
    else:
        raise ValueError(f"unknown ordering strategy {strategy!r}")
    if order == list(range(len(poly.factors))):
        return poly
    return poly.with_factor_order(order)


def max_active_slots(poly: FactorizedPolynomial) -> int:
    """Peak number of slots whose activity interval covers one factor position."""
    if not poly.activity:
        return 0
    peak = 0
    for pos in range(len(poly.factors)):
        live = sum(1 for lo, hi in poly.activity.values() if lo <= pos <= hi)
        peak = max(peak, live)
    return peak


# ---------------------------------------------------------------------------
# angle file format: one "theta phi" line per qubit, '#' comments allowed.


def parse_angles_text(text: str) -> ProjectionSpec:
    thetas: list[float] = []
    phis: list[float] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if len(fields) != 2:
            raise SizeMismatch(f"angle lines carry 'theta phi', got {line!r}")
        thetas.append(float(fields[0]))
        phis.append(float(fields[1]))
    if not thetas:
        raise SizeMismatch("angle file has no angle lines")
    return ProjectionSpec(thetas, phis)


def format_angles_text(spec: ProjectionSpec, header: str = "") -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.extend(f"{float(t)!r} {float(p)!r}" for t, p in zip(spec.theta, spec.phi))
    return "\n".join(lines) + "\n"


def load_angles(path: Union[str, Path]) -> ProjectionSpec:
    return parse_angles_text(Path(path).read_text())


def save_angles(spec: ProjectionSpec, path: Union[str, Path], header: str = "") -> None:
    Path(path).write_text(format_angles_text(spec, header))
