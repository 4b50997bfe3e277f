"""Cluster-state graphs: builders, validation, bipartition and slot assignment.

A cluster state is |+>^n with a CZ gate applied across every edge, so the
graph (vertex count + undirected edge set) is the whole topology.  Built
graphs use a canonical indexing: for cross chains, leaves first (pairs in
chain order) then centers; for lattices of crosses, corner qubits row-major
first, then center qubits row-major.

Trace slots are owned by qubits forming a vertex cover: every edge is
assigned to an owner endpoint, whose slot then tracks the edge's CZ phase.
"""

from __future__ import annotations

from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    DuplicateEdge,
    IndexOutOfRange,
    InvalidSize,
    OddCycle,
    SelfLoop,
)

Edge = tuple[int, int]


def _norm_edge(a: int, b: int) -> Edge:
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class ClusterGraph:
    """Qubit count plus the set of CZ edges (unordered, no self-loops)."""

    n: int
    edges: frozenset[Edge]

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def __repr__(self) -> str:
        return f"ClusterGraph(n={self.n}, edges={len(self.edges)})"


@dataclass(frozen=True)
class Bipartition:
    """Disjoint covering split with no edge inside either class."""

    controls: frozenset[int]
    targets: frozenset[int]


@dataclass
class SlotAssignment:
    """Owner qubits, their dense slot ids, and the owner of every edge."""

    owners: frozenset[int]
    slot_of: dict[int, int]
    edge_owner: dict[Edge, int]

    @property
    def slot_count(self) -> int:
        return len(self.slot_of)


def adjacency(g: ClusterGraph) -> dict[int, tuple[int, ...]]:
    adj: dict[int, list[int]] = {q: [] for q in range(g.n)}
    for a, b in g.edges:
        adj[a].append(b)
        adj[b].append(a)
    return {q: tuple(sorted(nbrs)) for q, nbrs in adj.items()}


# ---------------------------------------------------------------------------
# builders


def build_from_edges(n: int, pairs: Iterable[Sequence[int]]) -> ClusterGraph:
    """Validate an explicit edge list into a graph."""
    if n < 1:
        raise InvalidSize(f"graph needs at least one qubit, got n={n}")
    edges: set[Edge] = set()
    for pair in pairs:
        a, b = int(pair[0]), int(pair[1])
        if a == b:
            raise SelfLoop(f"edge ({a}, {b}) is a self-loop")
        if not (0 <= a < n and 0 <= b < n):
            raise IndexOutOfRange(f"edge ({a}, {b}) outside qubit range [0, {n})")
        e = _norm_edge(a, b)
        if e in edges:
            raise DuplicateEdge(f"edge {e} listed twice")
        edges.add(e)
    return ClusterGraph(n, frozenset(edges))


def build_line(n: int) -> ClusterGraph:
    """Line-shape cluster graph: qubits 0..n-1 chained by n-1 edges."""
    if n < 1:
        raise InvalidSize(f"line needs n >= 1, got {n}")
    return ClusterGraph(n, frozenset((k, k + 1) for k in range(n - 1)))


def build_cross_chain(k: int) -> ClusterGraph:
    """Chain of k crosses (3k+2 qubits): adjacent crosses share a leaf pair.

    Leaves are 0..2k+1 in chain order (pair i is leaves 2i, 2i+1); centers
    are 2k+2..3k+1.  Center j joins leaves 2j, 2j+1, 2j+2, 2j+3.
    """
    if k < 1:
        raise InvalidSize(f"cross chain needs k >= 1, got {k}")
    n = 3 * k + 2
    edges = set()
    for j in range(k):
        center = 2 * k + 2 + j
        for leaf in (2 * j, 2 * j + 1, 2 * j + 2, 2 * j + 3):
            edges.add(_norm_edge(center, leaf))
    return ClusterGraph(n, frozenset(edges))


def build_lattice(m: int, n: int) -> ClusterGraph:
    """m x n tiling of crosses: (m+1)(n+1) corner qubits + m*n center qubits.

    Corner (r, c) has index r*(n+1)+c; center (i, j) has index
    (m+1)*(n+1) + i*n + j and joins its four surrounding corners.
    """
    if m < 1 or n < 1:
        raise InvalidSize(f"lattice needs m, n >= 1, got {m}x{n}")
    corners = (m + 1) * (n + 1)
    edges = set()
    for i in range(m):
        for j in range(n):
            center = corners + i * n + j
            for r, c in ((i, j), (i, j + 1), (i + 1, j), (i + 1, j + 1)):
                edges.add(_norm_edge(center, r * (n + 1) + c))
    return ClusterGraph(corners + m * n, frozenset(edges))


def lattice_corner(m: int, n: int, r: int, c: int) -> int:
    return r * (n + 1) + c


def lattice_center(m: int, n: int, i: int, j: int) -> int:
    return (m + 1) * (n + 1) + i * n + j


# ---------------------------------------------------------------------------
# family detection (used by the specialized engines and orderings)


def detect_line(g: ClusterGraph) -> bool:
    return g.edges == build_line(g.n).edges if g.n >= 1 else False


def detect_cross_chain(g: ClusterGraph) -> Optional[int]:
    """Return k if g is exactly the canonical k-cross chain, else None."""
    if g.n < 5 or (g.n - 2) % 3 != 0:
        return None
    k = (g.n - 2) // 3
    return k if g.edges == build_cross_chain(k).edges else None


def detect_lattice(g: ClusterGraph) -> Optional[tuple[int, int]]:
    """Return (m, n) if g is exactly the canonical m x n cross lattice."""
    for m in range(1, g.n):
        num = g.n - m - 1
        den = 2 * m + 1
        if num < den:
            break
        if num % den:
            continue
        n = num // den
        if g.edges == build_lattice(m, n).edges:
            return (m, n)
    return None


# ---------------------------------------------------------------------------
# bipartition and slot assignment


def bipartition(g: ClusterGraph) -> Bipartition:
    """2-color the graph; controls = smaller class (tie: the class holding 0)."""
    color = [-1] * g.n
    adj = adjacency(g)
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            q = stack.pop()
            for nbr in adj[q]:
                if color[nbr] < 0:
                    color[nbr] = 1 - color[q]
                    stack.append(nbr)
                elif color[nbr] == color[q]:
                    raise OddCycle(
                        f"graph is not bipartite: odd cycle through edge ({q}, {nbr})"
                    )
    class0 = frozenset(q for q in range(g.n) if color[q] == 0)
    class1 = frozenset(q for q in range(g.n) if color[q] == 1)
    if len(class0) < len(class1):
        controls = class0
    elif len(class1) < len(class0):
        controls = class1
    else:
        controls = class0 if 0 in class0 else class1
    targets = frozenset(range(g.n)) - controls
    return Bipartition(controls=controls, targets=targets)


def _greedy_cover(g: ClusterGraph) -> frozenset[int]:
    remaining = set(g.edges)
    degree = [0] * g.n
    for a, b in remaining:
        degree[a] += 1
        degree[b] += 1
    cover: set[int] = set()
    while remaining:
        # highest current degree, ties to the lowest index
        q = max(range(g.n), key=lambda v: (degree[v], -v))
        cover.add(q)
        for e in [e for e in remaining if q in e]:
            remaining.discard(e)
            a, b = e
            degree[a] -= 1
            degree[b] -= 1
    return frozenset(cover)


def assign_slots(g: ClusterGraph, strategy: str = "bipartite") -> SlotAssignment:
    """Pick owner qubits (a vertex cover) and assign every edge to an owner.

    Strategies:
      * ``bipartite``   owners = controls of the bipartition (raises OddCycle
                        on non-bipartite graphs);
      * ``all-but-last``  owners = all qubits but the last, the per-edge scheme
                        used for line factorizations;
      * ``greedy-cover`` greedy vertex cover, works on any graph.

    When both endpoints of an edge own slots, the lower index wins.
    """
    if strategy == "bipartite":
        owners = bipartition(g).controls
    elif strategy == "all-but-last":
        owners = frozenset(range(g.n - 1))
    elif strategy == "greedy-cover":
        owners = _greedy_cover(g)
    else:
        raise ValueError(f"unknown slot strategy {strategy!r}")

    edge_owner: dict[Edge, int] = {}
    for a, b in g.edges:
        a_owns, b_owns = a in owners, b in owners
        if a_owns and b_owns:
            edge_owner[(a, b)] = min(a, b)
        elif a_owns:
            edge_owner[(a, b)] = a
        elif b_owns:
            edge_owner[(a, b)] = b
        else:
            raise ValueError(
                f"owner set is not a vertex cover: edge ({a}, {b}) uncovered"
            )
    slot_of = {q: i for i, q in enumerate(sorted(owners))}
    return SlotAssignment(owners=frozenset(owners), slot_of=slot_of, edge_owner=edge_owner)


# ---------------------------------------------------------------------------
# graph file format: line 1 = qubit count, then one "a b" edge per line.
# '#' starts a comment anywhere on a line.


def parse_graph_text(text: str) -> ClusterGraph:
    n: Optional[int] = None
    pairs: list[tuple[int, int]] = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if n is None:
            if len(fields) != 1:
                raise InvalidSize(f"first data line must be the qubit count, got {line!r}")
            n = int(fields[0])
            continue
        if len(fields) != 2:
            raise InvalidSize(f"edge lines carry two indices, got {line!r}")
        pairs.append((int(fields[0]), int(fields[1])))
    if n is None:
        raise InvalidSize("graph file has no qubit count line")
    return build_from_edges(n, pairs)


def format_graph_text(g: ClusterGraph, header: str = "") -> str:
    lines = []
    if header:
        lines.extend(f"# {h}" for h in header.splitlines())
    lines.append(str(g.n))
    lines.extend(f"{a} {b}" for a, b in g.sorted_edges())
    return "\n".join(lines) + "\n"


def load_graph(path: Union[str, Path]) -> ClusterGraph:
    return parse_graph_text(Path(path).read_text())


def save_graph(g: ClusterGraph, path: Union[str, Path], header: str = "") -> None:
    Path(path).write_text(format_graph_text(g, header))


def fixture_path(name: str) -> Path:
    """Path of a packaged fixture graph, e.g. fixture_path('fivecross_17.graph')."""
    return Path(str(resources.files("latticeproj") / "fixtures" / name))
