"""Regenerate the packaged fixture graphs in src/latticeproj/fixtures/.

Fixture conventions:
  * line_N / cross_K use the canonical builders.
  * lattice_MxN fixtures are M x N qubit grids (row-major indices,
    nearest-neighbor edges): the square-lattice patches the numerical
    examples use, sized in qubits so the dense oracle stays feasible.
    The --builder lattice:MxN family (crosses tiled between corner rows)
    is a different, larger parameterization of the same kind of lattice.
  * fivecross_17 is the plus-shaped patch of five crosses: a middle cross
    whose four leaf pairs are shared with four arm crosses (12 leaves,
    5 centers).
  * fig10_{a4,b7,c12} are the 4/7/12-qubit scaling-study graphs, encoded
    as lines: the one family every engine family (dense, sweep, recursion)
    covers at those sizes.
"""

from pathlib import Path

from latticeproj.graph import build_cross_chain, build_line, build_from_edges, save_graph

OUT = Path(__file__).resolve().parent.parent / "src" / "latticeproj" / "fixtures"


def grid(rows: int, cols: int):
    edges = []
    for r in range(rows):
        for c in range(cols):
            q = r * cols + c
            if c + 1 < cols:
                edges.append((q, q + 1))
            if r + 1 < rows:
                edges.append((q, q + cols))
    return build_from_edges(rows * cols, edges)


def fivecross():
    center_leaves = {
        12: (0, 1, 2, 3),    # north arm
        13: (4, 5, 6, 7),    # south arm
        14: (2, 4, 8, 9),    # west arm
        15: (3, 5, 10, 11),  # east arm
        16: (2, 3, 4, 5),    # middle cross
    }
    edges = [(leaf, c) for c, leaves in center_leaves.items() for leaf in leaves]
    return build_from_edges(17, edges)


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    save_graph(build_line(4), OUT / "line_4.graph", "4-qubit line")
    save_graph(build_line(10), OUT / "line_10.graph", "10-qubit line")
    save_graph(build_cross_chain(2), OUT / "cross_2.graph",
               "chain of 2 crosses (8 qubits; leaves 0..5, centers 6..7)")
    save_graph(build_cross_chain(3), OUT / "cross_3.graph",
               "chain of 3 crosses (11 qubits; leaves 0..7, centers 8..10)")
    save_graph(grid(2, 2), OUT / "lattice_2x2.graph", "2x2 qubit grid")
    save_graph(grid(3, 3), OUT / "lattice_3x3.graph",
               "3x3 qubit grid (the 9-qubit square-lattice example)")
    save_graph(grid(3, 4), OUT / "lattice_3x4.graph", "3x4 qubit grid")
    save_graph(fivecross(), OUT / "fivecross_17.graph",
               "five crosses in a plus: leaves 0..11, centers 12..16 (16 = middle)")
    save_graph(build_line(4), OUT / "fig10_a4.graph", "scaling-study graph (a): 4 qubits")
    save_graph(build_line(7), OUT / "fig10_b7.graph", "scaling-study graph (b): 7 qubits")
    save_graph(build_line(12), OUT / "fig10_c12.graph", "scaling-study graph (c): 12 qubits")
    print(f"wrote fixtures to {OUT}")


if __name__ == "__main__":
    main()
