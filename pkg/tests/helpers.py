"""Shared brute-force oracles and comparison helpers for the test suite.

Everything here is computed independently of the package's own algebra:
letters are explicit numpy matrices, words are explicit Kronecker products,
so agreement checks are against a second route, not a mirror.
"""

import numpy as np

# the four diagonal letters as explicit matrices, keyed by tag name
LETTER_MATS = {
    "I": np.diag([1.0, 1.0]),
    "Z": np.diag([1.0, -1.0]),
    "U": np.diag([1.0, 0.0]),
    "D": np.diag([0.0, 1.0]),
}


def kron_diag(tags):
    """Diagonal of the Kronecker product of letters given by tag names."""
    diag = np.array([1.0])
    for tag in tags:
        diag = np.outer(diag, np.diag(LETTER_MATS[tag])).reshape(-1)
    return diag


def word_to_diag(word, num_slots):
    """Dense diagonal of a TensorWord over slots 0..num_slots-1."""
    lookup = {slot: letter.name for slot, letter in word.entries}
    return kron_diag([lookup.get(s, "I") for s in range(num_slots)])


def brute_amplitude(g, spec):
    """Projection amplitude by direct summation over all basis states.

    amp = 2^(-n/2) * sum_x  prod_p (C_p or S_p by bit)  * (-1)^(# edges with
    both bits set).  Qubit 0 is the most significant bit.
    """
    n = g.n
    total = 0.0 + 0.0j
    edges = list(g.edges)
    for x in range(1 << n):
        bits = [(x >> (n - 1 - p)) & 1 for p in range(n)]
        coef = 1.0 + 0.0j
        for p in range(n):
            coef *= spec.s[p] if bits[p] else spec.c[p]
        phase = sum(bits[a] & bits[b] for a, b in edges) & 1
        total += -coef if phase else coef
    return total * 2.0 ** (-n / 2.0)


def align_residual(measured, target):
    """(residual, scalar): least-squares scalar s minimizing ||measured - s*target||."""
    measured = np.asarray(measured, dtype=complex)
    target = np.asarray(target, dtype=complex)
    s = np.vdot(target, measured) / np.vdot(target, target)
    return float(np.linalg.norm(measured - s * target)), s


def random_spec(n, seed):
    from latticeproj import ProjectionSpec

    return ProjectionSpec.random(n, np.random.default_rng(seed))
