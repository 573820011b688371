"""Random circuit generators shared by the tests and the benchmark scripts."""
from __future__ import annotations

import random
from fractions import Fraction

from .netlist import Circuit


def random_rational(rng: random.Random, lo: int = -50, hi: int = 50, max_den: int = 12) -> Fraction:
    return Fraction(rng.randint(lo, hi), rng.randint(1, max_den))


def random_resistance(rng: random.Random) -> Fraction:
    return Fraction(rng.randint(1, 100), rng.randint(1, 10))


def parallel_circuit(rng: random.Random, n_branches: int | None = None) -> Circuit:
    """Two nodes joined by 2-8 branches, each randomly oriented."""
    n = n_branches if n_branches is not None else rng.randint(2, 8)
    branches = []
    for k in range(n):
        t, h = ("a", "b") if rng.random() < 0.5 else ("b", "a")
        branches.append((f"e{k + 1}", t, h, random_resistance(rng), random_rational(rng)))
    return Circuit.build(["a", "b"], branches)


def connected_circuit(rng: random.Random, max_nodes: int = 8, max_branches: int = 16) -> Circuit:
    """A random spanning tree plus extra branches; parallel branches allowed."""
    nv = rng.randint(2, max_nodes)
    ne = rng.randint(nv - 1, max_branches)
    names = [f"n{k}" for k in range(nv)]
    order = names[:]
    rng.shuffle(order)
    pairs = [(order[rng.randrange(k)], order[k]) for k in range(1, nv)]
    while len(pairs) < ne:
        a, b = rng.sample(names, 2)
        pairs.append((a, b))
    rng.shuffle(pairs)
    branches = []
    for k, (a, b) in enumerate(pairs):
        if rng.random() < 0.5:
            a, b = b, a
        branches.append((f"e{k + 1}", a, b, random_resistance(rng), random_rational(rng)))
    return Circuit.build(names, branches)


def forest_circuit(rng: random.Random, n_components: int = 2, **kw) -> Circuit:
    """Disjoint union of connected circuits, node and branch ids prefixed per copy."""
    nodes, branches = [], []
    for c in range(n_components):
        sub = connected_circuit(rng, **kw)
        nodes += [f"c{c}_{n}" for n in sub.node_ids]
        branches += [(f"c{c}_{b.id}", f"c{c}_{b.tail}", f"c{c}_{b.head}", b.resistance, b.emf)
                     for b in sub.branches]
    return Circuit.build(nodes, branches)
