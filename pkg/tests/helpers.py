"""Shared fixtures-by-hand for the test suite."""

import numpy as np

from liqdem import DelegationFunction, SocialNetwork, gen_gnm, validate_delegation

# 7-voter worked example: three gurus of weights 2, 2, 3 under the known
# delegation, election probability exactly 0.18 + 0.08 + 0.72 = 0.98.
EXAMPLE_EDGES = (
    (1, 0), (1, 2), (2, 1), (3, 2), (2, 3), (2, 4),
    (5, 4), (4, 5), (5, 6), (5, 1), (1, 5),
)
EXAMPLE_ACC = (0.9, 0.65, 0.45, 1.0, 0.5, 0.35, 0.8)
EXAMPLE_CHOICE = (0, 0, 3, 3, 5, 6, 6)
EXAMPLE_SCORE = 0.98


def example_net() -> SocialNetwork:
    return SocialNetwork(7, EXAMPLE_EDGES, EXAMPLE_ACC)


def example_delegation() -> DelegationFunction:
    return DelegationFunction(EXAMPLE_CHOICE)


def random_net(rng: np.random.Generator, n: int, m: int | None = None) -> SocialNetwork:
    if m is None:
        m = int(rng.integers(n - 1, n * (n - 1) // 2 + 1))
    return gen_gnm(n, m, rng)


def random_valid_delegation(net: SocialNetwork, rng: np.random.Generator) -> DelegationFunction:
    """Random acyclic delegation: delegate only down a random voter order."""
    order = rng.permutation(net.n)
    rank = {int(v): k for k, v in enumerate(order)}
    choice = []
    for v in range(net.n):
        allowed = [u for u in net.out_adj[v] if rank[u] < rank[v]]
        allowed.append(v)
        choice.append(int(allowed[rng.integers(len(allowed))]))
    d = DelegationFunction(tuple(choice))
    assert validate_delegation(net, d).ok
    return d


def strongly_connected_net(
    rng: np.random.Generator, n: int, extra_arcs: int, p_max: float = 1.0
) -> SocialNetwork:
    """Random Hamiltonian cycle plus extra arcs; accuracies below p_max."""
    order = [int(v) for v in rng.permutation(n)]
    arcs = {(order[k], order[(k + 1) % n]) for k in range(n)}
    while len(arcs) < n + extra_arcs:
        u, v = (int(x) for x in rng.integers(0, n, size=2))
        if u != v:
            arcs.add((u, v))
    accs = tuple(float(x) for x in rng.uniform(0.01, p_max, size=n))
    return SocialNetwork(n, tuple(arcs), accs)
