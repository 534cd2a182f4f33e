"""Exhaustive search for an optimal delegation function.

Enumerates all acyclic assignments by depth-first search over voters in
index order, candidate choices in ascending order, so the first optimum
found (kept under strict improvement) is the lexicographically smallest.
Partial assignments that would close a delegation cycle are pruned before
descending.  Subtree weights are maintained incrementally along the search
path, and leaf evaluations are memoized on the multiset of (weight,
accuracy) pairs, which collapses the many assignments that induce the same
weighted electorate.
"""

from __future__ import annotations

from .model import DelegationFunction, SocialNetwork
from .probability import majority_threshold


def search_space(net: SocialNetwork) -> int:
    """Number of raw choice vectors, cyclic ones included."""
    size = 1
    for nbrs in net.out_adj:
        size *= len(nbrs) + 1
    return size


def exhaustive_optimum(
    net: SocialNetwork, guard: int = 10_000_000
) -> tuple[DelegationFunction, float]:
    """Best delegation function and its election probability.

    Refuses instances whose raw search space exceeds ``guard``; the actual
    number of visited assignments is usually far smaller thanks to cycle
    pruning, but the guard keeps accidental huge inputs from hanging.
    """
    size = search_space(net)
    if size > guard:
        raise ValueError(f"search space {size} exceeds guard {guard}")
    n = net.n
    p = net.accuracies
    candidates = [tuple(sorted((i,) + net.out_adj[i])) for i in range(n)]
    t_star = majority_threshold(n)
    choice = list(range(n))
    assigned = [False] * n
    weight = [1] * n
    cache: dict[tuple, float] = {}
    best_score = -1.0
    best_choice: tuple[int, ...] = tuple(range(n))

    def leaf_score() -> float:
        sig = tuple(sorted((weight[g], p[g]) for g in range(n) if choice[g] == g))
        s = cache.get(sig)
        if s is None:
            tail = [1.0] + [0.0] * t_star
            for w, pg in sig:
                q1 = 1.0 - pg
                head = [1.0] * (t_star + 1)
                for tau in range(1, t_star + 1):
                    below = tail[tau - w] if tau > w else 1.0
                    head[tau] = pg * below + q1 * tail[tau]
                tail = head
            s = tail[t_star]
            cache[sig] = s
        return s

    def dfs(i: int) -> None:
        nonlocal best_score, best_choice
        if i == n:
            s = leaf_score()
            if s > best_score:
                best_score = s
                best_choice = tuple(choice)
            return
        for j in candidates[i]:
            if j != i:
                cur = j
                cyclic = False
                while assigned[cur] and choice[cur] != cur:
                    cur = choice[cur]
                    if cur == i:
                        cyclic = True
                        break
                if cyclic:
                    continue
                wi = weight[i]
                cur = j
                while True:
                    weight[cur] += wi
                    if assigned[cur] and choice[cur] != cur:
                        cur = choice[cur]
                    else:
                        break
            choice[i] = j
            assigned[i] = True
            dfs(i + 1)
            assigned[i] = False
            choice[i] = i
            if j != i:
                wi = weight[i]
                cur = j
                while True:
                    weight[cur] -= wi
                    if assigned[cur] and choice[cur] != cur:
                        cur = choice[cur]
                    else:
                        break
        return

    dfs(0)
    return DelegationFunction(best_choice), best_score
