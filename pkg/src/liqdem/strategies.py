"""Delegation heuristics: fixed rules, assigners, and search strategies.

Two families live here.  Assigners (``greedy_delegation``,
``voronoi_delegation``) turn a chosen guru set into a full delegation
function by routing every other voter toward some guru.  Search strategies
(``greedy_strategy``, ``local_search_strategy``) explore guru sets with an
assigner as subroutine, keeping a move only when it improves the election
probability by more than ``epsilon``.  The remaining rules (``best_guru``,
``greedy_cap``, ``emerging_delegation``) build a delegation directly from
local comparisons.

All heuristics return valid (acyclic, arc-respecting) delegation functions
for every input network; none of them mutates the network.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Iterable

import numpy as np

from .model import DelegationFunction, SocialNetwork, validate_delegation
from .probability import delegation_score


@dataclass(frozen=True)
class StrategyParams:
    """Shared knobs for the heuristics.

    ``epsilon`` is the minimum score improvement a search move must bring.
    ``alpha`` is the approval slack of the capped greedy rule: voter ``i``
    approves neighbor ``j`` when ``p_j > p_i + alpha``.  The cap itself is
    ``ceil(cap_scale * ln(n) ** cap_exponent)``.
    """

    epsilon: float = 0.05
    alpha: float = 0.0
    cap_scale: float = 10.0
    cap_exponent: float = 1.0 / 3.0


DEFAULT_PARAMS = StrategyParams()


def direct_democracy(net: SocialNetwork) -> DelegationFunction:
    """Everyone votes directly."""
    return DelegationFunction.identity(net.n)


def best_guru(net: SocialNetwork) -> DelegationFunction:
    """Route every voter toward the single most accurate voter.

    Voters that cannot reach the target keep their own ballot.  Next hops
    follow shortest paths, lowest index on ties.
    """
    p = net.accuracies
    target = max(range(net.n), key=lambda i: (p[i], -i))
    dist = net.hops_to(target)
    choice = list(range(net.n))
    for v in range(net.n):
        dv = dist[v]
        if v == target or dv == float("inf"):
            continue
        for u in net.out_adj[v]:
            if dist[u] == dv - 1.0:
                choice[v] = u
                break
    return DelegationFunction(tuple(choice))


def _guru_order(net: SocialNetwork, gurus: Iterable[int]) -> list[int]:
    p = net.accuracies
    return sorted(set(gurus), key=lambda g: (-p[g], g))


def greedy_delegation(net: SocialNetwork, gurus: Iterable[int]) -> DelegationFunction:
    """Let gurus capture voters in decreasing order of accuracy.

    Each guru grabs every still-unassigned non-guru that can reach it
    through still-unassigned non-gurus; captured voters delegate along a
    shortest path inside the captured region (lowest-index next hop).
    Voters no guru can reach vote directly.
    """
    order = _guru_order(net, gurus)
    in_guru_set = [False] * net.n
    for g in order:
        in_guru_set[g] = True
    choice = list(range(net.n))
    free = [not in_guru_set[v] for v in range(net.n)]  # assignable non-gurus
    remaining = sum(free)
    in_adj, out_adj = net.in_adj, net.out_adj
    for g in order:
        if remaining == 0:
            break
        depth = {g: 0}
        frontier = [g]
        captured = []
        while frontier:
            nxt = []
            for v in frontier:
                dv = depth[v]
                for u in in_adj[v]:
                    if free[u] and u not in depth:
                        depth[u] = dv + 1
                        captured.append(u)
                        nxt.append(u)
            frontier = nxt
        for u in captured:
            du = depth[u]
            for w in out_adj[u]:
                if depth.get(w, -1) == du - 1:
                    choice[u] = w
                    break
            free[u] = False
        remaining -= len(captured)
    return DelegationFunction(tuple(choice))


def _hops_array(net: SocialNetwork, g: int) -> np.ndarray:
    cache = net.__dict__.get("_hops_np")
    if cache is None:
        cache = {}
        object.__setattr__(net, "_hops_np", cache)
    arr = cache.get(g)
    if arr is None:
        arr = np.array(net.hops_to(g), dtype=np.float64)
        cache[g] = arr
    return arr


def voronoi_delegation(net: SocialNetwork, gurus: Iterable[int]) -> DelegationFunction:
    """Assign each voter to the guru minimizing hops / guru accuracy.

    Ties go to the more accurate guru, then the lower index.  A captured
    voter delegates to its lowest-index out-neighbor one hop closer to its
    assigned guru; the hop count to that guru strictly shrinks along every
    delegation chain, which is what rules out cycles.  Gurus of accuracy 0
    capture nobody (their cost is infinite).
    """
    order = _guru_order(net, gurus)
    if not order:
        return DelegationFunction.identity(net.n)
    p = net.accuracies
    dist = np.stack([_hops_array(net, g) for g in order])
    acc = np.array([p[g] for g in order], dtype=np.float64)
    with np.errstate(divide="ignore", invalid="ignore"):
        cost = dist / acc[:, None]
    cost[np.isnan(cost)] = np.inf  # 0 hops / 0 accuracy: the guru itself
    for k, g in enumerate(order):
        cost[k, g] = 0.0
    best = np.argmin(cost, axis=0)
    reachable = np.isfinite(cost[best, np.arange(net.n)])
    choice = list(range(net.n))
    out_adj = net.out_adj
    for v in range(net.n):
        k = best[v]
        g = order[k]
        if v == g or not reachable[v]:
            continue
        dv = dist[k, v]
        row = dist[k]
        for u in out_adj[v]:
            if row[u] == dv - 1.0:
                choice[v] = u
                break
    return DelegationFunction(tuple(choice))


Assigner = Callable[[SocialNetwork, Iterable[int]], DelegationFunction]

ASSIGNERS: dict[str, Assigner] = {
    "greedy": greedy_delegation,
    "voronoi": voronoi_delegation,
}


def _resolve_assigner(assigner: str | Assigner) -> Assigner:
    if callable(assigner):
        return assigner
    try:
        return ASSIGNERS[assigner]
    except KeyError:
        raise ValueError(f"unknown assigner {assigner!r}, have {sorted(ASSIGNERS)}") from None


def greedy_strategy(
    net: SocialNetwork,
    assigner: str | Assigner = "greedy",
    params: StrategyParams = DEFAULT_PARAMS,
) -> DelegationFunction:
    """Grow a guru set one voter at a time while the score improves enough.

    Starts from the empty set (everyone votes directly) and adds the voter
    giving the largest score gain, stopping when the best gain is at most
    ``epsilon``.  First maximizer in index order wins ties.
    """
    build = _resolve_assigner(assigner)
    gurus: set[int] = set()
    current = build(net, gurus)
    current_score = delegation_score(net, current)
    while len(gurus) < net.n:
        best_v, best_d, best_score = -1, None, -1.0
        for v in range(net.n):
            if v in gurus:
                continue
            cand = build(net, gurus | {v})
            s = delegation_score(net, cand)
            if s > best_score:
                best_v, best_d, best_score = v, cand, s
        if best_score - current_score <= params.epsilon:
            break
        gurus.add(best_v)
        current, current_score = best_d, best_score
    return current


def local_search_strategy(
    net: SocialNetwork,
    assigner: str | Assigner = "greedy",
    start: DelegationFunction | None = None,
    params: StrategyParams = DEFAULT_PARAMS,
) -> DelegationFunction:
    """Hill-climb over guru sets by single additions and removals.

    The guru set is seeded from ``start`` (direct democracy by default).
    Each round rebuilds the delegation for every neighboring set, applies
    the best move if it gains more than ``epsilon``, and stops otherwise.
    When no move is ever applied the start delegation itself is returned.
    """
    build = _resolve_assigner(assigner)
    if start is None:
        start = DelegationFunction.identity(net.n)
    report = validate_delegation(net, start)
    if not report.ok:
        raise ValueError(f"invalid start delegation: {report.reason}")
    gurus = {v for v, c in enumerate(start.choice) if c == v}
    current = start
    current_score = delegation_score(net, current)
    improved = True
    while improved:
        improved = False
        best_set, best_d, best_score = None, None, current_score
        moves = [gurus | {v} for v in range(net.n) if v not in gurus]
        moves += [gurus - {v} for v in sorted(gurus)]
        for cand_set in moves:
            cand = build(net, cand_set)
            s = delegation_score(net, cand)
            if s > best_score:
                best_set, best_d, best_score = cand_set, cand, s
        if best_set is not None and best_score - current_score > params.epsilon:
            gurus = best_set
            current, current_score = best_d, best_score
            improved = True
    return current


def cap_value(n: int, params: StrategyParams = DEFAULT_PARAMS) -> int:
    """Guru capacity used by ``greedy_cap``."""
    return math.ceil(params.cap_scale * math.log(n) ** params.cap_exponent)


def greedy_cap(net: SocialNetwork, params: StrategyParams = DEFAULT_PARAMS) -> DelegationFunction:
    """Delegate to approved neighbors under a per-guru capacity.

    Voters act in decreasing order of accuracy.  Each approves the
    out-neighbors beating its own accuracy by more than ``alpha`` and joins
    the best approved neighbor whose current guru would stay within the
    capacity after absorbing the voter's subtree; if none fits it votes
    directly.  Approval is strict, so chains only flow toward strictly more
    accurate voters.
    """
    p = net.accuracies
    cap = cap_value(net.n, params)
    choice = list(range(net.n))
    count = [1] * net.n

    def root_of(v: int) -> int:
        while choice[v] != v:
            v = choice[v]
        return v

    for i in sorted(range(net.n), key=lambda v: (-p[v], v)):
        approved = sorted(
            (j for j in net.out_adj[i] if p[j] > p[i] + params.alpha),
            key=lambda j: (-p[j], j),
        )
        for j in approved:
            r = root_of(j)
            if r == i:
                continue  # negative alpha can make approval mutual
            if count[r] + count[i] <= cap:
                choice[i] = j
                count[r] += count[i]
                break
    return DelegationFunction(tuple(choice))


def emerging_delegation(net: SocialNetwork, rng: np.random.Generator) -> DelegationFunction:
    """Randomized one-shot delegation toward more accurate neighbors.

    Voter ``i`` considers itself plus every strictly more accurate
    out-neighbor and picks one with probability proportional to accuracy.
    Accuracy strictly increases along every delegation arc, so the result
    is always acyclic.
    """
    p = net.accuracies
    choice = list(range(net.n))
    for i in range(net.n):
        pool = [j for j in net.out_adj[i] if p[j] > p[i]]
        pool.append(i)
        total = sum(p[j] for j in pool)
        if total <= 0.0:
            continue
        x = rng.random() * total
        acc = 0.0
        for j in pool:
            acc += p[j]
            if x < acc:
                choice[i] = j
                break
    return DelegationFunction(tuple(choice))
