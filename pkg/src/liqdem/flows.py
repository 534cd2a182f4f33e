"""Circulation feasibility and fractional weight rebalancing.

A circulation instance has per-node demands (positive: net inflow required,
negative: supply) and per-arc capacities.  Feasibility reduces to max flow:
a super-source feeds every supplier, every consumer drains to a super-sink,
and the circulation exists iff the max flow saturates all demand.

Arithmetic is exact whenever possible: if every demand and capacity is a
ratio of small integers (denominator up to 10**6 after float round-trip),
everything is scaled to integers and Dinic runs without rounding error.
Otherwise a float Dinic runs with a small residual threshold and the
saturation test uses ``tol``.

``fractional_delegation`` answers whether a target weight vector ``w`` is
reachable by splitting each voter's unit ballot across its out-arcs: node
``v`` must absorb ``w_v - 1/n`` of weight, every arc carries at most one
full ballot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, inf

from .model import SocialNetwork


@dataclass(frozen=True)
class FlowNetwork:
    """Nodes ``0..n-1``, arcs with capacities, and node demands."""

    n: int
    arcs: tuple[tuple[int, int, float], ...]
    demands: tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.demands) != self.n:
            raise ValueError(f"expected {self.n} demands, got {len(self.demands)}")
        for u, v, c in self.arcs:
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"arc ({u}, {v}) leaves the node range")
            if c < 0:
                raise ValueError(f"negative capacity on arc ({u}, {v}): {c}")


@dataclass(frozen=True)
class CirculationResult:
    feasible: bool
    # flow per arc, aligned with the instance arc order; None when infeasible
    arc_flows: tuple[float, ...] | None


class _Dinic:
    """Max flow; works with ints (exact) or floats (thresholded)."""

    def __init__(self, n: int, zero):
        self.n = n
        self.zero = zero
        self.head: list[list[int]] = [[] for _ in range(n)]
        self.to: list[int] = []
        self.cap: list = []

    def add(self, u: int, v: int, c) -> int:
        idx = len(self.to)
        self.head[u].append(idx)
        self.to.append(v)
        self.cap.append(c)
        self.head[v].append(idx + 1)
        self.to.append(u)
        self.cap.append(c * 0)  # typed zero
        return idx

    def max_flow(self, s: int, t: int):
        flow = 0
        zero = self.zero
        while True:
            level = [-1] * self.n
            level[s] = 0
            queue = [s]
            for u in queue:
                for e in self.head[u]:
                    v = self.to[e]
                    if level[v] < 0 and self.cap[e] > zero:
                        level[v] = level[u] + 1
                        queue.append(v)
            if level[t] < 0:
                return flow
            it = [0] * self.n

            def push(u, limit):
                if u == t:
                    return limit
                while it[u] < len(self.head[u]):
                    e = self.head[u][it[u]]
                    v = self.to[e]
                    if self.cap[e] > zero and level[v] == level[u] + 1:
                        got = push(v, min(limit, self.cap[e]))
                        if got > zero:
                            self.cap[e] -= got
                            self.cap[e ^ 1] += got
                            return got
                    it[u] += 1
                return 0

            while True:
                pushed = push(s, inf)
                if pushed <= zero:
                    break
                flow += pushed
        return flow


def _as_small_fraction(x: float) -> Fraction | None:
    f = Fraction(x).limit_denominator(10**6)
    return f if float(f) == x else None


def feasible_circulation(network: FlowNetwork, tol: float = 1e-9) -> CirculationResult:
    """Decide feasibility and return a witness flow when one exists."""
    caps = [_as_small_fraction(c) for _, _, c in network.arcs]
    dems = [_as_small_fraction(d) for d in network.demands]
    exact = all(v is not None for v in caps + dems)
    if exact:
        if sum(dems) != 0:
            return CirculationResult(False, None)
        denom = 1
        for v in caps + dems:
            denom = denom * v.denominator // gcd(denom, v.denominator)
        caps_i = [int(c * denom) for c in caps]
        dems_i = [int(d * denom) for d in dems]
        flows, ok = _solve_scaled(network, caps_i, dems_i, zero=0)
        if not ok:
            return CirculationResult(False, None)
        return CirculationResult(True, tuple(f / denom for f in flows))
    total = sum(network.demands)
    if abs(total) > tol:
        return CirculationResult(False, None)
    flows, ok = _solve_scaled(
        network, [c for _, _, c in network.arcs], list(network.demands), zero=1e-12, tol=tol
    )
    if not ok:
        return CirculationResult(False, None)
    return CirculationResult(True, tuple(float(f) for f in flows))


def _solve_scaled(network, caps, dems, zero, tol=0):
    n = network.n
    s, t = n, n + 1
    dinic = _Dinic(n + 2, zero)
    arc_ids = [dinic.add(u, v, c) for (u, v, _), c in zip(network.arcs, caps)]
    need = 0
    for v, d in enumerate(dems):
        if d > zero:
            dinic.add(v, t, d)
            need += d
        elif d < -zero:
            dinic.add(s, v, -d)
    got = dinic.max_flow(s, t)
    if zero:
        ok = abs(got - need) <= max(tol, zero)
    else:
        ok = got == need
    flows = [max(dinic.cap[e ^ 1], 0) for e in arc_ids]
    return flows, ok


@dataclass(frozen=True)
class FractionalDelegation:
    feasible: bool
    # (voter, delegate, share) per arc with positive flow
    transfers: tuple[tuple[int, int, float], ...] | None


def fractional_delegation(
    net: SocialNetwork, weights, tol: float = 1e-9
) -> FractionalDelegation:
    """Can ballot splitting along the arcs realize the target weights?

    ``weights`` must be non-negative and sum to 1 (each entry is the share
    of total voting weight voter ``i`` should end up holding, so voter
    ``i`` must absorb ``weights[i] - 1/n``).  Arc capacities are 1, the
    whole unit of circulating weight, so they never bind; feasibility is
    purely a connectivity question.  Transfers come back in the same share
    units as the targets.
    """
    if len(weights) != net.n:
        raise ValueError(f"expected {net.n} weights, got {len(weights)}")
    if any(w < -tol for w in weights):
        raise ValueError("target weights must be non-negative")
    total = sum(weights)
    if abs(total - 1.0) > tol:
        raise ValueError(f"target weights sum to {total}, expected 1")
    demands = []
    share = Fraction(1, net.n)
    for w in weights:
        f = _as_small_fraction(float(w))
        demands.append(float(f - share) if f is not None else w - 1.0 / net.n)
    flow_net = FlowNetwork(
        n=net.n,
        arcs=tuple((i, j, 1.0) for i, j in net.edges),
        demands=tuple(demands),
    )
    result = feasible_circulation(flow_net, tol=tol)
    if not result.feasible:
        return FractionalDelegation(False, None)
    transfers = tuple(
        (net.edges[k][0], net.edges[k][1], f)
        for k, f in enumerate(result.arc_flows)
        if f > tol
    )
    return FractionalDelegation(True, transfers)
