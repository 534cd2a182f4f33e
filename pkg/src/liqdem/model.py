"""Voter networks, delegation functions, and guru profiles.

A social network is a directed graph over voters ``0..n-1`` together with
one accuracy per voter, the probability that the voter is correct when
voting directly.  A delegation function picks, for every voter, either the
voter itself (a direct vote) or one of its out-neighbors.  When the induced
delegation graph is acyclic every voter's ballot ends up with a unique sink,
its guru, whose voting weight is the size of the delegation tree rooted at
it (including itself).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Mapping


class InstanceError(ValueError):
    """Malformed or inconsistent instance document."""


class DelegationError(ValueError):
    """Delegation function rejected by validation."""


@dataclass(frozen=True)
class SocialNetwork:
    """Directed voter graph with per-voter accuracies.

    ``edges`` are arcs ``(i, j)`` meaning voter ``i`` may delegate to ``j``.
    They are normalized on construction: deduplicated, sorted, self-loops
    rejected.  ``meta`` carries free-form provenance (generator name,
    parameters) and takes no part in equality.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    accuracies: tuple[float, ...]
    meta: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InstanceError("instance needs at least one voter")
        seen = set()
        for arc in self.edges:
            if len(arc) != 2:
                raise InstanceError(f"arc {arc!r} is not a pair")
            i, j = arc
            if not (0 <= i < self.n and 0 <= j < self.n):
                raise InstanceError(f"dangling endpoint in arc ({i}, {j})")
            if i == j:
                raise InstanceError(f"self-loop at voter {i}")
            seen.add((int(i), int(j)))
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if len(self.accuracies) != self.n:
            raise InstanceError(
                f"expected {self.n} accuracies, got {len(self.accuracies)}"
            )
        for i, p in enumerate(self.accuracies):
            if not (0.0 <= p <= 1.0):
                raise InstanceError(f"accuracy out of range at voter {i}: {p}")
        object.__setattr__(self, "accuracies", tuple(float(p) for p in self.accuracies))

    # Adjacency and per-guru hop distances are built lazily and cached on the
    # instance.  object.__setattr__ is the sanctioned escape hatch for frozen
    # dataclasses; the caches never change observable state.

    @property
    def out_adj(self) -> tuple[tuple[int, ...], ...]:
        """Out-neighbor lists, index-sorted."""
        cached = self.__dict__.get("_out_adj")
        if cached is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for i, j in self.edges:
                lists[i].append(j)
            cached = tuple(tuple(l) for l in lists)
            object.__setattr__(self, "_out_adj", cached)
        return cached

    @property
    def in_adj(self) -> tuple[tuple[int, ...], ...]:
        """In-neighbor lists, index-sorted."""
        cached = self.__dict__.get("_in_adj")
        if cached is None:
            lists: list[list[int]] = [[] for _ in range(self.n)]
            for i, j in self.edges:
                lists[j].append(i)
            cached = tuple(tuple(l) for l in lists)
            object.__setattr__(self, "_in_adj", cached)
        return cached

    def hops_to(self, target: int) -> list[float]:
        """Directed hop distance from every voter to ``target``.

        BFS on reversed arcs, so ``hops_to(g)[v]`` is the length of a
        shortest delegation-capable path v -> ... -> g.  Unreachable voters
        get ``inf``.  Results are cached per target.
        """
        cache = self.__dict__.get("_hops")
        if cache is None:
            cache = {}
            object.__setattr__(self, "_hops", cache)
        dist = cache.get(target)
        if dist is None:
            inf = float("inf")
            dist = [inf] * self.n
            dist[target] = 0.0
            frontier = [target]
            in_adj = self.in_adj
            d = 0.0
            while frontier:
                d += 1.0
                nxt = []
                for v in frontier:
                    for u in in_adj[v]:
                        if dist[u] == inf:
                            dist[u] = d
                            nxt.append(u)
                frontier = nxt
            cache[target] = dist
        return dist

    def has_arc(self, i: int, j: int) -> bool:
        arcs = self.__dict__.get("_arc_set")
        if arcs is None:
            arcs = frozenset(self.edges)
            object.__setattr__(self, "_arc_set", arcs)
        return (i, j) in arcs


@dataclass(frozen=True)
class DelegationFunction:
    """One delegation choice per voter; ``choice[i] == i`` is a direct vote."""

    choice: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "choice", tuple(int(c) for c in self.choice))

    @classmethod
    def identity(cls, n: int) -> "DelegationFunction":
        return cls(tuple(range(n)))

    @property
    def n(self) -> int:
        return len(self.choice)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of checking a delegation function against a network."""

    ok: bool
    reason: str | None = None
    cycle: tuple[int, ...] | None = None
    bad_voter: int | None = None


def validate_delegation(net: SocialNetwork, d: DelegationFunction) -> ValidationReport:
    """Check that ``d`` uses only existing arcs and induces no cycle.

    Cycle search follows delegation pointers from each voter in index order,
    so the reported cycle is the first one encountered that way.
    """
    if d.n != net.n:
        raise DelegationError(f"delegation has {d.n} entries for {net.n} voters")
    choice = d.choice
    for i, j in enumerate(choice):
        if i == j:
            continue
        if not (0 <= j < net.n):
            return ValidationReport(False, f"voter {i} delegates to non-voter {j}", bad_voter=i)
        if not net.has_arc(i, j):
            return ValidationReport(False, f"no arc from {i} to {j}", bad_voter=i)
    # 0 = unvisited, 1 = on the current walk, 2 = known acyclic
    state = [0] * net.n
    for start in range(net.n):
        if state[start]:
            continue
        path = []
        v = start
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            if choice[v] == v:
                break
            v = choice[v]
        if state[v] == 1 and choice[v] != v:
            at = path.index(v)
            return ValidationReport(
                False,
                f"delegation cycle through voter {v}",
                cycle=tuple(path[at:]),
            )
        for u in path:
            state[u] = 2
    return ValidationReport(True)


@dataclass(frozen=True)
class GuruProfile:
    """Gurus of a delegation together with their accumulated weights.

    ``entries`` holds ``(guru, weight)`` pairs sorted by guru index; weights
    count the guru itself plus everyone whose delegation chain ends at it.
    """

    entries: tuple[tuple[int, int], ...]

    @property
    def gurus(self) -> tuple[int, ...]:
        return tuple(g for g, _ in self.entries)

    @property
    def total_weight(self) -> int:
        return sum(w for _, w in self.entries)


def resolve_gurus(net: SocialNetwork, d: DelegationFunction) -> list[int]:
    """Map every voter to its guru by following delegation chains.

    Rejects cyclic input.  Path compression keeps the total work linear.
    """
    if d.n != net.n:
        raise DelegationError(f"delegation has {d.n} entries for {net.n} voters")
    choice = d.choice
    guru = [-1] * net.n
    for start in range(net.n):
        if guru[start] >= 0:
            continue
        path = []
        v = start
        while guru[v] < 0 and choice[v] != v:
            path.append(v)
            v = choice[v]
            if len(path) > net.n:
                raise DelegationError(f"delegation cycle through voter {v}")
        root = guru[v] if guru[v] >= 0 else v
        guru[root] = root
        for u in path:
            guru[u] = root
    return guru


def guru_profile(net: SocialNetwork, d: DelegationFunction) -> GuruProfile:
    """Weights of all gurus under ``d``; raises on cyclic delegations."""
    report = validate_delegation(net, d)
    if not report.ok:
        raise DelegationError(report.reason or "invalid delegation")
    guru = resolve_gurus(net, d)
    weights: dict[int, int] = {}
    for g in guru:
        weights[g] = weights.get(g, 0) + 1
    return GuruProfile(tuple(sorted(weights.items())))


# -- serialization -----------------------------------------------------------

def instance_to_json(net: SocialNetwork) -> bytes:
    doc = {
        "n": net.n,
        "accuracies": list(net.accuracies),
        "edges": [list(arc) for arc in net.edges],
        "meta": dict(net.meta),
    }
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def instance_from_json(data: bytes | str) -> SocialNetwork:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed instance document: {exc}") from exc
    if not isinstance(doc, dict):
        raise InstanceError("instance document must be a JSON object")
    missing = {"n", "accuracies", "edges"} - doc.keys()
    if missing:
        raise InstanceError(f"instance document missing keys: {sorted(missing)}")
    try:
        edges = tuple((int(i), int(j)) for i, j in doc["edges"])
    except (TypeError, ValueError) as exc:
        raise InstanceError(f"malformed edge list: {exc}") from exc
    return SocialNetwork(
        n=int(doc["n"]),
        edges=edges,
        accuracies=tuple(doc["accuracies"]),
        meta=doc.get("meta", {}),
    )


def delegation_to_json(d: DelegationFunction) -> bytes:
    return (json.dumps({"choice": list(d.choice)}) + "\n").encode("utf-8")


def delegation_from_json(data: bytes | str) -> DelegationFunction:
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise InstanceError(f"malformed delegation document: {exc}") from exc
    if not isinstance(doc, dict) or "choice" not in doc:
        raise InstanceError("delegation document must be an object with a 'choice' list")
    return DelegationFunction(tuple(int(c) for c in doc["choice"]))
