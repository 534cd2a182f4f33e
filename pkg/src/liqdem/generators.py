"""Random instance generators and the voter accuracy model.

Graphs come from networkx (G(n,m), Barabasi-Albert, Newman-Watts-Strogatz);
each undirected edge becomes a pair of opposing arcs, so every neighbor can
be delegated to.  Accuracies follow a Gaussian mixture with a small expert
component, a small poorly-informed component, and a average bulk:

    10%  N(0.7, 0.1)      experts
    20%  N(0.3, 0.1)      poorly informed
    70%  N(0.5, 0.1)      average voters

Component counts are apportioned by largest remainder, draws outside the
open interval (0, 1) are rejected and retried, and the labeled values are
shuffled so component membership is not positional.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import networkx as nx
import numpy as np

from .model import SocialNetwork


@dataclass(frozen=True)
class AccuracyModel:
    """Mixture of Gaussians truncated to (low, high) by rejection.

    ``components`` are (share, mean, sd) triples; shares must sum to 1.
    ``prec`` is an optional quantization step applied downstream (the
    sampler itself always returns raw draws).
    """

    components: tuple[tuple[float, float, float], ...]
    low: float = 0.0
    high: float = 1.0
    prec: float | None = None

    def __post_init__(self) -> None:
        total = sum(share for share, _, _ in self.components)
        if abs(total - 1.0) > 1e-9:
            raise ValueError(f"component shares sum to {total}, expected 1")
        if not self.low < self.high:
            raise ValueError("empty rejection interval")


DEFAULT_ACCURACY_MODEL = AccuracyModel(
    components=((0.10, 0.7, 0.1), (0.20, 0.3, 0.1), (0.70, 0.5, 0.1)),
)


def component_counts(n: int, model: AccuracyModel) -> tuple[int, ...]:
    """Apportion ``n`` voters to mixture components by largest remainder."""
    quotas = [share * n for share, _, _ in model.components]
    counts = [int(q) for q in quotas]
    short = n - sum(counts)
    remainders = sorted(
        range(len(quotas)), key=lambda k: (-(quotas[k] - counts[k]), k)
    )
    for k in remainders[:short]:
        counts[k] += 1
    return tuple(counts)


def sample_accuracies(
    n: int, rng: np.random.Generator, model: AccuracyModel = DEFAULT_ACCURACY_MODEL
) -> tuple[float, ...]:
    """Draw ``n`` accuracies from the mixture, shuffled across voters."""
    counts = component_counts(n, model)
    labels = np.repeat(np.arange(len(counts)), counts)
    rng.shuffle(labels)
    out = np.empty(n, dtype=np.float64)
    for i, k in enumerate(labels):
        _, mean, sd = model.components[k]
        x = rng.normal(mean, sd)
        while not (model.low < x < model.high):
            x = rng.normal(mean, sd)
        out[i] = x
    return tuple(out.tolist())


def quantize(p: float, prec: float) -> float:
    """Snap ``p`` to the midpoint of its length-``prec`` bucket.

    Bucket ``i`` is ``[i * prec, (i + 1) * prec)`` with the last bucket
    clipped at 1, so the midpoint never leaves [0, 1].
    """
    if not 0.0 < prec <= 1.0:
        raise ValueError(f"prec must be in (0, 1], got {prec}")
    i = int(p / prec)
    lo = i * prec
    hi = min((i + 1) * prec, 1.0)
    return (lo + hi) / 2.0


def quantize_network(net: SocialNetwork, prec: float | None) -> SocialNetwork:
    """Copy of ``net`` with every accuracy quantized; identity when prec is None."""
    if prec is None:
        return net
    return replace(net, accuracies=tuple(quantize(p, prec) for p in net.accuracies))


def _seed_int(rng: np.random.Generator) -> int:
    # networkx wants a plain seed; derive one from the caller's stream
    return int(rng.integers(0, 2**32 - 1))


def _from_undirected(
    graph: nx.Graph, rng: np.random.Generator, model: AccuracyModel, meta: dict
) -> SocialNetwork:
    arcs = []
    for u, v in graph.edges():
        arcs.append((int(u), int(v)))
        arcs.append((int(v), int(u)))
    n = graph.number_of_nodes()
    return SocialNetwork(
        n=n,
        edges=tuple(arcs),
        accuracies=sample_accuracies(n, rng, model),
        meta=meta,
    )


def gen_gnm(
    n: int,
    m: int,
    rng: np.random.Generator,
    model: AccuracyModel = DEFAULT_ACCURACY_MODEL,
) -> SocialNetwork:
    """Uniform random graph with exactly ``m`` undirected edges."""
    if not 0 <= m <= n * (n - 1) // 2:
        raise ValueError(f"m={m} out of range for n={n}")
    g = nx.gnm_random_graph(n, m, seed=_seed_int(rng))
    return _from_undirected(g, rng, model, {"model": "gnm", "n": n, "m": m})


def gen_ba(
    n: int,
    m_attach: int,
    rng: np.random.Generator,
    model: AccuracyModel = DEFAULT_ACCURACY_MODEL,
) -> SocialNetwork:
    """Barabasi-Albert preferential attachment, ``m_attach`` edges per new node."""
    if not 1 <= m_attach < n:
        raise ValueError(f"m_attach={m_attach} out of range for n={n}")
    g = nx.barabasi_albert_graph(n, m_attach, seed=_seed_int(rng))
    return _from_undirected(g, rng, model, {"model": "ba", "n": n, "m": m_attach})


def gen_ws(
    n: int,
    k: int,
    p_new: float,
    rng: np.random.Generator,
    model: AccuracyModel = DEFAULT_ACCURACY_MODEL,
) -> SocialNetwork:
    """Newman-Watts-Strogatz small world: ring of ``k`` neighbors plus shortcuts."""
    if not 0 < k < n:
        raise ValueError(f"k={k} out of range for n={n}")
    g = nx.newman_watts_strogatz_graph(n, k, p_new, seed=_seed_int(rng))
    return _from_undirected(g, rng, model, {"model": "ws", "n": n, "k": k, "p_new": p_new})


GRAPH_MODELS = ("gnm", "ba", "ws")
