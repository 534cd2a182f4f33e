"""Batch experiment runner: sweeps, replication, measures, CSV output.

A run sweeps one structural parameter over a graph model, replicating each
point with fresh graphs and fresh accuracy draws.  Methods only ever see
the quantized accuracies (real elections don't expose exact competence);
the one exception is the exhaustive solver, which plays the role of an
informed upper reference and receives the true values.  Scores and averages
are always computed against the true accuracies.

Seeding is hierarchical: every (sweep point, graph, draw, stream) gets its
own ``np.random.SeedSequence``, so runs are reproducible cell by cell and
the CSV is byte-identical across repeats of the same config (modulo the
runtime column, which ``record_runtime=False`` pins to zero).
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, replace
from typing import Iterable, TextIO

import numpy as np

from .exact import exhaustive_optimum
from .generators import (
    gen_ba,
    gen_gnm,
    gen_ws,
    quantize_network,
    sample_accuracies,
)
from .model import DelegationFunction, SocialNetwork, resolve_gurus
from .probability import delegation_score
from .strategies import (
    StrategyParams,
    best_guru,
    direct_democracy,
    emerging_delegation,
    greedy_cap,
    greedy_strategy,
    local_search_strategy,
)

log = logging.getLogger(__name__)

METHODS = (
    "direct",
    "best_guru",
    "greedy_gr",
    "greedy_vo",
    "ls_gr",
    "ls_vo",
    "greedy_cap",
    "emerging",
    "exact",
)

CSV_COLUMNS = (
    "method",
    "model",
    "n",
    "m",
    "graph_rep",
    "acc_rep",
    "score",
    "nb_gurus",
    "avg_distance",
    "avg_accuracy",
    "runtime_s",
)


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment grid; see ``from_json`` for the file format."""

    model: str = "gnm"
    sweep_param: str = "n"
    sweep_values: tuple[int, ...] = (11, 21, 31, 41, 51)
    n_fixed: int | None = None  # voter count when sweeping m
    m_per_n: float = 4.0  # gnm edge count = round(m_per_n * n) when sweeping n
    m_fixed: int | None = None  # overrides m_per_n with a constant edge count
    ba_attach: int = 2
    ws_k: int = 2
    ws_p: float = 0.1
    prec: float | None = 0.1
    methods: tuple[str, ...] = METHODS[:-1]  # everything but the exhaustive solver
    graphs: int = 10
    draws: int = 5
    seed: int = 0
    epsilon: float = 0.05
    alpha: float = 0.0
    exact_guard: int = 10_000_000
    record_runtime: bool = True
    workers: int = 1

    def __post_init__(self) -> None:
        if self.model not in ("gnm", "ba", "ws"):
            raise ValueError(f"unknown graph model {self.model!r}")
        if self.sweep_param not in ("n", "m"):
            raise ValueError(f"can only sweep n or m, not {self.sweep_param!r}")
        if self.sweep_param == "m" and (self.model != "gnm" or self.n_fixed is None):
            raise ValueError("sweeping m requires model gnm and n_fixed")
        unknown = [m for m in self.methods if m not in METHODS]
        if unknown:
            raise ValueError(f"unknown methods {unknown}, have {list(METHODS)}")
        object.__setattr__(self, "sweep_values", tuple(int(v) for v in self.sweep_values))
        object.__setattr__(self, "methods", tuple(self.methods))

    @classmethod
    def from_json(cls, data: bytes | str) -> "ExperimentConfig":
        doc = json.loads(data)
        if not isinstance(doc, dict):
            raise ValueError("experiment config must be a JSON object")
        known = {f for f in cls.__dataclass_fields__}
        unknown = doc.keys() - known
        if unknown:
            raise ValueError(f"unknown config keys {sorted(unknown)}")
        for key in ("sweep_values", "methods"):
            if key in doc:
                doc[key] = tuple(doc[key])
        return cls(**doc)

    def to_json(self) -> str:
        doc = asdict(self)
        doc["sweep_values"] = list(self.sweep_values)
        doc["methods"] = list(self.methods)
        return json.dumps(doc, indent=2) + "\n"

    def resolve_point(self, sweep_value: int) -> tuple[int, int]:
        """(n, m-column value) for one sweep point."""
        if self.sweep_param == "m":
            return self.n_fixed, sweep_value
        n = sweep_value
        if self.model == "gnm":
            m = self.m_fixed if self.m_fixed is not None else round(self.m_per_n * n)
            return n, int(m)
        if self.model == "ba":
            return n, self.ba_attach
        return n, self.ws_k


@dataclass(frozen=True)
class RunRecord:
    method: str
    model: str
    n: int
    m: int
    graph_rep: int
    acc_rep: int
    score: float
    nb_gurus: int
    avg_distance: float
    avg_accuracy: float
    runtime_s: float


def delegation_measures(net: SocialNetwork, d: DelegationFunction) -> tuple[int, float, float]:
    """(guru count, mean hop distance to own guru, mean guru accuracy).

    Distances are shortest paths in the network, not delegation-chain
    lengths; gurus contribute 0.  The mean guru accuracy weights each guru
    by the ballots it holds, i.e. it averages over voters.
    """
    guru = resolve_gurus(net, d)
    p = net.accuracies
    nb = len(set(guru))
    total_dist = 0.0
    for v, g in enumerate(guru):
        if v != g:
            total_dist += net.hops_to(g)[v]
    return nb, total_dist / net.n, sum(p[g] for g in guru) / net.n


def _generate_graph(config: ExperimentConfig, n: int, m: int, rng: np.random.Generator) -> SocialNetwork:
    if config.model == "gnm":
        return gen_gnm(n, m, rng)
    if config.model == "ba":
        return gen_ba(n, config.ba_attach, rng)
    return gen_ws(n, config.ws_k, config.ws_p, rng)


def _solve(
    method: str,
    net: SocialNetwork,
    params: StrategyParams,
    rng: np.random.Generator,
    guard: int,
) -> DelegationFunction:
    if method == "direct":
        return direct_democracy(net)
    if method == "best_guru":
        return best_guru(net)
    if method == "greedy_gr":
        return greedy_strategy(net, "greedy", params)
    if method == "greedy_vo":
        return greedy_strategy(net, "voronoi", params)
    if method == "ls_gr":
        return local_search_strategy(net, "greedy", None, params)
    if method == "ls_vo":
        return local_search_strategy(net, "voronoi", None, params)
    if method == "greedy_cap":
        return greedy_cap(net, params)
    if method == "emerging":
        return emerging_delegation(net, rng)
    if method == "exact":
        return exhaustive_optimum(net, guard)[0]
    raise ValueError(f"unknown method {method!r}")


def _run_graph_block(config: ExperimentConfig, sweep_idx: int, graph_rep: int) -> list[RunRecord]:
    """All records for one (sweep point, graph replicate) pair."""
    n, m = config.resolve_point(config.sweep_values[sweep_idx])
    seed = config.seed
    graph_rng = np.random.default_rng(np.random.SeedSequence([seed, sweep_idx, graph_rep, 0, 0]))
    base = _generate_graph(config, n, m, graph_rng)
    params = StrategyParams(epsilon=config.epsilon, alpha=config.alpha)
    records = []
    for acc_rep in range(config.draws):
        acc_rng = np.random.default_rng(
            np.random.SeedSequence([seed, sweep_idx, graph_rep, acc_rep, 1])
        )
        net_true = replace(base, accuracies=sample_accuracies(base.n, acc_rng))
        net_seen = quantize_network(net_true, config.prec)
        for mi, method in enumerate(config.methods):
            method_rng = np.random.default_rng(
                np.random.SeedSequence([seed, sweep_idx, graph_rep, acc_rep, 2 + mi])
            )
            net_in = net_true if method == "exact" else net_seen
            start = time.perf_counter()
            try:
                d = _solve(method, net_in, params, method_rng, config.exact_guard)
                elapsed = time.perf_counter() - start
                score = delegation_score(net_true, d)
                nb, dist, acc = delegation_measures(net_true, d)
            except Exception as exc:  # record the failure, keep the sweep alive
                elapsed = time.perf_counter() - start
                log.warning("method %s failed on n=%d m=%d rep=(%d,%d): %s",
                            method, n, m, graph_rep, acc_rep, exc)
                score, nb, dist, acc = float("nan"), -1, float("nan"), float("nan")
            records.append(
                RunRecord(
                    method=method,
                    model=config.model,
                    n=n,
                    m=m,
                    graph_rep=graph_rep,
                    acc_rep=acc_rep,
                    score=score,
                    nb_gurus=nb,
                    avg_distance=dist,
                    avg_accuracy=acc,
                    runtime_s=elapsed if config.record_runtime else 0.0,
                )
            )
    return records


def run_experiment(config: ExperimentConfig) -> list[RunRecord]:
    """Execute the full grid; records come back in deterministic loop order."""
    blocks = [
        (si, gr)
        for si in range(len(config.sweep_values))
        for gr in range(config.graphs)
    ]
    if config.workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            results = list(pool.map(_block_task, [(config, si, gr) for si, gr in blocks]))
    else:
        results = [_run_graph_block(config, si, gr) for si, gr in blocks]
    out: list[RunRecord] = []
    for block in results:
        out.extend(block)
    return out


def _block_task(payload: tuple[ExperimentConfig, int, int]) -> list[RunRecord]:
    return _run_graph_block(*payload)


def _fmt(x: float) -> str:
    if isinstance(x, float):
        if math.isnan(x):
            return "nan"
        return repr(x)
    return str(x)


def write_csv(records: Iterable[RunRecord], fh: TextIO) -> None:
    fh.write(",".join(CSV_COLUMNS) + "\n")
    for r in records:
        fh.write(
            f"{r.method},{r.model},{r.n},{r.m},{r.graph_rep},{r.acc_rep},"
            f"{_fmt(r.score)},{r.nb_gurus},{_fmt(r.avg_distance)},"
            f"{_fmt(r.avg_accuracy)},{r.runtime_s:.6f}\n"
        )


def run_experiment_to_csv(config: ExperimentConfig, path: str) -> list[RunRecord]:
    records = run_experiment(config)
    with open(path, "w", encoding="utf-8") as fh:
        write_csv(records, fh)
    return records
