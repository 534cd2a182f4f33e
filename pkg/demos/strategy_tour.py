#!/usr/bin/env python3
"""Run every delegation strategy on one random instance and compare scores."""

import numpy as np

from liqdem import (
    StrategyParams,
    best_guru,
    delegation_measures,
    delegation_score,
    direct_democracy,
    emerging_delegation,
    exhaustive_optimum,
    gen_gnm,
    greedy_cap,
    greedy_strategy,
    local_search_strategy,
)


def main() -> None:
    rng = np.random.default_rng(7)
    net = gen_gnm(9, 18, rng)
    params = StrategyParams()

    runs = [
        ("direct", direct_democracy(net)),
        ("best_guru", best_guru(net)),
        ("greedy_gr", greedy_strategy(net, "greedy", params)),
        ("greedy_vo", greedy_strategy(net, "voronoi", params)),
        ("ls_gr", local_search_strategy(net, "greedy", None, params)),
        ("ls_vo", local_search_strategy(net, "voronoi", None, params)),
        ("greedy_cap", greedy_cap(net, params)),
        ("emerging", emerging_delegation(net, rng)),
        ("exact", exhaustive_optimum(net)[0]),
    ]

    print(f"G(n=9, m=18), accuracies rounded: "
          f"{[round(p, 2) for p in net.accuracies]}")
    print(f"{'method':<11} {'score':>8} {'gurus':>6} {'avg hops':>9} {'avg acc':>8}")
    for name, d in runs:
        score = delegation_score(net, d)
        nb, dist, acc = delegation_measures(net, d)
        print(f"{name:<11} {score:>8.4f} {nb:>6} {dist:>9.3f} {acc:>8.3f}")


if __name__ == "__main__":
    main()
