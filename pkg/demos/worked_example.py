#!/usr/bin/env python3
"""Walk through the 7-voter instance from the package docs.

Builds the network, scores a hand-picked delegation, compares it with the
exhaustive optimum, and shows the same instance as an integer program.
"""

from liqdem import (
    DelegationFunction,
    SocialNetwork,
    build_milp,
    delegation_score,
    exhaustive_optimum,
    export_lp,
    guru_profile,
    validate_delegation,
)

EDGES = (
    (1, 0), (1, 2), (2, 1), (3, 2), (2, 3), (2, 4),
    (5, 4), (4, 5), (5, 6), (5, 1), (1, 5),
)
ACCURACIES = (0.9, 0.65, 0.45, 1.0, 0.5, 0.35, 0.8)


def main() -> None:
    net = SocialNetwork(7, EDGES, ACCURACIES)
    d = DelegationFunction((0, 0, 3, 3, 5, 6, 6))

    print("validation:", validate_delegation(net, d))
    profile = guru_profile(net, d)
    print("guru profile (guru, weight):", profile.entries)
    print(f"election probability: {delegation_score(net, d):.6f}")

    best, value = exhaustive_optimum(net)
    print(f"\nexhaustive optimum: {best.choice} -> {value:.6f}")
    print("voter 5 delegates to 1, which chains into the accuracy-1.0 voter 3,")
    print("handing it a strict majority of the weight")

    model = build_milp(net)
    lp = export_lp(model)
    print(f"\ninteger program: {len(model.variables())} variables, "
          f"{len(model.rows)} rows")
    print("first LP lines:")
    for line in lp.splitlines()[:4]:
        print(" ", line)


if __name__ == "__main__":
    main()
