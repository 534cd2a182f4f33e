#!/usr/bin/env python3
"""Check which fractional weight targets ballot splitting can realize.

Voters may split their single ballot across out-neighbors; a target hands
each voter a share of the total weight.  Feasibility is a circulation
question, and the witness lists how much weight moves along each arc.
"""

from liqdem import SocialNetwork, fractional_delegation

# a directed 4-cycle with one chord: strongly connected, so weight can
# reach anyone
CYCLE = SocialNetwork(
    4,
    ((0, 1), (1, 2), (2, 3), (3, 0), (0, 2)),
    (0.6, 0.7, 0.8, 0.5),
)

# a 3-voter path 0 -> 1 -> 2: weight only flows downstream
PATH = SocialNetwork(3, ((0, 1), (1, 2)), (0.6, 0.7, 0.8))


def show(net, label, weights) -> None:
    result = fractional_delegation(net, weights)
    print(f"{label}, target {weights}: feasible={result.feasible}")
    if result.feasible:
        for i, j, share in result.transfers:
            print(f"  voter {i} moves {share:.4f} of the weight to {j}")


def main() -> None:
    show(CYCLE, "cycle", [0.25, 0.25, 0.25, 0.25])  # uniform: nothing moves
    show(CYCLE, "cycle", [0.0, 0.5, 0.5, 0.0])
    show(CYCLE, "cycle", [0.0, 0.0, 0.0, 1.0])      # all weight rolls downhill to 3
    show(PATH, "path", [0.0, 0.0, 1.0])             # 0 sends 1/3 on, 1 sends 2/3 on
    show(PATH, "path", [1.0, 0.0, 0.0])             # nothing can flow upstream


if __name__ == "__main__":
    main()
