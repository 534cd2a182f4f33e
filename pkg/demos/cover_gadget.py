#!/usr/bin/env python3
"""Build a set-cover gadget network and print its exact margin certificate."""

from fractions import Fraction

from liqdem import ReductionParams, build_reduction, verify_margins


def main() -> None:
    sets = (frozenset({0}), frozenset({1}), frozenset({2}))
    params = ReductionParams(3, sets, Fraction(1, 4))

    print(f"universe of {params.n_elements} elements, {params.n_sets} singleton sets,"
          f" beta = {params.beta}")
    print(f"isolated block K = {params.k_isolated}")
    print(f"star size L     = {params.star_size}")
    print(f"total voters n  = {params.n_total}")

    report = verify_margins(params)
    print(f"\nmajority margin  {report.majority_margin} "
          f"({float(report.majority_margin):.3f}) > 0: {report.majority_ok}")
    print(f"decisive margin  {report.decisive_margin} "
          f"({float(report.decisive_margin):.3f}) >= 0: {report.decisive_ok}")
    print(f"certificate ok: {report.ok}")

    net = build_reduction(params)
    print(f"\nmaterialized network: {net.n} voters, {len(net.edges)} arcs")
    print("meta:", net.meta)


if __name__ == "__main__":
    main()
