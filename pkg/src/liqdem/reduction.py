"""Set-cover gadget instances and their margin certificates.

Given a universe of ``N`` elements, a family of ``M`` subsets, and a margin
parameter ``beta`` in (0, 1/2), the gadget builds a voter network in which
good delegation functions correspond to small covers:

* ``K = ceil(8 N^2 M / beta^2)`` isolated voters of accuracy ``r = 1/2 - beta``,
* per element, a star of ``L`` voters of accuracy ``r`` whose leaves point at
  the star head, with ``L = floor(beta (4N-1) / (N (2N-1)) * K + M/N) + 1``,
* one voter of accuracy 1/2 per subset, receiving an arc from the head of
  every element it contains.

The construction only behaves as intended when two weight inequalities hold,
with ``eps = beta / (2 (2N - 1))``:

    (r - eps) K + N L  >  n / 2                 (stars can carry a majority)
    (beta - eps) K    >=  (N - 1) L / 2 + M / 2 (isolated block stays decisive)

``verify_margins`` recomputes both sides in exact rational arithmetic and
reports the margins, together with the size bound ``n <= 4^N`` that kicks in
once ``N >= 35 / beta^2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .model import SocialNetwork


@dataclass(frozen=True)
class ReductionParams:
    """Cover family plus margin parameter, everything exact."""

    n_elements: int
    sets: tuple[frozenset[int], ...]
    beta: Fraction

    def __post_init__(self) -> None:
        beta = Fraction(self.beta)
        object.__setattr__(self, "beta", beta)
        if not Fraction(0) < beta < Fraction(1, 2):
            raise ValueError(f"beta must lie in (0, 1/2), got {beta}")
        if self.n_elements < 1:
            raise ValueError("need at least one element")
        sets = tuple(frozenset(int(x) for x in s) for s in self.sets)
        object.__setattr__(self, "sets", sets)
        if not sets:
            raise ValueError("need at least one subset")
        for s in sets:
            if any(not 0 <= x < self.n_elements for x in s):
                raise ValueError(f"subset {sorted(s)} leaves the universe")

    @property
    def n_sets(self) -> int:
        return len(self.sets)

    @property
    def covers(self) -> bool:
        return frozenset().union(*self.sets) == frozenset(range(self.n_elements))

    @property
    def r(self) -> Fraction:
        return Fraction(1, 2) - self.beta

    @property
    def eps(self) -> Fraction:
        return self.beta / (2 * (2 * self.n_elements - 1))

    @property
    def k_isolated(self) -> int:
        n, m = self.n_elements, self.n_sets
        return math.ceil(Fraction(8 * n * n * m) / (self.beta * self.beta))

    @property
    def star_size(self) -> int:
        n, m, k = self.n_elements, self.n_sets, self.k_isolated
        inner = self.beta * (4 * n - 1) / (n * (2 * n - 1)) * k + Fraction(m, n)
        return math.floor(inner) + 1

    @property
    def n_total(self) -> int:
        return self.k_isolated + self.n_elements * self.star_size + self.n_sets


@dataclass(frozen=True)
class MarginReport:
    """Exact slack of the gadget inequalities; positive/zero means satisfied."""

    majority_margin: Fraction
    majority_ok: bool
    decisive_margin: Fraction
    decisive_ok: bool
    size_bound_applies: bool
    size_bound_ok: bool
    covers: bool

    @property
    def ok(self) -> bool:
        return self.majority_ok and self.decisive_ok and self.size_bound_ok


def gadget_margins(
    n_elements: int, n_sets: int, beta: Fraction, k_isolated: int, star_size: int
) -> tuple[Fraction, Fraction]:
    """Slacks of the two weight inequalities for explicit K and L.

    Exposed separately from ``verify_margins`` so perturbed constants (an
    off-by-one star, a shaved K) can be checked to break the certificate.
    """
    beta = Fraction(beta)
    r = Fraction(1, 2) - beta
    eps = beta / (2 * (2 * n_elements - 1))
    n_total = k_isolated + n_elements * star_size + n_sets
    majority = (r - eps) * k_isolated + n_elements * star_size - Fraction(n_total, 2)
    decisive = (beta - eps) * k_isolated - Fraction((n_elements - 1) * star_size, 2) - Fraction(n_sets, 2)
    return majority, decisive


def verify_margins(params: ReductionParams) -> MarginReport:
    majority, decisive = gadget_margins(
        params.n_elements, params.n_sets, params.beta, params.k_isolated, params.star_size
    )
    applies = params.n_elements >= 35 / (params.beta * params.beta)
    size_ok = params.n_total <= 4**params.n_elements if applies else True
    return MarginReport(
        majority_margin=majority,
        majority_ok=majority > 0,
        decisive_margin=decisive,
        decisive_ok=decisive >= 0,
        size_bound_applies=applies,
        size_bound_ok=size_ok,
        covers=params.covers,
    )


def build_reduction(params: ReductionParams) -> SocialNetwork:
    """Materialize the gadget as a voter network.

    Node layout: ``0..K-1`` isolated, then ``N`` consecutive blocks of
    ``L`` star nodes (head first), then one node per subset.  Accuracies are
    the nearest double to the exact rational ``r``.
    """
    k, l, n_el = params.k_isolated, params.star_size, params.n_elements
    r = float(params.r)
    arcs: list[tuple[int, int]] = []
    for i in range(n_el):
        h = k + i * l
        arcs.extend((h + off, h) for off in range(1, l))
    for j, s in enumerate(params.sets):
        arcs.extend((k + i * l, k + n_el * l + j) for i in sorted(s))
    accuracies = [r] * (k + n_el * l) + [0.5] * params.n_sets
    meta = {
        "model": "reduction",
        "n_elements": n_el,
        "n_sets": params.n_sets,
        "beta": str(params.beta),
        "k_isolated": k,
        "star_size": l,
        "covers": params.covers,
    }
    return SocialNetwork(n=params.n_total, edges=tuple(arcs), accuracies=tuple(accuracies), meta=meta)


def random_cover(
    n_elements: int, n_sets: int, rng: np.random.Generator, density: float = 0.4
) -> tuple[frozenset[int], ...]:
    """Random subset family patched to cover the universe."""
    sets = [
        {int(x) for x in np.flatnonzero(rng.random(n_elements) < density)}
        for _ in range(n_sets)
    ]
    for x in range(n_elements):
        if not any(x in s for s in sets):
            sets[int(rng.integers(n_sets))].add(x)
    return tuple(frozenset(s) for s in sets)
