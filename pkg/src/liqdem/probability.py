"""Probability that a weighted guru electorate elects the correct outcome.

Gurus vote independently, guru ``g`` correctly with probability ``p_g``, and
a correct election needs the correct side to carry a strict majority of the
total voter weight ``n``.  Ties therefore count as losses, which for even
``n`` means the threshold is ``n // 2 + 1``.

Two evaluators are provided.  ``election_probability_bruteforce`` sums over
all subsets of gurus and is the ground truth for small profiles.
``election_probability`` runs the quadratic recursion over gurus sorted by
decreasing weight: with gurus ``g_1..g_q``, ``F(tau, i)`` is the probability
that gurus ``i..q`` contribute at least ``tau`` correct weight, so

    F(tau, i) = p_i * F(tau - w_i, i+1) + (1 - p_i) * F(tau, i+1)

with ``F(tau, .) = 1`` for ``tau <= 0`` and the base row at ``i = q``.  The
answer is ``F(n // 2 + 1, 1)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import DelegationFunction, GuruProfile, SocialNetwork, guru_profile

BRUTEFORCE_MAX_GURUS = 22


def majority_threshold(n: int) -> int:
    """Smallest correct weight that beats the incorrect side outright."""
    return n // 2 + 1


def _ordered(profile: GuruProfile, accuracies) -> list[tuple[int, float]]:
    """(weight, accuracy) pairs sorted by decreasing weight, index tie-break."""
    entries = sorted(profile.entries, key=lambda e: (-e[1], e[0]))
    return [(w, accuracies[g]) for g, w in entries]


def election_probability_bruteforce(profile: GuruProfile, accuracies) -> float:
    """Subset-sum reference evaluator, exponential in the number of gurus.

    Enumerates correct-voter subsets as bitmasks in numpy chunks; refuses
    profiles beyond BRUTEFORCE_MAX_GURUS gurus.
    """
    q = len(profile.entries)
    if q > BRUTEFORCE_MAX_GURUS:
        raise ValueError(f"brute force limited to {BRUTEFORCE_MAX_GURUS} gurus, got {q}")
    n = profile.total_weight
    w = np.array([wt for _, wt in profile.entries], dtype=np.int64)
    p = np.array([accuracies[g] for g, _ in profile.entries], dtype=np.float64)
    bits_of = np.arange(q, dtype=np.int64)
    total = 0.0
    chunk = 1 << 16
    for start in range(0, 1 << q, chunk):
        masks = np.arange(start, min(start + chunk, 1 << q), dtype=np.int64)
        member = (masks[:, None] >> bits_of) & 1
        weight = member @ w
        prob = np.where(member == 1, p, 1.0 - p).prod(axis=1)
        total += float(prob[weight * 2 > n].sum())
    return total


def election_probability(profile: GuruProfile, accuracies) -> float:
    """Exact election probability via the weight-threshold recursion."""
    t_star = majority_threshold(profile.total_weight)
    # tail[tau] = probability gurus i..q reach correct weight >= tau
    tail = [1.0] + [0.0] * t_star
    for w, p in reversed(_ordered(profile, accuracies)):
        q1 = 1.0 - p
        wc = min(w, t_star)
        head = [1.0]
        head += [p + q1 * t for t in tail[1 : wc + 1]]
        if wc < t_star:
            head += [p * a + q1 * b for a, b in zip(tail[1 : t_star - wc + 1], tail[wc + 1 :])]
        tail = head
    return tail[t_star]


@dataclass(frozen=True)
class RecursionTable:
    """Full table of the recursion, mainly for inspection and testing.

    ``rows[i][tau]`` is F(tau, i+1) over the sorted gurus; ``rows[q]`` is the
    empty-suffix row (1 at tau = 0, else 0).
    """

    order: tuple[tuple[int, float], ...]
    threshold: int
    rows: tuple[tuple[float, ...], ...]

    @property
    def value(self) -> float:
        return self.rows[0][self.threshold]


def recursion_table(profile: GuruProfile, accuracies) -> RecursionTable:
    t_star = majority_threshold(profile.total_weight)
    order = _ordered(profile, accuracies)
    tail = [1.0] + [0.0] * t_star
    rows = [tuple(tail)]
    for w, p in reversed(order):
        head = [1.0] * (t_star + 1)
        for tau in range(1, t_star + 1):
            below = tail[tau - w] if tau - w > 0 else 1.0
            head[tau] = p * below + (1.0 - p) * tail[tau]
        tail = head
        rows.append(tuple(tail))
    rows.reverse()
    return RecursionTable(tuple(order), t_star, tuple(rows))


def delegation_score(net: SocialNetwork, d: DelegationFunction) -> float:
    """Election probability of a delegation on its network.

    Validation happens inside ``guru_profile``; cyclic or off-graph
    delegations raise ``DelegationError``.
    """
    profile = guru_profile(net, d)
    return election_probability(profile, net.accuracies)


def profile_score(entries, accuracies) -> float:
    """Score a raw ``(guru, weight)`` iterable without revalidating a network."""
    return election_probability(GuruProfile(tuple(entries)), accuracies)
