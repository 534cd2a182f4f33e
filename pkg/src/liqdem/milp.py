"""Mixed-integer formulation of optimal delegation, with LP-file export.

Variables, all indices 1-based in names:

* ``d_i_w`` (binary): voter ``i`` accumulates weight ``w``; ``w = 0`` marks a
  delegator, gurus get their tree size.
* ``z_i_j_w`` (binary): voter ``i`` sends weight ``w >= 1`` along arc (i, j).
* ``x_i_t`` (continuous in [0, 1]): probability that voters ``i..n``
  contribute at least ``t`` correct weight.

Rows: per-voter weight conservation (one own ballot enters the tree), arc
selection tied to being a delegator, one-hot weights, total weight ``n``,
and the recursion rows bounding ``x_i_t`` by the mixing of the two successor
cells for the weight selected at voter ``i``.  Successor terms with
``t - w <= 0`` or ``i = n`` are constants and folded into the right-hand
side.  The objective maximizes ``x_1_T`` with ``T = ceil(n / 2)``.

Weight conservation is what excludes delegation cycles: the members of a
cycle would have to pass strictly growing weights around it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .model import DelegationFunction, SocialNetwork, guru_profile, resolve_gurus


@dataclass(frozen=True)
class LinearRow:
    name: str
    coeffs: tuple[tuple[str, float], ...]
    sense: str  # "=" or "<="
    rhs: float


@dataclass(frozen=True)
class MilpModel:
    n: int
    objective: str
    rows: tuple[LinearRow, ...]
    binaries: tuple[str, ...]
    bounded: tuple[str, ...]  # continuous vars clamped to [0, 1]

    def variables(self) -> tuple[str, ...]:
        return self.binaries + self.bounded

    def rows_by_prefix(self, prefix: str) -> tuple[LinearRow, ...]:
        return tuple(r for r in self.rows if r.name.startswith(prefix))


def threshold(n: int) -> int:
    """Objective threshold ceil(n / 2)."""
    return (n + 1) // 2


def build_milp(net: SocialNetwork) -> MilpModel:
    n = net.n
    p = net.accuracies
    t_max = threshold(n)
    d = lambda i, w: f"d_{i}_{w}"  # noqa: E731
    z = lambda i, j, w: f"z_{i}_{j}_{w}"  # noqa: E731
    x = lambda i, t: f"x_{i}_{t}"  # noqa: E731

    binaries: list[str] = []
    for i in range(1, n + 1):
        binaries.extend(d(i, w) for w in range(0, n + 1))
    arcs = [(i + 1, j + 1) for i, j in net.edges]
    for i, j in arcs:
        binaries.extend(z(i, j, w) for w in range(1, n + 1))
    bounded = [x(i, t) for i in range(1, n + 1) for t in range(1, t_max + 1)]

    out_arcs: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
    in_arcs: dict[int, list[int]] = {i: [] for i in range(1, n + 1)}
    for i, j in arcs:
        out_arcs[i].append(j)
        in_arcs[j].append(i)

    rows: list[LinearRow] = []
    for i in range(1, n + 1):
        coeffs: list[tuple[str, float]] = []
        for j in sorted(out_arcs[i]):
            coeffs.extend((z(i, j, w), float(w)) for w in range(1, n + 1))
        coeffs.extend((d(i, w), float(w)) for w in range(1, n + 1))
        for k in sorted(in_arcs[i]):
            coeffs.extend((z(k, i, w), -float(w)) for w in range(1, n + 1))
        rows.append(LinearRow(f"flow_{i}", tuple(coeffs), "=", 1.0))
    for i in range(1, n + 1):
        coeffs = [
            (z(i, j, w), 1.0) for j in sorted(out_arcs[i]) for w in range(1, n + 1)
        ]
        coeffs.append((d(i, 0), -1.0))
        rows.append(LinearRow(f"choice_{i}", tuple(coeffs), "=", 0.0))
    for i in range(1, n + 1):
        coeffs = [(d(i, w), 1.0) for w in range(0, n + 1)]
        rows.append(LinearRow(f"onehot_{i}", tuple(coeffs), "=", 1.0))
    coeffs = [(d(i, w), float(w)) for i in range(1, n + 1) for w in range(1, n + 1)]
    rows.append(LinearRow("total_weight", tuple(coeffs), "=", float(n)))

    for i in range(1, n + 1):
        pi = p[i - 1]
        for t in range(1, t_max + 1):
            for w in range(0, n + 1):
                acc: dict[str, float] = {x(i, t): 1.0}
                rhs = 1.0
                if t - w <= 0:
                    rhs += pi  # successor term is the constant 1
                elif i < n:
                    name = x(i + 1, t - w)
                    acc[name] = acc.get(name, 0.0) - pi
                if i < n:
                    name = x(i + 1, t)
                    acc[name] = acc.get(name, 0.0) - (1.0 - pi)
                acc[d(i, w)] = acc.get(d(i, w), 0.0) + 1.0
                rows.append(
                    LinearRow(f"rec_{i}_{t}_{w}", tuple(acc.items()), "<=", rhs)
                )

    return MilpModel(
        n=n,
        objective=x(1, t_max),
        rows=tuple(rows),
        binaries=tuple(binaries),
        bounded=tuple(bounded),
    )


def _coef(c: float) -> str:
    return f"{c:.17g}"


def export_lp(model: MilpModel) -> str:
    """Serialize to CPLEX LP text, deterministically ordered."""
    out = ["Maximize", f" obj: {model.objective}", "Subject To"]
    for row in model.rows:
        terms = []
        for k, (var, c) in enumerate(row.coeffs):
            if c == 0.0:
                continue
            sign = "-" if c < 0 else ("+" if terms else "")
            mag = abs(c)
            coef = "" if mag == 1.0 else f"{_coef(mag)} "
            terms.append(f"{sign} {coef}{var}" if sign else f"{coef}{var}")
        body = " ".join(terms)
        out.append(f" {row.name}: {body} {row.sense} {_coef(row.rhs)}")
    out.append("Bounds")
    out.extend(f" 0 <= {v} <= 1" for v in model.bounded)
    out.append("Binary")
    out.extend(f" {v}" for v in model.binaries)
    out.append("End")
    return "\n".join(out) + "\n"


def subtree_weights(net: SocialNetwork, deleg: DelegationFunction) -> list[int]:
    """Delegation-tree size rooted at each voter (1 for leaves)."""
    guru_profile(net, deleg)  # validates, raises on cycles
    weight = [1] * net.n
    order = sorted(range(net.n), key=lambda v: -_depth(deleg.choice, v))
    for v in order:
        if deleg.choice[v] != v:
            weight[deleg.choice[v]] += weight[v]
    return weight


def _depth(choice, v: int) -> int:
    k = 0
    while choice[v] != v:
        v = choice[v]
        k += 1
    return k


def delegation_assignment(net: SocialNetwork, deleg: DelegationFunction) -> dict[str, float]:
    """Variable assignment encoding a valid delegation function.

    Satisfies every row of ``build_milp(net)``.  The objective variable
    takes the recursion value at threshold ceil(n / 2), which is the
    election probability whenever ``n`` is odd; weight-0 voters pass their
    recursion cell through unchanged.
    """
    n = net.n
    weight = subtree_weights(net, deleg)
    guru = resolve_gurus(net, deleg)
    values: dict[str, float] = {}
    active_w = []
    for v in range(n):
        w = weight[v] if guru[v] == v else 0
        active_w.append(w)
        values[f"d_{v + 1}_{w}"] = 1.0
        if deleg.choice[v] != v:
            values[f"z_{v + 1}_{deleg.choice[v] + 1}_{weight[v]}"] = 1.0
    t_max = threshold(n)
    tail = [1.0] + [0.0] * t_max
    for i in range(n, 0, -1):
        pi = net.accuracies[i - 1]
        w = active_w[i - 1]
        head = [1.0] * (t_max + 1)
        for t in range(1, t_max + 1):
            below = tail[t - w] if t - w > 0 else 1.0
            head[t] = pi * below + (1.0 - pi) * tail[t]
            values[f"x_{i}_{t}"] = head[t]
        tail = head
    return values


def check_assignment(
    model: MilpModel, values: dict[str, float], tol: float = 1e-9
) -> list[str]:
    """Names of rows the assignment violates (missing vars read as 0)."""
    bad = []
    for row in model.rows:
        lhs = sum(c * values.get(v, 0.0) for v, c in row.coeffs)
        if row.sense == "=":
            ok = abs(lhs - row.rhs) <= tol
        else:
            ok = lhs <= row.rhs + tol
        if not ok:
            bad.append(row.name)
    return bad
