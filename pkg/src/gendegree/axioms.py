"""Executable axiom checks for generalized degree.

Every check returns an :class:`AxiomReport`; a failed report always carries a
witness that :func:`verify_witness` can re-derive from the input graph.
Centrality comparisons treat differences within ``tol`` as ties.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import EdgeStateError, InvalidSizeError, LoopError, ParameterError
from .graph import (
    Graph,
    add_edge,
    components,
    degree,
    non_edges,
    random_graph,
    star,
    toggle_edge,
)
from .solver import generalized_degree
from .sweep import round15

DEFAULT_COMPARE_TOL = 1e-9
DEFAULT_SUITE_TOL = 1e-10
AGREEMENT_LOW = 1e-8
AGREEMENT_HIGH = 1e8
AGREEMENT_TOL = 1e-5
SCB_CLOSED_FORM_TOL = 1e-10
# Stand-in for the unbounded reasonable range of regular graphs in random suites.
REGULAR_EPSILON_CAP = 10.0

Measure = Callable[[Graph], np.ndarray]


@dataclass(frozen=True)
class ReasonablenessBound:
    epsilon_max: float
    max_degree: int
    min_degree: int

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.epsilon_max)

    def admits(self, epsilon: float) -> bool:
        return epsilon <= self.epsilon_max


@dataclass(frozen=True)
class AxiomReport:
    axiom: str
    verdict: str
    epsilon: float | None = None
    tol: float | None = None
    witness: dict | None = None
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def to_dict(self) -> dict:
        return {
            "axiom": self.axiom,
            "verdict": self.verdict,
            "epsilon": _plain(self.epsilon),
            "tol": _plain(self.tol),
            "witness": _plain(self.witness),
            "details": _plain(self.details),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _plain(value):
    """Turn numpy scalars/arrays into JSON-ready values with 15-digit floats."""
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        value = float(value)
        return round15(value) if math.isfinite(value) else str(value)
    return value


def _report(axiom, ok, epsilon=None, tol=None, witness=None, **details) -> AxiomReport:
    epsilon = None if epsilon is None else float(epsilon)
    tol = None if tol is None else float(tol)
    return AxiomReport(axiom, "pass" if ok else "fail", epsilon, tol, None if ok else witness, details)


# -- reasonable parameter bound -----------------------------------------------


def reasonableness_lhs(epsilon: float, max_degree: int, min_degree: int) -> float:
    """Left side of the sufficient condition ``(D - d)[(2D + 4)e^3 + 2e^2 + e] <= 1``."""
    e = epsilon
    return (max_degree - min_degree) * ((2 * max_degree + 4) * e**3 + 2 * e**2 + e)


def epsilon_bound(max_degree: int, min_degree: int) -> float:
    """Largest ``epsilon`` satisfying the reasonableness condition (``inf`` if regular)."""
    if max_degree < min_degree or min_degree < 0:
        raise ParameterError(f"invalid degree range [{min_degree}, {max_degree}]")
    if max_degree == min_degree:
        return math.inf

    def f(e):
        return reasonableness_lhs(e, max_degree, min_degree) - 1.0

    lo, hi = 0.0, 1.0
    while f(hi) <= 0:
        lo, hi = hi, 2 * hi
    # Bisect to float resolution; lo always satisfies the condition.
    while True:
        mid = 0.5 * (lo + hi)
        if mid <= lo or mid >= hi:
            break
        if f(mid) <= 0:
            lo = mid
        else:
            hi = mid
    return lo


def reasonable_epsilon_max(g: Graph) -> ReasonablenessBound:
    deg = degree(g)
    return ReasonablenessBound(
        epsilon_bound(deg.max_degree, deg.min_degree), deg.max_degree, deg.min_degree
    )


# -- measures ------------------------------------------------------------------


def degree_measure(g: Graph) -> np.ndarray:
    return g.adjacency.sum(axis=1).astype(np.float64)


def _measure(measure: Measure | None, epsilon: float) -> Measure:
    if measure is not None:
        return measure
    return lambda g: generalized_degree(g, epsilon)


# -- rank monotonicity ---------------------------------------------------------


def _arm_violation(x, xp, node, other, tol):
    before, after = x[node] - x[other], xp[node] - xp[other]
    if before >= -tol and after < -tol:
        return "weak"
    if before > tol and after <= tol:
        return "strict"
    return None


def check_arm(
    g: Graph,
    i: int,
    j: int,
    epsilon: float,
    tol: float = DEFAULT_COMPARE_TOL,
    measure: Measure | None = None,
) -> AxiomReport:
    """Adding rank monotonicity for the new edge ``(i, j)``.

    Both endpoints are tested against every node ``k`` outside the edge: a
    node at least as central as ``k`` (strictly more central) before the
    addition must stay at least as central (strictly more central) after it.
    """
    if i == j:
        raise LoopError("ARM needs two distinct nodes")
    if g.has_edge(i, j):
        raise EdgeStateError(f"edge ({g.labels[i]}, {g.labels[j]}) already present")
    f = _measure(measure, epsilon)
    x = f(g)
    xp = f(add_edge(g, i, j))
    for node in (i, j):
        for k in range(g.n):
            if k in (i, j):
                continue
            kind = _arm_violation(x, xp, node, k, tol)
            if kind:
                witness = {
                    "edge": [g.labels[i], g.labels[j]],
                    "node": g.labels[node],
                    "other": g.labels[k],
                    "kind": kind,
                    "x_node_before": x[node],
                    "x_other_before": x[k],
                    "x_node_after": xp[node],
                    "x_other_after": xp[k],
                }
                return _report("ARM", False, epsilon, tol, witness)
    return _report("ARM", True, epsilon, tol, edge=[g.labels[i], g.labels[j]])


# -- star center base ----------------------------------------------------------


def star_gap(n: int, epsilon: float) -> float:
    """Closed-form center-minus-leaf difference on a star with ``n`` nodes."""
    return (n - 2) / (1 + epsilon * n)


def check_scb(n: int, epsilon: float, tol: float = SCB_CLOSED_FORM_TOL) -> AxiomReport:
    """Center of ``star(n)`` must beat every leaf; the gap is also matched to its closed form."""
    if n < 3:
        raise InvalidSizeError(f"star center base needs n >= 3, got {n}")
    x = generalized_degree(star(n), epsilon)
    leaves = x[1:]
    gap = x[0] - leaves.max()
    expected = star_gap(n, epsilon)
    worst = int(np.argmax(leaves)) + 1
    ok = bool((x[0] > leaves).all()) and abs(gap - expected) <= tol
    witness = {
        "leaf": str(worst + 1),
        "x_center": x[0],
        "x_leaf": x[worst],
        "gap": gap,
        "expected_gap": expected,
    }
    return _report("SCB", ok, epsilon, tol, witness, n=n, gap=gap, expected_gap=expected)


# -- independence of irrelevant connections -----------------------------------


def check_iic(
    g: Graph,
    k: int,
    l: int,
    epsilon: float,
    tol: float = DEFAULT_COMPARE_TOL,
    measure: Measure | None = None,
) -> AxiomReport:
    """Toggle edge ``(k, l)`` and require the weak order on the remaining nodes to survive."""
    if k == l:
        raise LoopError("IIC needs two distinct nodes")
    f = _measure(measure, epsilon)
    x = f(g)
    xp = f(toggle_edge(g, k, l))
    rest = [m for m in range(g.n) if m not in (k, l)]
    for a in rest:
        for b in rest:
            if a != b and x[a] - x[b] >= -tol and xp[a] - xp[b] < -tol:
                witness = {
                    "toggled": [g.labels[k], g.labels[l]],
                    "added": not g.has_edge(k, l),
                    "pair": [g.labels[a], g.labels[b]],
                    "x_first_before": x[a],
                    "x_second_before": x[b],
                    "x_first_after": xp[a],
                    "x_second_after": xp[b],
                }
                return _report("IIC", False, epsilon, tol, witness)
    return _report("IIC", True, epsilon, tol, toggled=[g.labels[k], g.labels[l]])


# -- witness re-validation -----------------------------------------------------


def verify_witness(report: AxiomReport, g: Graph, measure: Measure | None = None) -> bool:
    """Recompute both centrality vectors from a failed ARM/IIC report and
    confirm the recorded comparison really is a violation."""
    if report.passed or report.witness is None:
        return False
    w = report.witness
    f = _measure(measure, report.epsilon)
    if report.axiom == "ARM":
        i, j = (g.index(v) for v in w["edge"])
        node, other = g.index(w["node"]), g.index(w["other"])
        x, xp = f(g), f(add_edge(g, i, j))
        return _arm_violation(x, xp, node, other, report.tol) == w["kind"]
    if report.axiom == "IIC":
        k, l = (g.index(v) for v in w["toggled"])
        a, b = (g.index(v) for v in w["pair"])
        x, xp = f(g), f(toggle_edge(g, k, l))
        tol = report.tol
        return bool(x[a] - x[b] >= -tol and xp[a] - xp[b] < -tol)
    raise ValueError(f"no witness re-validation for axiom {report.axiom!r}")


# -- property suite ------------------------------------------------------------


def _component_limit(g: Graph) -> np.ndarray:
    """Per-component mean degree, the large-parameter limit of generalized degree."""
    d = degree_measure(g)
    limit = np.empty_like(d)
    for block in components(g):
        limit[block] = d[block].mean()
    return limit


def _worst(values: np.ndarray) -> int:
    return int(np.argmax(values))


def property_suite(
    g: Graph,
    epsilons: Iterable[float],
    tol: float = DEFAULT_SUITE_TOL,
    agreement_tol: float = AGREEMENT_TOL,
) -> list[AxiomReport]:
    """Degree preservation, zero presumption, independence of disconnected
    parts, boundedness and flatness at each ``epsilon``, followed by the two
    agreement limits evaluated at ``1e-8`` and ``1e8``."""
    deg = degree(g)
    d = deg.values.astype(np.float64)
    labels = g.labels
    blocks = components(g)
    reports = []
    for eps in epsilons:
        x = generalized_degree(g, eps)

        drift = abs(x.sum() - d.sum())
        reports.append(_report(
            "degree_preservation", drift <= max(g.n, 1) * tol, eps, tol,
            {"sum_x": x.sum(), "sum_d": d.sum(), "drift": drift},
            drift=drift,
        ))

        zero = x <= tol
        mismatch = np.flatnonzero(zero != (d == 0))
        reports.append(_report(
            "zero_presumption", len(mismatch) == 0, eps, tol,
            {"node": labels[mismatch[0]], "x": x[mismatch[0]], "d": d[mismatch[0]]}
            if len(mismatch) else None,
            isolated=[labels[k] for k in np.flatnonzero(d == 0)],
        ))

        local = np.empty_like(x)
        for block in blocks:
            local[block] = generalized_degree(g.subgraph(block), eps)
        gap = np.abs(local - x)
        worst = _worst(gap)
        reports.append(_report(
            "idcp", gap.max() <= tol, eps, tol,
            {"node": labels[worst], "whole": x[worst], "component": local[worst],
             "difference": gap[worst]},
            components=len(blocks), max_difference=gap.max(),
        ))

        below = deg.min_degree - tol - x
        above = x - deg.max_degree - tol
        excess = np.maximum(below, above)
        worst = _worst(excess)
        reports.append(_report(
            "boundedness", excess.max() <= 0, eps, tol,
            {"node": labels[worst], "x": x[worst], "min_degree": deg.min_degree,
             "max_degree": deg.max_degree},
        ))

        spread = x.max() - x.min()
        flat = spread <= tol * max(1.0, float(np.abs(x).max()))
        regular = deg.is_regular
        summary = f"{'flat' if flat else 'not flat'} and {'regular' if regular else 'not regular'}"
        reports.append(_report(
            "flatness", flat == regular, eps, tol,
            {"flat": flat, "regular": regular, "spread": spread},
            summary=summary, spread=spread,
        ))

    low = generalized_degree(g, AGREEMENT_LOW)
    dev = np.abs(low - d)
    worst = _worst(dev)
    reports.append(_report(
        "agreement", dev.max() <= agreement_tol, AGREEMENT_LOW, agreement_tol,
        {"node": labels[worst], "x": low[worst], "limit": d[worst]},
        limit="degree", max_deviation=dev.max(),
    ))
    high = generalized_degree(g, AGREEMENT_HIGH)
    target = _component_limit(g)
    dev = np.abs(high - target)
    worst = _worst(dev)
    reports.append(_report(
        "agreement", dev.max() <= agreement_tol, AGREEMENT_HIGH, agreement_tol,
        {"node": labels[worst], "x": high[worst], "limit": target[worst]},
        limit="component mean degree", max_deviation=dev.max(),
    ))
    return reports


def check_anonymity(
    g: Graph,
    epsilon: float,
    permutations: int = 5,
    seed: int = 0,
    rel_tol: float = 1e-12,
) -> AxiomReport:
    """Relabel ``g`` by random permutations and require the values to follow the nodes."""
    rng = np.random.default_rng(seed)
    x = generalized_degree(g, epsilon)
    scale = np.maximum(np.abs(x), 1.0)
    worst = 0.0
    for _ in range(permutations):
        perm = rng.permutation(g.n)
        y = generalized_degree(g.permute(perm), epsilon)[perm]
        err = np.abs(y - x) / scale
        worst = max(worst, float(err.max()))
        if err.max() > rel_tol:
            k = _worst(err)
            witness = {"permutation": perm.tolist(), "node": g.labels[k],
                       "x": x[k], "x_permuted": y[k]}
            return _report("anonymity", False, epsilon, rel_tol, witness, seed=seed)
    return _report("anonymity", True, epsilon, rel_tol, seed=seed, max_relative_error=worst)


# -- randomized falsification of the sufficient condition ----------------------


@dataclass(frozen=True)
class FalsificationResult:
    seed: int
    graphs: int
    checks: int
    violations: tuple[AxiomReport, ...]
    graphs_used: tuple[Graph, ...] = field(repr=False, default=())

    @property
    def passed(self) -> bool:
        return not self.violations


def arm_falsification(
    seed: int = 0,
    n_graphs: int = 200,
    edits: int = 20,
    fractions: Sequence[float] = (0.25, 0.5, 0.75, 1.0),
    n_max: int = 20,
    tol: float = DEFAULT_COMPARE_TOL,
) -> FalsificationResult:
    """Try to break ARM inside the reasonable parameter range.

    Draws ``n_graphs`` connected random graphs with at least one missing edge,
    adds up to ``edits`` distinct random edges to each (one at a time) and
    runs :func:`check_arm` at every ``fraction * epsilon_max`` of the
    unedited graph.
    """
    rng = np.random.default_rng(seed)
    checks = 0
    violations = []
    used = []
    while len(used) < n_graphs:
        g = random_graph(rng, 3, n_max, connected=True)
        missing = non_edges(g)
        if not missing:
            continue
        used.append(g)
        bound = reasonable_epsilon_max(g)
        cap = bound.epsilon_max if bound.bounded else REGULAR_EPSILON_CAP
        picks = rng.choice(len(missing), size=min(edits, len(missing)), replace=False)
        for p in picks.tolist():
            i, j = missing[p]
            for frac in fractions:
                checks += 1
                report = check_arm(g, i, j, frac * cap, tol)
                if not report.passed:
                    violations.append(report)
    return FalsificationResult(seed, n_graphs, checks, tuple(violations), tuple(used))
