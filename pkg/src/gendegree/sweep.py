"""Rankings with ties, parameter sweeps and ranking-change (watershed) search."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import ParameterError
from .graph import Graph
from .solver import DEFAULT_TOL, CentralityVector, generalized_degree_exact

DEFAULT_TIE_TOL = 1e-9
DEFAULT_PROBES = 64
DEFAULT_REFINE_TOL = 1e-9


def fmt(value: float) -> str:
    """Fixed 15-significant-digit rendering used by every serializer."""
    return format(float(value), ".15g")


def round15(value: float) -> float:
    return float(fmt(value))


@dataclass(frozen=True)
class RankingResult:
    tie_groups: tuple[tuple[int, ...], ...]
    tolerance: float = DEFAULT_TIE_TOL

    def __eq__(self, other) -> bool:
        if not isinstance(other, RankingResult):
            return NotImplemented
        return self.tie_groups == other.tie_groups

    def __hash__(self) -> int:
        return hash(self.tie_groups)

    def position(self) -> dict[int, int]:
        """Map node index -> group number (0 = most central)."""
        return {node: k for k, group in enumerate(self.tie_groups) for node in group}

    def top(self) -> tuple[int, ...]:
        return self.tie_groups[0]

    def labelled(self, labels: Sequence[str]) -> list[list[str]]:
        return [[labels[k] for k in group] for group in self.tie_groups]

    def format(self, labels: Sequence[str]) -> str:
        parts = []
        for group in self.labelled(labels):
            parts.append(group[0] if len(group) == 1 else "(" + "~".join(group) + ")")
        return " > ".join(parts)


def rank(x: CentralityVector | np.ndarray, tol: float = DEFAULT_TIE_TOL) -> RankingResult:
    """Group nodes into tie classes, most central first.

    Values are sorted in descending order and neighbours in that order that
    differ by at most ``tol`` are chained into one group, so ties are
    transitive even when the ends of a chain differ by more than ``tol``.
    """
    if tol < 0:
        raise ParameterError(f"tie tolerance must be >= 0, got {tol}")
    values = x.values if isinstance(x, CentralityVector) else np.asarray(x, dtype=np.float64)
    order = np.argsort(-values, kind="stable")
    groups: list[list[int]] = []
    previous = None
    for node in order.tolist():
        if previous is not None and values[previous] - values[node] <= tol:
            groups[-1].append(node)
        else:
            groups.append([node])
        previous = node
    return RankingResult(tuple(tuple(sorted(g)) for g in groups), tol)


# -- sweeps --------------------------------------------------------------------


@dataclass(frozen=True)
class Grid:
    lo: float
    hi: float
    steps: int
    scale: str = "lin"

    def __post_init__(self):
        if self.scale not in ("lin", "log"):
            raise ParameterError(f"grid scale must be 'lin' or 'log', got {self.scale!r}")
        if not (np.isfinite(self.lo) and np.isfinite(self.hi)):
            raise ParameterError("grid bounds must be finite")
        if self.lo < 0 or self.hi <= self.lo:
            raise ParameterError(f"grid needs 0 <= lo < hi, got lo={self.lo}, hi={self.hi}")
        if int(self.steps) != self.steps or self.steps < 2:
            raise ParameterError(f"grid needs at least 2 steps, got {self.steps}")
        if self.scale == "log" and self.lo <= 0:
            raise ParameterError("a logarithmic grid needs lo > 0")

    @classmethod
    def parse(cls, text: str) -> "Grid":
        """Parse ``lo:hi:steps[:log|lin]``."""
        parts = text.split(":")
        if len(parts) not in (3, 4):
            raise ParameterError(f"grid must look like lo:hi:steps[:log|lin], got {text!r}")
        try:
            lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise ParameterError(f"cannot parse grid {text!r}") from None
        return cls(lo, hi, steps, parts[3] if len(parts) == 4 else "lin")

    def values(self) -> np.ndarray:
        if self.scale == "log":
            return np.geomspace(self.lo, self.hi, int(self.steps))
        return np.linspace(self.lo, self.hi, int(self.steps))


@dataclass(frozen=True)
class SweepPoint:
    epsilon: float
    vector: CentralityVector
    ranking: RankingResult


@dataclass(frozen=True)
class EpsilonSweep:
    labels: tuple[str, ...]
    points: tuple[SweepPoint, ...]

    def epsilons(self) -> np.ndarray:
        return np.array([p.epsilon for p in self.points])

    def matrix(self) -> np.ndarray:
        """One row of centrality values per grid point."""
        return np.vstack([p.vector.values for p in self.points])

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["epsilon", *self.labels])
        for p in self.points:
            writer.writerow([fmt(p.epsilon), *(fmt(v) for v in p.vector.values)])
        return buf.getvalue()


def sweep(
    g: Graph,
    grid: Grid | Sequence[float],
    tol: float = DEFAULT_TIE_TOL,
    solver_tol: float = DEFAULT_TOL,
) -> EpsilonSweep:
    """Evaluate generalized degree and its ranking at every grid value."""
    if isinstance(grid, Grid):
        epsilons = grid.values()
    else:
        epsilons = np.asarray(list(grid), dtype=np.float64)
        if epsilons.ndim != 1 or len(epsilons) == 0:
            raise ParameterError("grid must contain at least one value")
        if (epsilons < 0).any() or not np.isfinite(epsilons).all():
            raise ParameterError("grid values must be finite and >= 0")
        if (np.diff(epsilons) <= 0).any():
            raise ParameterError("grid values must be strictly increasing")
    points = []
    for eps in epsilons.tolist():
        vector = generalized_degree_exact(g, eps, solver_tol)
        points.append(SweepPoint(eps, vector, rank(vector, tol)))
    return EpsilonSweep(g.labels, tuple(points))


# -- watersheds ----------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    lo: float
    hi: float
    ranking: RankingResult


@dataclass(frozen=True)
class WatershedReport:
    labels: tuple[str, ...]
    boundaries: tuple[float, ...]
    intervals: tuple[Interval, ...]

    def to_dict(self) -> dict:
        return {
            "boundaries": [round15(b) for b in self.boundaries],
            "intervals": [
                {
                    "lo": round15(iv.lo),
                    "hi": round15(iv.hi),
                    "ranking": iv.ranking.labelled(self.labels),
                }
                for iv in self.intervals
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"


def _probe_points(eps_lo: float, eps_hi: float, steps: int) -> list[float]:
    if eps_lo > 0:
        return np.geomspace(eps_lo, eps_hi, steps).tolist()
    # A log grid cannot start at zero: probe zero itself, then six decades below eps_hi.
    return [0.0, *np.geomspace(eps_hi * 1e-6, eps_hi, steps - 1).tolist()]


def _midpoint(lo: float, hi: float) -> float:
    return float(np.sqrt(lo * hi)) if lo > 0 else 0.5 * (lo + hi)


def watersheds(
    g: Graph,
    eps_lo: float,
    eps_hi: float,
    probe_steps: int = DEFAULT_PROBES,
    refine_tol: float = DEFAULT_REFINE_TOL,
    tie_tol: float = DEFAULT_TIE_TOL,
    solver_tol: float = DEFAULT_TOL,
) -> WatershedReport:
    """Locate parameter values where the ranking changes.

    Rankings are probed on a logarithmic grid. Whenever two neighbouring
    probes disagree the bracket is bisected until narrower than
    ``refine_tol``; the midpoint of the final bracket is the boundary. Two
    changes between the same pair of probes show up as at most one boundary.
    """
    if not (0 <= eps_lo < eps_hi) or not np.isfinite(eps_hi):
        raise ParameterError(f"need 0 <= eps_lo < eps_hi, got {eps_lo}, {eps_hi}")
    if int(probe_steps) != probe_steps or probe_steps < 8:
        raise ParameterError(f"probe_steps must be an integer >= 8, got {probe_steps}")
    if refine_tol <= 0:
        raise ParameterError("refine_tol must be positive")

    def ranking_at(eps: float) -> RankingResult:
        return rank(generalized_degree_exact(g, eps, solver_tol), tie_tol)

    probes = _probe_points(float(eps_lo), float(eps_hi), int(probe_steps))
    rankings = [ranking_at(eps) for eps in probes]

    boundaries = []
    for k in range(len(probes) - 1):
        lo, hi = probes[k], probes[k + 1]
        r_lo, r_hi = rankings[k], rankings[k + 1]
        if r_lo == r_hi:
            continue
        while hi - lo >= refine_tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            r_mid = ranking_at(mid)
            if r_mid != r_lo:
                hi, r_hi = mid, r_mid
            else:
                lo = mid
        boundaries.append(0.5 * (lo + hi))

    edges = [float(eps_lo), *boundaries, float(eps_hi)]
    intervals: list[Interval] = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        ranking = ranking_at(_midpoint(lo, hi))
        intervals.append(Interval(lo, hi, ranking))
    return WatershedReport(g.labels, tuple(boundaries), tuple(intervals))


def stable_ranking_intervals(report: WatershedReport) -> str:
    """Plain-text table of each stable interval and its ranking."""
    rows = []
    for iv in report.intervals:
        top = ",".join(report.labels[k] for k in iv.ranking.top())
        rows.append((f"({fmt(iv.lo)}, {fmt(iv.hi)})", top, iv.ranking.format(report.labels)))
    head = ("interval", "top", "ranking")
    widths = [max(len(r[c]) for r in [head, *rows]) for c in range(2)]
    lines = [f"{head[0]:<{widths[0]}}  {head[1]:<{widths[1]}}  {head[2]}"]
    lines += [f"{a:<{widths[0]}}  {b:<{widths[1]}}  {c}" for a, b, c in rows]
    if report.boundaries:
        lines.append("boundaries: " + ", ".join(fmt(b) for b in report.boundaries))
    else:
        lines.append("boundaries: none")
    return "\n".join(lines) + "\n"
