"""Generalized degree ``x(eps)`` solving ``(I + eps L) x = d``.

Two independent routes are provided: a direct solve (Cholesky on small and
medium graphs, conjugate gradients beyond :data:`DIRECT_SOLVE_LIMIT`) and the
Neumann-series iteration over the balanced adjacency ``C = dmax I - L``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg
import scipy.sparse
import scipy.sparse.linalg

from .errors import NumericError, ParameterError, UndefinedError
from .graph import Graph, balanced_adjacency, laplacian

DEFAULT_TOL = 1e-10
DEFAULT_K_MAX = 10_000
DIRECT_SOLVE_LIMIT = 2048
_REFINEMENT_STEPS = 4


@dataclass(frozen=True)
class CentralityVector:
    epsilon: float
    values: np.ndarray
    labels: tuple[str, ...] = ()
    residual: float = 0.0

    def __len__(self) -> int:
        return len(self.values)

    def as_dict(self) -> dict[str, float]:
        return dict(zip(self.labels, self.values.tolist()))


@dataclass(frozen=True)
class NeumannTrace:
    beta: float
    partial_sums: list[np.ndarray] = field(repr=False)
    term_norms: list[float] = field(repr=False)
    converged: bool = True

    @property
    def iterations(self) -> int:
        return len(self.term_norms) - 1


@dataclass(frozen=True)
class IteratedDegree:
    k: int
    values: np.ndarray


@dataclass(frozen=True)
class SolitarinessVector:
    alpha: float
    values: np.ndarray
    labels: tuple[str, ...] = ()


def _check_parameter(name: str, value: float, allow_zero: bool) -> float:
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ParameterError(f"{name} must be a real number, got {value!r}") from None
    if not math.isfinite(value):
        raise ParameterError(f"{name} must be finite, got {value}")
    if value < 0 or (value == 0 and not allow_zero):
        bound = ">= 0" if allow_zero else "> 0"
        raise ParameterError(f"{name} must be {bound}, got {value}")
    return value


def _frozen(values: np.ndarray) -> np.ndarray:
    values = np.ascontiguousarray(values, dtype=np.float64)
    values.setflags(write=False)
    return values


def residual(g: Graph, epsilon: float, x: np.ndarray) -> np.ndarray:
    """``(I + eps L) x - d`` evaluated edge by edge as ``x_i + eps sum_j a_ij (x_i - x_j) - d_i``.

    Differencing neighbours first avoids the cancellation in ``d_i x_i - sum_j x_j``,
    which matters once ``eps`` is large.
    """
    x = np.asarray(x, dtype=np.float64)
    d = g.adjacency.sum(axis=1)
    edges = np.array(g.edges(), dtype=np.int64).reshape(-1, 2)
    flow = np.zeros_like(x)
    if len(edges):
        u, v = edges[:, 0], edges[:, 1]
        diff = x[u] - x[v]
        np.add.at(flow, u, diff)
        np.add.at(flow, v, -diff)
    return x + epsilon * flow - d


def _residual_target(tol: float, d: np.ndarray, epsilon: float = 0.0, x=None) -> float:
    """``tol * max(1, max(d))`` plus the floor set by rounding ``x`` to float64.

    The floor, ``4 u (1 + 2 eps dmax) max|x|``, is negligible unless ``eps`` is huge.
    """
    target = tol * max(1.0, float(np.abs(d).max()))
    if x is not None and len(x):
        scale = 1.0 + 2.0 * epsilon * float(d.max())
        target += 4.0 * np.finfo(np.float64).eps * scale * float(np.abs(x).max())
    return target


def _solve_direct(g: Graph, epsilon: float, d: np.ndarray) -> np.ndarray:
    system = np.eye(g.n) + epsilon * laplacian(g)
    factor = scipy.linalg.cho_factor(system, lower=True, check_finite=False)
    x = scipy.linalg.cho_solve(factor, d, check_finite=False)
    # Fixed-precision refinement; the accurate residual is what makes it pay off.
    best = np.abs(residual(g, epsilon, x)).max()
    for _ in range(_REFINEMENT_STEPS):
        r = residual(g, epsilon, x)
        candidate = x - scipy.linalg.cho_solve(factor, r, check_finite=False)
        norm = np.abs(residual(g, epsilon, candidate)).max()
        if not norm < best:
            break
        x, best = candidate, norm
    return x


def _solve_cg(g: Graph, epsilon: float, d: np.ndarray, tol: float) -> np.ndarray:
    adj = scipy.sparse.csr_matrix(g.adjacency.astype(np.float64))
    lap = scipy.sparse.diags(d) - adj
    system = scipy.sparse.identity(g.n, format="csr") + epsilon * lap
    atol = _residual_target(tol, d) / 10
    x, info = scipy.sparse.linalg.cg(system, d, x0=d.copy(), rtol=0.0, atol=atol, maxiter=10 * g.n)
    if info < 0:
        raise NumericError("conjugate gradient breakdown")
    return x


def generalized_degree_exact(
    g: Graph, epsilon: float, tol: float = DEFAULT_TOL
) -> CentralityVector:
    """Solve ``(I + eps L) x = d`` directly.

    ``epsilon = 0`` short-circuits to the degree vector.

    Raises
    ------
    ParameterError
        If ``epsilon`` is negative or not finite.
    NumericError
        If the solution is non-finite or its residual max-norm exceeds
        ``tol * max(1, max(d))`` (plus a float64 rounding floor that only
        matters for very large ``epsilon``).
    """
    epsilon = _check_parameter("epsilon", epsilon, allow_zero=True)
    d = g.adjacency.sum(axis=1).astype(np.float64)
    if epsilon == 0.0:
        return CentralityVector(0.0, _frozen(d), g.labels, 0.0)
    if g.n <= DIRECT_SOLVE_LIMIT:
        x = _solve_direct(g, epsilon, d)
    else:
        x = _solve_cg(g, epsilon, d, tol)
    if not np.isfinite(x).all():
        raise NumericError("solver produced non-finite values")
    res = float(np.abs(residual(g, epsilon, x)).max())
    target = _residual_target(tol, d, epsilon, x)
    if res > target:
        raise NumericError(f"residual above target {target:.3e}", res)
    return CentralityVector(epsilon, _frozen(x), g.labels, res)


def generalized_degree(g: Graph, epsilon: float, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Shortcut returning just the values of :func:`generalized_degree_exact`."""
    return generalized_degree_exact(g, epsilon, tol).values


def neumann_beta(epsilon: float, max_degree: int) -> float:
    return epsilon / (1.0 + epsilon * max_degree)


def generalized_degree_neumann(
    g: Graph,
    epsilon: float,
    tol: float = DEFAULT_TOL,
    k_max: int = DEFAULT_K_MAX,
    keep_partial_sums: bool = True,
) -> tuple[CentralityVector, NeumannTrace]:
    """Accumulate ``(1 - beta dmax) sum_k (beta C)^k d`` with ``beta = eps / (1 + eps dmax)``.

    Iteration stops once the max-norm of the latest added term drops below
    ``tol`` or after ``k_max`` terms; in the latter case the trace is marked
    ``converged=False`` and the partial sum is still returned.
    """
    epsilon = _check_parameter("epsilon", epsilon, allow_zero=False)
    if int(k_max) != k_max or k_max < 1:
        raise ParameterError(f"k_max must be a positive integer, got {k_max}")
    d = g.adjacency.sum(axis=1).astype(np.float64)
    dmax = int(d.max())
    beta = neumann_beta(epsilon, dmax)
    bal = balanced_adjacency(g).astype(np.float64)

    term = (1.0 - beta * dmax) * d
    x = term.copy()
    partial_sums = [x.copy()] if keep_partial_sums else []
    term_norms = [float(np.abs(term).max())]
    converged = False
    for _ in range(int(k_max)):
        term = beta * (bal @ term)
        x += term
        norm = float(np.abs(term).max())
        term_norms.append(norm)
        if keep_partial_sums:
            partial_sums.append(x.copy())
        if not math.isfinite(norm):
            raise NumericError("Neumann iteration diverged")
        if norm < tol:
            converged = True
            break
    if not keep_partial_sums:
        partial_sums.append(x.copy())
    res = float(np.abs(residual(g, epsilon, x)).max())
    vector = CentralityVector(epsilon, _frozen(x), g.labels, res)
    return vector, NeumannTrace(beta, partial_sums, term_norms, converged)


def iterated_degree(g: Graph, k: int) -> IteratedDegree:
    """``((1/dmax) C)^k d`` by ``k`` repeated products; the total degree is preserved."""
    if int(k) != k or k < 0:
        raise ParameterError(f"k must be a nonnegative integer, got {k}")
    d = g.adjacency.sum(axis=1).astype(np.float64)
    dmax = d.max()
    if dmax == 0:
        raise UndefinedError("iterated degree is undefined on an edgeless graph")
    step = balanced_adjacency(g).astype(np.float64) / dmax
    values = d
    for _ in range(int(k)):
        values = step @ values
    return IteratedDegree(int(k), _frozen(values))


def solitariness(g: Graph, alpha: float) -> SolitarinessVector:
    """``1 - q_ii`` for ``Q = (I + alpha L)^-1``; larger means more central."""
    alpha = _check_parameter("alpha", alpha, allow_zero=False)
    system = np.eye(g.n) + alpha * laplacian(g)
    factor = scipy.linalg.cho_factor(system, lower=True, check_finite=False)
    q = scipy.linalg.cho_solve(factor, np.eye(g.n), check_finite=False)
    values = 1.0 - np.diagonal(q)
    if not np.isfinite(values).all():
        raise NumericError("solitariness produced non-finite values")
    # Isolated nodes have q_ii = 1 exactly; don't let rounding leave a residue.
    values = np.where(g.adjacency.any(axis=1), values, 0.0)
    return SolitarinessVector(alpha, _frozen(values), g.labels)


def centrality_index(x: CentralityVector | np.ndarray) -> float:
    """Reciprocal of the largest centrality value."""
    values = x.values if isinstance(x, CentralityVector) else np.asarray(x, dtype=np.float64)
    top = float(values.max())
    if top <= 0:
        raise UndefinedError("centrality index is undefined when every value is zero")
    return 1.0 / top
