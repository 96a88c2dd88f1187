"""Simple undirected graphs and the integer matrices derived from them.

Nodes carry external string labels but every computation runs on dense
indices ``0..n-1`` in label order. Graphs are immutable; the edit helpers
(:func:`add_edge`, :func:`remove_edge`, :func:`toggle_edge`) return new
instances.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    EdgeStateError,
    InvalidSizeError,
    LoopError,
    MalformedInputError,
    SizeLimitError,
)

EDGE_PROBABILITIES = (0.2, 0.5, 0.8)
SYMMETRY_SIZE_LIMIT = 12


class Graph:
    """Unweighted, undirected, loop-free graph with labelled nodes."""

    __slots__ = ("_labels", "_adj", "_index")

    def __init__(self, labels: Sequence[str], adjacency):
        labels = tuple(str(label) for label in labels)
        adj = np.array(adjacency, dtype=np.int64, copy=True)
        n = len(labels)
        if n < 1:
            raise InvalidSizeError("a graph needs at least one node")
        if len(set(labels)) != n:
            raise MalformedInputError("node labels must be unique")
        if any(label == "" for label in labels):
            raise MalformedInputError("empty node label")
        if adj.shape != (n, n):
            raise ValueError(f"adjacency shape {adj.shape} does not match {n} labels")
        if not np.isin(adj, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        if not (adj == adj.T).all():
            raise ValueError("adjacency must be symmetric")
        if np.diagonal(adj).any():
            raise LoopError("adjacency has a self-loop")
        adj.setflags(write=False)
        self._labels = labels
        self._adj = adj
        self._index = {label: i for i, label in enumerate(labels)}

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable[tuple[int, int]]) -> "Graph":
        """Build a graph from index pairs; duplicates collapse, loops raise."""
        n = len(labels)
        adj = np.zeros((n, n), dtype=np.int64)
        for i, j in edges:
            if i == j:
                raise LoopError(f"self-loop at node {labels[i]!r}")
            adj[i, j] = adj[j, i] = 1
        return cls(labels, adj)

    @property
    def labels(self) -> tuple[str, ...]:
        return self._labels

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def n(self) -> int:
        return len(self._labels)

    def __len__(self) -> int:
        return self.n

    def index(self, label) -> int:
        try:
            return self._index[str(label)]
        except KeyError:
            raise KeyError(f"unknown node label {label!r}") from None

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self._adj[i, j])

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self._adj[i])

    def edges(self) -> list[tuple[int, int]]:
        rows, cols = np.nonzero(np.triu(self._adj, 1))
        return list(zip(rows.tolist(), cols.tolist()))

    @property
    def num_edges(self) -> int:
        return int(self._adj.sum()) // 2

    def permute(self, perm: Sequence[int]) -> "Graph":
        """Return the isomorphic graph in which old node ``i`` sits at index ``perm[i]``."""
        perm = np.asarray(perm)
        if sorted(perm.tolist()) != list(range(self.n)):
            raise ValueError("perm must be a permutation of 0..n-1")
        inv = np.argsort(perm)
        labels = [self._labels[k] for k in inv]
        return Graph(labels, self._adj[np.ix_(inv, inv)])

    def subgraph(self, nodes: Sequence[int]) -> "Graph":
        nodes = list(nodes)
        return Graph([self._labels[k] for k in nodes], self._adj[np.ix_(nodes, nodes)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._labels == other._labels and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self._labels, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.num_edges}, labels={list(self._labels)!r})"


@dataclass(frozen=True)
class DegreeVector:
    values: np.ndarray
    max_degree: int
    min_degree: int

    @property
    def is_regular(self) -> bool:
        return self.max_degree == self.min_degree


# -- parsing -------------------------------------------------------------------


def parse_edge_list(text: str, isolated_nodes: Sequence[str] | None = None) -> Graph:
    """Parse a whitespace-separated edge list.

    Lines starting with ``#`` and blank lines are skipped. A ``%nodes: a,b,c``
    directive fixes the node set and index order; otherwise nodes are indexed
    in order of first appearance, followed by ``isolated_nodes``.

    Raises
    ------
    MalformedInputError
        On self-loops, empty labels, lines that do not hold exactly two
        labels, or edges naming nodes outside a ``%nodes`` declaration.
    """
    declared: list[str] | None = None
    order: dict[str, int] = {}
    edges: list[tuple[int, int]] = []

    def intern(label: str, lineno: int) -> int:
        if label not in order:
            if declared is not None:
                raise MalformedInputError(f"node {label!r} not declared in %nodes", lineno)
            order[label] = len(order)
        return order[label]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("%"):
            key, _, value = line[1:].partition(":")
            if key.strip() != "nodes":
                raise MalformedInputError(f"unknown directive {key.strip()!r}", lineno)
            if declared is not None or edges:
                raise MalformedInputError("%nodes must appear once, before any edge", lineno)
            declared = [item.strip() for item in value.split(",")]
            if any(not item for item in declared):
                raise MalformedInputError("empty label in %nodes", lineno)
            if len(set(declared)) != len(declared):
                raise MalformedInputError("duplicate label in %nodes", lineno)
            order = {label: i for i, label in enumerate(declared)}
            continue
        parts = line.split()
        if len(parts) != 2:
            raise MalformedInputError(f"expected two labels, got {len(parts)}", lineno)
        u, v = parts
        if u == v:
            raise MalformedInputError(f"self-loop {u!r}", lineno)
        edges.append((intern(u, lineno), intern(v, lineno)))

    for label in isolated_nodes or ():
        label = str(label)
        if not label:
            raise MalformedInputError("empty isolated-node label")
        if label not in order:
            if declared is not None:
                raise MalformedInputError(f"node {label!r} not declared in %nodes")
            order[label] = len(order)

    if not order:
        raise MalformedInputError("edge list declares no nodes")
    labels = sorted(order, key=order.__getitem__)
    return Graph.from_edges(labels, edges)


def read_edge_list(path, isolated_nodes: Sequence[str] | None = None) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"), isolated_nodes)


def format_edge_list(g: Graph) -> str:
    """Serialize ``g`` so that :func:`parse_edge_list` reproduces it exactly."""
    lines = ["%nodes: " + ",".join(g.labels)]
    lines += [f"{g.labels[i]} {g.labels[j]}" for i, j in g.edges()]
    return "\n".join(lines) + "\n"


# -- derived matrices ----------------------------------------------------------


def degree(g: Graph) -> DegreeVector:
    values = g.adjacency.sum(axis=1)
    values.setflags(write=False)
    return DegreeVector(values, int(values.max()), int(values.min()))


def laplacian(g: Graph) -> np.ndarray:
    """Integer Laplacian ``diag(d) - A``."""
    adj = g.adjacency
    lap = np.diag(adj.sum(axis=1)) - adj
    lap.setflags(write=False)
    return lap


def balanced_adjacency(g: Graph) -> np.ndarray:
    """Adjacency with ``max_degree - d_i`` loops on node ``i``, i.e. ``max_degree*I - L``.

    Every row sums to the maximal degree.
    """
    d = g.adjacency.sum(axis=1)
    bal = g.adjacency + np.diag(d.max() - d)
    bal.setflags(write=False)
    return bal


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted index lists, ordered by smallest member."""
    adj = g.adjacency
    seen = np.zeros(g.n, dtype=bool)
    blocks = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        block = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for v in np.flatnonzero(adj[u]):
                if not seen[v]:
                    seen[v] = True
                    block.append(int(v))
                    queue.append(v)
        blocks.append(sorted(block))
    return blocks


def is_connected(g: Graph) -> bool:
    return len(components(g)) == 1


# -- generators ----------------------------------------------------------------


def _labels(n: int) -> list[str]:
    if n < 1:
        raise InvalidSizeError(f"graph size must be at least 1, got {n}")
    return [str(k + 1) for k in range(n)]


def star(n: int) -> Graph:
    """Star on ``n`` nodes with the center at index 0."""
    return Graph.from_edges(_labels(n), [(0, k) for k in range(1, n)])


def path(n: int) -> Graph:
    return Graph.from_edges(_labels(n), [(k, k + 1) for k in range(n - 1)])


def cycle(n: int) -> Graph:
    labels = _labels(n)
    if n < 3:
        raise InvalidSizeError(f"a simple cycle needs at least 3 nodes, got {n}")
    return Graph.from_edges(labels, [(k, (k + 1) % n) for k in range(n)])


def complete(n: int) -> Graph:
    labels = _labels(n)
    return Graph.from_edges(labels, [(i, j) for i in range(n) for j in range(i + 1, n)])


def empty(n: int) -> Graph:
    return Graph.from_edges(_labels(n), [])


def disjoint_union(*graphs: Graph) -> Graph:
    """Place graphs side by side; labels are made unique with a ``gK:`` prefix if they clash."""
    labels = [label for g in graphs for label in g.labels]
    if len(set(labels)) != len(labels):
        labels = [f"g{k}:{label}" for k, g in enumerate(graphs) for label in g.labels]
    n = len(labels)
    adj = np.zeros((n, n), dtype=np.int64)
    offset = 0
    for g in graphs:
        adj[offset:offset + g.n, offset:offset + g.n] = g.adjacency
        offset += g.n
    return Graph(labels, adj)


def erdos_renyi(n: int, p: float, rng: np.random.Generator) -> Graph:
    upper = np.triu(rng.random((n, n)) < p, 1).astype(np.int64)
    return Graph(_labels(n), upper + upper.T)


def random_graph(
    rng: np.random.Generator,
    n_min: int = 1,
    n_max: int = 20,
    connected: bool = False,
) -> Graph:
    """Erdős–Rényi graph with ``n`` uniform in ``[n_min, n_max]`` and ``p`` drawn
    from :data:`EDGE_PROBABILITIES`. With ``connected`` the draw is repeated
    until the graph is connected."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        p = float(rng.choice(EDGE_PROBABILITIES))
        g = erdos_renyi(n, p, rng)
        if not connected or is_connected(g):
            return g


# -- edits ---------------------------------------------------------------------


def _check_pair(g: Graph, i: int, j: int) -> None:
    if not (0 <= i < g.n and 0 <= j < g.n):
        raise IndexError(f"node index out of range for n={g.n}: ({i}, {j})")
    if i == j:
        raise LoopError(f"cannot connect node {g.labels[i]!r} to itself")


def _with_pair(g: Graph, i: int, j: int, value: int) -> Graph:
    adj = g.adjacency.copy()
    adj[i, j] = adj[j, i] = value
    return Graph(g.labels, adj)


def add_edge(g: Graph, i: int, j: int) -> Graph:
    _check_pair(g, i, j)
    if g.has_edge(i, j):
        raise EdgeStateError(f"edge ({g.labels[i]}, {g.labels[j]}) already present")
    return _with_pair(g, i, j, 1)


def remove_edge(g: Graph, i: int, j: int) -> Graph:
    _check_pair(g, i, j)
    if not g.has_edge(i, j):
        raise EdgeStateError(f"edge ({g.labels[i]}, {g.labels[j]}) not present")
    return _with_pair(g, i, j, 0)


def toggle_edge(g: Graph, i: int, j: int) -> Graph:
    _check_pair(g, i, j)
    return _with_pair(g, i, j, 1 - int(g.adjacency[i, j]))


def non_edges(g: Graph) -> list[tuple[int, int]]:
    return [(i, j) for i in range(g.n) for j in range(i + 1, g.n) if not g.adjacency[i, j]]


# -- symmetry ------------------------------------------------------------------


def _find_swap(adj: np.ndarray, deg: np.ndarray, i: int, j: int) -> bool:
    """Backtracking search for an automorphism with ``i <-> j``."""
    n = len(deg)
    sigma = np.full(n, -1)
    used = np.zeros(n, dtype=bool)
    sigma[i], sigma[j] = j, i
    used[i] = used[j] = True
    rest = [k for k in range(n) if k not in (i, j)]
    assigned = [i, j]

    def consistent(u: int, w: int) -> bool:
        return all(adj[u, a] == adj[w, sigma[a]] for a in assigned)

    def extend(pos: int) -> bool:
        if pos == len(rest):
            return True
        u = rest[pos]
        for w in range(n):
            if used[w] or deg[w] != deg[u] or not consistent(u, w):
                continue
            sigma[u] = w
            used[w] = True
            assigned.append(u)
            if extend(pos + 1):
                return True
            assigned.pop()
            used[w] = False
            sigma[u] = -1
        return False

    return extend(0)


def symmetric_pairs(g: Graph) -> set[frozenset[int]]:
    """Pairs ``{i, j}`` for which some automorphism of ``g`` swaps ``i`` and ``j``.

    Brute force with degree pruning, so restricted to small graphs.
    """
    if g.n > SYMMETRY_SIZE_LIMIT:
        raise SizeLimitError(
            f"symmetric_pairs is limited to n <= {SYMMETRY_SIZE_LIMIT}, got {g.n}"
        )
    adj = g.adjacency
    deg = adj.sum(axis=1)
    pairs = set()
    for i in range(g.n):
        for j in range(i + 1, g.n):
            if deg[i] == deg[j] and _find_swap(adj, deg, i, j):
                pairs.add(frozenset((i, j)))
    return pairs
