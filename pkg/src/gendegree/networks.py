"""Small reference networks with fixed labellings.

Labels follow the figures the networks are usually drawn in
(``"1"`` .. ``"n"``), so index ``k`` carries label ``str(k + 1)``.
"""

from __future__ import annotations

from .graph import Graph

_PATH4 = [(1, 2), (2, 3), (3, 4)]
_TWO_TRIANGLES = [(3, 4), (3, 5), (4, 5), (4, 6), (5, 6)]
_PENDANTS = [(1, 3), (2, 3)]
_CUBIC8 = [
    (1, 2), (1, 8), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 8),
    (1, 4), (2, 5), (3, 7), (6, 8),
]
_SEQ_A = [(1, 2), (1, 4), (1, 5), (1, 6), (2, 3), (3, 7)]
_SEQ_B = [(1, 2), (1, 3), (1, 5), (1, 6), (2, 4), (3, 7)]
_SEQ_C = [(1, 2), (1, 3), (1, 5), (1, 6), (2, 3), (4, 7)]
_LOOPS = [(1, 2), (2, 3), (2, 4), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)]


def _build(n: int, edges) -> Graph:
    return Graph.from_edges([str(k + 1) for k in range(n)], [(u - 1, v - 1) for u, v in edges])


def path_with_isolated() -> Graph:
    """Path 1-2-3-4 plus isolated node 5."""
    return _build(5, _PATH4)


def path5() -> Graph:
    """``path_with_isolated`` after connecting 4 and 5."""
    return _build(5, _PATH4 + [(4, 5)])


def two_triangles_base() -> Graph:
    """Nodes 3..6 on two triangles sharing edge 4-5; nodes 1, 2 isolated.

    Nodes 3 and 6 are symmetric here, which makes it the base for the
    rank-monotonicity counterexample (add edge 2-3 at a large parameter).
    """
    return _build(6, _TWO_TRIANGLES)


def two_triangles_pendants() -> Graph:
    """``two_triangles_base`` with pendants 1 and 2 joined to node 3."""
    return _build(6, _TWO_TRIANGLES + _PENDANTS)


def cubic8() -> Graph:
    """Eight-node 3-regular graph whose nodes are not all symmetric."""
    return _build(8, _CUBIC8)


def degree_sequence_a() -> Graph:
    """First of the three graphs with degree sequence 4,2,2,1,1,1,1."""
    return _build(7, _SEQ_A)


def degree_sequence_b() -> Graph:
    return _build(7, _SEQ_B)


def degree_sequence_c() -> Graph:
    return _build(7, _SEQ_C)


def loops_example() -> Graph:
    """Six-node graph with degrees 1,3,4,4,3,3."""
    return _build(6, _LOOPS)


REGISTRY = {
    "path_with_isolated": path_with_isolated,
    "path5": path5,
    "two_triangles_base": two_triangles_base,
    "two_triangles_pendants": two_triangles_pendants,
    "cubic8": cubic8,
    "degree_sequence_a": degree_sequence_a,
    "degree_sequence_b": degree_sequence_b,
    "degree_sequence_c": degree_sequence_c,
    "loops_example": loops_example,
}
