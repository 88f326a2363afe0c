"""Named example graphs (Dynkin diagrams and the other worked examples)."""

from __future__ import annotations

from .graph_core import PlumbingGraph


def path_graph(framings) -> PlumbingGraph:
    n = len(framings)
    return PlumbingGraph.from_edges(framings, [(i, i + 1) for i in range(1, n)])


def dynkin_d(n: int) -> PlumbingGraph:
    """D_{n+2}: path 1..n, with n joined to n+1 and n+2."""
    if n < 2:
        raise ValueError("D_{n+2} is a star graph only for n >= 2")
    edges = [(i, i + 1) for i in range(1, n)] + [(n, n + 1), (n, n + 2)]
    return PlumbingGraph.from_edges([2] * (n + 2), edges)


def dynkin_e(n: int) -> PlumbingGraph:
    """E_n for n in {6, 7, 8}: path 1..n-1, with vertex n-3 joined to n."""
    if n not in (6, 7, 8):
        raise ValueError("E_n needs n in {6, 7, 8}")
    edges = [(i, i + 1) for i in range(1, n - 1)] + [(n - 3, n)]
    return PlumbingGraph.from_edges([2] * n, edges)


def star(center_framing: int, legs) -> PlumbingGraph:
    """Star with center vertex 1; ``legs`` lists the framings along each leg."""
    framings = [center_framing]
    edges = []
    for leg in legs:
        prev = 1
        for a in leg:
            framings.append(a)
            edges.append((prev, len(framings)))
            prev = len(framings)
    return PlumbingGraph.from_edges(framings, edges)


def four_star() -> PlumbingGraph:
    """Center framing 3 with four leaves of framing 3."""
    return star(3, [[3], [3], [3], [3]])


def h_graph(framings=(3, 2, 2, 3, 2, 2)) -> PlumbingGraph:
    """Two adjacent degree-3 vertices (1 and 4), each carrying two leaves."""
    return PlumbingGraph.from_edges(framings, [(1, 2), (1, 3), (1, 4), (4, 5), (4, 6)])


NAMED = {
    "D4": lambda: dynkin_d(2),
    "D5": lambda: dynkin_d(3),
    "E6": lambda: dynkin_e(6),
    "E7": lambda: dynkin_e(7),
    "E8": lambda: dynkin_e(8),
    "four_star": four_star,
    "h_graph": h_graph,
}
