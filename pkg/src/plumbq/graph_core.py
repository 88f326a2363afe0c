"""Plumbing graphs: labeled trees, their linking matrices, star shapes."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property

from . import exact_linalg


class NotATree(ValueError):
    pass


class IndexOutOfRange(ValueError):
    pass


class NotStar(ValueError):
    pass


@dataclass(frozen=True)
class PlumbingGraph:
    """A tree on vertices ``1..N`` with an integer framing on each vertex."""

    framings: tuple[int, ...]
    edges: frozenset[frozenset[int]] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "framings", tuple(int(a) for a in self.framings))
        n = len(self.framings)
        if n < 1:
            raise NotATree("a plumbing graph needs at least one vertex")
        seen = set()
        for e in self.edges:
            e = tuple(e)
            if len(e) != 2:
                raise NotATree(f"self-loop at vertex {e[0]}")
            for v in e:
                if not 1 <= v <= n:
                    raise IndexOutOfRange(f"vertex {v} not in 1..{n}")
            seen.add(frozenset(e))
        if len(self.edges) != n - 1:
            raise NotATree(f"{n} vertices need {n - 1} edges, got {len(self.edges)}")
        # connectivity
        adj = {v: set() for v in range(1, n + 1)}
        for a, b in map(tuple, self.edges):
            adj[a].add(b)
            adj[b].add(a)
        stack, reached = [1], {1}
        while stack:
            for w in adj[stack.pop()]:
                if w not in reached:
                    reached.add(w)
                    stack.append(w)
        if len(reached) != n:
            raise NotATree("graph is not connected")

    @classmethod
    def from_edges(cls, framings, edges) -> "PlumbingGraph":
        """Build from a list of ``(i, j)`` pairs, rejecting duplicates and loops."""
        es = []
        for i, j in edges:
            if i == j:
                raise NotATree(f"self-loop at vertex {i}")
            es.append(frozenset((int(i), int(j))))
        if len(set(es)) != len(es):
            raise NotATree("duplicate edge")
        return cls(tuple(framings), frozenset(es))

    @property
    def n(self) -> int:
        return len(self.framings)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(tuple(sorted(e)) for e in self.edges)

    @cached_property
    def neighbours(self) -> dict[int, tuple[int, ...]]:
        nb = {v: [] for v in range(1, self.n + 1)}
        for a, b in self.sorted_edges():
            nb[a].append(b)
            nb[b].append(a)
        return {v: tuple(sorted(w)) for v, w in nb.items()}


def linking_matrix(g: PlumbingGraph) -> list[list[int]]:
    n = g.n
    m = [[0] * n for _ in range(n)]
    for j, a in enumerate(g.framings):
        m[j][j] = a
    for a, b in g.sorted_edges():
        m[a - 1][b - 1] = m[b - 1][a - 1] = -1
    return m


def degrees_and_delta(g: PlumbingGraph) -> tuple[tuple[int, ...], tuple[int, ...]]:
    deg = tuple(len(g.neighbours[v]) for v in range(1, g.n + 1))
    return deg, tuple(d % 2 for d in deg)


def is_positive_definite(m) -> bool:
    return exact_linalg.is_positive_definite(m)


@dataclass(frozen=True)
class StarShape:
    """Center vertex plus one path per leg, each running center -> leaf."""

    center: int
    legs: tuple[tuple[int, ...], ...]

    @property
    def leg_count(self) -> int:
        return len(self.legs)

    @property
    def leaves(self) -> tuple[int, ...]:
        return tuple(leg[-1] for leg in self.legs)

    def edges(self) -> frozenset[frozenset[int]]:
        out = set()
        for leg in self.legs:
            prev = self.center
            for v in leg:
                out.add(frozenset((prev, v)))
                prev = v
        return frozenset(out)

    def ordered_legs(self) -> tuple[tuple[int, ...], ...]:
        """Legs sorted by decreasing length, ties broken by leaf index."""
        return tuple(sorted(self.legs, key=lambda leg: (-len(leg), leg[-1])))

    def permutation(self) -> tuple[int, ...]:
        """Old vertex ids in the canonical order: leaves, center, interior nodes."""
        legs = self.ordered_legs()
        interior = [v for leg in legs for v in leg[:-1]]
        return tuple(leg[-1] for leg in legs) + (self.center,) + tuple(interior)


def classify_star(g: PlumbingGraph) -> StarShape | None:
    """Return the star shape of ``g``, or ``None`` if it is not a star graph."""
    deg, _ = degrees_and_delta(g)
    hubs = [v for v in range(1, g.n + 1) if deg[v - 1] >= 3]
    if len(hubs) != 1:
        return None
    center = hubs[0]
    legs = []
    for first in g.neighbours[center]:
        path, prev, cur = [first], center, first
        while deg[cur - 1] == 2:
            nxt = next(w for w in g.neighbours[cur] if w != prev)
            prev, cur = cur, nxt
            path.append(cur)
        legs.append(tuple(path))
    return StarShape(center, tuple(legs))


def require_star(g: PlumbingGraph) -> StarShape:
    s = classify_star(g)
    if s is None:
        raise NotStar("graph is not a star graph (needs exactly one vertex of degree >= 3)")
    return s
