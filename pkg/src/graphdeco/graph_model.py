"""Finite simple graphs, rooted decorations and the decorated product graph."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .errors import InputError
from .operator_core import SymmetricOperator


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0 .. n-1``.

    Edges are normalized to ``(i, j)`` with ``i < j``, deduplicated and
    sorted, so two graphs with the same edge set compare equal.
    """

    n: int
    edges: tuple = ()

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InputError(f"vertex count must be a positive integer, got {self.n!r}")
        norm = set()
        for e in self.edges:
            try:
                i, j = (int(x) for x in e)
            except (TypeError, ValueError):
                raise InputError(f"edge {e!r} is not a pair of vertex indices") from None
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            for k in (i, j):
                if not 0 <= k < self.n:
                    raise InputError(f"edge {e!r} has endpoint {k} outside 0..{self.n - 1}")
            norm.add((min(i, j), max(i, j)))
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "edges", tuple(sorted(norm)))

    @property
    def vertex_count(self) -> int:
        return self.n

    def has_edge(self, i: int, j: int) -> bool:
        return (min(i, j), max(i, j)) in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        return frozenset(self.edges)

    def degrees(self) -> np.ndarray:
        deg = np.zeros(self.n, dtype=int)
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def is_connected(self) -> bool:
        seen = {0}
        stack = [0]
        adj = {k: [] for k in range(self.n)}
        for i, j in self.edges:
            adj[i].append(j)
            adj[j].append(i)
        while stack:
            for y in adj[stack.pop()]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n

    def induced(self, vertices) -> "Graph":
        """Subgraph induced on ``vertices``, relabelled in the given order."""
        pos = {v: k for k, v in enumerate(vertices)}
        return Graph(len(pos), tuple((pos[i], pos[j]) for i, j in self.edges if i in pos and j in pos))

    def to_dict(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.edges]}


@dataclass(frozen=True)
class RootedGraph:
    graph: Graph
    root: int = 0

    def __post_init__(self):
        if not 0 <= self.root < self.graph.n:
            raise InputError(f"root {self.root} outside 0..{self.graph.n - 1}")

    def to_dict(self) -> dict:
        return {**self.graph.to_dict(), "root": self.root}


@dataclass(frozen=True)
class DecoratedGraph:
    base: Graph
    decoration: RootedGraph
    product: Graph

    def index(self, x: int, u: int) -> int:
        return x * self.decoration.graph.n + u

    @property
    def root_copies(self) -> list:
        return [self.index(x, self.decoration.root) for x in range(self.base.n)]


def decorate(base: Graph, decoration: RootedGraph) -> DecoratedGraph:
    """Glue a copy of the rooted graph to every vertex of ``base``.

    The base vertex ``x`` is identified with the root of its copy; vertex
    ``(x, u)`` gets index ``x * n_G + u``.  Field edges join root copies
    along base edges, kite edges are the edges inside each copy.
    """
    m = decoration.graph.n
    r = decoration.root
    field_edges = [(x * m + r, y * m + r) for x, y in base.edges]
    kite_edges = [(x * m + u, x * m + v) for x in range(base.n) for u, v in decoration.graph.edges]
    product = Graph(base.n * m, tuple(field_edges + kite_edges))
    return DecoratedGraph(base, decoration, product)


def laplacian(g: Graph) -> SymmetricOperator:
    """Return ``-Laplacian``: degrees on the diagonal, -1 on each edge."""
    a = np.diag(g.degrees().astype(float))
    for i, j in g.edges:
        a[i, j] = a[j, i] = -1.0
    return SymmetricOperator(a)


def incompatible_entries(op: SymmetricOperator, g: Graph) -> list:
    """Off-diagonal positions ``(i, j)``, ``i < j``, that are nonzero but not edges."""
    if op.dim != g.n:
        raise InputError(f"operator dimension {op.dim} does not match vertex count {g.n}")
    edges = g._edge_set
    rows, cols = np.nonzero(np.triu(op.entries, 1))
    return [(int(i), int(j)) for i, j in zip(rows, cols) if (int(i), int(j)) not in edges]


def check_compatibility(op: SymmetricOperator, g: Graph) -> bool:
    return not incompatible_entries(op, g)


# Named graphs used by presets, tests and examples.

def single_vertex() -> Graph:
    return Graph(1)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise InputError("a cycle needs at least 3 vertices")
    return Graph(n, tuple((k, (k + 1) % n) for k in range(n)))


def path_graph(n: int) -> Graph:
    return Graph(n, tuple((k, k + 1) for k in range(n - 1)))


def star_graph(leaves: int) -> Graph:
    """Center 0 joined to ``leaves`` leaf vertices."""
    return Graph(leaves + 1, tuple((0, k) for k in range(1, leaves + 1)))


def random_connected_graph(n: int, rng: np.random.Generator, extra_edge_prob: float = 0.3) -> Graph:
    """Random spanning tree on ``n`` vertices plus independent extra edges."""
    edges = set()
    for k in range(1, n):
        edges.add((int(rng.integers(0, k)), k))
    for i, j in combinations(range(n), 2):
        if (i, j) not in edges and rng.random() < extra_edge_prob:
            edges.add((i, j))
    return Graph(n, tuple(edges))


def random_compatible_operator(g: Graph, rng: np.random.Generator) -> SymmetricOperator:
    """Entries uniform in [-1, 1] on the diagonal and on edges, zero elsewhere."""
    a = np.diag(rng.uniform(-1.0, 1.0, g.n))
    for i, j in g.edges:
        a[i, j] = a[j, i] = rng.uniform(-1.0, 1.0)
    return SymmetricOperator(a)
