"""Finite simple graphs: niceness, covers, isomorphism, fixtures and file formats."""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, permutations
from pathlib import Path
from typing import Iterable, Sequence

import networkx as nx


class GraphError(ValueError):
    """Malformed graph input (bad vertex, self-loop, unparsable file)."""


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph on vertices ``0..vertex_count-1``.

    Edges are stored once, as sorted pairs.  ``labels`` are cosmetic names
    carried through from input files; they never affect the mathematics.
    """

    vertex_count: int
    edges: frozenset[tuple[int, int]]
    labels: tuple[str, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.vertex_count < 0:
            raise GraphError("vertex_count must be nonnegative")
        clean = set()
        for u, v in self.edges:
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if not (0 <= u < self.vertex_count and 0 <= v < self.vertex_count):
                raise GraphError(f"edge ({u}, {v}) out of range for {self.vertex_count} vertices")
            clean.add((min(u, v), max(u, v)))
        object.__setattr__(self, "edges", frozenset(clean))
        if not self.labels:
            object.__setattr__(self, "labels", tuple(str(i) for i in range(self.vertex_count)))
        elif len(self.labels) != self.vertex_count:
            raise GraphError("one label per vertex required")
        adj = [set() for _ in range(self.vertex_count)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        object.__setattr__(self, "_adj", tuple(frozenset(a) for a in adj))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], labels: Sequence[str] = ()) -> "Graph":
        return cls(n, frozenset((int(u), int(v)) for u, v in edges), tuple(labels))

    @property
    def vertices(self) -> range:
        return range(self.vertex_count)

    def neighbors(self, v: int) -> frozenset[int]:
        return self._adj[v]

    def closed_neighborhood(self, v: int) -> frozenset[int]:
        return self._adj[v] | {v}

    def adjacent(self, u: int, v: int) -> bool:
        return v in self._adj[u]

    def degree(self, v: int) -> int:
        return len(self._adj[v])

    def nonedges(self) -> list[tuple[int, int]]:
        """All non-adjacent pairs ``i < j`` in lexicographic order."""
        return [(i, j) for i, j in combinations(self.vertices, 2) if not self.adjacent(i, j)]

    def induced(self, vertices: Iterable[int]) -> "Graph":
        keep = sorted(set(vertices))
        index = {v: k for k, v in enumerate(keep)}
        edges = [(index[u], index[v]) for u, v in self.edges if u in index and v in index]
        return Graph.from_edges(len(keep), edges, [self.labels[v] for v in keep])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Image of the graph under the vertex map ``v -> perm[v]``."""
        return Graph.from_edges(self.vertex_count, [(perm[u], perm[v]) for u, v in self.edges])

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.vertices)
        g.add_edges_from(sorted(self.edges))
        return g

    def to_edge_list(self) -> str:
        lines = [str(self.vertex_count)]
        lines += [f"{u} {v}" for u, v in sorted(self.edges)]
        return "\n".join(lines) + "\n"


# -- niceness ---------------------------------------------------------------


@dataclass(frozen=True)
class Violation:
    kind: str  # TooSmall | Triangle | Square | NoSeparator
    vertices: tuple[int, ...] = ()

    def __str__(self):
        if not self.vertices:
            return self.kind
        return f"{self.kind}({','.join(map(str, self.vertices))})"


@dataclass(frozen=True)
class NicenessReport:
    verdict: bool
    violation: Violation | None = None

    def to_json(self) -> dict:
        if self.violation is None:
            return {"nice": True, "violation": None}
        return {
            "nice": False,
            "violation": {"kind": self.violation.kind, "vertices": list(self.violation.vertices)},
        }


def find_triangle(g: Graph) -> tuple[int, int, int] | None:
    for u, v, w in combinations(g.vertices, 3):
        if g.adjacent(u, v) and g.adjacent(v, w) and g.adjacent(u, w):
            return (u, v, w)
    return None


def find_square(g: Graph) -> tuple[int, int, int, int] | None:
    """First 4-cycle u-v-w-x-u on distinct vertices, scanning 4-tuples lexicographically."""
    for quad in permutations(g.vertices, 4):
        u, v, w, x = quad
        if g.adjacent(u, v) and g.adjacent(v, w) and g.adjacent(w, x) and g.adjacent(x, u):
            return quad
    return None


def find_unseparated(g: Graph) -> tuple[int, int] | None:
    for v1, v2 in permutations(g.vertices, 2):
        if not any(u != v2 and not g.adjacent(v2, u) for u in g.neighbors(v1)):
            return (v1, v2)
    return None


def is_nice(g: Graph) -> NicenessReport:
    """Check the three niceness clauses.

    Short cycles are reported before separation failures, so K3 yields a
    triangle witness rather than an unseparated pair.
    """
    if g.vertex_count < 2:
        return NicenessReport(False, Violation("TooSmall"))
    tri = find_triangle(g)
    if tri:
        return NicenessReport(False, Violation("Triangle", tri))
    sq = _find_square_fast(g)
    if sq:
        return NicenessReport(False, Violation("Square", sq))
    pair = find_unseparated(g)
    if pair:
        return NicenessReport(False, Violation("NoSeparator", pair))
    return NicenessReport(True)


def _find_square_fast(g: Graph) -> tuple[int, int, int, int] | None:
    # Same witness as find_square, without walking all n^4 tuples.
    for u in g.vertices:
        for v in sorted(g.neighbors(u)):
            if v == u:
                continue
            for w in sorted(g.neighbors(v)):
                if w in (u, v):
                    continue
                for x in sorted(g.neighbors(w) & g.neighbors(u)):
                    if x not in (u, v, w):
                        return (u, v, w, x)
    return None


# -- covers -----------------------------------------------------------------


@dataclass(frozen=True)
class CoverReport:
    verdict: bool
    offending: int | None = None
    reason: str = ""


def is_cover(gamma: Graph, c_vertices: Iterable[int], neighbor_threshold: int = 1) -> CoverReport:
    """Finite version of the cover condition.

    Every vertex of ``gamma`` outside ``c_vertices`` must be isolated, or have
    exactly one neighbour ``a``, with ``a`` in ``c_vertices`` and at least
    ``neighbor_threshold`` neighbours inside ``c_vertices``.
    """
    c = set(c_vertices)
    bad = [v for v in c if not 0 <= v < gamma.vertex_count]
    if bad:
        raise GraphError(f"vertex {bad[0]} not in gamma")
    if neighbor_threshold < 1:
        raise GraphError("neighbor_threshold must be positive")
    for b in gamma.vertices:
        if b in c:
            continue
        nbrs = gamma.neighbors(b)
        if not nbrs:
            continue
        if len(nbrs) > 1:
            return CoverReport(False, b, f"vertex {b} has {len(nbrs)} neighbours")
        (a,) = nbrs
        if a not in c:
            return CoverReport(False, b, f"neighbour {a} of vertex {b} lies outside C")
        deg_c = len(gamma.neighbors(a) & c)
        if deg_c < neighbor_threshold:
            return CoverReport(False, b, f"vertex {a} has only {deg_c} neighbours in C")
    return CoverReport(True)


# -- isomorphism ------------------------------------------------------------


def graph_isomorphic(g1: Graph, g2: Graph) -> dict[int, int] | None:
    """A vertex bijection g1 -> g2 preserving adjacency both ways, or None."""
    if g1.vertex_count != g2.vertex_count or len(g1.edges) != len(g2.edges):
        return None
    matcher = nx.algorithms.isomorphism.GraphMatcher(g1.to_networkx(), g2.to_networkx())
    for mapping in matcher.isomorphisms_iter():
        return dict(sorted(mapping.items()))
    return None


def is_isomorphism(g1: Graph, g2: Graph, mapping: dict[int, int]) -> bool:
    if sorted(mapping) != list(g1.vertices) or sorted(mapping.values()) != list(g2.vertices):
        return False
    return all(
        g1.adjacent(u, v) == g2.adjacent(mapping[u], mapping[v])
        for u, v in combinations(g1.vertices, 2)
    )


# -- generators -------------------------------------------------------------


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise GraphError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    if n < 1:
        raise GraphError("a path needs at least 1 vertex")
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def make_complete(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def make_petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def _distance_at_least(adj: list[set[int]], s: int, t: int, bound: int) -> bool:
    seen = {s: 0}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        if seen[u] >= bound - 1:
            continue
        for w in adj[u]:
            if w not in seen:
                if w == t:
                    return False
                seen[w] = seen[u] + 1
                queue.append(w)
    return True


def random_girth5(n: int, degree_bound: int, seed: int) -> Graph:
    """Random graph with no 3- or 4-cycles.

    Candidate edges are tried in a seeded random order and kept when they
    respect the degree bound and join vertices at distance >= 4.  Niceness is
    not guaranteed.
    """
    if n < 1 or degree_bound < 0:
        raise GraphError("need n >= 1 and degree_bound >= 0")
    rng = random.Random(seed)
    pairs = list(combinations(range(n), 2))
    rng.shuffle(pairs)
    adj: list[set[int]] = [set() for _ in range(n)]
    for u, v in pairs:
        if len(adj[u]) >= degree_bound or len(adj[v]) >= degree_bound:
            continue
        if _distance_at_least(adj, u, v, 4):
            adj[u].add(v)
            adj[v].add(u)
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in adj[u] if u < v])


# -- file formats -----------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse ``n`` followed by ``u v`` lines; ``#`` comments and blank lines ignored."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            nums = [int(x) for x in parts]
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers, got {line!r}") from None
        if n is None:
            if len(nums) != 1 or nums[0] < 0:
                raise GraphError(f"line {lineno}: expected a vertex count")
            n = nums[0]
            continue
        if len(nums) != 2:
            raise GraphError(f"line {lineno}: expected 'u v'")
        u, v = nums
        if u == v:
            raise GraphError(f"line {lineno}: self-loop at {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise GraphError(f"line {lineno}: vertex out of range 0..{n - 1}")
        edges.append((u, v))
    if n is None:
        raise GraphError("empty edge list")
    return Graph.from_edges(n, edges)


_DOT_HEADER = re.compile(r"^\s*(strict\s+)?graph\s*(\"[^\"]*\"|\w+)?\s*\{", re.IGNORECASE)
_DOT_ID = r'(?:"[^"]*"|[\w.]+)'


def parse_dot(text: str) -> Graph:
    """Read an undirected DOT file without attributes.

    Node ids are numbered in order of first appearance and kept as labels.
    Chains ``a -- b -- c`` are accepted; ``->`` and attribute lists are not.
    """
    body = re.sub(r"//[^\n]*|/\*.*?\*/", "", text, flags=re.S)
    m = _DOT_HEADER.match(body)
    if not m:
        raise GraphError("DOT input must start with 'graph {'")
    end = body.rfind("}")
    if end < m.end():
        raise GraphError("unterminated DOT graph body")
    inner = body[m.end():end]
    if "->" in inner:
        raise GraphError("directed edges are not supported")
    if "[" in inner:
        raise GraphError("DOT attributes are not supported")
    names: dict[str, int] = {}

    def vid(tok: str) -> int:
        tok = tok.strip().strip('"')
        if tok not in names:
            names[tok] = len(names)
        return names[tok]

    edges = []
    for stmt in re.split(r"[;\n]", inner):
        stmt = stmt.strip()
        if not stmt:
            continue
        toks = [t.strip() for t in stmt.split("--")]
        if not all(re.fullmatch(_DOT_ID, t) for t in toks):
            raise GraphError(f"cannot parse DOT statement {stmt!r}")
        ids = [vid(t) for t in toks]
        for a, b in zip(ids, ids[1:]):
            if a == b:
                raise GraphError(f"self-loop in DOT statement {stmt!r}")
            edges.append((a, b))
    labels = sorted(names, key=names.get)
    return Graph.from_edges(len(names), edges, labels)


def read_graph(path: str | Path) -> Graph:
    text = Path(path).read_text()
    if _DOT_HEADER.match(re.sub(r"//[^\n]*|/\*.*?\*/", "", text, flags=re.S)):
        return parse_dot(text)
    return parse_edge_list(text)
