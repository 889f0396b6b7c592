"""Centraliser classes, element types, handles, supports and graph recovery.

Everything here works on pi-images in V = G/Z: centralisers, the relations
~ and ≈, and element types are all invariant under multiplication by
central elements.  Functions accept either a MeklerElement or a raw V-vector.

Class identifiers
    A ~-class is named by the lexicographically least member of its
    pi-image with leading coefficient 1.  The class of a generator x_i is
    therefore the unit vector e_i.

Index order on A_{n,m}
    ``minimal_A_index`` minimises m first, then n.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Iterable, Iterator, Sequence, Union

from . import fp
from .common import UNDETERMINED, BoundExceededError
from .graphs import Graph, graph_isomorphic
from .group import (
    MeklerElement,
    MeklerGroup,
    beta_vectors,
    centralizer_kernel,
    enumerate_quotient,
)

Vec = tuple[int, ...]
ClassId = tuple[int, ...]
ElementLike = Union[MeklerElement, Sequence[int]]


class ClassificationError(RuntimeError):
    """Raised when the structural shortcut cannot apply or internal checks disagree."""


class TypeTag(enum.Enum):
    CENTRAL = "Central"
    ONE_NU = "OneNu"
    P_MINUS_ONE = "PMinusOne"
    TYPE_P = "TypeP"
    ONE_IOTA = "OneIota"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class ElementType:
    """Type of an element: q is the number of ≈-classes in its ~-class."""

    tag: TypeTag
    q: int
    isolated: bool
    handle: ClassId | None = None

    @property
    def isolation(self) -> str:
        return "iota" if self.isolated else "nu"

    def to_json(self) -> dict:
        return {
            "tag": self.tag.value,
            "q": self.q,
            "isolation": self.isolation,
            "handle": list(self.handle) if self.handle is not None else None,
        }


def _pi(x: ElementLike) -> Vec:
    if isinstance(x, MeklerElement):
        return x.gen
    return tuple(x)


def _support(v: Vec) -> tuple[int, ...]:
    return tuple(i for i, a in enumerate(v) if a)


def vertex_of(class_id: ClassId) -> int | None:
    """The vertex i when ``class_id`` is the class of the generator x_i."""
    s = _support(class_id)
    if len(s) == 1 and class_id[s[0]] == 1:
        return s[0]
    return None


# -- the relations ~ and ≈ ----------------------------------------------------


def kernel_of(G: MeklerGroup, x: ElementLike) -> tuple[Vec, ...]:
    v = _pi(x)
    cache = G._cache.setdefault("kernel", {})
    k = cache.get(v)
    if k is None:
        k = cache[v] = centralizer_kernel(G, v)
    return k


def sim_equiv(G: MeklerGroup, g: ElementLike, h: ElementLike) -> bool:
    """g ~ h iff C(g) = C(h), compared through canonical kernel bases."""
    return kernel_of(G, g) == kernel_of(G, h)


def approx_equiv(G: MeklerGroup, g: ElementLike, h: ElementLike) -> bool:
    """g ≈ h iff h = g^a c with c central and a a unit, or both are central.

    The exponent is restricted to units so the relation is symmetric; with
    a = 0 allowed, every central element would be ≈ to every g.
    """
    u, v = _pi(g), _pi(h)
    p = G.p
    if not any(u):
        return not any(v)
    i = _support(u)[0]
    a = (v[i] * pow(u[i], -1, p)) % p
    return a != 0 and all((a * x - y) % p == 0 for x, y in zip(u, v))


def sim_class_members(G: MeklerGroup, x: ElementLike) -> list[Vec]:
    """pi-images of the ~-class of x (a subset of the centraliser kernel)."""
    v = _pi(x)
    if not any(v):
        return [fp.zero(G.rank)]
    k = kernel_of(G, v)
    return [w for w in fp.span_elements(k, G.rank, G.p) if any(w) and kernel_of(G, w) == k]


def class_id(G: MeklerGroup, x: ElementLike) -> ClassId:
    v = _pi(x)
    if not any(v):
        return fp.zero(G.rank)
    cache = G._cache.setdefault("class_id", {})
    k = kernel_of(G, v)
    cid = cache.get(k)
    if cid is None:
        cid = cache[k] = min(fp.normalize(w, G.p) for w in sim_class_members(G, v))
    return cid


# -- types --------------------------------------------------------------------


def _common_commuters(graph: Graph, support: Sequence[int]) -> list[int]:
    return [u for u in graph.vertices if all(s in graph.closed_neighborhood(u) for s in support)]


def _structural_type(G: MeklerGroup, v: Vec) -> ElementType:
    p = G.p
    s = _support(v)
    if not s:
        return ElementType(TypeTag.CENTRAL, 1, False)
    if len(s) == 1:
        return ElementType(TypeTag.ONE_NU, 1, False)
    graph = G.graph
    if len(s) == 2 and graph.adjacent(*s):
        return ElementType(TypeTag.P_MINUS_ONE, p - 1, False)
    common = _common_commuters(graph, s)
    if len(common) == 1:
        return ElementType(TypeTag.TYPE_P, p, False, fp.unit(G.rank, common[0]))
    if not common:
        return ElementType(TypeTag.ONE_IOTA, 1, True)
    raise ClassificationError(
        f"support {s} has {len(common)} common commuters; the graph is not nice"
    )


def _split_count(G: MeklerGroup, v: Vec) -> tuple[int, bool]:
    """(number of ≈-classes in the ~-class of v, whether v is isolated)."""
    p = G.p
    k = kernel_of(G, v)
    q = len({fp.normalize(w, p) for w in sim_class_members(G, v)})
    line = {fp.scale(a, v, p) for a in range(p)}
    isolated = all(w in line for w in fp.span_elements(k, G.rank, p))
    return q, isolated


def _counted_type(G: MeklerGroup, v: Vec) -> ElementType:
    """Type by counting ≈-classes inside the ~-class, enumerating the kernel."""
    p = G.p
    if not any(v):
        return ElementType(TypeTag.CENTRAL, 1, False)
    q, isolated = _split_count(G, v)
    if q == 1:
        return ElementType(TypeTag.ONE_IOTA if isolated else TypeTag.ONE_NU, 1, isolated)
    if q == p - 1:
        return ElementType(TypeTag.P_MINUS_ONE, q, isolated)
    if q == p:
        handles = {
            class_id(G, w)
            for w in fp.span_elements(kernel_of(G, v), G.rank, p)
            if any(w) and _split_count(G, w) == (1, False)
        }
        if len(handles) != 1:
            raise ClassificationError(f"type-p element {v} has {len(handles)} handles")
        return ElementType(TypeTag.TYPE_P, q, isolated, handles.pop())
    raise ClassificationError(f"element {v} splits into {q} ≈-classes")


def type_of(G: MeklerGroup, g: ElementLike, method: str = "structural") -> ElementType:
    """Classify g.

    ``structural`` reads the type off the support of pi(g) in the graph;
    ``count`` counts ≈-classes in the ~-class by enumerating the centraliser
    kernel.  Both agree on nice graphs (checked in the test-suite).
    """
    v = _pi(g)
    if method == "structural":
        cache = G._cache.setdefault("type", {})
        t = cache.get(v)
        if t is None:
            t = cache[v] = _structural_type(G, v)
        return t
    if method == "count":
        return _counted_type(G, v)
    raise ValueError(f"unknown method {method!r}")


def handle(G: MeklerGroup, g: ElementLike) -> ClassId:
    t = type_of(G, g)
    if t.tag is not TypeTag.TYPE_P:
        raise ClassificationError(f"handle is only defined for type-p elements, got {t.tag}")
    return t.handle


# -- A_{n,m} and supports -----------------------------------------------------


@dataclass(frozen=True)
class Decomposition:
    """pi(g) = sum of nu_factors (multiples of e_i) + sum of p_factors.

    ``nu_factors`` holds (vertex, coefficient); ``p_factors`` holds
    (handle vertex, type-p vector supported on its closed neighbourhood).
    """

    nu_factors: tuple[tuple[int, int], ...]
    p_factors: tuple[tuple[int, Vec], ...]

    @property
    def classes(self) -> frozenset[int]:
        return frozenset(i for i, _ in self.nu_factors)

    @property
    def handles(self) -> frozenset[int]:
        return frozenset(u for u, _ in self.p_factors)


def _type_p_vectors(G: MeklerGroup, u: int) -> list[Vec]:
    """Type-p vectors with handle e_u; they are supported on N[u]."""
    cache = G._cache.setdefault("type_p_by_handle", {})
    if u not in cache:
        hood = sorted(G.graph.closed_neighborhood(u))
        target = fp.unit(G.rank, u)
        out = []
        for vals in product(range(G.p), repeat=len(hood)):
            v = [0] * G.rank
            for i, a in zip(hood, vals):
                v[i] = a
            v = tuple(v)
            t = type_of(G, v)
            if t.tag is TypeTag.TYPE_P and t.handle == target:
                out.append(v)
        cache[u] = out
    return cache[u]


def decompositions(G: MeklerGroup, g: ElementLike, n: int, m: int) -> Iterator[Decomposition]:
    """Every way of writing pi(g) as <= n type-1^nu and <= m type-p factors.

    Type-p factors have pairwise distinct handles and support larger than n
    (so none is itself a product of n type-1^nu elements).  The 1^nu part is
    the residual vector, one factor per nonzero coordinate.  Order: fewer
    type-p factors first, then handle sets lexicographically, then factor
    vectors lexicographically.
    """
    v = _pi(g)
    p = G.p
    if n < 0 or m < 0:
        return
    m = min(m, G.rank)
    for size in range(m + 1):
        for hs in combinations(G.graph.vertices, size):
            pools = [[w for w in _type_p_vectors(G, u) if len(_support(w)) > n] for u in hs]
            for choice in product(*pools):
                r = list(v)
                for w in choice:
                    for i, a in enumerate(w):
                        if a:
                            r[i] = (r[i] - a) % p
                res = _support(r)
                if len(res) <= n:
                    yield Decomposition(
                        tuple((i, r[i]) for i in res), tuple(zip(hs, choice))
                    )


def in_A(G: MeklerGroup, g: ElementLike, n: int, m: int) -> bool:
    return next(decompositions(G, g, n, m), None) is not None


def minimal_A_index(G: MeklerGroup, g: ElementLike) -> tuple[int, int]:
    """Least (n, m) with g in A_{n,m}, comparing m first."""
    for m in range(G.rank + 1):
        for n in range(G.rank + 1):
            if in_A(G, g, n, m):
                return (n, m)
    raise ClassificationError("no decomposition found")  # unreachable: n = |supp| works


@dataclass(frozen=True)
class SupportRecord:
    n: int
    m: int
    s: frozenset[ClassId]
    s_handles: frozenset[ClassId]
    minimal: bool
    # whether every decomposition at (n, m) yields the same (s, s_handles)
    witness_independent: bool = field(default=True)

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "s": sorted(list(c) for c in self.s),
            "s_handles": sorted(list(c) for c in self.s_handles),
            "minimal": self.minimal,
            "witness_independent": self.witness_independent,
        }


def support(G: MeklerGroup, g: ElementLike, n: int, m: int):
    """S_{n,m} and S'_{n,m} of g, or UNDETERMINED when g is not in A_{n,m}.

    The record is read off the first decomposition in the order of
    ``decompositions``; ``witness_independent`` reports whether every other
    decomposition gives the same pair of sets.
    """
    seen = set()
    first = None
    for d in decompositions(G, g, n, m):
        key = (d.classes, d.handles)
        if first is None:
            first = key
        seen.add(key)
        if len(seen) > 1:
            break
    if first is None:
        return UNDETERMINED
    classes, handles = first
    rank = G.rank
    return SupportRecord(
        n,
        m,
        frozenset(fp.unit(rank, i) for i in classes),
        frozenset(fp.unit(rank, u) for u in handles),
        minimal_A_index(G, g) == (n, m),
        len(seen) == 1,
    )


# -- Gamma(X) and graph recovery ----------------------------------------------


@dataclass(frozen=True)
class QuotientGraph:
    classes: tuple[ClassId, ...]
    representatives: tuple[Vec, ...]
    edges: frozenset[tuple[int, int]]

    def to_graph(self) -> Graph:
        return Graph.from_edges(len(self.classes), self.edges)


def gamma_graph(G: MeklerGroup, X: Iterable[ElementLike]) -> QuotientGraph:
    """X/~ with [a] R [b] iff a and b commute (distinct classes only)."""
    reps: dict[ClassId, Vec] = {}
    for x in X:
        v = _pi(x)
        if not any(v):
            raise ClassificationError("Gamma(X) is taken over non-central elements only")
        reps.setdefault(class_id(G, v), v)
    classes = tuple(sorted(reps))
    vecs = tuple(reps[c] for c in classes)
    edges = frozenset(
        (i, j)
        for i, j in combinations(range(len(classes)), 2)
        if not any(beta_vectors(G, vecs[i], vecs[j]))
    )
    return QuotientGraph(classes, vecs, edges)


@dataclass(frozen=True)
class RecoveredGraph:
    graph: Graph
    quotient: QuotientGraph
    # recovered vertex k (the class quotient.classes[k]) -> input vertex
    to_input: dict[int, int]
    isomorphic: bool


def one_nu_elements(G: MeklerGroup, method: str = "structural") -> list[Vec]:
    """pi-images of E^nu.

    ``structural`` lists the nonzero multiples of the generator images and
    checks that they are of type 1^nu; ``enumerate`` walks all of V and keeps
    what the counting classifier calls type 1^nu.
    """
    p = G.p
    if method == "structural":
        out = []
        for i in G.graph.vertices:
            for a in range(1, p):
                v = fp.scale(a, fp.unit(G.rank, i), p)
                if type_of(G, v).tag is not TypeTag.ONE_NU:
                    raise ClassificationError(f"generator multiple {v} is not of type 1^nu")
                out.append(v)
        return out
    if method == "enumerate":
        return [
            v for v in enumerate_quotient(G)
            if any(v) and type_of(G, v, "count").tag is TypeTag.ONE_NU
        ]
    raise ValueError(f"unknown method {method!r}")


def recover_graph(G: MeklerGroup, method: str = "structural") -> RecoveredGraph:
    """Gamma(E^nu), identified with the input graph through the generator classes."""
    q = gamma_graph(G, one_nu_elements(G, method))
    recovered = q.to_graph()
    to_input = {}
    for k, cid in enumerate(q.classes):
        i = vertex_of(cid)
        if i is None:
            raise ClassificationError(f"class {cid} contains no generator")
        to_input[k] = i
    ok = sorted(to_input.values()) == list(G.graph.vertices) and all(
        recovered.adjacent(a, b) == G.graph.adjacent(to_input[a], to_input[b])
        for a, b in combinations(recovered.vertices, 2)
    )
    if not ok or graph_isomorphic(recovered, G.graph) is None:
        raise ClassificationError("recovered graph is not isomorphic to the input graph")
    return RecoveredGraph(recovered, q, to_input, True)


# -- census -------------------------------------------------------------------


@dataclass(frozen=True)
class TypeCensus:
    central: int
    one_nu: int
    p_minus_one: int | None
    type_p: int | None
    one_iota: int | None
    complete: bool

    def total(self) -> int | None:
        if not self.complete:
            return None
        return self.central + self.one_nu + self.p_minus_one + self.type_p + self.one_iota

    def to_json(self) -> dict:
        return {
            "central": self.central,
            "one_nu": self.one_nu,
            "p_minus_one": self.p_minus_one,
            "type_p": self.type_p,
            "one_iota": self.one_iota,
            "complete": self.complete,
        }


def type_census(G: MeklerGroup, cap: int | None = None) -> TypeCensus:
    """Number of elements of each type.

    Types are constant on cosets of Z, so the count walks V and multiplies
    by |Z|.  Past the enumeration cap only the central and 1^nu counts
    (which have closed forms) are returned.
    """
    cap = G.enumeration_cap if cap is None else cap
    z = G.center_order
    central = z
    one_nu = G.rank * (G.p - 1) * z
    if G.order > cap:
        return TypeCensus(central, one_nu, None, None, None, False)
    counts = {t: 0 for t in TypeTag}
    for v in enumerate_quotient(G, cap=cap):
        counts[type_of(G, v).tag] += 1
    return TypeCensus(
        counts[TypeTag.CENTRAL] * z,
        counts[TypeTag.ONE_NU] * z,
        counts[TypeTag.P_MINUS_ONE] * z,
        counts[TypeTag.TYPE_P] * z,
        counts[TypeTag.ONE_IOTA] * z,
        True,
    )


# -- the inp-pattern formula --------------------------------------------------


@dataclass(frozen=True)
class InpReport:
    m: int
    vertices: tuple[int, ...]
    consistent: bool
    inconsistent: bool
    inconsistent_at: int | None
    # one realising pi-image per m-subset of the vertex array
    witnesses: dict[tuple[int, ...], Vec]
    realised_supports: int

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "vertices": list(self.vertices),
            "consistent": self.consistent,
            "inconsistent": self.inconsistent,
            "inconsistent_at": self.inconsistent_at,
            "witnesses": {",".join(map(str, k)): list(v) for k, v in self.witnesses.items()},
            "realised_supports": self.realised_supports,
        }


def inp_pattern_check(G: MeklerGroup, m: int, vertices: Sequence[int],
                      cap: int | None = None) -> InpReport:
    """Check phi(x, y) = A_{m,0}(pi(x)) and y in S_{m,0}(x) on the vertex array.

    Walks every element of V, records the support of those in A_{m,0}, and
    tests that each m-subset of ``vertices`` lies in some support while no
    (m+1)-subset does.
    """
    verts = tuple(dict.fromkeys(vertices))
    if m < 1 or len(verts) < m + 1:
        raise ValueError("need m >= 1 and at least m + 1 distinct vertices")
    if any(not 0 <= v < G.rank for v in verts):
        raise ValueError("vertex out of range")
    cap = G.enumeration_cap if cap is None else cap
    if G.p**G.rank > cap:
        raise BoundExceededError(f"|V| = {G.p}^{G.rank} exceeds the bound {cap}")
    supports: dict[frozenset[int], Vec] = {}
    for v in enumerate_quotient(G, cap=cap):
        rec = support(G, v, m, 0)
        if rec is UNDETERMINED:
            continue
        key = frozenset(vertex_of(c) for c in rec.s)
        supports.setdefault(key, v)
    witnesses = {}
    consistent = True
    for sub in combinations(verts, m):
        hit = next((w for s, w in supports.items() if s >= set(sub)), None)
        if hit is None:
            consistent = False
        else:
            witnesses[sub] = hit
    inconsistent = not any(
        s >= set(sub) for sub in combinations(verts, m + 1) for s in supports
    )
    return InpReport(
        m, verts, consistent, inconsistent, m + 1 if inconsistent else None,
        witnesses, len(supports),
    )
