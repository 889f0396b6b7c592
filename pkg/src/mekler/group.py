"""Normal-form arithmetic in the Mekler group M(C) of a graph over F_p.

M(C) is the 2-nilpotent, exponent-p group generated by the vertices of C in
which two generators commute exactly when they are adjacent.  Every element
has a unique normal form

    x_0^{g_0} x_1^{g_1} ... x_{n-1}^{g_{n-1}} * prod_{i<j, ij non-edge} [x_i, x_j]^{c_ij}

with exponents in F_p.  ``gen`` holds the g_i and ``com`` the c_ij, indexed
by the lexicographic position of the non-edge.  Commutators follow
``[a, b] = a^-1 b^-1 a b``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from itertools import islice, product
from typing import Iterator, Sequence

from . import fp
from .graphs import Graph, NicenessReport, is_nice

DEFAULT_ENUMERATION_CAP = 10**8


class GroupError(ValueError):
    """Bad group parameters or element data."""


class NotNiceError(GroupError):
    def __init__(self, report: NicenessReport):
        super().__init__(f"graph is not nice: {report.violation}")
        self.report = report


class EnumerationCapError(RuntimeError):
    def __init__(self, required: int, cap: int):
        super().__init__(f"enumeration needs {required} elements, cap is {cap}")
        self.required = required
        self.cap = cap


@dataclass(frozen=True, order=True)
class MeklerElement:
    gen: tuple[int, ...]
    com: tuple[int, ...]

    def __str__(self):
        return format_element(self)

    @property
    def is_central(self) -> bool:
        return not any(self.gen)

    def to_json(self) -> dict:
        return {"gen": list(self.gen), "com": list(self.com)}


def format_element(g: MeklerElement) -> str:
    return f"gen=[{','.join(map(str, g.gen))}];com=[{','.join(map(str, g.com))}]"


_LITERAL = re.compile(r"^\s*gen=\[([\d,\s]*)\]\s*;\s*com=\[([\d,\s]*)\]\s*$")


def parse_element(G: "MeklerGroup", text: str) -> MeklerElement:
    m = _LITERAL.match(text)
    if not m:
        raise GroupError(f"cannot parse element literal {text!r}")

    def nums(s: str) -> tuple[int, ...]:
        s = s.strip()
        return tuple(int(x) for x in s.split(",")) if s else ()

    return G.element(nums(m.group(1)), nums(m.group(2)))


@dataclass(frozen=True, eq=False)
class MeklerGroup:
    graph: Graph
    p: int
    nonedge_index: dict[tuple[int, int], int] = field(repr=False)
    enumeration_cap: int = field(default=DEFAULT_ENUMERATION_CAP, repr=False)
    # memo tables for classification; entries are pure functions of (graph, p)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def rank(self) -> int:
        """Number of generators, i.e. dim V."""
        return self.graph.vertex_count

    @property
    def center_rank(self) -> int:
        """dim Z = number of non-edges."""
        return len(self.nonedge_index)

    @property
    def nonedges(self) -> list[tuple[int, int]]:
        return list(self.nonedge_index)

    @property
    def order_exponent(self) -> int:
        return self.rank + self.center_rank

    @property
    def order(self) -> int:
        return self.p**self.order_exponent

    @property
    def center_order(self) -> int:
        return self.p**self.center_rank

    def element(self, gen: Sequence[int], com: Sequence[int] = ()) -> MeklerElement:
        if not com:
            com = (0,) * self.center_rank
        if len(gen) != self.rank or len(com) != self.center_rank:
            raise GroupError(
                f"expected gen of length {self.rank} and com of length {self.center_rank}"
            )
        return MeklerElement(tuple(x % self.p for x in gen), tuple(x % self.p for x in com))

    @property
    def identity(self) -> MeklerElement:
        return MeklerElement((0,) * self.rank, (0,) * self.center_rank)

    def generator(self, i: int) -> MeklerElement:
        return MeklerElement(fp.unit(self.rank, i), (0,) * self.center_rank)

    def central(self, com: Sequence[int]) -> MeklerElement:
        return self.element((0,) * self.rank, com)

    def commutator_basis(self, i: int, j: int) -> MeklerElement:
        """The central basis element [x_i, x_j] for a non-edge i < j."""
        k = self.nonedge_index[(i, j)]
        return self.central(fp.unit(self.center_rank, k))

    def beta_constant(self, i: int, j: int) -> tuple[int, ...]:
        """W-coordinates of [x_i, x_j]."""
        w = [0] * self.center_rank
        if i < j and (i, j) in self.nonedge_index:
            w[self.nonedge_index[(i, j)]] = 1
        elif j < i and (j, i) in self.nonedge_index:
            w[self.nonedge_index[(j, i)]] = self.p - 1
        return tuple(w)

    def __repr__(self):
        return f"MeklerGroup(n={self.rank}, nonedges={self.center_rank}, p={self.p})"


def build_group(g: Graph, p: int, *, check_nice: bool = True,
                enumeration_cap: int | None = None) -> MeklerGroup:
    """Build M(g) over F_p.

    Raises NotNiceError for graphs failing the niceness test unless
    ``check_nice`` is False.
    """
    if not isinstance(p, int) or p < 3 or not fp.is_prime(p):
        raise GroupError(f"p must be an odd prime, got {p!r}")
    if check_nice:
        report = is_nice(g)
        if not report.verdict:
            raise NotNiceError(report)
    if enumeration_cap is None:
        enumeration_cap = DEFAULT_ENUMERATION_CAP
    if enumeration_cap < 1:
        raise GroupError("enumeration cap must be at least 1")
    index = {pair: k for k, pair in enumerate(g.nonedges())}
    return MeklerGroup(g, p, index, enumeration_cap)


def _check(G: MeklerGroup, *elements: MeklerElement) -> None:
    for e in elements:
        if len(e.gen) != G.rank or len(e.com) != G.center_rank:
            raise GroupError("element dimensions do not match the group")


def collection_cocycle(G: MeklerGroup, a: Sequence[int], b: Sequence[int]) -> tuple[int, ...]:
    """Central part produced when (prod x^a)(prod x^b) is put back in normal form.

    Moving x_i^{b_i} left past x_j^{a_j} (i < j, non-adjacent) leaves
    [x_j^{a_j}, x_i^{b_i}] = [x_i, x_j]^{-a_j b_i} behind.
    """
    p = G.p
    return tuple((-a[j] * b[i]) % p for (i, j) in G.nonedge_index)


def multiply(G: MeklerGroup, a: MeklerElement, b: MeklerElement) -> MeklerElement:
    _check(G, a, b)
    p = G.p
    ag, bg = a.gen, b.gen
    gen = tuple((x + y) % p for x, y in zip(ag, bg))
    com = tuple(
        (ac + bc - ag[j] * bg[i]) % p
        for ac, bc, (i, j) in zip(a.com, b.com, G.nonedge_index)
    )
    return MeklerElement(gen, com)


def product_of(G: MeklerGroup, elements: Sequence[MeklerElement]) -> MeklerElement:
    out = G.identity
    for e in elements:
        out = multiply(G, out, e)
    return out


def power(G: MeklerGroup, g: MeklerElement, k: int) -> MeklerElement:
    """g^k via the class-2 formula: com scales by k, plus C(k, 2) copies of the cocycle."""
    _check(G, g)
    p = G.p
    k %= p
    kk = k * (k - 1) // 2
    kappa = collection_cocycle(G, g.gen, g.gen)
    gen = tuple((k * x) % p for x in g.gen)
    com = tuple((k * c + kk * t) % p for c, t in zip(g.com, kappa))
    return MeklerElement(gen, com)


def inverse(G: MeklerGroup, g: MeklerElement) -> MeklerElement:
    _check(G, g)
    p = G.p
    kappa = collection_cocycle(G, g.gen, g.gen)
    return MeklerElement(
        tuple((-x) % p for x in g.gen),
        tuple((t - c) % p for c, t in zip(g.com, kappa)),
    )


def beta_vectors(G: MeklerGroup, u: Sequence[int], v: Sequence[int]) -> tuple[int, ...]:
    """The commutator map on V = G/Z: coordinates u_i v_j - u_j v_i per non-edge."""
    p = G.p
    return tuple((u[i] * v[j] - u[j] * v[i]) % p for (i, j) in G.nonedge_index)


def commutator(G: MeklerGroup, a: MeklerElement, b: MeklerElement) -> MeklerElement:
    """[a, b] = a^-1 b^-1 a b; always central and depends only on the gen parts."""
    _check(G, a, b)
    return MeklerElement((0,) * G.rank, beta_vectors(G, a.gen, b.gen))


def is_central(G: MeklerGroup, g: MeklerElement) -> bool:
    _check(G, g)
    return g.is_central


def project_mod_center(G: MeklerGroup, g: MeklerElement) -> tuple[int, ...]:
    """pi: G -> V."""
    _check(G, g)
    return g.gen


def center_part(G: MeklerGroup, g: MeklerElement) -> tuple[int, ...]:
    """rho: G -> W, which is zero off the centre."""
    _check(G, g)
    return g.com if g.is_central else (0,) * G.center_rank


def beta_row_matrix(G: MeklerGroup, u: Sequence[int]) -> list[list[int]]:
    """Matrix of the linear map v -> beta(u, v), one row per non-edge."""
    p = G.p
    rows = []
    for (i, j) in G.nonedge_index:
        row = [0] * G.rank
        row[j] = u[i] % p
        row[i] = (-u[j]) % p
        rows.append(row)
    return rows


@dataclass(frozen=True)
class Centralizer:
    """C(g) as the preimage of a subspace of V.

    ``basis`` is the canonical (RREF) basis of {v : beta(pi(g), v) = 0}.
    """

    basis: tuple[tuple[int, ...], ...]
    order: int

    @property
    def dimension(self) -> int:
        return len(self.basis)


def centralizer_kernel(G: MeklerGroup, v: Sequence[int]) -> tuple[tuple[int, ...], ...]:
    return fp.kernel(beta_row_matrix(G, v), G.rank, G.p)


def centralizer_basis(G: MeklerGroup, g: MeklerElement) -> Centralizer:
    _check(G, g)
    basis = centralizer_kernel(G, g.gen)
    return Centralizer(basis, G.p ** (len(basis) + G.center_rank))


def element_count(G: MeklerGroup) -> int:
    return G.order


def enumerate_elements(G: MeklerGroup, *, cap: int | None = None,
                       start: int = 0, stop: int | None = None) -> Iterator[MeklerElement]:
    """Every element once, in lexicographic order of (gen, com).

    ``start``/``stop`` select a slice of that order so disjoint ranges can be
    walked independently.
    """
    cap = G.enumeration_cap if cap is None else cap
    if G.order > cap:
        raise EnumerationCapError(G.order, cap)
    n, k = G.rank, G.center_rank
    coords = islice(product(range(G.p), repeat=n + k), start, stop)
    for c in coords:
        yield MeklerElement(c[:n], c[n:])


def enumerate_quotient(G: MeklerGroup, *, cap: int | None = None) -> Iterator[tuple[int, ...]]:
    """Every vector of V = G/Z in lexicographic order."""
    cap = G.enumeration_cap if cap is None else cap
    size = G.p**G.rank
    if size > cap:
        raise EnumerationCapError(size, cap)
    return fp.all_vectors(G.rank, G.p)
