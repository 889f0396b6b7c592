"""Independence, transversals and normal forms relative to a full transversal.

Independence over a subgroup is tested by linear algebra.  In a class-2
group of exponent p, a term t(b) evaluated at elements of a subgroup H
lands in H, so a tuple is dependent over H exactly when some nontrivial
power product of it lies in H.  When H contains Z this is a statement
about pi-images modulo pi(H); for central tuples over a subgroup H it is a
statement about rho-images modulo H ∩ Z.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from itertools import combinations, product
from typing import Sequence

from . import fp
from .classification import (
    TypeTag,
    gamma_graph,
    in_A,
    one_nu_elements,
    type_of,
    vertex_of,
)
from .graphs import CoverReport, is_cover
from .group import (
    EnumerationCapError,
    MeklerElement,
    MeklerGroup,
    commutator,
    enumerate_quotient,
    inverse,
    multiply,
    power,
    product_of,
)

Vec = tuple[int, ...]

BASELINES = ("Z", "Z+Enu", "Z+Enu+Ep", "center")


class TransversalError(ValueError):
    pass


@dataclass(frozen=True)
class Subspace:
    """A custom baseline: a subspace of V (space="V") or of W (space="W")."""

    space: str
    basis: tuple[Vec, ...]


def _type_images(G: MeklerGroup, tags: set[TypeTag], known: Sequence[Vec]) -> tuple[Vec, ...]:
    """Span of known vectors plus pi-images of the given types.

    V is only walked when the known vectors do not already span it.
    """
    span = fp.row_space(known, G.p)
    if len(span) == G.rank:
        return span
    extra = [v for v in enumerate_quotient(G) if any(v) and type_of(G, v).tag in tags]
    return fp.row_space(list(span) + extra, G.p)


def baseline_subspace(G: MeklerGroup, baseline) -> Subspace:
    """Resolve a baseline tag to a subspace of V or W.

    "Z"          : pi(Z) = 0 in V
    "Z+Enu"      : span of pi(E^nu)
    "Z+Enu+Ep"   : span of pi(E^nu ∪ E^p)
    "center"     : <E^nu, E^p, E^iota> ∩ Z in W.  E^nu is closed under
                   multiplication by Z, so this is all of W once E^nu is
                   nonempty.
    """
    if isinstance(baseline, Subspace):
        if baseline.space not in ("V", "W"):
            raise TransversalError(f"unknown space {baseline.space!r}")
        dim = G.rank if baseline.space == "V" else G.center_rank
        if any(len(v) != dim for v in baseline.basis):
            raise TransversalError("baseline vectors have the wrong dimension")
        return Subspace(baseline.space, fp.row_space(baseline.basis, G.p))
    if baseline == "Z":
        return Subspace("V", ())
    if baseline == "Z+Enu":
        return Subspace("V", fp.row_space(one_nu_elements(G), G.p))
    if baseline == "Z+Enu+Ep":
        return Subspace("V", _type_images(G, {TypeTag.TYPE_P}, one_nu_elements(G)))
    if baseline == "center":
        if G.rank == 0:
            return Subspace("W", ())
        return Subspace("W", tuple(fp.unit(G.center_rank, k) for k in range(G.center_rank)))
    raise TransversalError(f"unknown baseline {baseline!r}")


def independent_over(G: MeklerGroup, elements: Sequence[MeklerElement], baseline) -> bool:
    """Are the elements independent over the baseline subgroup?"""
    sub = baseline_subspace(G, baseline)
    if sub.space == "V":
        images = [g.gen for g in elements]
    else:
        if not all(g.is_central for g in elements):
            return False
        images = [g.com for g in elements]
    return fp.rank(list(sub.basis) + images, G.p) == len(sub.basis) + len(images)


# -- transversals -------------------------------------------------------------


@dataclass(frozen=True)
class Attestation:
    """Maximality evidence for one part: the part plus the baseline span the whole space."""

    part: str
    chosen: int
    baseline_dimension: int
    target_dimension: int
    maximal: bool

    def to_json(self) -> dict:
        return {
            "part": self.part,
            "chosen": self.chosen,
            "baseline_dimension": self.baseline_dimension,
            "target_dimension": self.target_dimension,
            "maximal": self.maximal,
        }


@dataclass(frozen=True)
class Transversal:
    x_nu: tuple[MeklerElement, ...]
    x_p: tuple[MeklerElement, ...]
    x_iota: tuple[MeklerElement, ...]
    x_zeta: tuple[MeklerElement, ...] = ()
    attestations: tuple[Attestation, ...] = field(default=(), compare=False)
    full: bool = False

    @property
    def members(self) -> tuple[MeklerElement, ...]:
        """X = X^nu X^p X^iota in that order."""
        return self.x_nu + self.x_p + self.x_iota

    def sizes(self) -> dict[str, int]:
        return {
            "x_nu": len(self.x_nu),
            "x_p": len(self.x_p),
            "x_iota": len(self.x_iota),
            "x_zeta": len(self.x_zeta),
        }

    def to_json(self) -> dict:
        return {
            "x_nu": [g.to_json() for g in self.x_nu],
            "x_p": [g.to_json() for g in self.x_p],
            "x_iota": [g.to_json() for g in self.x_iota],
            "x_zeta": [g.to_json() for g in self.x_zeta],
            "full": self.full,
            "attestations": [a.to_json() for a in self.attestations],
        }


def _greedy(G: MeklerGroup, candidates, base: Sequence[Vec], target_dim: int,
            image=lambda g: g.gen) -> list[MeklerElement]:
    """Add candidates whose images are independent of base + chosen so far.

    Stops as soon as base + chosen spans the target, since nothing further
    can be independent.
    """
    chosen: list[MeklerElement] = []
    span = list(fp.row_space(base, G.p))
    for g in candidates:
        if len(span) == target_dim:
            break
        v = image(g)
        if any(v) and not fp.in_span(v, span, G.p):
            chosen.append(g)
            span = list(fp.row_space(span + [v], G.p))
    return chosen


def _candidates(G: MeklerGroup, tag: TypeTag):
    """Elements of a given type in coordinate-lexicographic order, com = 0."""
    zero = (0,) * G.center_rank
    for v in enumerate_quotient(G, cap=max(G.enumeration_cap, G.p**G.rank)):
        if any(v) and type_of(G, v).tag is tag:
            yield MeklerElement(v, zero)


def compute_transversal(G: MeklerGroup) -> Transversal:
    """Greedy transversal: generators first, then the lexicographic scan of each type."""
    n, p = G.rank, G.p
    zero = (0,) * G.center_rank
    gens = [G.generator(i) for i in G.graph.vertices]
    nu_candidates = gens + [MeklerElement(v, zero) for v in one_nu_elements(G)]
    x_nu = _greedy(G, nu_candidates, (), len(fp.row_space(one_nu_elements(G), p)))
    nu_span = fp.row_space([g.gen for g in x_nu], p)

    ep_span = _type_images(G, {TypeTag.TYPE_P}, nu_span)
    x_p = _greedy(G, _candidates(G, TypeTag.TYPE_P), nu_span, len(ep_span))
    p_span = fp.row_space(list(nu_span) + [g.gen for g in x_p], p)

    x_iota = _greedy(G, _candidates(G, TypeTag.ONE_IOTA), p_span, n)
    full_span = fp.row_space(list(p_span) + [g.gen for g in x_iota], p)

    atts = (
        Attestation("x_nu", len(x_nu), 0, len(fp.row_space(one_nu_elements(G), p)),
                    len(nu_span) == len(fp.row_space(one_nu_elements(G), p))),
        Attestation("x_p", len(x_p), len(nu_span), len(ep_span), len(p_span) == len(ep_span)),
        Attestation("x_iota", len(x_iota), len(p_span), n, len(full_span) == n),
    )
    return Transversal(tuple(x_nu), tuple(x_p), tuple(x_iota), (), atts, False)


def compute_full_transversal(G: MeklerGroup) -> Transversal:
    """Transversal plus X^zeta, a basis of Z over <E^nu, E^p, E^iota> ∩ Z."""
    t = compute_transversal(G)
    base = baseline_subspace(G, "center").basis
    k = G.center_rank
    candidates = (G.central(fp.unit(k, i)) for i in range(k))
    x_zeta = _greedy(G, candidates, base, k, image=lambda g: g.com)
    att = Attestation("x_zeta", len(x_zeta), len(base), k, len(base) + len(x_zeta) == k)
    return Transversal(t.x_nu, t.x_p, t.x_iota, tuple(x_zeta), t.attestations + (att,), True)


def counting_exponent(G: MeklerGroup, T: Transversal) -> int:
    """log_p of p^(|X^nu| + |X^p| + |X^iota| + dim Z), with dim Z = #non-edges + |X^zeta|."""
    return len(T.members) + G.center_rank + len(T.x_zeta)


def subgroup_order(G: MeklerGroup, elements: Sequence[MeklerElement], cap: int | None = None) -> int:
    """|<elements>| by breadth-first closure under right multiplication."""
    cap = G.enumeration_cap if cap is None else cap
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        g = queue.popleft()
        for x in elements:
            h = multiply(G, g, x)
            if h not in seen:
                seen.add(h)
                if len(seen) > cap:
                    raise EnumerationCapError(len(seen), cap)
                queue.append(h)
    return len(seen)


# -- normal form ---------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Exponents of g = prod x^{n_x} * prod [x, y]^{n_xy} * prod z^{n_z}.

    ``pairs`` lists the index pairs (a, b), a < b into T.members, whose
    commutators form the fixed basis of the commutator span; other pairs
    carry exponent zero.
    """

    n_x: tuple[int, ...]
    pairs: tuple[tuple[int, int], ...]
    n_pairs: tuple[int, ...]
    n_z: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "n_x": list(self.n_x),
            "n_pairs": [[a, b, e] for (a, b), e in zip(self.pairs, self.n_pairs)],
            "n_z": list(self.n_z),
        }


def _commutator_basis(G: MeklerGroup, X: Sequence[MeklerElement]) -> list[tuple[int, int]]:
    """Lexicographically first pairs of X whose commutators are independent."""
    chosen, span = [], []
    for a, b in combinations(range(len(X)), 2):
        w = commutator(G, X[a], X[b]).com
        if any(w) and not fp.in_span(w, span, G.p):
            chosen.append((a, b))
            span = list(fp.row_space(span + [w], G.p))
    return chosen


def _basis_data(G: MeklerGroup, T: Transversal):
    key = ("nf_basis", T)
    if key not in G._cache:
        X = T.members
        pairs = _commutator_basis(G, X)
        central = [commutator(G, X[a], X[b]).com for a, b in pairs] + [z.com for z in T.x_zeta]
        if len(X) != G.rank or fp.rank([x.gen for x in X], G.p) != G.rank:
            raise TransversalError("transversal images do not form a basis of V")
        if fp.rank(central, G.p) != G.center_rank or len(central) != G.center_rank:
            raise TransversalError("commutators and X^zeta do not form a basis of Z")
        # coordinates of each unit vector, so solving becomes a matrix product
        inv_x = [fp.solve([x.gen for x in X], fp.unit(G.rank, i), G.p) for i in range(G.rank)]
        inv_c = [fp.solve(central, fp.unit(G.center_rank, i), G.p) for i in range(G.center_rank)]
        G._cache[key] = (pairs, inv_x, inv_c)
    return G._cache[key]


def normal_form_wrt(G: MeklerGroup, g: MeklerElement, T: Transversal) -> NormalForm:
    if not T.full:
        raise TransversalError("normal forms need a full transversal")
    X = T.members
    pairs, inv_x, inv_c = _basis_data(G, T)
    n_x = fp.combine(g.gen, inv_x, len(X), G.p)
    head = product_of(G, [power(G, x, e) for x, e in zip(X, n_x) if e])
    rest = multiply(G, inverse(G, head), g)
    coeffs = fp.combine(rest.com, inv_c, G.center_rank, G.p)
    k = len(pairs)
    return NormalForm(tuple(n_x), tuple(pairs), tuple(coeffs[:k]), tuple(coeffs[k:]))


def recompose(G: MeklerGroup, nf: NormalForm, T: Transversal) -> MeklerElement:
    X = T.members
    factors = [power(G, x, e) for x, e in zip(X, nf.n_x)]
    factors += [power(G, commutator(G, X[a], X[b]), e) for (a, b), e in zip(nf.pairs, nf.n_pairs)]
    factors += [power(G, z, e) for z, e in zip(T.x_zeta, nf.n_z)]
    return product_of(G, factors)


# -- quantifier-free transversal predicates ----------------------------------


@dataclass(frozen=True)
class QfReport:
    passed: bool
    checked: int
    violations: tuple[str, ...] = ()

    def to_json(self) -> dict:
        return {"passed": self.passed, "checked": self.checked, "violations": list(self.violations)}


def _power_products(G: MeklerGroup, elems: Sequence[MeklerElement]):
    for ks in product(range(G.p), repeat=len(elems)):
        if any(ks):
            yield ks, product_of(G, [power(G, x, k) for x, k in zip(elems, ks)])


def _describe(ks: Sequence[int]) -> str:
    return " ".join(f"v{i}^{k}" for i, k in enumerate(ks) if k)


def transversal_qf_check(G: MeklerGroup, T: Transversal, max_products: int = 10**6) -> QfReport:
    """Check the predicate families that say T extends to a transversal.

    x_nu: members are of type 1^nu and no nontrivial power product is central.
    x_p: members are of type p and no nontrivial power product lies in any A_{n,0}.
    x_iota: members are of type 1^iota and no nontrivial power product lies in
    any A_{n,m}.  x_zeta: members are central.
    """
    parts = [("x_nu", T.x_nu, TypeTag.ONE_NU), ("x_p", T.x_p, TypeTag.TYPE_P),
             ("x_iota", T.x_iota, TypeTag.ONE_IOTA)]
    for name, elems, _ in parts:
        if G.p ** len(elems) > max_products:
            raise TransversalError(f"{name} has too many power products to check")
    violations: list[str] = []
    checked = 0
    n = G.rank
    for name, elems, tag in parts:
        for i, x in enumerate(elems):
            checked += 1
            t = type_of(G, x)
            if t.tag is not tag:
                violations.append(f"{name}[{i}] has type {t.tag}, expected {tag}")
        for ks, g in _power_products(G, elems):
            checked += 1
            if name == "x_nu":
                if g.is_central:
                    violations.append(f"x_nu: {_describe(ks)} is central")
            elif name == "x_p":
                if in_A(G, g, n, 0):
                    violations.append(f"x_p: {_describe(ks)} satisfies A_{{{n},0}}")
            elif in_A(G, g, n, n):
                violations.append(f"x_iota: {_describe(ks)} satisfies A_{{{n},{n}}}")
    for i, z in enumerate(T.x_zeta):
        checked += 1
        if not z.is_central:
            violations.append(f"x_zeta[{i}] is not central")
    return QfReport(not violations, checked, tuple(violations))


def transversal_cover_check(G: MeklerGroup, T: Transversal, neighbor_threshold: int = 2) -> CoverReport:
    """Is Gamma(X) a cover of the graph on the generator classes?"""
    q = gamma_graph(G, T.members)
    c_vertices = [k for k, cid in enumerate(q.classes) if vertex_of(cid) is not None]
    return is_cover(q.to_graph(), c_vertices, neighbor_threshold)
