"""Alternating bilinear systems (V, W, beta) over F_p.

A system is stored through its structure constants beta(e_i, e_j) for
i < j.  Equivalently beta factors through the linear map
``wedge_map: Λ²V -> W`` sending e_i ∧ e_j to beta(e_i, e_j); most of the
algorithms below (W_n membership, f_n) work with that map.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from . import fp
from .common import UNDETERMINED, BoundExceededError

Vec = tuple[int, ...]


class BilinearError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class BilinearSystem:
    p: int
    dim_v: int
    dim_w: int
    # beta(e_i, e_j) for i < j, as W-vectors; missing pairs are zero
    constants: dict[tuple[int, int], Vec] = field(repr=False)
    group: object = field(default=None, repr=False)

    def __post_init__(self):
        if self.p < 3 or not fp.is_prime(self.p):
            raise BilinearError(f"p must be an odd prime, got {self.p}")
        clean = {}
        for (i, j), w in self.constants.items():
            if not (0 <= i < self.dim_v and 0 <= j < self.dim_v):
                raise BilinearError(f"pair ({i}, {j}) out of range")
            if len(w) != self.dim_w:
                raise BilinearError(f"beta({i},{j}) has {len(w)} coordinates, expected {self.dim_w}")
            w = tuple(x % self.p for x in w)
            if i == j:
                if any(w):
                    raise BilinearError("beta(v, v) must vanish")
                continue
            if i > j:
                i, j, w = j, i, fp.scale(-1, w, self.p)
            if (i, j) in clean and clean[(i, j)] != w:
                raise BilinearError(f"conflicting constants for ({i}, {j})")
            if any(w):
                clean[(i, j)] = w
        object.__setattr__(self, "constants", clean)

    @property
    def pairs(self) -> list[tuple[int, int]]:
        return list(combinations(range(self.dim_v), 2))

    def constant(self, i: int, j: int) -> Vec:
        if i < j:
            return self.constants.get((i, j), fp.zero(self.dim_w))
        if i > j:
            return fp.scale(-1, self.constants.get((j, i), fp.zero(self.dim_w)), self.p)
        return fp.zero(self.dim_w)

    def wedge_columns(self) -> list[Vec]:
        """Images of e_i ∧ e_j (i < j, lexicographic) under the induced map Λ²V -> W."""
        return [self.constant(i, j) for i, j in self.pairs]

    def image_span(self) -> tuple[Vec, ...]:
        """Canonical basis of <beta(V, V)>."""
        return fp.row_space(self.wedge_columns(), self.p)

    def to_json(self) -> dict:
        return {
            "p": self.p,
            "dimV": self.dim_v,
            "dimW": self.dim_w,
            "beta": [[i, j, list(w)] for (i, j), w in sorted(self.constants.items())],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "BilinearSystem":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            consts = {(int(i), int(j)): tuple(int(x) for x in w) for i, j, w in data["beta"]}
            return cls(int(data["p"]), int(data["dimV"]), int(data["dimW"]), consts)
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, BilinearError):
                raise
            raise BilinearError(f"malformed bilinear system JSON: {exc}") from None


def _check_v(sys: BilinearSystem, *vectors: Sequence[int]) -> None:
    for v in vectors:
        if len(v) != sys.dim_v:
            raise BilinearError(f"expected a V-vector of length {sys.dim_v}, got {len(v)}")


def f_of_group(G) -> BilinearSystem:
    """F(G) = (G/Z, Z, commutator map) for a Mekler group."""
    consts = {(i, j): G.beta_constant(i, j) for i, j in combinations(range(G.rank), 2)}
    return BilinearSystem(G.p, G.rank, G.center_rank, consts, group=G)


def exterior_square_system(d: int, p: int) -> BilinearSystem:
    """(V, Λ²V, ∧) with V = F_p^d; W has basis e_i ∧ e_j (i < j) in lexicographic order."""
    pairs = list(combinations(range(d), 2))
    consts = {pr: fp.unit(len(pairs), k) for k, pr in enumerate(pairs)}
    return BilinearSystem(p, d, len(pairs), consts)


def wedge_quotient_fixture(p: int) -> BilinearSystem:
    """Λ²F_p^4 modulo <v0∧v1 - v2∧v3>: every independent pair has nonzero beta.

    W has basis e01, e02, e03, e12, e13; e23 is identified with e01.
    """
    basis = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)]
    consts = {pair: fp.unit(5, k) for k, pair in enumerate(basis)}
    consts[(2, 3)] = fp.unit(5, 0)
    return BilinearSystem(p, 4, 5, consts)


def beta(sys: BilinearSystem, v: Sequence[int], w: Sequence[int]) -> Vec:
    _check_v(sys, v, w)
    p = sys.p
    out = [0] * sys.dim_w
    for (i, j), c in sys.constants.items():
        coeff = (v[i] * w[j] - v[j] * w[i]) % p
        if coeff:
            for k, x in enumerate(c):
                out[k] += coeff * x
    return tuple(x % p for x in out)


def relation_R(sys: BilinearSystem, v: Sequence[int], w: Sequence[int]) -> bool:
    return not any(beta(sys, v, w))


# -- separated bases ----------------------------------------------------------


@dataclass(frozen=True)
class SeparationCheck:
    separated: bool
    # coefficients alpha_{ij} of a vanishing combination whose terms are all nonzero
    witness: dict[tuple[int, int], int] | None = None


def is_separated_basis(sys: BilinearSystem, vectors: Sequence[Sequence[int]]) -> SeparationCheck:
    """A basis is separated iff its nonzero pairwise beta-values are independent.

    That is the quantified definition restated: a vanishing combination
    sum a_ij beta(v_i, v_j) = 0 with some a_ij beta(v_i, v_j) != 0 exists
    exactly when the nonzero values are linearly dependent.
    """
    vecs = [tuple(v) for v in vectors]
    _check_v(sys, *vecs)
    if not fp.is_independent(vecs, sys.p):
        raise BilinearError("vectors are linearly dependent")
    pairs, values = [], []
    for i, j in combinations(range(len(vecs)), 2):
        w = beta(sys, vecs[i], vecs[j])
        if any(w):
            pairs.append((i, j))
            values.append(w)
    dep = fp.dependency(values, sys.p)
    if dep is None:
        return SeparationCheck(True)
    return SeparationCheck(False, {pr: a for pr, a in zip(pairs, dep) if a})


@dataclass(frozen=True)
class CountingCertificate:
    """No separated basis: all d(d-1)/2 values would be nonzero and independent."""

    dimension: int
    required: int
    span_dimension: int


def counting_certificate(sys: BilinearSystem, subspace: Sequence[Sequence[int]],
                         max_points: int = 20_000) -> CountingCertificate | None:
    basis = fp.row_space(subspace, sys.p)
    d = len(basis)
    required = d * (d - 1) // 2
    values = [beta(sys, basis[i], basis[j]) for i, j in combinations(range(d), 2)]
    span_dim = fp.rank(values, sys.p) if values else 0
    if span_dim >= required:
        return None
    n_points = (sys.p**d - 1) // (sys.p - 1)
    if n_points > max_points:
        raise BoundExceededError(f"{n_points} projective points exceed the bound {max_points}")
    points = list(fp.projective_points(basis, sys.dim_v, sys.p))
    for a, b in combinations(points, 2):
        if relation_R(sys, a, b):
            return None
    return CountingCertificate(d, required, span_dim)


@dataclass(frozen=True)
class SeparatedBasisResult:
    status: str  # "found" | "absent" | "indeterminate"
    basis: tuple[Vec, ...] | None = None
    certificate: CountingCertificate | None = None
    method: str = ""
    candidates_tried: int = 0


def _mekler_replacement(G, basis: list[Vec], max_rounds: int) -> list[Vec] | None:
    """Repair a basis of a subspace of F(M(C)) by replacing isolated vectors.

    For a generator a and a vanishing combination with coefficients
    alpha_{ij}, the vector v_a = sum_i alpha_i(a) v_i commutes with a, where
    alpha_i(a) = sum_{j<i} alpha_{ji} c_j(a) - sum_{j>i} alpha_{ij} c_j(a)
    and c_j(a) is the a-coordinate of v_j.  An isolated v_i with
    alpha_i(a) != 0 is replaced by v_a, and the loop repeats.
    """
    from .classification import type_of

    sys = f_of_group(G)
    p = G.p
    basis = list(basis)
    n = len(basis)
    for _ in range(max_rounds):
        check = is_separated_basis(sys, basis)
        if check.separated:
            return basis
        alpha = check.witness
        isolated = [type_of(G, v).isolated for v in basis]
        replaced = False
        for a in range(G.rank):
            c = [v[a] for v in basis]
            coeffs = []
            for i in range(n):
                s = sum(alpha.get((j, i), 0) * c[j] for j in range(i))
                s -= sum(alpha.get((i, j), 0) * c[j] for j in range(i + 1, n))
                coeffs.append(s % p)
            v_a = fp.combine(coeffs, basis, G.rank, p)
            for i in range(n):
                if isolated[i] and coeffs[i]:
                    basis[i] = v_a
                    replaced = True
                    break
            if replaced:
                break
        if not replaced:
            return None
    return None


def find_separated_basis(sys: BilinearSystem, subspace: Sequence[Sequence[int]], *,
                         max_dimension: int = 8, search_bound: int = 200_000,
                         random_tries: int = 200, seed: int = 0) -> SeparatedBasisResult:
    """Look for a separated basis of span(subspace).

    Tried in order: the RREF basis, then (for dimension at most
    ``max_dimension``) the counting certificate, the
    replacement procedure (systems coming from a Mekler group only), random
    changes of basis, and finally every set of independent lines up to
    ``search_bound`` candidates.  Without a certificate, failure is
    reported as "indeterminate", never as "absent".
    """
    p = sys.p
    vecs = [tuple(v) for v in subspace]
    _check_v(sys, *vecs)
    basis = list(fp.row_space(vecs, p))
    d = len(basis)
    if is_separated_basis(sys, basis).separated:
        return SeparatedBasisResult("found", tuple(basis), method="rref", candidates_tried=1)
    if d > max_dimension:
        raise BoundExceededError(f"subspace dimension {d} exceeds the search bound {max_dimension}")

    try:
        cert = counting_certificate(sys, basis)
    except BoundExceededError:
        cert = None
    if cert is not None:
        return SeparatedBasisResult("absent", certificate=cert, method="counting", candidates_tried=1)

    tried = 1
    if sys.group is not None:
        repaired = _mekler_replacement(sys.group, basis, max_rounds=4 * d + 4)
        tried += 1
        if repaired is not None:
            return SeparatedBasisResult("found", tuple(repaired), method="replacement",
                                        candidates_tried=tried)

    rng = random.Random(seed)
    for _ in range(random_tries):
        mix = [[rng.randrange(p) for _ in range(d)] for _ in range(d)]
        if fp.rank(mix, p) < d:
            continue
        cand = [fp.combine(row, basis, sys.dim_v, p) for row in mix]
        tried += 1
        if is_separated_basis(sys, cand).separated:
            return SeparatedBasisResult("found", tuple(cand), method="random", candidates_tried=tried)

    points = list(fp.projective_points(basis, sys.dim_v, p))
    exhausted = True
    for combo in combinations(points, d):
        if tried >= search_bound:
            exhausted = False
            break
        if fp.rank(combo, p) < d:
            continue
        tried += 1
        if is_separated_basis(sys, combo).separated:
            return SeparatedBasisResult("found", tuple(combo), method="exhaustive",
                                        candidates_tried=tried)
    return SeparatedBasisResult(
        "indeterminate", method="exhaustive" if exhausted else "bounded", candidates_tried=tried
    )


# -- W_n, B_n, pi_A and f_n ---------------------------------------------------


def _pair_index(d: int) -> dict[tuple[int, int], int]:
    return {pr: k for k, pr in enumerate(combinations(range(d), 2))}


def _two_vector_matrix(omega: Sequence[int], d: int, p: int) -> list[list[int]]:
    """Skew matrix M with omega = sum_{i<j} M_ij e_i ∧ e_j."""
    m = [[0] * d for _ in range(d)]
    for (i, j), k in _pair_index(d).items():
        m[i][j] = omega[k] % p
        m[j][i] = (-omega[k]) % p
    return m


def decompose_two_vector(omega: Sequence[int], d: int, p: int) -> list[tuple[Vec, Vec]]:
    """Write omega in Λ²F_p^d as a shortest sum of decomposables x ∧ y."""
    m = _two_vector_matrix(omega, d, p)
    terms = []
    while True:
        hit = next(((i, j) for i in range(d) for j in range(i + 1, d) if m[i][j]), None)
        if hit is None:
            return terms
        i, j = hit
        c = m[i][j]
        inv = pow(c, -1, p)
        u = [m[r][j] for r in range(d)]
        w = [m[r][i] for r in range(d)]
        x = tuple((inv * a) % p for a in w)
        y = tuple(u)
        terms.append((x, y))
        for r in range(d):
            for s in range(d):
                m[r][s] = (m[r][s] - (x[r] * y[s] - y[r] * x[s])) % p


def two_vector_rank(omega: Sequence[int], d: int, p: int) -> int:
    return fp.rank(_two_vector_matrix(omega, d, p), p)


@dataclass(frozen=True)
class BnClass:
    """The ≃-class of (A, vbar); equal classes have equal canonical values."""

    n: int
    matrix: tuple[tuple[int, ...], ...] = field(compare=False)
    vectors: tuple[Vec, ...] = field(compare=False)
    canonical_value: Vec = ()


def _check_antisymmetric(A: Sequence[Sequence[int]], p: int) -> tuple[tuple[int, ...], ...]:
    n = len(A)
    rows = tuple(tuple(x % p for x in row) for row in A)
    if any(len(r) != n for r in rows):
        raise BilinearError("coefficient matrix must be square")
    for i in range(n):
        if rows[i][i]:
            raise BilinearError("coefficient matrix must have zero diagonal")
        for j in range(i + 1, n):
            if (rows[i][j] + rows[j][i]) % p:
                raise BilinearError("coefficient matrix must be antisymmetric")
    return rows


def combination_value(sys: BilinearSystem, A: Sequence[Sequence[int]],
                      vbar: Sequence[Sequence[int]]) -> Vec:
    """sum_{i<j} a_ij beta(v_i, v_j)."""
    rows = _check_antisymmetric(A, sys.p)
    if len(vbar) != len(rows):
        raise BilinearError(f"need {len(rows)} vectors, got {len(vbar)}")
    _check_v(sys, *vbar)
    total = fp.zero(sys.dim_w)
    for i, j in combinations(range(len(rows)), 2):
        if rows[i][j]:
            total = fp.add(total, fp.scale(rows[i][j], beta(sys, vbar[i], vbar[j]), sys.p), sys.p)
    return total


def pi_A(sys: BilinearSystem, A: Sequence[Sequence[int]], vbar: Sequence[Sequence[int]]) -> BnClass:
    rows = _check_antisymmetric(A, sys.p)
    value = combination_value(sys, rows, vbar)
    return BnClass(len(rows), rows, tuple(tuple(v) for v in vbar), value)


def simeq(sys: BilinearSystem, A, vbar, A2, vbar2) -> bool:
    if len(A) != len(A2):
        raise BilinearError("≃ compares pairs of the same size n")
    return combination_value(sys, A, vbar) == combination_value(sys, A2, vbar2)


def _preimage_witness(sys: BilinearSystem, w: Sequence[int], n: int,
                      max_enumeration: int) -> list[int] | None:
    """A 2-vector of rank <= n mapping to w, or None if w is not in W_n."""
    p = sys.p
    d = sys.dim_v
    cols = sys.wedge_columns()
    if not cols:
        return [] if not any(w) else None
    omega0 = fp.solve(cols, tuple(w), p)
    if omega0 is None:
        return None
    if n < 2:
        return list(omega0) if not any(w) else None
    if two_vector_rank(omega0, d, p) <= n:
        return list(omega0)
    # kernel of the wedge map: omega0 + K is the full preimage
    rows = [[cols[k][r] for k in range(len(cols))] for r in range(sys.dim_w)]
    ker = fp.kernel(rows, len(cols), p)
    if p ** len(ker) > max_enumeration:
        raise BoundExceededError(
            f"preimage coset has {p}^{len(ker)} elements, bound is {max_enumeration}"
        )
    for k in fp.span_elements(ker, len(cols), p):
        omega = fp.add(omega0, k, p)
        if two_vector_rank(omega, d, p) <= n:
            return list(omega)
    return None


def w_n_membership(sys: BilinearSystem, w: Sequence[int], n: int,
                   max_enumeration: int = 10**6) -> bool:
    """Is w = sum_{i<j} a_ij beta(v_i, v_j) for some A in 𝔸_n and vbar in V^n?

    Such sums are exactly the images of 2-vectors of rank <= n, so this
    searches the preimage of w under Λ²V -> W for one of small rank.
    """
    if n < 0:
        raise BilinearError("n must be nonnegative")
    if len(w) != sys.dim_w:
        raise BilinearError(f"expected a W-vector of length {sys.dim_w}")
    return _preimage_witness(sys, w, n, max_enumeration) is not None


def f_n(sys: BilinearSystem, w: Sequence[int], n: int, max_enumeration: int = 10**6):
    """A class in B_n whose value is w, or UNDETERMINED if w is not in W_n."""
    if len(w) != sys.dim_w:
        raise BilinearError(f"expected a W-vector of length {sys.dim_w}")
    omega = _preimage_witness(sys, w, n, max_enumeration)
    if omega is None:
        return UNDETERMINED
    p, d = sys.p, sys.dim_v
    terms = decompose_two_vector(omega, d, p) if omega else []
    vbar: list[Vec] = []
    for x, y in terms:
        vbar += [x, y]
    vbar += [fp.zero(d)] * (n - len(vbar))
    A = [[0] * n for _ in range(n)]
    for t in range(len(terms)):
        A[2 * t][2 * t + 1] = 1
        A[2 * t + 1][2 * t] = p - 1
    return pi_A(sys, A, vbar)
