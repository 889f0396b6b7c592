import random
from itertools import combinations, product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mekler import fp
from mekler.bilinear import (
    BilinearError,
    BilinearSystem,
    BnClass,
    beta,
    counting_certificate,
    decompose_two_vector,
    exterior_square_system,
    f_n,
    f_of_group,
    find_separated_basis,
    is_separated_basis,
    pi_A,
    relation_R,
    simeq,
    two_vector_rank,
    w_n_membership,
    wedge_quotient_fixture,
)
from mekler.common import UNDETERMINED
from mekler.graphs import make_cycle
from mekler.group import build_group, commutator
from oracles import literal_separated

F5 = f_of_group(build_group(make_cycle(5), 3))
F6 = f_of_group(build_group(make_cycle(6), 3))
WEDGE = wedge_quotient_fixture(3)


def random_system(rng, dim_v, dim_w, p=3):
    consts = {pr: tuple(rng.randrange(p) for _ in range(dim_w))
              for pr in combinations(range(dim_v), 2)}
    return BilinearSystem(p, dim_v, dim_w, consts)


def random_independent(rng, sys_, k):
    while True:
        vecs = [tuple(rng.randrange(sys_.p) for _ in range(sys_.dim_v)) for _ in range(k)]
        if fp.is_independent(vecs, sys_.p):
            return vecs


def test_beta_matches_group_commutator():
    G = F5.group
    rng = random.Random(0)
    for _ in range(200):
        u = tuple(rng.randrange(3) for _ in range(5))
        v = tuple(rng.randrange(3) for _ in range(5))
        assert beta(F5, u, v) == commutator(G, G.element(u), G.element(v)).com
        assert beta(F5, u, v) == fp.scale(-1, beta(F5, v, u), 3)
        assert relation_R(F5, u, v) == (not any(beta(F5, u, v)))


def test_json_round_trip():
    for s in (F5, WEDGE):
        assert BilinearSystem.from_json(s.to_json()).to_json() == s.to_json()
    with pytest.raises(BilinearError):
        BilinearSystem.from_json({"p": 3, "dimV": 2})
    with pytest.raises(BilinearError):
        BilinearSystem(3, 2, 1, {(0, 0): (1,)})
    with pytest.raises(BilinearError):
        BilinearSystem(4, 2, 1, {(0, 1): (1,)})


@pytest.mark.parametrize("sys_", [F5, F6, WEDGE], ids=["C5", "C6", "wedge"])
def test_is_separated_basis_matches_literal_oracle(sys_):
    rng = random.Random(11)
    for _ in range(120):
        vecs = random_independent(rng, sys_, rng.randint(1, 4))
        values = [beta(sys_, vecs[i], vecs[j]) for i, j in combinations(range(len(vecs)), 2)]
        check = is_separated_basis(sys_, vecs)
        assert check.separated == literal_separated(values, 3)
        if not check.separated:
            total = fp.zero(sys_.dim_w)
            for (i, j), a in check.witness.items():
                term = fp.scale(a, beta(sys_, vecs[i], vecs[j]), 3)
                assert any(term)
                total = fp.add(total, term, 3)
            assert not any(total)


def test_dependent_input_rejected():
    with pytest.raises(BilinearError):
        is_separated_basis(F5, [(1, 0, 0, 0, 0), (2, 0, 0, 0, 0)])


def check_found(sys_, subspace, result):
    assert result.status == "found"
    assert fp.row_space(result.basis, sys_.p) == fp.row_space(subspace, sys_.p)
    values = [beta(sys_, a, b) for a, b in combinations(result.basis, 2)]
    assert literal_separated(values, sys_.p) if len(values) <= 6 else is_separated_basis(
        sys_, result.basis).separated


def check_certificate(F, subspace, cert):
    """Re-derive a counting certificate from group commutators."""
    G = F.group
    basis = fp.row_space(subspace, F.p)
    points = list(fp.projective_points(basis, F.dim_v, F.p))
    for a, b in combinations(points, 2):
        assert any(commutator(G, G.element(a), G.element(b)).com)
    values = [commutator(G, G.element(a), G.element(b)).com for a, b in combinations(basis, 2)]
    assert fp.rank(values, F.p) == cert.span_dimension < cert.required == len(values)


@pytest.mark.parametrize("name", ["c5", "c6", "c8", "petersen"])
def test_mekler_full_space_is_separated(name, request):
    F = f_of_group(request.getfixturevalue(name))
    full = [fp.unit(F.dim_v, i) for i in range(F.dim_v)]
    check_found(F, full, find_separated_basis(F, full))


@pytest.mark.parametrize("name", ["c5", "c6", "c8", "petersen"])
def test_mekler_random_subspaces_are_decided(name, request):
    F = f_of_group(request.getfixturevalue(name))
    rng = random.Random(5)
    for _ in range(100):
        sub = random_independent(rng, F, rng.randint(1, 4))
        res = find_separated_basis(F, sub, seed=rng.randrange(1000))
        assert res.status in ("found", "absent")
        if res.status == "found":
            check_found(F, sub, res)
        else:
            check_certificate(F, sub, res.certificate)


# 4-dimensional subspaces in which no two independent vectors commute but
# the commutator values span only 5 dimensions: no basis can be separated
COUNTEREXAMPLES = {
    "c5": [(1, 0, 0, 0, 2), (0, 1, 0, 0, 2), (0, 0, 1, 0, 2), (0, 0, 0, 1, 2)],
    "c6": [(1, 0, 0, 0, 1, 0), (0, 1, 0, 0, 0, 1), (0, 0, 1, 0, 2, 0), (0, 0, 0, 1, 0, 2)],
}


@pytest.mark.parametrize("name", sorted(COUNTEREXAMPLES))
def test_small_mekler_systems_have_unseparated_subspaces(name, request):
    F = f_of_group(request.getfixturevalue(name))
    sub = COUNTEREXAMPLES[name]
    res = find_separated_basis(F, sub)
    assert res.status == "absent"
    check_certificate(F, sub, res.certificate)
    rng = random.Random(1)
    points = list(fp.projective_points(fp.row_space(sub, 3), F.dim_v, 3))
    for _ in range(200):
        basis = rng.sample(points, 4)
        if fp.is_independent(basis, 3):
            values = [beta(F, a, b) for a, b in combinations(basis, 2)]
            assert not literal_separated(values, 3)


@pytest.mark.xfail(strict=True, reason="M(C5,3) has 4-dim subspaces without a separated basis")
def test_every_random_subspace_of_c5_has_separated_basis(c5):
    F = f_of_group(c5)
    rng = random.Random(5)
    for _ in range(100):
        sub = random_independent(rng, F, rng.randint(1, 4))
        assert find_separated_basis(F, sub, seed=rng.randrange(1000)).status == "found"


@pytest.mark.parametrize("p", [3, 5])
def test_wedge_quotient_is_not_separated(p):
    s = wedge_quotient_fixture(p)
    full = [fp.unit(4, i) for i in range(4)]
    res = find_separated_basis(s, full)
    assert res.status == "absent"
    assert (res.certificate.span_dimension, res.certificate.required) == (5, 6)
    # the relation it quotients by: beta(v2, v3) = beta(v0, v1)
    assert beta(s, fp.unit(4, 2), fp.unit(4, 3)) == beta(s, fp.unit(4, 0), fp.unit(4, 1))


def test_wedge_quotient_small_subspaces_are_separated():
    rng = random.Random(2)
    for _ in range(40):
        sub = random_independent(rng, WEDGE, rng.randint(1, 3))
        check_found(WEDGE, sub, find_separated_basis(WEDGE, sub))


def test_exterior_square_is_separated():
    s = exterior_square_system(4, 3)
    rng = random.Random(4)
    for _ in range(30):
        sub = random_independent(rng, s, rng.randint(1, 4))
        assert is_separated_basis(s, sub).separated
    assert counting_certificate(s, [fp.unit(4, i) for i in range(4)]) is None


def test_two_dimensional_systems_are_separated():
    rng = random.Random(8)
    for _ in range(30):
        s = random_system(rng, 2, 3)
        for d in (1, 2):
            sub = random_independent(rng, s, d)
            assert find_separated_basis(s, sub).status == "found"


def test_indeterminate_without_certificate():
    # beta(e0,e1) = beta(e0,e2) = beta(e1,e2) forces a dependency, but some
    # independent pairs commute, so there is no counting certificate
    s = BilinearSystem(3, 3, 1, {(0, 1): (1,), (0, 2): (1,), (1, 2): (1,)})
    res = find_separated_basis(s, [fp.unit(3, i) for i in range(3)], random_tries=5)
    assert res.status in ("found", "indeterminate")
    if res.status == "found":
        assert is_separated_basis(s, res.basis).separated
    assert res.status != "absent"


# -- W_n, B_n, f_n --------------------------------------------------------------


def brute_w_n(sys_, n):
    vecs = list(fp.all_vectors(sys_.dim_v, sys_.p))
    table = {(a, b): beta(sys_, a, b) for a in vecs for b in vecs}
    pairs = list(combinations(range(n), 2))
    out = set()
    for coeffs in product(range(sys_.p), repeat=len(pairs)):
        for vbar in product(vecs, repeat=n):
            total = fp.zero(sys_.dim_w)
            for (i, j), a in zip(pairs, coeffs):
                if a:
                    total = fp.add(total, fp.scale(a, table[(vbar[i], vbar[j])], sys_.p), sys_.p)
            out.add(total)
    return out


def test_w_n_matches_brute_force_wedge():
    every = list(fp.all_vectors(5, 3))
    for n in range(3):
        expected = brute_w_n(WEDGE, n)
        assert {w for w in every if w_n_membership(WEDGE, w, n)} == expected


def test_w_n_matches_brute_force_random_systems():
    rng = random.Random(6)
    for _ in range(2):
        s = random_system(rng, 3, 2)
        every = list(fp.all_vectors(2, 3))
        for n in range(4):
            assert {w for w in every if w_n_membership(s, w, n)} == brute_w_n(s, n)


def test_w_n_outside_image():
    s = BilinearSystem(3, 2, 2, {(0, 1): (1, 0)})
    assert not any(w_n_membership(s, (0, 1), n) for n in range(5))
    assert w_n_membership(s, (2, 0), 2)


def test_w_n_levels_of_wedge():
    # W_0 = W_1 = 0; e01 + e23 has rank 4 upstairs but equals 2*e01 downstairs
    assert w_n_membership(WEDGE, fp.zero(5), 0)
    assert not w_n_membership(WEDGE, (1, 0, 0, 0, 0), 1)
    assert w_n_membership(WEDGE, (1, 0, 0, 0, 0), 2)
    assert w_n_membership(WEDGE, (1, 1, 1, 1, 1), 2)


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 4), min_size=10, max_size=10))
def test_two_vector_decomposition(omega):
    p, d = 5, 5
    terms = decompose_two_vector(omega, d, p)
    assert 2 * len(terms) == two_vector_rank(omega, d, p)
    total = [0] * 10
    for x, y in terms:
        for k, (i, j) in enumerate(combinations(range(d), 2)):
            total[k] += x[i] * y[j] - x[j] * y[i]
    assert [t % p for t in total] == [w % p for w in omega]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=5, max_size=5), st.integers(0, 5))
def test_f_n_section(w, n):
    cls = f_n(WEDGE, w, n)
    if w_n_membership(WEDGE, w, n):
        assert isinstance(cls, BnClass) and cls.n == n
        assert cls.canonical_value == tuple(w)
        assert pi_A(WEDGE, cls.matrix, cls.vectors) == cls
    else:
        assert cls is UNDETERMINED


def test_simeq_examples_and_validation():
    A = [[0, 1], [2, 0]]
    e = [fp.unit(4, i) for i in range(4)]
    assert simeq(WEDGE, A, [e[0], e[1]], A, [e[2], e[3]])
    assert not simeq(WEDGE, A, [e[0], e[1]], A, [e[0], e[2]])
    assert pi_A(WEDGE, A, [e[0], e[1]]) == pi_A(WEDGE, A, [e[2], e[3]])
    with pytest.raises(BilinearError):
        pi_A(WEDGE, [[0, 1], [1, 0]], [e[0], e[1]])
    with pytest.raises(BilinearError):
        pi_A(WEDGE, [[1, 0], [0, 0]], [e[0], e[1]])
    with pytest.raises(BilinearError):
        simeq(WEDGE, A, [e[0], e[1]], [[0]], [e[0]])


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_simeq_is_an_equivalence(data):
    vec = st.tuples(*[st.integers(0, 2)] * 4)
    entry = st.integers(0, 2)

    def pair():
        a = data.draw(entry)
        return [[0, a], [(-a) % 3, 0]], [data.draw(vec), data.draw(vec)]

    x, y, z = pair(), pair(), pair()
    assert simeq(WEDGE, *x, *x)
    assert simeq(WEDGE, *x, *y) == simeq(WEDGE, *y, *x)
    if simeq(WEDGE, *x, *y) and simeq(WEDGE, *y, *z):
        assert simeq(WEDGE, *x, *z)
