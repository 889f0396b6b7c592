import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mekler import fp
from mekler.classification import (
    ClassificationError,
    TypeTag,
    approx_equiv,
    class_id,
    decompositions,
    gamma_graph,
    handle,
    in_A,
    inp_pattern_check,
    minimal_A_index,
    one_nu_elements,
    recover_graph,
    sim_class_members,
    sim_equiv,
    support,
    type_census,
    type_of,
)
from mekler.common import UNDETERMINED
from mekler.graphs import graph_isomorphic, make_cycle
from mekler.group import build_group, enumerate_quotient, multiply, power
from oracles import brute_A, brute_handles, brute_types

# frozen from the enumeration oracle (brute_types) on M(C5, 3)
C5_CENSUS = {
    "central": 243,
    "one_nu": 2430,
    "p_minus_one": 4860,
    "type_p": 14580,
    "one_iota": 36936,
    "complete": True,
}


@pytest.fixture(scope="module")
def c5_oracle(c5):
    types = brute_types(c5)
    return types, brute_handles(c5, types)


def test_census_matches_oracle(c5, c5_oracle):
    types, _ = c5_oracle
    z = c5.center_order
    counts = {}
    for tag, *_ in types.values():
        counts[tag] = counts.get(tag, 0) + z
    census = type_census(c5)
    assert census.to_json() == C5_CENSUS
    assert counts == {"Central": 243, "OneNu": 2430, "PMinusOne": 4860,
                      "TypeP": 14580, "OneIota": 36936}
    assert census.total() == c5.order


@pytest.mark.parametrize("method", ["structural", "count"])
def test_types_match_oracle(c5, c5_oracle, method):
    types, _ = c5_oracle
    for v, (tag, q, isolated, _) in types.items():
        t = type_of(c5, v, method)
        assert (t.tag.value, t.q, t.isolated) == (tag, q, isolated), v


def test_type_tags_on_c6_p5(c6):
    g = build_group(make_cycle(6), 5)
    rng = random.Random(3)
    for _ in range(150):
        v = tuple(rng.randrange(5) for _ in range(6))
        assert type_of(g, v, "structural") == type_of(g, v, "count")


def test_only_one_iota_is_isolated(c5, c5_oracle):
    types, _ = c5_oracle
    for v, (tag, _, isolated, _) in types.items():
        assert isolated == (tag == "OneIota")


def test_sim_classes_match_oracle(c5, c5_oracle):
    types, _ = c5_oracle
    for v, (_, _, _, cls) in types.items():
        if any(v):
            assert set(sim_class_members(c5, v)) == set(cls)
            assert all(class_id(c5, w) == class_id(c5, v) for w in cls)


def test_handles_match_oracle(c5, c5_oracle):
    _, handles = c5_oracle
    for v, classes in handles.items():
        assert len(classes) == 1
        assert handle(c5, v) in classes[0]


def test_handle_examples(c5):
    assert handle(c5, (1, 0, 1, 0, 0)) == (0, 1, 0, 0, 0)
    assert handle(c5, (0, 1, 0, 1, 0)) == (0, 0, 1, 0, 0)
    with pytest.raises(ClassificationError):
        handle(c5, c5.generator(0))


def test_type_examples(c5):
    x = [c5.generator(i) for i in range(5)]
    assert type_of(c5, x[0]).tag is TypeTag.ONE_NU
    assert type_of(c5, multiply(c5, x[0], x[1])).tag is TypeTag.P_MINUS_ONE
    assert type_of(c5, multiply(c5, x[0], x[2])).tag is TypeTag.TYPE_P
    assert type_of(c5, multiply(c5, multiply(c5, x[0], x[1]), x[3])).tag is TypeTag.ONE_IOTA
    assert type_of(c5, c5.identity).tag is TypeTag.CENTRAL


@settings(max_examples=200, deadline=None)
@given(st.lists(st.integers(0, 2), min_size=5, max_size=5),
       st.lists(st.integers(0, 2), min_size=5, max_size=5), st.integers(1, 2))
def test_approx_refines_sim(gen, com, a):
    G = build_group(make_cycle(5), 3)
    g = G.element(gen, com)
    h = multiply(G, power(G, g, a), G.central(com[::-1]))
    assert approx_equiv(G, g, h) and approx_equiv(G, h, g)
    assert sim_equiv(G, g, h)


def test_approx_is_unit_powers_only(c5):
    assert not approx_equiv(c5, c5.generator(0), c5.identity)
    assert approx_equiv(c5, c5.identity, c5.central([1, 0, 0, 0, 0]))
    assert not approx_equiv(c5, c5.generator(0), c5.generator(1))


def test_in_A_matches_literal_definition(c5, c5_oracle):
    types, handles = c5_oracle
    for n in range(4):
        for m in range(3):
            expected = brute_A(c5, types, handles, n, m)
            got = {v for v in types if in_A(c5, v, n, m)}
            assert got == expected, (n, m)


def test_minimal_index_examples(c5):
    assert minimal_A_index(c5, (1, 0, 1, 0, 0)) == (2, 0)
    assert minimal_A_index(c5, (1, 0, 0, 0, 0)) == (1, 0)
    assert minimal_A_index(c5, (0, 0, 0, 0, 0)) == (0, 0)
    assert in_A(c5, (1, 0, 1, 0, 0), 0, 1)
    assert not in_A(c5, (1, 0, 1, 0, 0), 1, 0)


def test_support_examples(c5):
    rec = support(c5, (1, 0, 1, 0, 0), 2, 0)
    assert rec.s == {(1, 0, 0, 0, 0), (0, 0, 1, 0, 0)} and rec.s_handles == frozenset()
    assert rec.minimal
    rec = support(c5, (1, 0, 1, 0, 0), 0, 1)
    assert rec.s == frozenset() and rec.s_handles == {(0, 1, 0, 0, 0)}
    assert not rec.minimal
    assert support(c5, (1, 0, 1, 0, 0), 1, 0) is UNDETERMINED


def test_supports_are_witness_independent_at_minimal_index(c5):
    for v in enumerate_quotient(c5):
        n, m = minimal_A_index(c5, v)
        rec = support(c5, v, n, m)
        assert rec.minimal and rec.witness_independent
        assert len(rec.s) <= n and len(rec.s_handles) <= m


def test_support_depends_on_witness_off_the_minimal_index(c5):
    # e0 + e2 + e4 = (e0 + e2) + e4 = e0 + (e2 + e4): handles 1 and 3 both work
    v = (1, 0, 1, 0, 1)
    found = {(d.classes, d.handles) for d in decompositions(c5, v, 1, 1)}
    assert found == {(frozenset({4}), frozenset({1})), (frozenset({0}), frozenset({3}))}
    assert not support(c5, v, 1, 1).witness_independent


def test_gamma_graph_rejects_central(c5):
    with pytest.raises(ClassificationError):
        gamma_graph(c5, [c5.identity])


def test_one_nu_methods_agree(c5):
    assert sorted(one_nu_elements(c5, "structural")) == sorted(one_nu_elements(c5, "enumerate"))


@pytest.mark.parametrize("name", ["c5", "c6", "c8", "petersen"])
def test_recover_graph(name, request):
    G = request.getfixturevalue(name)
    rec = recover_graph(G)
    assert rec.isomorphic and graph_isomorphic(rec.graph, G.graph) is not None
    for a, b in rec.graph.edges:
        assert G.graph.adjacent(rec.to_input[a], rec.to_input[b])


def test_recover_graph_by_enumeration(c5):
    rec = recover_graph(c5, "enumerate")
    assert rec.to_input == {0: 4, 1: 3, 2: 2, 3: 1, 4: 0}


def test_partial_census_past_cap(petersen):
    census = type_census(petersen)
    assert not census.complete and census.total() is None
    assert census.central == 3**30 and census.one_nu == 10 * 2 * 3**30


def test_inp_pattern(c5, c6):
    rep = inp_pattern_check(c5, 2, range(5))
    assert rep.consistent and rep.inconsistent and rep.inconsistent_at == 3
    for subset, w in rep.witnesses.items():
        rec = support(c5, w, 2, 0)
        assert {fp.unit(5, i) for i in subset} <= rec.s
    rep = inp_pattern_check(c6, 3, range(6))
    assert rep.consistent and rep.inconsistent_at == 4
    with pytest.raises(ValueError):
        inp_pattern_check(c5, 2, [0, 1])
