import itertools

import pytest

from deltamm.delta import DeltaMatroid, is_vf_safe
from deltamm.harness.enumeration import enumerate_ribbon_graphs
from deltamm.ribbon import RibbonGraph, RibbonGraphError

from . import oracles


def rg(words, twisted=()):
    return RibbonGraph.from_words(words, twisted)


def fam(d):
    return {frozenset(s) for s in d.sets()}


def small_graphs(max_v=2, max_e=3):
    return list(enumerate_ribbon_graphs(max_v, max_e))


# -- boundary tracing ------------------------------------------------------


def test_boundary_examples():
    assert RibbonGraph(((),), {}).boundary_components([]) == 1
    assert rg([["e", "e"]]).boundary_components(["e"]) == 2
    assert rg([["e", "e"]], ["e"]).boundary_components(["e"]) == 1


def test_boundaries_agree_with_oracle():
    for g in enumerate_ribbon_graphs(3, 3):
        doc = g.to_json()
        for keep in oracles.powerset(g.edge_labels):
            assert g.boundary_components(keep) == oracles.ribbon_boundaries(doc, keep)


def test_component_inequalities():
    for g in small_graphs():
        c = g.components()
        for keep in oracles.powerset(g.edge_labels):
            assert g.boundary_components(keep) >= g.components(keep) >= c


# -- the delta-matroid ------------------------------------------------------


def test_delta_matroid_examples(g_star):
    theta = rg([["a", "b", "e"], ["a", "e", "b"]])
    assert fam(theta.delta_matroid()) == {frozenset("a"), frozenset("b"), frozenset("e")}
    assert fam(rg([["e", "e"]]).delta_matroid()) == {frozenset()}
    star = fam(g_star.delta_matroid())
    assert star >= {frozenset("a"), frozenset("b"), frozenset("e"), frozenset("ae"), frozenset("be")}
    assert frozenset("ab") not in star
    assert star == set(oracles.ribbon_delta(g_star.to_json())[1])


def test_delta_matroid_agrees_with_oracle():
    for g in enumerate_ribbon_graphs(3, 3):
        ground, expected = oracles.ribbon_delta(g.to_json())
        assert fam(g.delta_matroid()) == set(expected)


def test_ribbon_graphic_delta_matroids_are_vf_safe():
    for g in small_graphs(2, 3):
        assert is_vf_safe(g.delta_matroid())


# -- operations ------------------------------------------------------------


def test_partial_dual_of_orientable_loop():
    g = rg([["e", "e"]]).partial_dual(["e"])
    assert len(g.vertices) == 2 and not g.is_loop("e")
    assert g.delta_matroid() == DeltaMatroid.from_sets("e", [["e"]])


def test_contracting_b_in_the_twisted_theta(g_star):
    g = g_star.contract_edge("b")
    assert len(g.vertices) == 1
    assert g.is_loop("a") and g.is_loop("e")
    assert g.delete_edge("e").is_orientable()
    assert not g.delete_edge("a").is_orientable()
    assert not g.is_2_connected()


def test_half_twist_is_an_involution():
    for g in small_graphs():
        for r in range(len(g.edge_labels) + 1):
            for a in itertools.combinations(g.edge_labels, r):
                assert g.half_twist(a).half_twist(a) == g


def test_partial_duals_commute():
    for g in small_graphs(2, 2):
        for e, f in itertools.permutations(g.edge_labels, 2):
            assert g.partial_dual([e]).partial_dual([f]).is_equivalent(g.partial_dual([f]).partial_dual([e]))
        for e in g.edge_labels:
            assert g.partial_dual([e]).partial_dual([e]).is_equivalent(g)


def test_operation_compatibility():
    for g in small_graphs(2, 2):
        d = g.delta_matroid()
        for e in g.edge_labels:
            assert g.delete_edge(e).delta_matroid() == d.delete(e)
            assert g.contract_edge(e).delta_matroid() == d.contract(e)
            assert g.twist_contract(e).delta_matroid() == d.twist_contract(e)
            assert g.bar_star([e]).delta_matroid() == d.bar_star([e])


def test_unknown_edge():
    with pytest.raises(RibbonGraphError):
        rg([["e", "e"]]).delete_edge("z")


def test_delete_vertex():
    g = rg([["a", "b"], ["a", "c", "c"], ["b"]])
    h = g.delete_vertex(1)
    assert len(h.vertices) == 2 and h.edge_labels == ("b",)


# -- orientability and 2-connectivity ---------------------------------------


def test_orientability_examples(g_star):
    assert rg([["a", "b", "e"], ["a", "e", "b"]]).is_orientable()
    assert not rg([["e", "e"]], ["e"]).is_orientable()
    assert not g_star.is_orientable() and not g_star.delta_matroid().is_even()


def test_orientable_iff_even():
    for g in enumerate_ribbon_graphs(3, 3):
        assert g.is_orientable() == g.delta_matroid().is_even()


def test_two_connectivity_examples(g_star):
    assert g_star.is_2_connected()
    assert not g_star.contract_edge("b").is_2_connected()
    assert g_star.delete_edge("b").is_2_connected()


def test_two_connected_means_connected():
    for g in small_graphs():
        if g.is_2_connected():
            assert g.is_connected()


def test_ribbon_chain_corollaries():
    for g in small_graphs(2, 3):
        if not g.is_2_connected():
            continue
        for e in g.edge_labels:
            ok = [m.is_2_connected() for m in (g.delete_edge(e), g.contract_edge(e), g.twist_contract(e))]
            assert sum(ok) >= 2 and (ok[0] or ok[1])


# -- construction and serialisation -----------------------------------------


def test_validation():
    with pytest.raises(RibbonGraphError):
        RibbonGraph((("h1", "h1"),), {"a": (("h1", "h1"), False)})
    with pytest.raises(RibbonGraphError):
        RibbonGraph((("h1", "h2", "h3"),), {"a": (("h1", "h2"), False)})
    with pytest.raises(RibbonGraphError):
        rg([["a", "a", "a"]])
    many = [[x for x in "abcdefghi" for _ in range(2)]]
    with pytest.raises(RibbonGraphError):
        rg(many)


def test_json_roundtrip(g_star):
    doc = g_star.to_json()
    assert RibbonGraph.from_json(doc) == g_star
    with pytest.raises(RibbonGraphError):
        RibbonGraph.from_json({"vertices": []})
