import itertools

import pytest

from deltamm.delta import (
    DeltaMatroid,
    DeltaMatroidError,
    ElementRole,
    MinorSpec,
    SetSystem,
    apply_minor,
    bar_star,
    check_symmetric_exchange,
    direct_sum,
    element_role,
    find_3_minor,
    has_3_minor,
    has_minor,
    is_vf_safe,
    loop_complement,
    twist,
)
from deltamm.harness.enumeration import enumerate_delta_matroids

from . import oracles


def dm(elements, sets):
    return DeltaMatroid.from_sets(elements, sets)


def fam(d):
    return {frozenset(s) for s in d.sets()}


# -- exchange --------------------------------------------------------------


def test_example_passes_exchange(d_ex):
    assert check_symmetric_exchange(d_ex.n, d_ex.feasible) is None


def test_single_empty_set_passes():
    assert check_symmetric_exchange(1, {0}) is None


def test_first_counterexample():
    s = SetSystem.from_sets("abc", [[], ["a"], ["c"], ["b", "c"]])
    failure = check_symmetric_exchange(s.n, s.feasible)
    assert (s.labels(failure.f1), s.labels(failure.f2), s.elements[failure.x]) == (("a",), ("b", "c"), "b")
    # the oracle agrees that no y rescues this triple
    f1, f2 = frozenset("a"), frozenset("bc")
    family = {frozenset(x) for x in s.sets()}
    assert not any(f1 ^ {"b", y} in family for y in f1 ^ f2)
    with pytest.raises(DeltaMatroidError):
        s.as_delta_matroid()


def test_empty_family_rejected():
    with pytest.raises(DeltaMatroidError):
        DeltaMatroid(("a",), frozenset())


@pytest.mark.parametrize("n", [1, 2, 3])
def test_exchange_agrees_with_oracle(n):
    subsets = range(1 << n)
    for r in range(1, 1 << n + 1):
        for family in itertools.combinations(subsets, r):
            labelled = {frozenset(chr(97 + i) for i in range(n) if m >> i & 1) for m in family}
            expected = oracles.exchange_ok(labelled)
            assert (check_symmetric_exchange(n, family) is None) == expected


# -- roles and minors ------------------------------------------------------


def test_roles(d_ex):
    assert element_role(dm("e", [["e"]]), "e") is ElementRole.COLOOP
    assert element_role(dm("e", [[]]), "e") is ElementRole.LOOP
    assert element_role(d_ex, "a") is ElementRole.ORDINARY


def test_unknown_label(d_ex):
    with pytest.raises(DeltaMatroidError):
        d_ex.delete("z")


def test_delete_contract_example(d_ex):
    assert d_ex.delete("d") == dm("abc", [[], ["a"], ["b"], ["c"], ["a", "b"], ["a", "b", "c"]])
    assert d_ex.contract("d") == dm("abc", [[], ["c"], ["a", "b"], ["a", "c"], ["b", "c"]])


def test_coloop_and_loop_conventions():
    coloop = dm("e", [["e"]])
    assert coloop.delete("e") == dm("", [[]])
    assert coloop.delete("e") == coloop.contract("e")
    loop = dm("e", [[]])
    assert loop.contract("e") == loop.delete("e")


def test_apply_minor(d_ex):
    assert apply_minor(d_ex, MinorSpec(frozenset("d"))) == d_ex.delete("d")
    assert apply_minor(d_ex, MinorSpec()) == d_ex
    assert apply_minor(dm("e", [[]]), MinorSpec(twist_contractions=frozenset("e"))) == dm("", [[]])


def test_minor_spec_must_be_disjoint():
    with pytest.raises(DeltaMatroidError):
        MinorSpec(frozenset("a"), frozenset("a"))


@pytest.mark.parametrize("n", [2, 3])
def test_minor_order_independence(n):
    for d in enumerate_delta_matroids(n):
        for ops in itertools.product(("delete", "contract"), repeat=n - 1):
            steps = list(zip(d.elements[: n - 1], ops))
            results = set()
            for perm in itertools.permutations(steps):
                m = d
                for label, op in perm:
                    m = getattr(m, op)(label)
                results.add(m)
            assert len(results) == 1


def test_minors_agree_with_oracle():
    ground, fams = oracles.all_delta_matroids(3)
    for family in fams:
        d = dm(ground, family)
        for e in ground:
            for ours, op in ((d.delete(e), oracles.delete), (d.contract(e), oracles.contract)):
                rest, expected = op(tuple(ground), family, e)
                assert ours.elements == rest and fam(ours) == set(expected)


# -- sums and separators ---------------------------------------------------


def test_direct_sum_examples(d_ex):
    assert direct_sum(dm("a", [["a"]]), dm("b", [[]])) == dm("ab", [["a"]])
    s = direct_sum(dm("a", [[], ["a"]]), dm("b", [[], ["b"]]))
    assert fam(s) == {frozenset(), frozenset("a"), frozenset("b"), frozenset("ab")}
    assert direct_sum(d_ex, dm("", [[]])) == d_ex
    with pytest.raises(DeltaMatroidError):
        direct_sum(d_ex, dm("a", [[]]))


def test_separators(d_ex):
    assert d_ex.separators() == [(), ("a", "b", "c", "d")]
    assert d_ex.is_connected()
    d = dm("ab", [["a"]])
    assert len(d.separators()) == 4 and not d.is_connected()
    assert dm("e", [[], ["e"]]).is_connected()


def test_direct_sum_summands_are_separators(d_ex):
    s = direct_sum(d_ex, dm("xy", [["x"], ["y"]]))
    assert set(s.separators()) >= {("a", "b", "c", "d"), ("x", "y")}


def test_connectivity_agrees_with_oracle():
    for n in (1, 2, 3):
        ground, fams = oracles.all_delta_matroids(n)
        for family in fams:
            assert dm(ground, family).is_connected() == oracles.is_connected(ground, family)


# -- twists and loop complementation ---------------------------------------


def test_bar_star_example(d_ex):
    expected = [["a"], ["a", "b"], ["a", "c", "d"], ["b", "c"], ["b", "d"], ["c"], ["d"],
                ["b", "c", "d"], ["a", "b", "c"], ["a", "b", "d"]]
    assert fam(bar_star(d_ex, ["a"])) == {frozenset(s) for s in expected}
    assert fam(bar_star(d_ex, ["a"])) == set(oracles.bar_star(fam(d_ex), {"a"}))
    # hence {a'', b, c, d} is not a basis: the empty set is not feasible
    assert frozenset() not in fam(bar_star(d_ex, ["a"]))


def test_single_element_twists():
    assert twist(dm("e", [[]]), ["e"]) == dm("e", [["e"]])
    assert fam(loop_complement(dm("e", [[]]), ["e"])) == {frozenset(), frozenset("e")}


def test_loop_complement_can_leave_the_class(d_ex):
    out = loop_complement(d_ex, ["a", "c"])
    assert isinstance(out, SetSystem)
    assert out.is_delta_matroid == oracles.exchange_ok(fam(out))


def test_bar_star_strict_flags_invalid_intermediates():
    for d in enumerate_delta_matroids(3, vf_safe=False):
        for r in range(1, 4):
            for a in itertools.combinations(d.elements, r):
                if not loop_complement(d, a).is_delta_matroid:
                    with pytest.raises(DeltaMatroidError):
                        bar_star(d, a, strict=True)
                    return
    pytest.fail("no non-vf-safe witness found")


@pytest.mark.parametrize("n", [1, 2, 3])
def test_involutions(n):
    for d in enumerate_delta_matroids(n):
        for r in range(n + 1):
            for a in itertools.combinations(d.elements, r):
                assert twist(twist(d, a), a) == d
                assert loop_complement(loop_complement(d, a), a) == d


@pytest.mark.parametrize("n", [1, 2, 3])
def test_loop_complement_commutes(n):
    for d in enumerate_delta_matroids(n):
        for e, f in itertools.permutations(d.elements, 2):
            assert loop_complement(loop_complement(d, [e]), [f]) == loop_complement(loop_complement(d, [f]), [e])


@pytest.mark.parametrize("n", [1, 2, 3])
def test_twist_and_loop_complement_generate_s3(n):
    # +e and *e are involutions whose product has order three, so the
    # composite +e *e +e is itself an involution and equals *e +e *e
    for d in enumerate_delta_matroids(n, vf_safe=True):
        for e in d.elements:
            def rot(x):
                return twist(loop_complement(x, [e]), [e])
            assert rot(rot(rot(d))) == d
            assert bar_star(bar_star(d, [e]), [e]) == d
            assert bar_star(d, [e]) == twist(loop_complement(twist(d, [e]), [e]), [e])


def test_bar_star_applied_three_times_is_not_identity():
    # a coloop: bar_star is an involution, so three applications equal one
    d = dm("a", [["a"]])
    once = bar_star(d, ["a"])
    assert fam(once) == {frozenset(), frozenset("a")}
    assert bar_star(bar_star(once, ["a"]), ["a"]) == once != d


@pytest.mark.parametrize("n", [2, 3])
def test_separators_survive_twisting(n):
    for d in enumerate_delta_matroids(n, vf_safe=True):
        for x in d.separators():
            for r in range(n + 1):
                for a in itertools.combinations(d.elements, r):
                    for op in (twist, loop_complement, bar_star):
                        assert op(d, a).is_separator_mask(d.mask(x))


# -- vf-safety, evenness, matroids -----------------------------------------


def test_vf_safe_examples(d_ex):
    assert is_vf_safe(d_ex)
    assert is_vf_safe(dm("e", [[]]))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_vf_safe_agrees_with_oracle(n):
    ground, fams = oracles.all_delta_matroids(n)
    for family in fams:
        assert is_vf_safe(dm(ground, family)) == oracles.vf_safe(ground, family)


def test_vf_safe_size_guard():
    d = DeltaMatroid(tuple("abcdefghi"), frozenset({0}))
    with pytest.raises(DeltaMatroidError):
        is_vf_safe(d)


def test_even_and_matroid(d_ex):
    assert not d_ex.is_even()
    u12 = dm("ef", [["e"], ["f"]])
    assert u12.is_matroid() and u12.is_even()


@pytest.mark.parametrize("n", [2, 3])
def test_evenness_is_preserved(n):
    for d in enumerate_delta_matroids(n, even=True):
        for e in d.elements:
            assert d.delete(e).is_even() and d.contract(e).is_even()
        for r in range(n + 1):
            for a in itertools.combinations(d.elements, r):
                assert twist(d, a).is_even()


# -- minor search ----------------------------------------------------------


def test_minor_search_examples(d_ex, g_star):
    spec = find_3_minor(d_ex, d_ex)
    assert spec == MinorSpec()
    assert has_3_minor(dm("ab", [["a"]]), dm("a", [["a"]]))
    assert has_minor(dm("ab", [["a"]]), dm("a", [["a"]]))
    h = g_star.contract_edge("b").delete_edge("e")
    assert has_3_minor(g_star.delta_matroid(), h.delta_matroid())


def test_minor_search_ground_mismatch(d_ex):
    with pytest.raises(DeltaMatroidError):
        has_minor(d_ex, dm("z", [[]]))
