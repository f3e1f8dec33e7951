"""Randomised properties on five-element ground sets, beyond exhaustive reach."""

import itertools

from hypothesis import given, settings
from hypothesis import strategies as st

from deltamm.bridge import q2_of
from deltamm.delta import SetSystem, check_symmetric_exchange

from . import oracles

GROUND = "abcde"
SUBSETS = oracles.powerset(GROUND)

families = st.sets(st.sampled_from(SUBSETS), min_size=1, max_size=12)


def system(fam):
    return SetSystem.from_sets(GROUND, [sorted(f) for f in fam])


def fam_of(s):
    return {frozenset(x) for x in s.sets()}


@settings(max_examples=200, deadline=None)
@given(families)
def test_exchange_agrees_with_oracle(fam):
    s = system(fam)
    assert (check_symmetric_exchange(s.n, s.feasible) is None) == oracles.exchange_ok(frozenset(fam))


@settings(max_examples=100, deadline=None)
@given(families, st.sets(st.sampled_from(GROUND)))
def test_twist_and_bar_star_are_involutions(fam, a):
    s = system(fam)
    assert s.twist(a).twist(a) == s
    assert fam_of(s.twist(a)) == set(oracles.twist(frozenset(fam), a))
    assert fam_of(s.loop_complement(a)) == set(oracles.loop_complement(frozenset(fam), a))
    assert s.bar_star(a).bar_star(a) == s


@settings(max_examples=100, deadline=None)
@given(families, st.sets(st.sampled_from(GROUND)))
def test_twist_preserves_exchange(fam, a):
    s = system(fam)
    assert s.is_delta_matroid == s.twist(a).is_delta_matroid


delta_matroids = families.map(frozenset).filter(oracles.exchange_ok)


@settings(max_examples=60, deadline=None)
@given(delta_matroids, st.permutations(GROUND), st.lists(st.booleans(), min_size=3, max_size=3))
def test_minor_order_independence(fam, order, ops):
    d = system(fam).as_delta_matroid()
    picks = list(zip(order[:3], ops))
    results = set()
    for perm in itertools.permutations(picks):
        m = d
        for e, deleting in perm:
            m = m.delete(e) if deleting else m.contract(e)
        results.add(m)
    assert len(results) == 1


@settings(max_examples=60, deadline=None)
@given(delta_matroids, st.sampled_from(GROUND))
def test_minors_agree_with_oracle(fam, e):
    d = system(fam).as_delta_matroid()
    ground = tuple(GROUND)
    for ours, theirs in ((d.delete(e), oracles.delete(ground, fam, e)),
                         (d.contract(e), oracles.contract(ground, fam, e))):
        assert ours.elements == theirs[0] and fam_of(ours) == set(theirs[1])


@settings(max_examples=40, deadline=None)
@given(delta_matroids)
def test_connectivity_and_q2(fam):
    d = system(fam).as_delta_matroid()
    assert d.is_connected() == oracles.is_connected(GROUND, fam)
    q = q2_of(d)
    assert q.is_tight() == d.is_even()
    assert q.is_connected() == d.is_connected()
