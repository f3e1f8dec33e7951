"""Exhaustive checks of the chain and splitter theorems and their corollaries."""

from __future__ import annotations

import itertools
from typing import Iterable

from ..bridge import delta_of_q3, q2_of, q3_of, section
from ..delta import DeltaMatroid, is_vf_safe, SetSystem, apply_steps, check_symmetric_exchange, has_3_minor, has_minor
from ..mm import Multimatroid, verify_axioms
from ..report import CheckReport, timed
from .enumeration import enumerate_delta_matroids, enumerate_matroids, enumerate_ribbon_graphs


def _dm(d: SetSystem) -> dict:
    return {"elements": list(d.elements), "feasible": [list(s) for s in d.sets()]}


def _mm(q: Multimatroid) -> dict:
    return {"classes": [list(c) for c in q.classes], "bases": [list(b) for b in q.basis_sets()]}


# -- single-instance checks ----------------------------------------------


def check_chain(q: Multimatroid) -> CheckReport:
    """At least ``k - 1`` of the minors by the elements of each skew class are connected."""
    report = CheckReport("chain")
    with timed(report):
        _chain(q, report)
    return report


def _chain(q: Multimatroid, report: CheckReport) -> None:
    if not q.is_connected() or not q.is_tight():
        report.note("skipped: Q is not connected and tight")
        return
    report.tick()
    for cls in q.classes:
        connected = [x for x in cls if q.minor([x]).is_connected()]
        if len(connected) < len(cls) - 1:
            report.fail({"Q": _mm(q), "class": list(cls), "connected": connected})


def check_splitter(q: Multimatroid, a: Iterable[str], e: str) -> CheckReport:
    """``Q|e`` is connected, or every ``Q|x`` with ``x`` skew to ``e`` is connected and has ``Q|A`` as a minor."""
    report = CheckReport("splitter")
    with timed(report):
        _splitter(q, tuple(a), e, report)
    return report


def _splitter(q: Multimatroid, a: tuple[str, ...], e: str, report: CheckReport, qa: Multimatroid | None = None) -> None:
    if not a or e not in a:
        report.note("skipped: e is not in a non-empty A")
        return
    if not q.partition.is_subtransversal(q.mask(a)):
        report.note("skipped: A is not a subtransversal")
        return
    qa = q.minor(a) if qa is None else qa
    if not qa.is_connected():
        report.note("skipped: Q|A is not connected")
        return
    report.tick()
    if q.minor([e]).is_connected():
        return
    k = q.partition.class_index(e)
    bad = []
    for x in q.classes[k]:
        if x == e:
            continue
        qx = q.minor([x])
        if not qx.is_connected():
            bad.append({"x": x, "reason": "Q|x disconnected"})
        elif not qx.has_minor(qa):
            bad.append({"x": x, "reason": "Q|A is not a minor of Q|x"})
    if bad:
        report.fail({"Q": _mm(q), "A": list(a), "e": e, "failures": bad})


def splitter_all(q: Multimatroid, report: CheckReport) -> None:
    """Run the splitter check for every admissible ``(A, e)`` of one multimatroid.

    Each ``A`` is also pushed through the scum lifting, whose postcondition
    is counted as a violation when it fails.
    """
    if not q.is_connected() or not q.is_tight():
        report.note("skipped a multimatroid that is not connected and tight")
        return
    for am in q.partition.subtransversals():
        if not am:
            continue
        qa = q.minor(am)
        if not qa.is_connected():
            continue
        a = q.names(am)
        for e in a:
            _splitter(q, a, e, report, qa)
            if q.rank([e]) == 1:
                lifted = q.scum_lift(a, e)
                if not (e in lifted and q.is_independent(lifted) and q.minor(lifted) == qa):
                    report.fail({"Q": _mm(q), "A": list(a), "e": e, "scum_lift": list(lifted)})


# -- suites over enumerated instances ------------------------------------


def chain_even(max_n: int = 4) -> CheckReport:
    """Chain theorem through 2-matroids, cross-checked at the delta-matroid level."""
    report = CheckReport("chain-even")
    with timed(report):
        for n in range(1, max_n + 1):
            for d in enumerate_delta_matroids(n, even=True, connected=True):
                q = q2_of(d)
                sub = CheckReport("chain")
                _chain(q, sub)
                report.tick()
                direct = all(d.delete(e).is_connected() or d.contract(e).is_connected() for e in d.elements)
                if sub.violations or not direct or sub.instances != 1:
                    report.fail({"D": _dm(d), "q2_chain_ok": sub.ok and sub.instances == 1, "delta_chain_ok": direct})
    return report


def chain_q3(max_n: int = 3) -> CheckReport:
    """Chain theorem through tight 3-matroids: two of three minors connected."""
    report = CheckReport("chain-q3")
    with timed(report):
        for n in range(1, max_n + 1):
            for d in enumerate_delta_matroids(n, vf_safe=True, connected=True):
                q = q3_of(d)
                sub = CheckReport("chain")
                _chain(q, sub)
                report.tick()
                direct = all(
                    sum(m.is_connected() for m in (d.delete(e), d.contract(e), d.twist_contract(e))) >= 2
                    for e in d.elements
                )
                if sub.violations or not direct or sub.instances != 1:
                    report.fail({"D": _dm(d), "q3_chain_ok": sub.ok and sub.instances == 1, "delta_chain_ok": direct})
    return report


def _delta_splitter(d: DeltaMatroid, ops: tuple[str, ...], report: CheckReport) -> None:
    """Delta-matroid splitter corollary over every connected minor reachable with ``ops``."""
    contains = has_3_minor if "twist_contract" in ops else has_minor
    minors = {}
    for removed_mask in range(1 << d.n):
        removed = [e for i, e in enumerate(d.elements) if removed_mask >> i & 1]
        for choice in itertools.product(ops, repeat=len(removed)):
            m = apply_steps(d, zip(removed, choice))
            if m.is_connected():
                minors.setdefault(m.key(), m)
    for m in minors.values():
        for e in d.elements:
            if e in m.elements:
                continue
            report.tick()
            options = [d.delete(e), d.contract(e)]
            if "twist_contract" in ops:
                options.append(d.twist_contract(e))
            if not any(o.is_connected() and contains(o, m) for o in options):
                report.fail({"D": _dm(d), "minor": _dm(m), "e": e})


def splitter(max_n2: int = 4, max_n3: int = 3, *, delta_level: bool = True) -> CheckReport:
    """Splitter theorem over 2-matroids of connected even delta-matroids and
    3-matroids of connected vf-safe ones, plus the delta-matroid corollaries."""
    report = CheckReport("splitter")
    with timed(report):
        for n in range(1, max_n2 + 1):
            for d in enumerate_delta_matroids(n, even=True, connected=True):
                splitter_all(q2_of(d), report)
                if delta_level:
                    _delta_splitter(d, ("delete", "contract"), report)
        for n in range(1, max_n3 + 1):
            for d in enumerate_delta_matroids(n, vf_safe=True, connected=True):
                splitter_all(q3_of(d), report)
                if delta_level:
                    _delta_splitter(d, ("delete", "contract", "twist_contract"), report)
    return report


def ribbon_compat(max_v: int = 3, max_e: int = 3) -> CheckReport:
    """Ribbon graph operations against the delta-matroid operations."""
    report = CheckReport("ribbon-compat")
    with timed(report):
        for g in enumerate_ribbon_graphs(max_v, max_e):
            d = g.delta_matroid()
            labels = g.edge_labels
            problems = []
            if d.is_even() != g.is_orientable():
                problems.append("even vs orientable")
            for e in labels:
                if g.delete_edge(e).delta_matroid() != d.delete(e):
                    problems.append(f"delete {e}")
                if g.contract_edge(e).delta_matroid() != d.contract(e):
                    problems.append(f"contract {e}")
                if g.twist_contract(e).delta_matroid() != d.twist_contract(e):
                    problems.append(f"twist-contract {e}")
                if not g.partial_dual([e]).partial_dual([e]).is_equivalent(g):
                    problems.append(f"partial dual involution {e}")
            for r in range(1, len(labels) + 1):
                for a in itertools.combinations(labels, r):
                    if g.partial_dual(a).delta_matroid() != d.twist(a):
                        problems.append(f"partial dual {a}")
                    if g.half_twist(a).delta_matroid() != d.loop_complement(a):
                        problems.append(f"half twist {a}")
                    step = g
                    for e in a:
                        step = step.partial_dual([e])
                    if not step.is_equivalent(g.partial_dual(a)):
                        problems.append(f"partial dual order {a}")
                    if not g.partial_dual(a[::-1]).is_equivalent(g.partial_dual(a)):
                        problems.append(f"partial dual commutation {a}")
            report.tick()
            if problems:
                report.fail({"G": g.to_json(), "problems": problems})
    return report


def ribbon_chain(max_v: int = 3, max_e: int = 3) -> CheckReport:
    """Two of ``G\\e``, ``G/e``, ``G+e/e`` are 2-connected when ``G`` is."""
    report = CheckReport("ribbon-chain")
    with timed(report):
        for g in enumerate_ribbon_graphs(max_v, max_e):
            if not g.is_2_connected():
                continue
            for e in g.edge_labels:
                report.tick()
                ok = [m.is_2_connected() for m in (g.delete_edge(e), g.contract_edge(e), g.twist_contract(e))]
                if sum(ok) < 2 or not (ok[0] or ok[1]):
                    report.fail({"G": g.to_json(), "e": e, "two_connected": ok})
    return report


def dictionary(max_n2: int = 4, max_n3: int = 3) -> CheckReport:
    """Minor identities, round trips, tightness/evenness and connectivity transfer."""
    report = CheckReport("dictionary")
    with timed(report):
        for n in range(0, max_n2 + 1):
            for d in enumerate_delta_matroids(n):
                q = q2_of(d)
                report.tick()
                problems = []
                for e in d.elements:
                    if q2_of(d.contract(e)) != q.minor([e]):
                        problems.append(f"Q2(D/{e})")
                    if q2_of(d.delete(e)) != q.minor([e + "'"]):
                        problems.append(f"Q2(D\\{e})")
                if section(q, d.elements) != d:
                    problems.append("section by E")
                if n and section(q, [e + "'" for e in d.elements]).key() != _primed(d.twist(d.elements)).key():
                    problems.append("section by E'")
                if q.is_tight() != d.is_even():
                    problems.append("tight vs even")
                if q.is_connected() != d.is_connected():
                    problems.append("connected transfer q2")
                sections = [section(q, q.names(t)) for t in q.partition.transversals()]
                if len({s.is_even() for s in sections}) > 1:
                    problems.append("sections disagree on evenness")
                if q.is_tight() and not all(s.is_even() for s in sections):
                    problems.append("section of tight 2-matroid not even")
                if q.is_connected() and not all(s.is_connected() for s in sections):
                    problems.append("section of connected 2-matroid not connected")
                if problems:
                    report.fail({"D": _dm(d), "problems": problems})
        for n in range(0, max_n3 + 1):
            for d in enumerate_delta_matroids(n, vf_safe=True):
                q = q3_of(d)
                report.tick()
                problems = []
                for e in d.elements:
                    if q3_of(d.delete(e)) != q.minor([e]):
                        problems.append(f"Q3(D\\{e})")
                    if q3_of(d.contract(e)) != q.minor([e + "'"]):
                        problems.append(f"Q3(D/{e})")
                    if q3_of(d.twist_contract(e).as_delta_matroid()) != q.minor([e + "''"]):
                        problems.append(f"Q3(D+{e}/{e})")
                if delta_of_q3(q) != d:
                    problems.append("delta_of_q3 round trip")
                if not q.is_tight():
                    problems.append("q3 not tight")
                if q.is_connected() != d.is_connected():
                    problems.append("connected transfer q3")
                if problems:
                    report.fail({"D": _dm(d), "problems": problems})
    return report


def _primed(d: SetSystem) -> SetSystem:
    return SetSystem(tuple(e + "'" for e in d.elements), d.feasible)


def axioms(max_n2: int = 4, max_n3: int = 3) -> CheckReport:
    """Axioms for every 2- and 3-matroid built here and for all their minors,
    plus closure of tightness under minors.

    Every enumerated delta-matroid and each of its one-element minors also
    goes through the exchange check; twist-contractions are checked only
    for vf-safe inputs on at most three elements.
    """
    report = CheckReport("axioms")
    with timed(report):
        seen, exchanged = set(), set()
        for n in range(0, max_n2 + 1):
            for d in enumerate_delta_matroids(n):
                _exchange(d, report, exchanged)
                _axioms_with_minors(q2_of(d), report, seen)
        for n in range(0, max_n3 + 1):
            for d in enumerate_delta_matroids(n, vf_safe=True):
                _axioms_with_minors(q3_of(d), report, seen)
    return report


def _exchange(d: SetSystem, report: CheckReport, seen: set) -> None:
    family = [d]
    for e in d.elements:
        family += [d.delete(e), d.contract(e)]
        if d.n <= 3 and is_vf_safe(d):
            family.append(d.twist_contract(e))
    for m in family:
        if (m.n, m.feasible) in seen:
            continue
        seen.add((m.n, m.feasible))
        report.tick()
        failure = check_symmetric_exchange(m.n, m.feasible)
        if failure is not None:
            report.fail({"D": _dm(m), "problem": "symmetric exchange"})


def _axioms_with_minors(q: Multimatroid, report: CheckReport, seen: set) -> None:
    tight = q.is_tight()
    for am in q.partition.subtransversals():
        m = q.minor(am)
        key = (m.key(), tight)
        if key in seen:
            continue
        seen.add(key)
        report.tick()
        sub = verify_axioms(m.partition, m.rank_table())
        if not sub.ok:
            report.fail({"Q": _mm(m), "axioms": sub.witnesses[:5]})
        if tight and not m.is_tight():
            report.fail({"Q": _mm(q), "A": list(q.names(am)), "problem": "minor of tight is not tight"})


def matroid_specializations(max_n: int = 4) -> CheckReport:
    """Chain and splitter theorems for connected matroids via delta-matroid minors."""
    report = CheckReport("matroid")
    with timed(report):
        for n in range(1, max_n + 1):
            for m in enumerate_matroids(n, connected=True):
                for e in m.elements:
                    report.tick()
                    if not (m.delete(e).is_connected() or m.contract(e).is_connected()):
                        report.fail({"M": _dm(m), "e": e, "theorem": "chain"})
                _delta_splitter(m, ("delete", "contract"), report)
    return report


def search_nontight_chain_violation(max_n: int = 4) -> CheckReport:
    """Look for connected non-even ``D`` and ``e`` with ``D\\e`` and ``D/e`` both disconnected.

    Findings go into ``results``: the first witness for each
    ``n`` in enumeration order, or ``None``.
    """
    report = CheckReport("nontight-search")
    results = {}
    with timed(report):
        for n in range(1, max_n + 1):
            found = None
            for d in enumerate_delta_matroids(n, even=False, connected=True):
                report.tick()
                for e in d.elements:
                    if not d.delete(e).is_connected() and not d.contract(e).is_connected():
                        found = {"D": _dm(d), "e": e}
                        break
                if found:
                    break
            results[str(n)] = found
    report.results = results
    return report
