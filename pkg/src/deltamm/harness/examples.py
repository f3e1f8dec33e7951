"""Built-in reproductions: the 3-matroid example and the twisted theta graph."""

from __future__ import annotations

from ..bridge import q3_of
from ..delta import DeltaMatroid, SetSystem, check_symmetric_exchange, has_minor
from ..mm import Multimatroid
from ..report import CheckReport, timed
from ..ribbon import RibbonGraph

EXAMPLE_ELEMENTS = ("a", "b", "c", "d")
EXAMPLE_FEASIBLE = (
    (),
    ("a",),
    ("b",),
    ("c",),
    ("d",),
    ("a", "b"),
    ("c", "d"),
    ("a", "b", "c"),
    ("a", "b", "d"),
    ("a", "c", "d"),
    ("b", "c", "d"),
)

# the five pairs needing an explicit exchange check
HARD_PAIRS = (
    (("a",), ("c", "d")),
    (("a",), ("b", "c", "d")),
    (("a", "b", "c"), ("d",)),
    (("a", "b", "c"), ()),
    (("a", "b", "c"), ("c", "d")),
)

# bases of the 3-matroid, one column per element of the class of a
TABLE_COLUMNS = (
    (
        "a b c d", "a b c d'", "a b c' d", "a b c' d'",
        "a b' c d", "a b' c d''", "a b' c' d'", "a b' c' d''",
        "a b' c'' d", "a b' c'' d'", "a b'' c d'", "a b'' c d''",
        "a b'' c' d", "a b'' c' d''", "a b'' c'' d", "a b'' c'' d'",
    ),
    (
        "a' b c d", "a' b c d''", "a' b c' d'", "a' b c' d''",
        "a' b c'' d", "a' b c'' d'", "a' b' c d", "a' b' c d'",
        "a' b' c' d", "a' b' c' d''", "a' b' c'' d'", "a' b' c'' d''",
        "a' b'' c d'", "a' b'' c d''", "a' b'' c' d", "a' b'' c' d'",
        "a' b'' c'' d", "a' b'' c'' d''",
    ),
    (
        "a'' b c d'", "a'' b c d''", "a'' b c' d", "a'' b c' d''",
        "a'' b c'' d", "a'' b c'' d'", "a'' b' c d'", "a'' b' c d''",
        "a'' b' c' d", "a'' b' c' d'", "a'' b' c'' d", "a'' b' c'' d''",
        "a'' b'' c' d'", "a'' b'' c' d''", "a'' b'' c'' d'", "a'' b'' c'' d''",
    ),
)

TABLE_BASES = tuple(tuple(row.split()) for col in TABLE_COLUMNS for row in col)
TRIPLE_CLASSES = tuple((x, x + "'", x + "''") for x in EXAMPLE_ELEMENTS)


def example_delta_matroid() -> DeltaMatroid:
    return DeltaMatroid.from_sets(EXAMPLE_ELEMENTS, EXAMPLE_FEASIBLE)


def table_multimatroid(bases=TABLE_BASES) -> Multimatroid:
    return Multimatroid.from_labels(TRIPLE_CLASSES, bases)


def run_paper_example(
    feasible=EXAMPLE_FEASIBLE,
    table=TABLE_BASES,
) -> CheckReport:
    """Reproduce the 3-matroid example; stops at the first failed assertion.

    ``feasible`` and ``table`` exist so that mutated inputs can be fed in
    as negative controls.
    """
    report = CheckReport("paper-q")
    with timed(report):
        _run_paper_example(report, feasible, table)
    return report


def _run_paper_example(report: CheckReport, feasible, table) -> None:
    def claim(name, ok, **detail):
        report.tick()
        if not ok:
            report.fail({"assertion": name, **detail})
        return ok

    system = SetSystem.from_sets(EXAMPLE_ELEMENTS, feasible)
    failure = check_symmetric_exchange(system.n, system.feasible)
    if not claim(
        "symmetric exchange",
        failure is None,
        counterexample=None if failure is None else [system.labels(failure.f1), system.labels(failure.f2), system.elements[failure.x]],
    ):
        return
    d = system.as_delta_matroid()
    # the hard pairs individually: some y rescues every x
    for f1, f2 in HARD_PAIRS:
        m1, m2 = d.mask(f1), d.mask(f2)
        diff = m1 ^ m2
        ok = all(
            any((m1 ^ (1 << x) ^ ((1 << y) if y != x else 0)) in d.feasible for y in range(d.n) if diff >> y & 1)
            for x in range(d.n)
            if diff >> x & 1
        )
        if not claim("hard pair exchange", ok, pair=[list(f1), list(f2)]):
            return

    try:
        q = q3_of(d)
    except ValueError as exc:
        claim("q3 construction", False, error=str(exc))
        return
    got = {frozenset(b) for b in q.basis_sets()}
    expected = {frozenset(b) for b in table}
    report.results = {"bases": len(got), "table_bases": len(expected), "matched": len(got & expected)}
    if not claim(
        "q3 equals table",
        got == expected,
        missing=sorted(sorted(b) for b in expected - got),
        extra=sorted(sorted(b) for b in got - expected),
    ):
        return
    claim("50 bases", len(q.bases) == 50, bases=len(q.bases))
    counts = [len(q.minor([x]).bases) for x in ("a", "a'", "a''")]
    claim("minor basis counts 16/18/16", counts == [16, 18, 16], counts=counts)

    circuits = q.circuits()
    for c in (("a", "b", "c''"), ("a", "b", "d''")):
        claim("circuit", c in circuits, circuit=list(c))
    graph = q.fundamental_graph(("a", "b", "c", "d"))
    claim("fundamental graph of abcd connected", graph.is_connected(), edges=sorted(sorted(e) for e in graph.edges))
    claim("Q connected", q.is_connected())
    claim("Q tight", q.is_tight())

    qa, qa1, qa2 = (q.minor([x]) for x in ("a", "a'", "a''"))
    claim("Q|a' connected", qa1.is_connected())
    claim("Q|a' has circuit b c d'", ("b", "c", "d'") in qa1.circuits())
    claim("Q|a does not contain Q|a'", not qa.has_minor(qa1))
    claim("Q|a'' does not contain Q|a'", not qa2.has_minor(qa1))
    claim("Q|a not isomorphic to Q|a'", not qa.is_isomorphic(qa1))
    claim("Q|a'' not isomorphic to Q|a'", not qa2.is_isomorphic(qa1))


# -- the twisted theta graph ---------------------------------------------


def plane_theta(twisted=("e",)) -> RibbonGraph:
    """Two vertices joined by parallel edges a, b, e embedded in the plane."""
    return RibbonGraph.from_words([["a", "b", "e"], ["a", "e", "b"]], twisted)


def run_counterexample_ribbon(twisted=("e",)) -> CheckReport:
    report = CheckReport("ribbon-counterexample")
    with timed(report):
        g = plane_theta(twisted)

        def claim(name, ok, **detail):
            report.tick()
            if not ok:
                report.fail({"assertion": name, **detail})

        h = g.contract_edge("b").delete_edge("e")
        claim("G is 2-connected", g.is_2_connected())
        loop = (
            len(h.vertices) == 1
            and h.edge_labels == ("a",)
            and h.is_loop("a")
            and h.is_orientable()
        )
        claim("G/b\\e is one vertex with an orientable loop", loop, minor=h.to_json())
        claim("G/b\\e is 2-connected", h.is_2_connected())
        claim("G/b is not 2-connected", not g.contract_edge("b").is_2_connected())
        claim("G\\b is 2-connected", g.delete_edge("b").is_2_connected())
        claim(
            "G\\b does not have G/b\\e as a minor",
            not has_minor(g.delete_edge("b").delta_matroid(), h.delta_matroid()),
        )
    return report
