"""Command-line front end. Exit codes: 0 pass, 1 violation, 2 usage or parse error."""

from __future__ import annotations

import argparse
import sys

from . import io
from .bridge import BridgeError, q2_of, q3_of, section
from .delta import DeltaMatroidError, MinorSpec, SetSystem, apply_minor, is_vf_safe
from .harness import checks
from .harness.examples import run_counterexample_ribbon, run_paper_example
from .mm import Multimatroid, MultimatroidError
from .report import CheckReport
from .ribbon import RibbonGraph, RibbonGraphError

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        raise UsageError(message)


def _labels(values) -> list[str]:
    out = []
    for v in values or ():
        out.extend(x for x in v.split(",") if x)
    return out


CHECKS = {
    "paper-q": lambda a: run_paper_example(),
    "ribbon-counterexample": lambda a: run_counterexample_ribbon(),
    "chain-even": lambda a: checks.chain_even(a.max_n or 4),
    "chain-q3": lambda a: checks.chain_q3(a.max_n3 or 3),
    "splitter": lambda a: checks.splitter(a.max_n or 4, a.max_n3 or 3),
    "ribbon-compat": lambda a: checks.ribbon_compat(a.max_v or 3, a.max_e or 3),
    "ribbon-chain": lambda a: checks.ribbon_chain(a.max_v or 3, a.max_e or 3),
    "dictionary": lambda a: checks.dictionary(a.max_n or 4, a.max_n3 or 3),
    "axioms": lambda a: checks.axioms(a.max_n or 4, a.max_n3 or 3),
    "matroid": lambda a: checks.matroid_specializations(a.max_n or 4),
    "nontight-search": lambda a: checks.search_nontight_chain_violation(a.max_n or 4),
}


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="deltamm", description="Delta-matroids, multimatroids and ribbon graphs.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    s = sub.add_parser("validate", help="check the axioms of a structure file")
    s.add_argument("file")

    s = sub.add_parser("props", help="structural properties as JSON")
    s.add_argument("file")

    s = sub.add_parser("minor", help="write a minor of a structure")
    s.add_argument("file")
    s.add_argument("--delete", action="append", metavar="LABELS")
    s.add_argument("--contract", action="append", metavar="LABELS")
    s.add_argument("--twist-contract", action="append", metavar="LABELS")
    s.add_argument("--subtransversal", action="append", metavar="LABELS", help="multimatroid minor Q|A")

    for name, what in (("q2", "2-matroid"), ("q3", "tight 3-matroid")):
        s = sub.add_parser(name, help=f"the {what} of a delta-matroid")
        s.add_argument("file")

    s = sub.add_parser("section", help="section of a 2-matroid by a transversal")
    s.add_argument("file")
    s.add_argument("--transversal", action="append", required=True, metavar="LABELS")

    s = sub.add_parser("ribbon-dm", help="delta-matroid of a ribbon graph")
    s.add_argument("file")

    s = sub.add_parser("check", help="run a harness check")
    s.add_argument("name", choices=sorted(CHECKS))
    s.add_argument("--max-n", type=int)
    s.add_argument("--max-n3", type=int)
    s.add_argument("--max-v", type=int)
    s.add_argument("--max-e", type=int)

    s = sub.add_parser("example", help="run a built-in reproduction")
    s.add_argument("name", choices=["paper-q", "ribbon-counterexample"])
    return p


def _props(obj) -> dict:
    if isinstance(obj, SetSystem):
        return {
            "kind": "delta",
            "even": obj.is_even(),
            "matroid": obj.is_matroid(),
            "connected": obj.is_connected(),
            "vf_safe": is_vf_safe(obj),
            "separators": [list(s) for s in obj.separators()],
            "components": [list(c) for c in obj.components()],
        }
    if isinstance(obj, Multimatroid):
        return {
            "kind": "mm",
            "tight": obj.is_tight(),
            "nondegenerate": obj.is_nondegenerate(),
            "connected": obj.is_connected(),
            "separators": [list(s) for s in obj.separators()],
            "circuits": [list(c) for c in obj.circuits()],
            "bases": len(obj.bases),
        }
    d = obj.delta_matroid()
    return {
        "kind": "ribbon",
        "orientable": obj.is_orientable(),
        "connected": obj.is_connected(),
        "two_connected": obj.is_2_connected(),
        "vertices": len(obj.vertices),
        "edges": len(obj.edge_labels),
        "boundary_components": obj.boundary_components(),
        "delta_matroid": io.delta_to_json(d),
    }


def _minor(obj, args):
    deletions, contractions, twists = (_labels(v) for v in (args.delete, args.contract, args.twist_contract))
    if isinstance(obj, Multimatroid):
        if deletions or contractions or twists:
            raise UsageError("multimatroid minors take --subtransversal only")
        return obj.minor(_labels(args.subtransversal))
    if args.subtransversal:
        raise UsageError("--subtransversal applies to multimatroids only")
    spec = MinorSpec(frozenset(deletions), frozenset(contractions), frozenset(twists))
    if isinstance(obj, SetSystem):
        return apply_minor(obj, spec)
    unknown = spec.removed - set(obj.edge_labels)
    if unknown:
        raise UsageError(f"unknown edges: {sorted(unknown)}")
    ops = {"delete": obj.__class__.delete_edge, "contract": obj.__class__.contract_edge,
           "twist_contract": obj.__class__.twist_contract}
    for e, op in sorted(spec.steps()):
        obj = ops[op](obj, e)
    return obj


def _emit(doc) -> None:
    print(io.dumps(doc))


def _report(report: CheckReport) -> int:
    _emit(report.to_json())
    print(report.summary(), file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VIOLATION


def _load(path: str, kind: str | None = None):
    doc = io.load(path)
    if kind is not None and io.kind_of(doc) != kind:
        raise io.DocumentError(f"{path}: expected a {kind} document")
    return io.parse(doc)


def run(args) -> int:
    cmd = args.command
    if cmd == "validate":
        return _report(io.validate(io.load(args.file)))
    if cmd == "props":
        _emit(_props(_load(args.file)))
        return EXIT_OK
    if cmd == "minor":
        _emit(io.to_json(_minor(_load(args.file), args)))
        return EXIT_OK
    if cmd in ("q2", "q3"):
        d = _load(args.file, "delta")
        _emit(io.mm_to_json(q2_of(d) if cmd == "q2" else q3_of(d)))
        return EXIT_OK
    if cmd == "section":
        _emit(io.delta_to_json(section(_load(args.file, "mm"), _labels(args.transversal))))
        return EXIT_OK
    if cmd == "ribbon-dm":
        _emit(io.delta_to_json(_load(args.file, "ribbon").delta_matroid()))
        return EXIT_OK
    if cmd == "check":
        return _report(CHECKS[args.name](args))
    if cmd == "example":
        return _report(CHECKS[args.name](args))
    raise UsageError(f"unknown command {cmd}")


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return run(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (io.DocumentError, DeltaMatroidError, MultimatroidError, BridgeError, RibbonGraphError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
