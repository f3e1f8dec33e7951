"""JSON documents for delta-matroids, multimatroids and ribbon graphs."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Mapping

from .delta import DeltaMatroidError, SetSystem, check_symmetric_exchange
from .mm import Multimatroid, MultimatroidError, Partition, verify_axioms
from .report import CheckReport, timed
from .ribbon import RibbonGraph, RibbonGraphError


class DocumentError(ValueError):
    pass


def kind_of(doc: Any) -> str:
    if not isinstance(doc, Mapping):
        raise DocumentError("document must be a JSON object")
    if "feasible" in doc:
        return "delta"
    if "bases" in doc:
        return "mm"
    if "vertices" in doc:
        return "ribbon"
    raise DocumentError("cannot tell the document kind from its keys")


def load(path: str | Path) -> Any:
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc


def dumps(doc: Any) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def _string_list(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(x, str) for x in value):
        raise DocumentError(f"{what} must be a list of strings")
    return value


# -- delta-matroids ------------------------------------------------------


def set_system_from_json(doc: Mapping) -> SetSystem:
    """Parse without checking the exchange axiom; duplicates are rejected."""
    elements = _string_list(doc.get("elements"), "elements")
    feasible = doc.get("feasible")
    if not isinstance(feasible, list) or not feasible:
        raise DocumentError("feasible must be a non-empty list")
    seen = set()
    for f in feasible:
        f = frozenset(_string_list(f, "each feasible set"))
        if f in seen:
            raise DocumentError(f"duplicate feasible set {sorted(f)}")
        seen.add(f)
    try:
        return SetSystem.from_sets(elements, feasible)
    except DeltaMatroidError as exc:
        raise DocumentError(str(exc)) from exc


def delta_from_json(doc: Mapping):
    s = set_system_from_json(doc)
    try:
        return s.as_delta_matroid()
    except DeltaMatroidError as exc:
        raise DocumentError(str(exc)) from exc


def delta_to_json(d: SetSystem) -> dict:
    return {"elements": list(d.elements), "feasible": [list(f) for f in d.sets()]}


# -- multimatroids -------------------------------------------------------


def _mm_parts(doc: Mapping) -> tuple[Partition, list[int]]:
    classes = doc.get("classes")
    if not isinstance(classes, list):
        raise DocumentError("classes must be a list of lists")
    classes = [tuple(_string_list(c, "each class")) for c in classes]
    bases = doc.get("bases")
    if not isinstance(bases, list) or not bases:
        raise DocumentError("bases must be a non-empty list")
    try:
        part = Partition(tuple(classes))
        masks = [part.mask(_string_list(b, "each basis")) for b in bases]
    except MultimatroidError as exc:
        raise DocumentError(str(exc)) from exc
    if len(set(masks)) != len(masks):
        raise DocumentError("duplicate basis")
    return part, masks


def mm_from_json(doc: Mapping) -> Multimatroid:
    part, masks = _mm_parts(doc)
    try:
        return Multimatroid(part, masks)
    except MultimatroidError as exc:
        raise DocumentError(str(exc)) from exc


def mm_to_json(q: Multimatroid) -> dict:
    return {"classes": [list(c) for c in q.classes], "bases": [list(b) for b in q.basis_sets()]}


# -- ribbon graphs -------------------------------------------------------


def ribbon_from_json(doc: Mapping) -> RibbonGraph:
    try:
        return RibbonGraph.from_json(doc)
    except RibbonGraphError as exc:
        raise DocumentError(str(exc)) from exc


def ribbon_to_json(g: RibbonGraph) -> dict:
    return g.to_json()


def parse(doc: Any):
    kind = kind_of(doc)
    return {"delta": delta_from_json, "mm": mm_from_json, "ribbon": ribbon_from_json}[kind](doc)


def to_json(obj) -> dict:
    if isinstance(obj, SetSystem):
        return delta_to_json(obj)
    if isinstance(obj, Multimatroid):
        return mm_to_json(obj)
    if isinstance(obj, RibbonGraph):
        return ribbon_to_json(obj)
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def validate(doc: Any) -> CheckReport:
    """Axiom report for a document of any kind; malformed documents raise."""
    kind = kind_of(doc)
    report = CheckReport(f"validate-{kind}")
    with timed(report):
        if kind == "delta":
            s = set_system_from_json(doc)
            report.tick()
            failure = check_symmetric_exchange(s.n, s.feasible)
            if failure is not None:
                report.fail({
                    "axiom": "symmetric exchange",
                    "f1": list(s.labels(failure.f1)),
                    "f2": list(s.labels(failure.f2)),
                    "x": s.elements[failure.x],
                })
        elif kind == "mm":
            part, masks = _mm_parts(doc)
            if any(not part.is_subtransversal(b) for b in masks):
                report.tick()
                report.fail({"axiom": "bases are subtransversals"})
                return report
            sub = verify_axioms(part, lambda a: max((a & b).bit_count() for b in masks))
            report.instances += sub.instances + 1
            report.violations += sub.violations
            report.witnesses.extend(sub.witnesses)
            try:
                Multimatroid(part, masks)
            except MultimatroidError as exc:
                report.fail({"axiom": "bases are the maximal independent sets", "error": str(exc)})
        else:
            report.tick()
            try:
                ribbon_from_json(doc)
            except DocumentError as exc:
                report.fail({"axiom": "ribbon graph structure", "error": str(exc)})
    return report
