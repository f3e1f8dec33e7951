"""Passing between delta-matroids and 2- and 3-matroids."""

from __future__ import annotations

import itertools
from typing import Iterable

from .delta import DeltaMatroid, SetSystem, is_vf_safe
from .mm import Multimatroid, MultimatroidError, Partition

PRIME = "'"


class BridgeError(ValueError):
    pass


def primed(label: str, times: int = 1) -> str:
    return label + PRIME * times


def unprime(label: str) -> str:
    return label.rstrip(PRIME)


def _check_labels(d: SetSystem) -> None:
    bad = [e for e in d.elements if e.endswith(PRIME)]
    if bad:
        raise BridgeError(f"element labels may not end in a prime: {bad}")


def q2_of(d: SetSystem) -> Multimatroid:
    """The 2-matroid with a basis ``F + (E - F)'`` for each feasible ``F``."""
    _check_labels(d)
    n = d.n
    classes = tuple((e, primed(e)) for e in d.elements)
    bases = []
    for f in d.feasible:
        m = 0
        for i in range(n):
            m |= 1 << (2 * i + (0 if f >> i & 1 else 1))
        bases.append(m)
    return Multimatroid(Partition(classes), bases)


def section(q: Multimatroid, transversal: Iterable[str]) -> DeltaMatroid:
    """The delta-matroid on ``T`` with feasible sets ``B & T``."""
    if any(len(c) != 2 for c in q.classes):
        raise BridgeError("sections are defined for 2-matroids only")
    t = q.mask(transversal)
    part = q.partition
    if t not in set(part.transversals()):
        raise BridgeError(f"{q.names(t)} is not a transversal")
    elements = q.names(t)
    positions = [part.index[x] for x in elements]
    fam = set()
    for b in q.bases:
        fam.add(sum(1 << k for k, p in enumerate(positions) if b >> p & 1))
    return DeltaMatroid(elements, frozenset(fam))


def q3_of(d: SetSystem) -> Multimatroid:
    """The tight 3-matroid of a vf-safe delta-matroid.

    A transversal ``B`` is a basis when its primed part is feasible in ``D``
    bar-twisted by its double-primed part.
    """
    _check_labels(d)
    if not is_vf_safe(d):
        raise BridgeError("q3_of needs a vf-safe delta-matroid")
    n = d.n
    classes = tuple((e, primed(e), primed(e, 2)) for e in d.elements)
    twisted: dict[int, frozenset[int]] = {}
    bases = []
    for choice in itertools.product(range(3), repeat=n):
        ones = sum(1 << i for i, c in enumerate(choice) if c == 1)
        twos = sum(1 << i for i, c in enumerate(choice) if c == 2)
        fam = twisted.get(twos)
        if fam is None:
            fam = d.bar_star(d.labels(twos)).feasible
            twisted[twos] = fam
        if ones in fam:
            bases.append(sum(1 << (3 * i + c) for i, c in enumerate(choice)))
    return Multimatroid(Partition(classes), bases)


def is_triple_carrier(q: Multimatroid) -> bool:
    return all(len(c) == 3 and c[1] == primed(c[0]) and c[2] == primed(c[0], 2) for c in q.classes)


def delta_of_q3(q: Multimatroid) -> DeltaMatroid:
    """Inverse of :func:`q3_of` on triple-labelled 3-matroids."""
    if not is_triple_carrier(q):
        raise BridgeError("classes must have the form (e, e', e'')")
    elements = tuple(c[0] for c in q.classes)
    fam = set()
    for b in q.bases:
        if any(b >> (3 * i + 2) & 1 for i in range(len(elements))):
            continue
        fam.add(sum(1 << i for i in range(len(elements)) if b >> (3 * i + 1) & 1))
    if not fam:
        raise BridgeError("no basis avoids the double-primed elements")
    return DeltaMatroid(elements, frozenset(fam))


def delta_of_q2(q: Multimatroid) -> DeltaMatroid:
    """Section by the unprimed transversal of a 2-matroid built by :func:`q2_of`."""
    try:
        return section(q, [c[0] for c in q.classes])
    except MultimatroidError as exc:
        raise BridgeError(str(exc)) from exc
