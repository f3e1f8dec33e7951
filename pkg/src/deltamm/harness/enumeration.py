"""Streams of small delta-matroids, matroids and ribbon graphs."""

from __future__ import annotations

import itertools
import random
import string
from typing import Iterator, Sequence

import numpy as np

from ..delta import DeltaMatroid, is_vf_safe
from ..ribbon import RibbonGraph

EXHAUSTIVE_MAX = 4
RIBBON_MAX = 3


class EnumerationError(ValueError):
    pass


def default_labels(n: int) -> tuple[str, ...]:
    return tuple(string.ascii_lowercase[:n])


def _valid_families(n: int) -> np.ndarray:
    """Every non-empty family on ``n`` elements satisfying symmetric exchange.

    Families are integers whose bit ``S`` says subset ``S`` is feasible;
    the exchange axiom is evaluated for all of them at once.
    """
    subsets = 1 << n
    fams = np.arange(1, 1 << subsets, dtype=np.int64)
    member = [((fams >> s) & 1).astype(bool) for s in range(subsets)]
    ok = np.ones(fams.shape, dtype=bool)
    for f1 in range(subsets):
        for f2 in range(subsets):
            diff = f1 ^ f2
            if not diff:
                continue
            both = member[f1] & member[f2]
            for x in range(n):
                if not diff >> x & 1:
                    continue
                fx = f1 ^ (1 << x)
                rescue = member[fx].copy()
                for y in range(n):
                    if y != x and diff >> y & 1:
                        rescue |= member[fx ^ (1 << y)]
                ok &= ~both | rescue
    return fams[ok]


_FAMILY_CACHE: dict[int, list[frozenset[int]]] = {}


def delta_families(n: int) -> list[frozenset[int]]:
    if n > EXHAUSTIVE_MAX:
        raise EnumerationError(f"exhaustive enumeration is limited to n <= {EXHAUSTIVE_MAX}")
    if n not in _FAMILY_CACHE:
        subsets = 1 << n
        out = []
        for fam in _valid_families(n).tolist():
            out.append(frozenset(s for s in range(subsets) if fam >> s & 1))
        _FAMILY_CACHE[n] = out
    return _FAMILY_CACHE[n]


def _keep(d: DeltaMatroid, even, connected, vf_safe, matroid) -> bool:
    if even is not None and d.is_even() != even:
        return False
    if matroid is not None and d.is_matroid() != matroid:
        return False
    if connected is not None and d.is_connected() != connected:
        return False
    if vf_safe is not None and is_vf_safe(d) != vf_safe:
        return False
    return True


def enumerate_delta_matroids(
    n: int,
    *,
    even: bool | None = None,
    connected: bool | None = None,
    vf_safe: bool | None = None,
    matroid: bool | None = None,
    labels: Sequence[str] | None = None,
    sample: int | None = None,
    seed: int = 0,
) -> Iterator[DeltaMatroid]:
    """Delta-matroids on ``n`` labelled elements, filtered.

    Up to four elements every delta-matroid is produced once, ordered by
    the integer encoding of its family. Larger ``n`` needs ``sample``, the
    number of random candidate families to try with the given ``seed``;
    each valid candidate is yielded once.
    """
    labels = tuple(labels) if labels is not None else default_labels(n)
    if len(labels) != n:
        raise EnumerationError("need one label per element")
    if n <= EXHAUSTIVE_MAX and sample is None:
        for fam in delta_families(n):
            d = DeltaMatroid(labels, fam)
            if _keep(d, even, connected, vf_safe, matroid):
                yield d
        return
    if sample is None:
        raise EnumerationError(f"n = {n} needs a sample budget")
    rng = random.Random(seed)
    seen = set()
    for _ in range(sample):
        density = rng.random()
        fam = frozenset(s for s in range(1 << n) if rng.random() < density)
        if not fam or fam in seen:
            continue
        seen.add(fam)
        try:
            d = DeltaMatroid(labels, fam)
        except ValueError:
            continue
        if _keep(d, even, connected, vf_safe, matroid):
            yield d


def enumerate_matroids(n: int, *, connected: bool | None = None) -> Iterator[DeltaMatroid]:
    """Matroids on ``n`` labelled elements as equicardinal delta-matroids."""
    if n > 5:
        raise EnumerationError("matroid enumeration is limited to n <= 5")
    labels = default_labels(n)
    for k in range(n + 1):
        ksets = [sum(1 << i for i in c) for c in itertools.combinations(range(n), k)]
        for pick in range(1, 1 << len(ksets)):
            fam = frozenset(s for j, s in enumerate(ksets) if pick >> j & 1)
            try:
                d = DeltaMatroid(labels, fam)
            except ValueError:
                continue
            if connected is None or d.is_connected() == connected:
                yield d


# -- ribbon graphs -------------------------------------------------------


def _necklaces(items: Sequence[str]) -> list[tuple[str, ...]]:
    """Distinct cyclic words over a multiset, one representative per rotation class."""
    out = set()
    for word in set(itertools.permutations(items)):
        rots = [word[i:] + word[:i] for i in range(len(word))]
        if word == min(rots):
            out.add(word)
    return sorted(out)


def enumerate_ribbon_graphs(max_v: int, max_e: int, *, exact: bool = False) -> Iterator[RibbonGraph]:
    """Labelled signed rotation systems without isolated vertices.

    Vertices and edges are labelled, the two ends of an edge are not, and
    each vertex carries a cyclic word in the edge labels. With ``exact``
    only graphs with exactly ``max_v`` vertices and ``max_e`` edges are
    produced; otherwise every size from one vertex and no edges upwards.
    """
    if max_v > RIBBON_MAX or max_e > RIBBON_MAX:
        raise EnumerationError(f"ribbon graph enumeration is limited to {RIBBON_MAX} vertices and edges")
    sizes = (
        [(max_v, max_e)]
        if exact
        else [(v, e) for v in range(1, max_v + 1) for e in range(0, max_e + 1)]
    )
    for nv, ne in sizes:
        yield from _ribbon_graphs(nv, ne)


def _ribbon_graphs(nv: int, ne: int) -> Iterator[RibbonGraph]:
    if ne == 0:
        if nv == 1:
            yield RibbonGraph(((),), {})
        return
    labels = default_labels(ne)
    places = list(itertools.combinations_with_replacement(range(nv), 2))
    for placement in itertools.product(places, repeat=ne):
        at: list[list[str]] = [[] for _ in range(nv)]
        for label, (u, v) in zip(labels, placement):
            at[u].append(label)
            at[v].append(label)
        if any(not a for a in at):
            continue
        for words in itertools.product(*(_necklaces(a) for a in at)):
            for signs in itertools.product((False, True), repeat=ne):
                twisted = [x for x, s in zip(labels, signs) if s]
                yield RibbonGraph.from_words(words, twisted)
