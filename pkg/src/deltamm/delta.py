"""Delta-matroids on small labelled ground sets.

Subsets of the ground set are bitmasks over element positions; labels are
only used for presentation and for label-wise equality.
"""

from __future__ import annotations

import enum
import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple, Sequence

MAX_ELEMENTS = 16
VF_SAFE_MAX_ELEMENTS = 8


class DeltaMatroidError(ValueError):
    pass


class ElementRole(enum.Enum):
    LOOP = "loop"
    COLOOP = "coloop"
    ORDINARY = "ordinary"


class ExchangeFailure(NamedTuple):
    """A triple (F1, F2, x) violating symmetric exchange, as bitmasks."""

    f1: int
    f2: int
    x: int


def bits(mask: int) -> Iterator[int]:
    """Yield the positions of the set bits of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _lex_key(mask: int) -> tuple[int, ...]:
    # subsets ordered as sorted tuples of element positions
    return tuple(bits(mask))


@lru_cache(maxsize=1 << 16)
def _first_exchange_failure(n: int, feasible: frozenset[int]) -> ExchangeFailure | None:
    ordered = sorted(feasible, key=_lex_key)
    for f1 in ordered:
        # reach[x] = positions y with f1 ^ {x, y} feasible (y == x allowed)
        reach = []
        for x in range(n):
            fx = f1 ^ (1 << x)
            r = 0
            for y in range(n):
                target = fx if y == x else fx ^ (1 << y)
                if target in feasible:
                    r |= 1 << y
            reach.append(r)
        for f2 in ordered:
            diff = f1 ^ f2
            for x in bits(diff):
                if not reach[x] & diff:
                    return ExchangeFailure(f1, f2, x)
    return None


def check_symmetric_exchange(n: int, feasible: Iterable[int]) -> ExchangeFailure | None:
    """Return ``None`` if the family satisfies symmetric exchange.

    Otherwise return the first failing ``(F1, F2, x)`` with ``F1``, ``F2``
    compared as sorted tuples of positions.
    """
    fam = frozenset(feasible)
    if not fam:
        raise DeltaMatroidError("feasible family must be non-empty")
    return _first_exchange_failure(n, fam)


@dataclass(frozen=True, eq=False)
class SetSystem:
    """A ground set with a family of subsets, not necessarily a delta-matroid.

    Loop complementation can leave the class of delta-matroids, so the
    operations here are defined on arbitrary set systems and
    :attr:`is_delta_matroid` reports validity.
    """

    elements: tuple[str, ...]
    feasible: frozenset[int]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        elements = tuple(self.elements)
        object.__setattr__(self, "elements", elements)
        object.__setattr__(self, "feasible", frozenset(self.feasible))
        if len(elements) > MAX_ELEMENTS:
            raise DeltaMatroidError(f"at most {MAX_ELEMENTS} elements supported, got {len(elements)}")
        if len(set(elements)) != len(elements):
            raise DeltaMatroidError(f"duplicate element labels in {elements}")
        object.__setattr__(self, "_index", {e: i for i, e in enumerate(elements)})
        full = (1 << len(elements)) - 1
        for f in self.feasible:
            if f < 0 or f & ~full:
                raise DeltaMatroidError(f"feasible set {f:#x} uses bits outside the ground set")

    @classmethod
    def from_sets(cls, elements: Sequence[str], sets: Iterable[Iterable[str]]):
        elements = tuple(elements)
        index = {e: i for i, e in enumerate(elements)}
        masks = set()
        for s in sets:
            m = 0
            for label in s:
                if label not in index:
                    raise DeltaMatroidError(f"unknown element {label!r}")
                m |= 1 << index[label]
            masks.add(m)
        return cls(elements, frozenset(masks))

    # -- presentation -------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.elements)

    @property
    def ground(self) -> int:
        return (1 << len(self.elements)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise DeltaMatroidError(f"unknown element {label!r}") from None

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for label in labels:
            m |= 1 << self.index(label)
        return m

    def labels(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    def sets(self) -> list[tuple[str, ...]]:
        """Feasible sets as label tuples, in canonical order."""
        return [self.labels(m) for m in sorted(self.feasible, key=lambda m: (m.bit_count(), _lex_key(m)))]

    def key(self) -> tuple:
        """Label-wise identity: sorted labels plus the family as sorted label tuples."""
        return (
            tuple(sorted(self.elements)),
            tuple(sorted(tuple(sorted(self.labels(m))) for m in self.feasible)),
        )

    def __eq__(self, other):
        if not isinstance(other, SetSystem):
            return NotImplemented
        if self.elements == other.elements:
            return self.feasible == other.feasible
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        fam = ", ".join("{" + ",".join(s) + "}" for s in self.sets())
        return f"{type(self).__name__}([{', '.join(self.elements)}], [{fam}])"

    # -- validity -----------------------------------------------------

    @property
    def is_delta_matroid(self) -> bool:
        return bool(self.feasible) and _first_exchange_failure(self.n, self.feasible) is None

    def as_delta_matroid(self) -> DeltaMatroid:
        if isinstance(self, DeltaMatroid):
            return self
        return DeltaMatroid(self.elements, self.feasible)

    def _wrap(self, elements, feasible):
        """Rebuild with the same class when it is known to be preserved."""
        return type(self)(tuple(elements), frozenset(feasible))

    def _as_system(self, elements, feasible) -> SetSystem:
        return SetSystem(tuple(elements), frozenset(feasible))

    # -- element classification ---------------------------------------

    def role(self, label: str) -> ElementRole:
        bit = 1 << self.index(label)
        hits = sum(1 for f in self.feasible if f & bit)
        if hits == len(self.feasible):
            return ElementRole.COLOOP
        if hits == 0:
            return ElementRole.LOOP
        return ElementRole.ORDINARY

    def is_even(self) -> bool:
        return len({f.bit_count() & 1 for f in self.feasible}) <= 1

    def is_matroid(self) -> bool:
        return len({f.bit_count() for f in self.feasible}) <= 1

    # -- minors -------------------------------------------------------

    def _drop(self, i: int, family: Iterable[int]):
        low = (1 << i) - 1
        out = frozenset((f & low) | ((f >> (i + 1)) << i) for f in family)
        elements = self.elements[:i] + self.elements[i + 1:]
        return elements, out

    def delete(self, label: str):
        i = self.index(label)
        bit = 1 << i
        kept = [f for f in self.feasible if not f & bit]
        if not kept:
            # coloop: deletion is contraction
            kept = self.feasible
        return self._wrap(*self._drop(i, kept))

    def contract(self, label: str):
        i = self.index(label)
        bit = 1 << i
        kept = [f for f in self.feasible if f & bit]
        if not kept:
            # loop: contraction is deletion
            kept = self.feasible
        return self._wrap(*self._drop(i, kept))

    def twist_contract(self, label: str) -> SetSystem:
        out = self.loop_complement([label]).contract(label)
        if isinstance(self, DeltaMatroid) and out.is_delta_matroid:
            return out.as_delta_matroid()
        return out

    def restrict(self, labels: Iterable[str]):
        """``D|A``, i.e. delete everything outside ``A``."""
        keep = set(labels)
        out = self
        for e in self.elements:
            if e not in keep:
                out = out.delete(e)
        return out

    # -- twist and loop complementation -------------------------------

    def twist(self, labels: Iterable[str]):
        a = self.mask(labels)
        return self._wrap(self.elements, (f ^ a for f in self.feasible))

    def loop_complement(self, labels: Iterable[str]) -> SetSystem:
        fam = set(self.feasible)
        for i in sorted(self.index(e) for e in set(labels)):
            bit = 1 << i
            fam.symmetric_difference_update([f | bit for f in fam if not f & bit])
        return self._as_system(self.elements, fam)

    def bar_star(self, labels: Iterable[str], *, strict: bool = False) -> SetSystem:
        """``D+A*A+A``.

        With ``strict`` a :class:`DeltaMatroidError` is raised if an
        intermediate set system is not a delta-matroid.
        """
        labels = list(labels)
        stages = []
        s = self.loop_complement(labels)
        stages.append(s)
        s = s.twist(labels)
        stages.append(s)
        s = s.loop_complement(labels)
        stages.append(s)
        if strict:
            for name, stage in zip(("+A", "+A*A", "+A*A+A"), stages):
                if not stage.is_delta_matroid:
                    raise DeltaMatroidError(f"{name} is not a delta-matroid")
        return s

    # -- direct sums and separators -----------------------------------

    def direct_sum(self, other: SetSystem):
        clash = set(self.elements) & set(other.elements)
        if clash:
            raise DeltaMatroidError(f"label collision in direct sum: {sorted(clash)}")
        shift = self.n
        fam = {f1 | (f2 << shift) for f1 in self.feasible for f2 in other.feasible}
        cls = DeltaMatroid if isinstance(self, DeltaMatroid) and isinstance(other, DeltaMatroid) else SetSystem
        return cls(self.elements + other.elements, frozenset(fam))

    def is_separator_mask(self, x: int) -> bool:
        inside = {f & x for f in self.feasible}
        outside = {f & ~x for f in self.feasible}
        return len(inside) * len(outside) == len(self.feasible)

    def separator_masks(self) -> list[int]:
        return [x for x in range(1 << self.n) if self.is_separator_mask(x)]

    def separators(self) -> list[tuple[str, ...]]:
        return [self.labels(x) for x in self.separator_masks()]

    def is_connected(self) -> bool:
        full = self.ground
        # a separator and its complement come in pairs; checking masks
        # without the top bit is enough
        top = 1 << (self.n - 1) if self.n else 0
        for x in range(1, full):
            if x & top:
                continue
            if self.is_separator_mask(x):
                return False
        return True

    def components(self) -> list[tuple[str, ...]]:
        """Minimal non-empty separators, as label tuples."""
        seps = [x for x in self.separator_masks() if x]
        minimal = [x for x in seps if not any(y != x and y & x == y for y in seps)]
        return [self.labels(x) for x in sorted(minimal)]


class DeltaMatroid(SetSystem):
    """A set system satisfying symmetric exchange, checked on construction."""

    def __post_init__(self):
        super().__post_init__()
        if not self.feasible:
            raise DeltaMatroidError("feasible family must be non-empty")
        failure = _first_exchange_failure(self.n, self.feasible)
        if failure is not None:
            f1, f2, x = failure
            raise DeltaMatroidError(
                "symmetric exchange fails for F1={%s}, F2={%s}, x=%s"
                % (",".join(self.labels(f1)), ",".join(self.labels(f2)), self.elements[x])
            )


def element_role(d: SetSystem, label: str) -> ElementRole:
    return d.role(label)


def direct_sum(d1: SetSystem, d2: SetSystem):
    return d1.direct_sum(d2)


def twist(d: SetSystem, labels: Iterable[str]):
    return d.twist(labels)


def loop_complement(d: SetSystem, labels: Iterable[str]) -> SetSystem:
    return d.loop_complement(labels)


def bar_star(d: SetSystem, labels: Iterable[str], *, strict: bool = False) -> SetSystem:
    return d.bar_star(labels, strict=strict)


def is_even(d: SetSystem) -> bool:
    return d.is_even()


def is_matroid(d: SetSystem) -> bool:
    return d.is_matroid()


# -- minor specifications --------------------------------------------------


@dataclass(frozen=True)
class MinorSpec:
    deletions: frozenset[str] = frozenset()
    contractions: frozenset[str] = frozenset()
    twist_contractions: frozenset[str] = frozenset()

    def __post_init__(self):
        d, c, t = (frozenset(s) for s in (self.deletions, self.contractions, self.twist_contractions))
        object.__setattr__(self, "deletions", d)
        object.__setattr__(self, "contractions", c)
        object.__setattr__(self, "twist_contractions", t)
        if d & c or d & t or c & t:
            raise DeltaMatroidError("deletions, contractions and twist-contractions must be disjoint")

    @property
    def removed(self) -> frozenset[str]:
        return self.deletions | self.contractions | self.twist_contractions

    def steps(self) -> list[tuple[str, str]]:
        out = [(e, "delete") for e in self.deletions]
        out += [(e, "contract") for e in self.contractions]
        out += [(e, "twist_contract") for e in self.twist_contractions]
        return out

    def to_json(self) -> dict:
        return {
            "delete": sorted(self.deletions),
            "contract": sorted(self.contractions),
            "twist_contract": sorted(self.twist_contractions),
        }


def apply_steps(d: SetSystem, steps: Iterable[tuple[str, str]]) -> SetSystem:
    for label, op in steps:
        d = getattr(d, op)(label)
    return d


def apply_minor(d: SetSystem, spec: MinorSpec) -> SetSystem:
    """Apply a :class:`MinorSpec` in ground-set order."""
    unknown = spec.removed - set(d.elements)
    if unknown:
        raise DeltaMatroidError(f"unknown elements in minor spec: {sorted(unknown)}")
    ops = {e: op for e, op in spec.steps()}
    return apply_steps(d, [(e, ops[e]) for e in d.elements if e in ops])


def _minor_search(d: SetSystem, target: SetSystem, ops: Sequence[str]) -> MinorSpec | None:
    extra = [e for e in d.elements if e not in set(target.elements)]
    if set(target.elements) - set(d.elements):
        raise DeltaMatroidError("ground set of the minor is not contained in the ground set")
    for choice in itertools.product(ops, repeat=len(extra)):
        m = apply_steps(d, zip(extra, choice))
        if m == target:
            groups: dict[str, set[str]] = {"delete": set(), "contract": set(), "twist_contract": set()}
            for e, op in zip(extra, choice):
                groups[op].add(e)
            return MinorSpec(
                frozenset(groups["delete"]),
                frozenset(groups["contract"]),
                frozenset(groups["twist_contract"]),
            )
    return None


def find_minor(d: SetSystem, target: SetSystem) -> MinorSpec | None:
    return _minor_search(d, target, ("delete", "contract"))


def find_3_minor(d: SetSystem, target: SetSystem) -> MinorSpec | None:
    return _minor_search(d, target, ("delete", "contract", "twist_contract"))


def has_minor(d: SetSystem, target: SetSystem) -> bool:
    return find_minor(d, target) is not None


def has_3_minor(d: SetSystem, target: SetSystem) -> bool:
    return find_3_minor(d, target) is not None


# -- vf-safety -------------------------------------------------------------


def vf_orbit(d: SetSystem) -> set[SetSystem]:
    """Closure of ``d`` under single-element twists and loop complementations."""
    if d.n > VF_SAFE_MAX_ELEMENTS:
        raise DeltaMatroidError(
            f"vf-safety closure limited to {VF_SAFE_MAX_ELEMENTS} elements, got {d.n}"
        )
    start = SetSystem(d.elements, d.feasible)
    seen = {start.feasible}
    queue = deque([start.feasible])
    n = d.n
    while queue:
        fam = queue.popleft()
        for i in range(n):
            bit = 1 << i
            twisted = frozenset(f ^ bit for f in fam)
            looped = frozenset(fam.symmetric_difference(f | bit for f in fam if not f & bit))
            for nxt in (twisted, looped):
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
    return {SetSystem(d.elements, fam) for fam in seen}


@lru_cache(maxsize=1 << 14)
def _vf_safe(n: int, feasible: frozenset[int]) -> bool:
    elements = tuple(str(i) for i in range(n))
    return all(s.is_delta_matroid for s in vf_orbit(SetSystem(elements, feasible)))


def is_vf_safe(d: SetSystem) -> bool:
    if d.n > VF_SAFE_MAX_ELEMENTS:
        raise DeltaMatroidError(
            f"vf-safety closure limited to {VF_SAFE_MAX_ELEMENTS} elements, got {d.n}"
        )
    return _vf_safe(d.n, d.feasible)
