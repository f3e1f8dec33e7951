"""Multimatroids given by their bases.

Elements are indexed by their position in the flattened class list, so a
subtransversal is a bitmask meeting each class at most once. Ranks come
from the bases, ``r(A) = max |A & B|``, which agrees with the rank
function for every multimatroid (a maximum independent subset of ``A``
extends to a basis, and ``A & B`` is always independent).
"""

from __future__ import annotations

import itertools
import warnings
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .delta import bits
from .report import CheckReport

MAX_ELEMENTS = 18
AXIOM_CHECK_MAX_CLASSES = 6
AXIOM_CHECK_MAX_CLASS_SIZE = 4


class MultimatroidError(ValueError):
    pass


class TightnessViolation(MultimatroidError):
    """A property guaranteed for tight multimatroids failed to hold."""


class PreconditionError(MultimatroidError):
    pass


class NonUniqueCircuitWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Partition:
    """Skew classes; the class order fixes the canonical element order."""

    classes: tuple[tuple[str, ...], ...]
    labels: tuple[str, ...] = field(init=False, repr=False, compare=False)
    index: dict = field(init=False, repr=False, compare=False)
    class_of: tuple[int, ...] = field(init=False, repr=False, compare=False)
    class_masks: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        classes = tuple(tuple(c) for c in self.classes)
        object.__setattr__(self, "classes", classes)
        labels = tuple(x for c in classes for x in c)
        if any(not c for c in classes):
            raise MultimatroidError("skew classes must be non-empty")
        if len(set(labels)) != len(labels):
            raise MultimatroidError("element labels must be unique")
        if len(labels) > MAX_ELEMENTS:
            raise MultimatroidError(f"at most {MAX_ELEMENTS} elements supported, got {len(labels)}")
        class_of = []
        masks = []
        pos = 0
        for k, c in enumerate(classes):
            class_of.extend([k] * len(c))
            masks.append(((1 << len(c)) - 1) << pos)
            pos += len(c)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "index", {x: i for i, x in enumerate(labels)})
        object.__setattr__(self, "class_of", tuple(class_of))
        object.__setattr__(self, "class_masks", tuple(masks))

    def __len__(self):
        return len(self.classes)

    @property
    def ground(self) -> int:
        return (1 << len(self.labels)) - 1

    def mask(self, labels: Iterable[str]) -> int:
        m = 0
        for x in labels:
            try:
                m |= 1 << self.index[x]
            except KeyError:
                raise MultimatroidError(f"unknown element {x!r}") from None
        return m

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in bits(mask))

    def is_subtransversal(self, mask: int) -> bool:
        if mask & ~self.ground:
            return False
        return all((mask & cm).bit_count() <= 1 for cm in self.class_masks)

    def classes_met(self, mask: int) -> int:
        """Bitmask over class indices of the classes meeting ``mask``."""
        out = 0
        for k, cm in enumerate(self.class_masks):
            if mask & cm:
                out |= 1 << k
        return out

    def union_of_classes(self, class_set: int) -> int:
        out = 0
        for k in bits(class_set):
            out |= self.class_masks[k]
        return out

    def subtransversals(self, classes: int | None = None) -> list[int]:
        """All subtransversals inside the given classes (default: all)."""
        out = [0]
        for k, cm in enumerate(self.class_masks):
            if classes is not None and not classes >> k & 1:
                continue
            singles = [1 << i for i in bits(cm)]
            out = out + [m | s for m in out for s in singles]
        return out

    def transversals(self, classes: int | None = None) -> list[int]:
        out = [0]
        for k, cm in enumerate(self.class_masks):
            if classes is not None and not classes >> k & 1:
                continue
            out = [m | (1 << i) for m in out for i in bits(cm)]
        return out

    def class_index(self, label: str) -> int:
        try:
            return self.class_of[self.index[label]]
        except KeyError:
            raise MultimatroidError(f"unknown element {label!r}") from None

    def sub(self, keep: int) -> tuple[tuple[tuple[str, ...], ...], list[int]]:
        """Classes in ``keep`` and, per kept element, its old position."""
        classes = tuple(c for k, c in enumerate(self.classes) if keep >> k & 1)
        old = [self.index[x] for c in classes for x in c]
        return classes, old

    def key(self) -> frozenset:
        return frozenset(frozenset(c) for c in self.classes)


def _remap(mask: int, old_positions: Sequence[int]) -> int:
    out = 0
    for new, old in enumerate(old_positions):
        if mask >> old & 1:
            out |= 1 << new
    return out


# -- axiom checking ----------------------------------------------------------


def verify_axioms(partition: Partition, rank: Mapping[int, int] | Callable[[int], int]) -> CheckReport:
    """Check multimatroid axioms (1)-(4) for a rank function on subtransversals.

    ``rank`` maps subtransversal bitmasks to integers. Every violated
    instance is counted; at most 100 are kept as witnesses.
    """
    if len(partition) > AXIOM_CHECK_MAX_CLASSES or any(
        len(c) > AXIOM_CHECK_MAX_CLASS_SIZE for c in partition.classes
    ):
        raise MultimatroidError(
            f"axiom check limited to {AXIOM_CHECK_MAX_CLASSES} classes of size <= {AXIOM_CHECK_MAX_CLASS_SIZE}"
        )
    subs = partition.subtransversals()
    if callable(rank):
        table = {s: rank(s) for s in subs}
    else:
        missing = [s for s in subs if s not in rank]
        if missing:
            raise MultimatroidError(f"rank table is missing {len(missing)} subtransversals")
        table = rank
    report = CheckReport("axioms")
    names = partition.names

    def fail(axiom, **data):
        report.fail({"axiom": axiom, **{k: names(v) if isinstance(v, int) else v for k, v in data.items()}})

    report.tick()
    if table[0] != 0:
        report.fail({"axiom": 1, "rank_of_empty": table[0]})
    for a in subs:
        ra = table[a]
        if ra < 0:
            report.fail({"axiom": 1, "negative": names(a)})
        met = partition.classes_met(a)
        for k, cm in enumerate(partition.class_masks):
            if met >> k & 1:
                continue
            members = list(bits(cm))
            for x in members:
                d = table[a | 1 << x] - ra
                if d not in (0, 1):
                    fail(2, A=a, x=1 << x)
            for x, y in itertools.combinations(members, 2):
                if table[a | 1 << x] + table[a | 1 << y] - 2 * ra < 1:
                    fail(4, A=a, x=1 << x, y=1 << y)
    # submodularity: enumerate A within S and B with A | B == S
    for s in subs:
        rs = table[s]
        for a in _submasks(s):
            rest = s & ~a
            ra = table[a]
            for extra in _submasks(a):
                b = rest | extra
                if ra + table[b] < rs + table[a & b]:
                    fail(3, A=a, B=b)
    return report


def _submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@lru_cache(maxsize=1 << 14)
def _validate_bases(classes: tuple[tuple[str, ...], ...], bases: frozenset[int]) -> None:
    partition = Partition(classes)
    for b in bases:
        if not partition.is_subtransversal(b):
            raise MultimatroidError(f"basis {partition.names(b)} is not a subtransversal")
    bl = list(bases)
    table = {s: max((s & b).bit_count() for b in bl) for s in partition.subtransversals()}
    report = verify_axioms(partition, table)
    if not report.ok:
        raise MultimatroidError(f"rank derived from bases violates the axioms: {report.witnesses[:3]}")
    derived = _maximal_independent(partition, table)
    if derived != bases:
        raise MultimatroidError("stored bases differ from the maximal independent sets of the derived rank")


def _maximal_independent(partition: Partition, table: Mapping[int, int]) -> frozenset[int]:
    out = set()
    for s, r in table.items():
        if r != s.bit_count():
            continue
        met = partition.classes_met(s)
        maximal = True
        for k, cm in enumerate(partition.class_masks):
            if met >> k & 1:
                continue
            if any(table[s | 1 << x] == r + 1 for x in bits(cm)):
                maximal = False
                break
        if maximal:
            out.add(s)
    return frozenset(out)


# -- the multimatroid type ---------------------------------------------------


@dataclass(frozen=True)
class FundamentalGraph:
    vertices: tuple[str, ...]
    edges: frozenset[frozenset[str]]

    def neighbours(self, v: str) -> set[str]:
        return {w for e in self.edges if v in e for w in e if w != v}

    def components(self) -> list[frozenset[str]]:
        seen: set[str] = set()
        out = []
        for v in self.vertices:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                u = stack.pop()
                for w in self.neighbours(u):
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            seen |= comp
            out.append(frozenset(comp))
        return out

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def remove(self, v: str) -> FundamentalGraph:
        return FundamentalGraph(
            tuple(x for x in self.vertices if x != v),
            frozenset(e for e in self.edges if v not in e),
        )


class Multimatroid:
    """A multimatroid stored as a partition into skew classes plus its bases.

    Construction checks that the rank derived from the bases satisfies the
    axioms and that the bases are exactly its maximal independent sets.
    """

    __slots__ = ("partition", "bases", "_rank", "_bases_list")

    def __init__(self, classes: Sequence[Sequence[str]] | Partition, bases: Iterable[int]):
        partition = classes if isinstance(classes, Partition) else Partition(tuple(tuple(c) for c in classes))
        bases = frozenset(bases)
        if not bases:
            raise MultimatroidError("a multimatroid needs at least one basis")
        _validate_bases(partition.classes, bases)
        self.partition = partition
        self.bases = bases
        self._bases_list = sorted(bases)
        self._rank: dict[int, int] = {}

    @classmethod
    def from_labels(cls, classes: Sequence[Sequence[str]], bases: Iterable[Iterable[str]]) -> Multimatroid:
        partition = Partition(tuple(tuple(c) for c in classes))
        return cls(partition, (partition.mask(b) for b in bases))

    @classmethod
    def from_rank(cls, classes: Sequence[Sequence[str]], rank: Callable[[frozenset[str]], int]) -> Multimatroid:
        """Build from a rank function on label sets; the axioms are checked first."""
        partition = Partition(tuple(tuple(c) for c in classes))
        table = {s: rank(frozenset(partition.names(s))) for s in partition.subtransversals()}
        report = verify_axioms(partition, table)
        if not report.ok:
            raise MultimatroidError(f"rank table violates the axioms: {report.witnesses[:3]}")
        return cls(partition, _maximal_independent(partition, table))

    # -- basics -------------------------------------------------------

    @property
    def classes(self) -> tuple[tuple[str, ...], ...]:
        return self.partition.classes

    @property
    def labels(self) -> tuple[str, ...]:
        return self.partition.labels

    def mask(self, labels: Iterable[str]) -> int:
        return self.partition.mask(labels)

    def names(self, mask: int) -> tuple[str, ...]:
        return self.partition.names(mask)

    def basis_sets(self) -> list[tuple[str, ...]]:
        return [self.names(b) for b in self._bases_list]

    def _subtransversal(self, a: Iterable[str] | int) -> int:
        m = a if isinstance(a, int) else self.mask(a)
        if not self.partition.is_subtransversal(m):
            raise MultimatroidError(f"{self.names(m)} is not a subtransversal")
        return m

    def rank_mask(self, a: int) -> int:
        r = self._rank.get(a)
        if r is None:
            r = max((a & b).bit_count() for b in self._bases_list)
            self._rank[a] = r
        return r

    def rank(self, a: Iterable[str] | int) -> int:
        return self.rank_mask(self._subtransversal(a))

    def rank_table(self) -> dict[int, int]:
        return {s: self.rank_mask(s) for s in self.partition.subtransversals()}

    def key(self) -> tuple:
        return (self.partition.key(), frozenset(frozenset(self.names(b)) for b in self.bases))

    def __eq__(self, other):
        if not isinstance(other, Multimatroid):
            return NotImplemented
        if self.partition.classes == other.partition.classes:
            return self.bases == other.bases
        return self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        cls = " ".join("{" + ",".join(c) + "}" for c in self.classes)
        return f"Multimatroid({cls}; {len(self.bases)} bases)"

    # -- structure ----------------------------------------------------

    def is_nondegenerate(self) -> bool:
        return all(len(c) >= 2 for c in self.classes)

    def singular_elements(self) -> tuple[str, ...]:
        return tuple(x for i, x in enumerate(self.labels) if self.rank_mask(1 << i) == 0)

    def is_independent(self, a: Iterable[str] | int) -> bool:
        m = self._subtransversal(a)
        return self.rank_mask(m) == m.bit_count()

    def is_tight(self) -> bool:
        if not self.is_nondegenerate():
            return False
        part = self.partition
        everything = (1 << len(part)) - 1
        for k, cm in enumerate(part.class_masks):
            members = list(bits(cm))
            for near in part.transversals(everything & ~(1 << k)):
                r = self.rank_mask(near)
                total = sum(self.rank_mask(near | 1 << x) - r for x in members)
                if total != len(members) - 1:
                    return False
        return True

    def circuits(self) -> list[tuple[str, ...]]:
        """All minimal dependent subtransversals, smallest first."""
        out = []
        for s in self.partition.subtransversals():
            if self.rank_mask(s) == s.bit_count():
                continue
            if all(self.rank_mask(s & ~(1 << i)) == s.bit_count() - 1 for i in bits(s)):
                out.append(s)
        out.sort(key=lambda m: (m.bit_count(), tuple(bits(m))))
        return [self.names(m) for m in out]

    # -- minors -------------------------------------------------------

    def minor(self, a: Iterable[str] | int) -> Multimatroid:
        """``Q|A``: drop the classes meeting ``A`` with rank ``r(X | A) - r(A)``."""
        m = self._subtransversal(a)
        if m == 0:
            return self
        part = self.partition
        keep = ((1 << len(part)) - 1) & ~part.classes_met(m)
        classes, old = part.sub(keep)
        ra = self.rank_mask(m)
        # bases of Q|A are the maximal sets among B - U_A with |B & A| = r(A)
        cands = {_remap(b, old) for b in self._bases_list if (b & m).bit_count() == ra}
        maximal = frozenset(c for c in cands if not any(d != c and d & c == c for d in cands))
        return Multimatroid(Partition(classes), maximal)

    def direct_sum(self, other: Multimatroid) -> Multimatroid:
        clash = set(self.labels) & set(other.labels)
        if clash:
            raise MultimatroidError(f"label collision in direct sum: {sorted(clash)}")
        shift = len(self.labels)
        return Multimatroid(
            Partition(self.classes + other.classes),
            (b1 | b2 << shift for b1 in self.bases for b2 in other.bases),
        )

    # -- separators ---------------------------------------------------

    def is_separator_classes(self, class_set: int) -> bool:
        x = self.partition.union_of_classes(class_set)
        return all(
            self.rank_mask(a) == self.rank_mask(a & x) + self.rank_mask(a & ~x)
            for a in self.partition.subtransversals()
        )

    def separators(self) -> list[tuple[str, ...]]:
        """Every separator (a union of skew classes), including the trivial ones."""
        n = len(self.partition)
        return [
            self.names(self.partition.union_of_classes(cs))
            for cs in range(1 << n)
            if self.is_separator_classes(cs)
        ]

    def is_connected(self) -> bool:
        n = len(self.partition)
        if n <= 1:
            return True
        top = 1 << (n - 1)
        return not any(self.is_separator_classes(cs) for cs in range(1, (1 << n) - 1) if not cs & top)

    # -- fundamental circuits -----------------------------------------

    def _class_of(self, omega: int | str) -> int:
        if isinstance(omega, str):
            return self.partition.class_index(omega)
        if not 0 <= omega < len(self.partition):
            raise MultimatroidError(f"no skew class {omega}")
        return omega

    def _basis(self, b: Iterable[str] | int) -> int:
        m = b if isinstance(b, int) else self.mask(b)
        if m not in self.bases:
            raise MultimatroidError(f"{self.names(m)} is not a basis")
        return m

    def _fundamental_circuits(self, b: int, k: int) -> list[int]:
        cm = self.partition.class_masks[k]
        rest = b & ~cm
        out = []
        for x in bits(cm & ~b):
            t = rest | 1 << x
            r = self.rank_mask(t)
            if r == t.bit_count():
                continue
            out.append(sum(1 << y for y in bits(t) if self.rank_mask(t & ~(1 << y)) == r))
        return out

    def fundamental_circuit(self, b: Iterable[str] | int, omega: int | str) -> tuple[str, ...]:
        """The circuit inside ``B`` plus the skew class ``omega``.

        ``omega`` is a class index or any label in the class.
        """
        bm = self._basis(b)
        found = self._fundamental_circuits(bm, self._class_of(omega))
        if not found:
            raise MultimatroidError("no fundamental circuit")
        if len(found) > 1:
            if self.is_tight():
                raise TightnessViolation(f"{len(found)} circuits inside basis plus class")
            warnings.warn("fundamental circuit is not unique", NonUniqueCircuitWarning, stacklevel=2)
        return self.names(found[0])

    def fundamental_graph(self, b: Iterable[str] | int) -> FundamentalGraph:
        bm = self._basis(b)
        circuit_of = {}
        for f in bits(bm):
            found = self._fundamental_circuits(bm, self.partition.class_of[f])
            if len(found) != 1:
                raise TightnessViolation(f"expected one fundamental circuit for {self.labels[f]}, got {len(found)}")
            circuit_of[f] = found[0]
        edges = set()
        for f, c in circuit_of.items():
            for e in bits(c & bm):
                if e == f:
                    continue
                if not circuit_of[e] >> f & 1:
                    raise TightnessViolation(f"fundamental graph not symmetric at {self.labels[e]}, {self.labels[f]}")
                edges.add(frozenset((self.labels[e], self.labels[f])))
        return FundamentalGraph(self.names(bm), frozenset(edges))

    # -- constructive lemmas ------------------------------------------

    def scum_lift(self, a: Iterable[str] | int, e: str) -> tuple[str, ...]:
        """An independent ``I`` containing ``e`` with ``Q|I == Q|A``.

        Elements of ``A - e`` are absorbed one at a time, lowest index first,
        into the minor built so far. An element that is singular in that
        minor is swapped for the lowest rank-one member of its class; the two
        give the same minor because the class is singular.
        """
        am = self._subtransversal(a)
        ei = self.partition.index.get(e)
        if ei is None or not am >> ei & 1:
            raise PreconditionError(f"{e!r} is not in A")
        if not self.is_nondegenerate():
            raise PreconditionError("multimatroid is degenerate")
        if self.rank_mask(1 << ei) != 1:
            raise PreconditionError(f"r({e}) must be 1")
        chosen = [e]
        current = self.minor([e])
        for i in bits(am & ~(1 << ei)):
            x = self.labels[i]
            if current.rank([x]) == 1:
                chosen.append(x)
                current = current.minor([x])
                continue
            k = current.partition.class_index(x)
            y = next(z for z in current.classes[k] if z != x and current.rank([z]) == 1)
            chosen.append(y)
            current = current.minor([y])
        return self.names(self.mask(chosen))

    def circuit_in_separator(self, e: str, x: Iterable[str]) -> tuple[str, ...]:
        """A circuit ``C`` with ``e in C`` and ``C`` inside ``X + e``.

        ``X`` must be a proper separator of ``Q|e``.
        """
        if not self.is_tight():
            raise PreconditionError("Q is not tight")
        if not self.is_connected():
            raise PreconditionError("Q is not connected")
        qe = self.minor([e])
        if qe.is_connected():
            raise PreconditionError(f"Q|{e} is connected")
        xs = set(x)
        if not xs or xs == set(qe.labels):
            raise PreconditionError("X is not a proper separator of Q|e")
        if not xs <= set(qe.labels):
            raise PreconditionError("X is not a subset of the ground set of Q|e")
        class_set = qe.partition.classes_met(qe.mask(xs))
        if qe.partition.union_of_classes(class_set) != qe.mask(xs) or not qe.is_separator_classes(class_set):
            raise PreconditionError("X is not a separator of Q|e")
        ei = self.partition.index[e]
        b = next(bb for bb in self._bases_list if bb >> ei & 1)
        graph = self.fundamental_graph(b)
        near = sorted(graph.neighbours(e) & xs, key=self.partition.index.__getitem__)
        if not near:
            raise TightnessViolation(f"no neighbour of {e} inside X in the fundamental graph")
        circuit = self.fundamental_circuit(b, near[0])
        if e not in circuit or not set(circuit) <= xs | {e}:
            raise TightnessViolation(f"circuit {circuit} is not inside X + {e}")
        return circuit

    # -- minor containment and isomorphism ------------------------------

    def find_minor(self, other: Multimatroid) -> tuple[str, ...] | None:
        """A subtransversal ``S`` with ``Q|S == other`` (labelled), or ``None``."""
        mine = {frozenset(c): k for k, c in enumerate(self.classes)}
        theirs = [frozenset(c) for c in other.classes]
        if any(c not in mine for c in theirs):
            return None
        present = 0
        for c in theirs:
            present |= 1 << mine[c]
        absent = ((1 << len(self.partition)) - 1) & ~present
        for s in self.partition.transversals(absent):
            if self.minor(s) == other:
                return self.names(s)
        return None

    def has_minor(self, other: Multimatroid) -> bool:
        return self.find_minor(other) is not None

    def is_isomorphic(self, other: Multimatroid) -> bool:
        if len(self.bases) != len(other.bases):
            return False
        sizes = sorted(len(c) for c in self.classes)
        if sizes != sorted(len(c) for c in other.classes):
            return False
        target = other.bases
        n = len(self.classes)
        for perm in itertools.permutations(range(n)):
            if any(len(self.classes[k]) != len(other.classes[perm[k]]) for k in range(n)):
                continue
            # images[k] is one bijection from class k onto class perm[k]
            per_class = [
                list(itertools.permutations(other.classes[perm[k]])) for k in range(n)
            ]
            for choice in itertools.product(*per_class):
                image = {}
                for k, imgs in enumerate(choice):
                    for src, dst in zip(self.classes[k], imgs):
                        image[self.partition.index[src]] = 1 << other.partition.index[dst]
                if all(sum(image[i] for i in bits(b)) in target for b in self._bases_list):
                    return True
        return False


# -- module-level API --------------------------------------------------------


def rank(q: Multimatroid, a: Iterable[str]) -> int:
    return q.rank(a)


def minor(q: Multimatroid, a: Iterable[str]) -> Multimatroid:
    return q.minor(a)


def circuits(q: Multimatroid) -> list[tuple[str, ...]]:
    return q.circuits()


def is_tight(q: Multimatroid) -> bool:
    return q.is_tight()


def is_connected(q: Multimatroid) -> bool:
    return q.is_connected()


def direct_sum(q1: Multimatroid, q2: Multimatroid) -> Multimatroid:
    return q1.direct_sum(q2)


def has_minor(q: Multimatroid, other: Multimatroid) -> bool:
    return q.has_minor(other)


def is_isomorphic(q: Multimatroid, other: Multimatroid) -> bool:
    return q.is_isomorphic(other)


def separators_from_graph(q: Multimatroid, b: Iterable[str] | int) -> list[tuple[str, ...]]:
    """Separators generated by unions of components of the fundamental graph."""
    graph = q.fundamental_graph(b)
    comps = graph.components()
    out = set()
    for r in range(len(comps) + 1):
        for chosen in itertools.combinations(comps, r):
            cs = 0
            for comp in chosen:
                for v in comp:
                    cs |= 1 << q.partition.class_index(v)
            out.add(q.partition.union_of_classes(cs))
    return [q.names(m) for m in sorted(out)]

