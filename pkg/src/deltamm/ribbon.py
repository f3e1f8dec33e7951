"""Ribbon graphs as signed rotation systems.

Each half-edge has two sides, ``+`` (towards the next half-edge in the
rotation) and ``-`` (towards the previous one). These sides are the flags
of the ribbon graph and carry three involutions:

* ``arc`` joins ``(h, +)`` to ``(next(h), -)`` along the vertex boundary;
* ``side`` joins ``(h, +)`` to ``(h, -)`` across the end of the edge;
* ``edge`` joins the two ends of an edge along its long sides: ``+`` to
  ``-`` for an untwisted edge and ``+`` to ``+`` for a twisted one.

Vertices are orbits of ``arc``/``side``, boundary components are orbits
of ``arc``/``edge``, and the partial dual in an edge swaps the roles of
``side`` and ``edge`` on that edge's flags.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .delta import DeltaMatroid

MAX_EDGES = 8
MAX_VERTICES = 8

PLUS, MINUS = 0, 1


class RibbonGraphError(ValueError):
    pass


@dataclass(frozen=True)
class Edge:
    halves: tuple[str, str]
    twisted: bool = False


@dataclass(frozen=True)
class RibbonGraph:
    vertices: tuple[tuple[str, ...], ...]
    edges: Mapping[str, Edge]
    _where: dict = field(init=False, repr=False, compare=False)
    _owner: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(tuple(v) for v in self.vertices)
        edges = {
            label: e if isinstance(e, Edge) else Edge(tuple(e[0]), bool(e[1]))
            for label, e in dict(self.edges).items()
        }
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", dict(sorted(edges.items())))
        if len(edges) > MAX_EDGES:
            raise RibbonGraphError(f"at most {MAX_EDGES} edges supported, got {len(edges)}")
        if len(vertices) > MAX_VERTICES:
            raise RibbonGraphError(f"at most {MAX_VERTICES} vertices supported, got {len(vertices)}")
        where = {}
        for vi, rot in enumerate(vertices):
            for pos, h in enumerate(rot):
                if h in where:
                    raise RibbonGraphError(f"half-edge {h!r} appears more than once")
                where[h] = (vi, pos)
        owner = {}
        for label, e in edges.items():
            if len(e.halves) != 2 or e.halves[0] == e.halves[1]:
                raise RibbonGraphError(f"edge {label!r} needs two distinct half-edges")
            for h in e.halves:
                if h in owner:
                    raise RibbonGraphError(f"half-edge {h!r} belongs to two edges")
                if h not in where:
                    raise RibbonGraphError(f"half-edge {h!r} of edge {label!r} is not at any vertex")
                owner[h] = label
        stray = set(where) - set(owner)
        if stray:
            raise RibbonGraphError(f"half-edges without an edge: {sorted(stray)}")
        object.__setattr__(self, "_where", where)
        object.__setattr__(self, "_owner", owner)

    def __hash__(self):
        return hash((self.vertices, tuple(self.edges.items())))

    @classmethod
    def from_words(cls, rotations: Sequence[Sequence[str]], twisted: Iterable[str] = ()) -> RibbonGraph:
        """Build from rotations written as edge labels, e.g. ``[["a", "b", "a", "b"]]``.

        Each label must occur exactly twice overall; the first occurrence
        becomes half-edge ``<label>1`` and the second ``<label>2``.
        """
        seen: dict[str, int] = {}
        vertices = []
        for word in rotations:
            rot = []
            for label in word:
                seen[label] = seen.get(label, 0) + 1
                rot.append(f"{label}{seen[label]}")
            vertices.append(tuple(rot))
        bad = [x for x, k in seen.items() if k != 2]
        if bad:
            raise RibbonGraphError(f"edge labels must occur exactly twice: {bad}")
        twisted = set(twisted)
        edges = {x: Edge((f"{x}1", f"{x}2"), x in twisted) for x in seen}
        return cls(tuple(vertices), edges)

    # -- basic queries ------------------------------------------------

    @property
    def edge_labels(self) -> tuple[str, ...]:
        return tuple(self.edges)

    def _check_edges(self, labels: Iterable[str]) -> set[str]:
        labels = set(labels)
        unknown = labels - set(self.edges)
        if unknown:
            raise RibbonGraphError(f"unknown edges: {sorted(unknown)}")
        return labels

    def ends(self, label: str) -> tuple[int, int]:
        e = self.edges[label]
        return self._where[e.halves[0]][0], self._where[e.halves[1]][0]

    def is_loop(self, label: str) -> bool:
        u, v = self.ends(label)
        return u == v

    def components(self, edges: Iterable[str] | None = None) -> int:
        """Connected components of the spanning subgraph on ``edges``."""
        labels = self.edge_labels if edges is None else self._check_edges(edges)
        parent = list(range(len(self.vertices)))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for label in labels:
            u, v = self.ends(label)
            parent[find(u)] = find(v)
        return len({find(x) for x in range(len(self.vertices))})

    def is_connected(self) -> bool:
        return self.components() <= 1

    # -- flags --------------------------------------------------------

    def _flags(self, keep: set[str] | None = None):
        """Involutions on flags of the sub-ribbon-graph with edges ``keep``.

        Returns ``(flags, arc, side, edge, label, empty)`` where flags are
        ``(half-edge, side)`` pairs and ``empty`` counts vertices without
        any remaining half-edge.
        """
        arc, side, edge, label = {}, {}, {}, {}
        empty = 0
        for rot in self.vertices:
            hs = [h for h in rot if keep is None or self._owner[h] in keep]
            if not hs:
                empty += 1
                continue
            for i, h in enumerate(hs):
                nxt = hs[(i + 1) % len(hs)]
                arc[(h, PLUS)] = (nxt, MINUS)
                arc[(nxt, MINUS)] = (h, PLUS)
                side[(h, PLUS)] = (h, MINUS)
                side[(h, MINUS)] = (h, PLUS)
        for name, e in self.edges.items():
            if keep is not None and name not in keep:
                continue
            h1, h2 = e.halves
            if e.twisted:
                pairs = (((h1, PLUS), (h2, PLUS)), ((h1, MINUS), (h2, MINUS)))
            else:
                pairs = (((h1, PLUS), (h2, MINUS)), ((h1, MINUS), (h2, PLUS)))
            for f, g in pairs:
                edge[f], edge[g] = g, f
            for f in ((h1, PLUS), (h1, MINUS), (h2, PLUS), (h2, MINUS)):
                label[f] = name
        return list(arc), arc, side, edge, label, empty

    @staticmethod
    def _orbits(flags, *involutions) -> list[list]:
        seen = set()
        out = []
        for f in flags:
            if f in seen:
                continue
            orbit = []
            stack = [f]
            seen.add(f)
            while stack:
                g = stack.pop()
                orbit.append(g)
                for inv in involutions:
                    h = inv[g]
                    if h not in seen:
                        seen.add(h)
                        stack.append(h)
            out.append(orbit)
        return out

    def boundary_components(self, edges: Iterable[str] | None = None) -> int:
        """Boundary components of the spanning ribbon subgraph on ``edges``."""
        keep = set(self.edge_labels) if edges is None else self._check_edges(edges)
        flags, arc, _side, edge, _label, empty = self._flags(keep)
        return len(self._orbits(flags, arc, edge)) + empty

    # -- delta-matroid ------------------------------------------------

    def delta_matroid(self) -> DeltaMatroid:
        """Quasi-trees: edge sets whose boundary count equals the component count of ``G``."""
        labels = self.edge_labels
        target = self.components()
        fam = set()
        for m in range(1 << len(labels)):
            chosen = [labels[i] for i in range(len(labels)) if m >> i & 1]
            if self.boundary_components(chosen) == target:
                fam.add(m)
        return DeltaMatroid(labels, frozenset(fam))

    def is_orientable(self) -> bool:
        colour: dict[int, int] = {}
        adj: dict[int, list[tuple[int, int]]] = {v: [] for v in range(len(self.vertices))}
        for name, e in self.edges.items():
            u, v = self.ends(name)
            adj[u].append((v, int(e.twisted)))
            adj[v].append((u, int(e.twisted)))
        for start in adj:
            if start in colour:
                continue
            colour[start] = 0
            stack = [start]
            while stack:
                u = stack.pop()
                for v, t in adj[u]:
                    want = colour[u] ^ t
                    if v not in colour:
                        colour[v] = want
                        stack.append(v)
                    elif colour[v] != want:
                        return False
        return True

    def is_2_connected(self) -> bool:
        return self.is_connected() and self.delta_matroid().is_connected()

    # -- edge operations ----------------------------------------------

    def delete_edge(self, label: str) -> RibbonGraph:
        self._check_edges([label])
        drop = set(self.edges[label].halves)
        vertices = tuple(tuple(h for h in rot if h not in drop) for rot in self.vertices)
        edges = {k: e for k, e in self.edges.items() if k != label}
        return RibbonGraph(vertices, edges)

    def delete_vertex(self, index: int) -> RibbonGraph:
        if not 0 <= index < len(self.vertices):
            raise RibbonGraphError(f"no vertex {index}")
        gone = {self._owner[h] for h in self.vertices[index]}
        g = self
        for label in sorted(gone):
            g = g.delete_edge(label)
        return RibbonGraph(g.vertices[:index] + g.vertices[index + 1:], g.edges)

    def half_twist(self, labels: Iterable[str]) -> RibbonGraph:
        flip = self._check_edges(labels)
        edges = {k: Edge(e.halves, e.twisted ^ (k in flip)) for k, e in self.edges.items()}
        return RibbonGraph(self.vertices, edges)

    def partial_dual(self, labels: Iterable[str]) -> RibbonGraph:
        dual = self._check_edges(labels)
        if not dual:
            return self
        flags, arc, side, edge, label, _empty = self._flags()
        new_side = {f: (edge[f] if label[f] in dual else side[f]) for f in flags}
        new_edge = {f: (side[f] if label[f] in dual else edge[f]) for f in flags}

        def name(f):
            # the new half-edge is {f, new_side[f]}
            if label[f] not in dual:
                return f[0]
            h1, h2 = self.edges[label[f]].halves
            return h1 if (h1, PLUS) in (f, new_side[f]) else h2

        sign = {}
        vertices = []
        seen = set()
        order = {f: i for i, f in enumerate(flags)}
        for rot in self.vertices:
            if not rot:
                vertices.append(())
                continue
            for h in rot:
                for start in ((h, PLUS), (h, MINUS)):
                    if start in seen:
                        continue
                    start = min(self._orbits([start], arc, new_side)[0], key=order.__getitem__)
                    rotation = []
                    f = start
                    while True:
                        g = new_side[f]
                        sign[f], sign[g] = MINUS, PLUS
                        seen.add(f)
                        seen.add(g)
                        rotation.append(name(f))
                        f = arc[g]
                        if f == start:
                            break
                    vertices.append(tuple(rotation))
        edges = {}
        for k, e in self.edges.items():
            # (h1, +) lies on new half-edge h1 and new_edge takes it to half-edge h2
            f = (e.halves[0], PLUS)
            edges[k] = Edge(e.halves, sign[f] == sign[new_edge[f]])
        return RibbonGraph(tuple(vertices), edges)

    def contract_edge(self, label: str) -> RibbonGraph:
        """``G/e``, taken to be ``(G*e) - e``."""
        return self.partial_dual([label]).delete_edge(label)

    def twist_contract(self, label: str) -> RibbonGraph:
        return self.half_twist([label]).contract_edge(label)

    def bar_star(self, labels: Iterable[str]) -> RibbonGraph:
        labels = list(labels)
        return self.half_twist(labels).partial_dual(labels).half_twist(labels)

    # -- equivalence --------------------------------------------------

    def canonical_form(self) -> tuple:
        """A label-preserving invariant that identifies equivalent ribbon graphs."""
        flags, arc, side, edge, label, empty = self._flags()
        codes = []
        for orbit in self._orbits(flags, arc, side, edge):
            best = None
            for start in orbit:
                number = {start: 0}
                queue = [start]
                code = []
                i = 0
                while i < len(queue):
                    f = queue[i]
                    i += 1
                    row = [label[f]]
                    for inv in (edge, arc, side):
                        g = inv[f]
                        if g not in number:
                            number[g] = len(queue)
                            queue.append(g)
                        row.append(number[g])
                    code.append(tuple(row))
                code = tuple(code)
                if best is None or code < best:
                    best = code
            codes.append(best)
        return (empty, tuple(sorted(codes)))

    def is_equivalent(self, other: RibbonGraph) -> bool:
        return self.canonical_form() == other.canonical_form()

    # -- serialisation ------------------------------------------------

    def to_json(self) -> dict:
        return {
            "vertices": [list(v) for v in self.vertices],
            "edges": {k: {"halves": list(e.halves), "twisted": e.twisted} for k, e in self.edges.items()},
        }

    @classmethod
    def from_json(cls, doc: Mapping) -> RibbonGraph:
        try:
            vertices = tuple(tuple(v) for v in doc["vertices"])
            edges = {
                k: Edge(tuple(v["halves"]), bool(v.get("twisted", False)))
                for k, v in doc["edges"].items()
            }
        except (KeyError, TypeError, AttributeError) as exc:
            raise RibbonGraphError(f"malformed ribbon graph document: {exc}") from exc
        return cls(vertices, edges)


def boundary_components(g: RibbonGraph, edges: Iterable[str]) -> int:
    return g.boundary_components(edges)


def delta_matroid_of(g: RibbonGraph) -> DeltaMatroid:
    return g.delta_matroid()


def delete_edge(g: RibbonGraph, label: str) -> RibbonGraph:
    return g.delete_edge(label)


def contract_edge(g: RibbonGraph, label: str) -> RibbonGraph:
    return g.contract_edge(label)


def partial_dual(g: RibbonGraph, labels: Iterable[str]) -> RibbonGraph:
    return g.partial_dual(labels)


def half_twist(g: RibbonGraph, labels: Iterable[str]) -> RibbonGraph:
    return g.half_twist(labels)


def twist_contract(g: RibbonGraph, label: str) -> RibbonGraph:
    return g.twist_contract(label)


def is_orientable(g: RibbonGraph) -> bool:
    return g.is_orientable()


def is_2_connected(g: RibbonGraph) -> bool:
    return g.is_2_connected()
