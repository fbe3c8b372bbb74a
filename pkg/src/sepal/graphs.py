"""Directed, separated, bipartite separated, and weighted graphs.

The data model is deliberately small.  A directed graph is an ordered tuple
of vertex names together with an ordered tuple of named edges; a separated
graph adds, for each vertex, a partition of its outgoing edges into groups;
a bipartite separated graph splits the vertices into an upper and a lower
level with all edges pointing down; a weighted graph attaches a positive
integer to every edge.

All graph values are immutable after construction and hashable, so they can
be shared freely between algebra carriers, caches and test fixtures.
Constructors never raise on semantically malformed data: ``validate``
returns a list of human-readable violations and ``require_valid`` turns a
non-empty report into a ``GraphError``.  Operations that assume a valid
graph call ``require_valid`` up front.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence, Union

Edge = tuple[str, str, str]  # (name, source vertex, range vertex)


class GraphError(ValueError):
    """An operation received a structurally invalid graph or argument."""


def _check_names(kind: str, names: Iterable[str], out: list[str]) -> None:
    seen = Counter(names)
    for name, count in seen.items():
        if count > 1:
            out.append(f"duplicate {kind} name {name!r}")
        if not name:
            out.append(f"empty {kind} name")
        elif any(c.isspace() or c == "#" for c in name):
            out.append(f"{kind} name {name!r} contains whitespace or '#'")


@dataclass(frozen=True)
class DirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...]

    @staticmethod
    def make(vertices: Iterable[str], edges: Iterable[Sequence[str]]) -> "DirectedGraph":
        return DirectedGraph(tuple(vertices), tuple((e[0], e[1], e[2]) for e in edges))

    @cached_property
    def vertex_set(self) -> frozenset[str]:
        return frozenset(self.vertices)

    @cached_property
    def edge_names(self) -> tuple[str, ...]:
        return tuple(e[0] for e in self.edges)

    @cached_property
    def _ends(self) -> dict[str, tuple[str, str]]:
        return {name: (s, r) for name, s, r in self.edges}

    @cached_property
    def out_edges(self) -> dict[str, tuple[str, ...]]:
        fibers: dict[str, list[str]] = {v: [] for v in self.vertices}
        for name, s, _ in self.edges:
            fibers.setdefault(s, []).append(name)
        return {v: tuple(es) for v, es in fibers.items()}

    @cached_property
    def in_edges(self) -> dict[str, tuple[str, ...]]:
        fibers: dict[str, list[str]] = {v: [] for v in self.vertices}
        for name, _, r in self.edges:
            fibers.setdefault(r, []).append(name)
        return {v: tuple(es) for v, es in fibers.items()}

    def src(self, edge: str) -> str:
        return self._ends[edge][0]

    def rng(self, edge: str) -> str:
        return self._ends[edge][1]

    @property
    def separated(self) -> "SeparatedGraph":
        raise GraphError("plain directed graph carries no separation")


@dataclass(frozen=True)
class SeparatedGraph:
    """A directed graph with each source fiber partitioned into edge groups.

    ``separation`` holds ``(vertex, groups)`` pairs in vertex order, where
    ``groups`` is a tuple of edge-name tuples.  Group order is significant
    (resolutions enumerate group tuples in this order); within a group the
    names are stored sorted.  Vertices with no outgoing edges carry no entry.
    """

    graph: DirectedGraph
    separation: tuple[tuple[str, tuple[tuple[str, ...], ...]], ...]

    @staticmethod
    def make(graph: DirectedGraph,
             separation: Mapping[str, Iterable[Iterable[str]]]) -> "SeparatedGraph":
        entries = []
        for v in graph.vertices:
            if v not in separation:
                continue
            groups = tuple(tuple(sorted(set(g))) for g in separation[v])
            groups = tuple(g for g in groups if g)
            if groups:
                entries.append((v, groups))
        for v in separation:
            if v not in graph.vertex_set:
                groups = tuple(tuple(sorted(set(g))) for g in separation[v])
                entries.append((v, groups))
        return SeparatedGraph(graph, tuple(entries))

    @staticmethod
    def with_trivial_separation(graph: DirectedGraph) -> "SeparatedGraph":
        """One group per vertex: the ordinary (non-separated) convention."""
        return SeparatedGraph.make(
            graph, {v: [graph.out_edges[v]] for v in graph.vertices if graph.out_edges.get(v)})

    @cached_property
    def sep(self) -> dict[str, tuple[tuple[str, ...], ...]]:
        return dict(self.separation)

    @cached_property
    def group_of(self) -> dict[str, tuple[str, ...]]:
        """Edge name -> the group tuple containing it."""
        table: dict[str, tuple[str, ...]] = {}
        for _, groups in self.separation:
            for g in groups:
                for e in g:
                    table[e] = g
        return table

    @cached_property
    def group_key(self) -> dict[str, tuple[str, int]]:
        """Edge name -> (vertex, group index), identifying its group."""
        table: dict[str, tuple[str, int]] = {}
        for v, groups in self.separation:
            for i, g in enumerate(groups):
                for e in g:
                    table[e] = (v, i)
        return table

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges

    @property
    def separated(self) -> "SeparatedGraph":
        return self


@dataclass(frozen=True)
class BipartiteSeparatedGraph:
    base: SeparatedGraph
    upper: tuple[str, ...]
    lower: tuple[str, ...]

    @staticmethod
    def make(base: SeparatedGraph, upper: Iterable[str] | None = None,
             lower: Iterable[str] | None = None) -> "BipartiteSeparatedGraph":
        """Wrap ``base``; if levels are omitted, vertices with outgoing edges
        go up and all others go down."""
        g = base.graph
        if upper is None and lower is None:
            upper = tuple(v for v in g.vertices if g.out_edges.get(v))
            lower = tuple(v for v in g.vertices if not g.out_edges.get(v))
        elif upper is None or lower is None:
            raise GraphError("give both levels or neither")
        return BipartiteSeparatedGraph(base, tuple(upper), tuple(lower))

    @cached_property
    def upper_set(self) -> frozenset[str]:
        return frozenset(self.upper)

    @cached_property
    def lower_set(self) -> frozenset[str]:
        return frozenset(self.lower)

    @cached_property
    def is_proper(self) -> bool:
        """Every upper vertex emits an edge and every lower vertex receives one."""
        g = self.base.graph
        return (all(g.out_edges.get(v) for v in self.upper)
                and all(g.in_edges.get(w) for w in self.lower))

    @property
    def graph(self) -> DirectedGraph:
        return self.base.graph

    @property
    def separation(self):
        return self.base.separation

    @property
    def sep(self):
        return self.base.sep

    @property
    def group_of(self):
        return self.base.group_of

    @property
    def group_key(self):
        return self.base.group_key

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.base.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.base.graph.edges

    @property
    def separated(self) -> SeparatedGraph:
        return self.base


@dataclass(frozen=True)
class WeightedGraph:
    graph: DirectedGraph
    weights: tuple[tuple[str, int], ...]  # in edge order

    @staticmethod
    def make(graph: DirectedGraph, weights: Mapping[str, int]) -> "WeightedGraph":
        listed = tuple((e, weights[e]) for e in graph.edge_names if e in weights)
        extra = tuple((e, w) for e, w in weights.items() if e not in graph._ends)
        return WeightedGraph(graph, listed + extra)

    @cached_property
    def w(self) -> dict[str, int]:
        return dict(self.weights)

    def weight(self, edge: str) -> int:
        return self.w[edge]

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.graph.vertices

    @property
    def edges(self) -> tuple[Edge, ...]:
        return self.graph.edges


AnyGraph = Union[DirectedGraph, SeparatedGraph, BipartiteSeparatedGraph, WeightedGraph]


# ---------------------------------------------------------------------------
# validation


def _validate_directed(g: DirectedGraph) -> list[str]:
    out: list[str] = []
    _check_names("vertex", g.vertices, out)
    _check_names("edge", (e[0] for e in g.edges), out)
    for name, s, r in g.edges:
        if s not in g.vertex_set:
            out.append(f"edge {name!r} has unknown source {s!r}")
        if r not in g.vertex_set:
            out.append(f"edge {name!r} has unknown range {r!r}")
    for name in g.vertex_set & set(g.edge_names):
        out.append(f"name {name!r} used for both a vertex and an edge")
    return out


def _validate_separated(g: SeparatedGraph) -> list[str]:
    out = _validate_directed(g.graph)
    known = set(g.graph.edge_names)
    for v, groups in g.separation:
        if v not in g.graph.vertex_set:
            out.append(f"separation given for unknown vertex {v!r}")
            continue
        fiber = set(g.graph.out_edges.get(v, ()))
        listed: list[str] = []
        for grp in groups:
            if not grp:
                out.append(f"empty separation group at {v!r}")
            for e in grp:
                if e not in known:
                    out.append(f"separation of {v!r} lists unknown edge {e!r}")
                elif e not in fiber:
                    out.append(f"separation of {v!r} lists edge {e!r} outside s^-1({v})")
                listed.append(e)
        dupes = [e for e, c in Counter(listed).items() if c > 1]
        for e in dupes:
            out.append(f"separation groups at {v!r} overlap on edge {e!r}")
        missing = fiber - set(listed)
        if missing:
            out.append(f"separation does not cover s^-1({v}): missing "
                       + ", ".join(sorted(missing)))
    covered = {v for v, _ in g.separation}
    for v in g.graph.vertices:
        if g.graph.out_edges.get(v) and v not in covered:
            out.append(f"separation does not cover s^-1({v}): no groups given")
    return out


def _validate_bipartite(g: BipartiteSeparatedGraph) -> list[str]:
    out = _validate_separated(g.base)
    both = g.upper_set & g.lower_set
    for v in sorted(both):
        out.append(f"vertex {v!r} appears on both levels")
    uncovered = g.base.graph.vertex_set - g.upper_set - g.lower_set
    for v in sorted(uncovered):
        out.append(f"vertex {v!r} assigned to neither level")
    for v in sorted((g.upper_set | g.lower_set) - g.base.graph.vertex_set):
        out.append(f"level assignment names unknown vertex {v!r}")
    for name, s, r in g.base.graph.edges:
        if s in g.lower_set:
            out.append(f"edge {name!r} starts at lower vertex {s!r}")
        if r in g.upper_set:
            out.append(f"edge {name!r} ends at upper vertex {r!r}")
    return out


def _validate_weighted(g: WeightedGraph) -> list[str]:
    out = _validate_directed(g.graph)
    names = set(g.graph.edge_names)
    for e, w in g.weights:
        if e not in names:
            out.append(f"weight given for unknown edge {e!r}")
        if w <= 0:
            out.append(f"weight of {e!r} is {w}; weights are positive integers")
    weighted = {e for e, _ in g.weights}
    for e in g.graph.edge_names:
        if e not in weighted:
            out.append(f"edge {e!r} has no weight")
    for v in g.graph.vertices:
        if not g.graph.out_edges.get(v) and not g.graph.in_edges.get(v):
            out.append(f"isolated vertex {v!r}")
    return out


def validate(g: AnyGraph) -> list[str]:
    """Return a list of violated invariants; empty means the graph is valid."""
    if isinstance(g, BipartiteSeparatedGraph):
        return _validate_bipartite(g)
    if isinstance(g, SeparatedGraph):
        return _validate_separated(g)
    if isinstance(g, WeightedGraph):
        return _validate_weighted(g)
    if isinstance(g, DirectedGraph):
        return _validate_directed(g)
    raise TypeError(f"not a graph: {type(g).__name__}")


def require_valid(g: AnyGraph) -> None:
    report = validate(g)
    if report:
        raise GraphError("; ".join(report))


# ---------------------------------------------------------------------------
# classification


@dataclass(frozen=True)
class GraphFlags:
    row_finite: bool
    locally_finite: bool
    bipartiteable: bool
    regular: tuple[str, ...]
    sinks: tuple[str, ...]
    isolated: tuple[str, ...]


def _directed_of(g: AnyGraph) -> DirectedGraph:
    return g if isinstance(g, DirectedGraph) else g.graph


def classify(g: AnyGraph) -> GraphFlags:
    """Compute finiteness flags and the regular / sink / isolated vertex sets."""
    d = _directed_of(g)
    require_valid(d)
    regular = tuple(v for v in d.vertices if d.out_edges.get(v))
    sinks = tuple(v for v in d.vertices if not d.out_edges.get(v))
    isolated = tuple(v for v in sinks if not d.in_edges.get(v))
    # every fiber of a finite graph is finite, so both flags are exact
    bipartiteable = all(not d.out_edges.get(v) or not d.in_edges.get(v)
                        for v in d.vertices)
    return GraphFlags(row_finite=True, locally_finite=True,
                      bipartiteable=bipartiteable, regular=regular,
                      sinks=sinks, isolated=isolated)


def vertex_weight(g: WeightedGraph, v: str) -> int:
    """Largest weight on the outgoing edges of ``v``; 0 at a sink."""
    if v not in g.graph.vertex_set:
        raise GraphError(f"unknown vertex {v!r}")
    fiber = g.graph.out_edges.get(v, ())
    return max((g.w[e] for e in fiber), default=0)


def is_vertex_weighted(g: WeightedGraph) -> bool:
    """True when every edge carries the weight of its source vertex."""
    return all(g.w[e] == vertex_weight(g, s) for e, s, _ in g.graph.edges)


def as_bipartite(g: SeparatedGraph | BipartiteSeparatedGraph) -> BipartiteSeparatedGraph:
    """View a separated graph as bipartite, inferring the levels; error if
    some vertex both emits and receives edges."""
    if isinstance(g, BipartiteSeparatedGraph):
        return g
    if not isinstance(g, SeparatedGraph):
        raise GraphError(f"expected a separated graph, got {type(g).__name__}")
    b = BipartiteSeparatedGraph.make(g)
    report = _validate_bipartite(b)
    if report:
        raise GraphError("not bipartite: " + "; ".join(report))
    return b
