"""Graph-to-graph constructions and hereditary saturated-subset machinery.

Covers the builder for the two-vertex multi-edge graphs with a two-group
separation, the two translations from weighted graphs to bipartite separated
graphs (one for the vertex-weighted case, one in general), the one-step
resolution with its iterated tower, and the lattice of hereditary
group-saturated vertex sets with closures and quotients.

Every function is pure and returns new immutable graphs.  Names of generated
vertices and edges are canonical strings, so two runs over equal inputs
produce identical graphs; downstream comparisons rely on this.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graphs import (
    BipartiteSeparatedGraph,
    DirectedGraph,
    GraphError,
    SeparatedGraph,
    WeightedGraph,
    is_vertex_weighted,
    require_valid,
    validate,
    vertex_weight,
)


class ResourceLimitError(RuntimeError):
    """An enumeration would exceed its configured size cap."""


def to_separated(g) -> SeparatedGraph:
    try:
        return g.separated
    except AttributeError:
        raise GraphError(f"expected a separated graph, got {type(g).__name__}")


# ---------------------------------------------------------------------------
# canonical names for generated graphs


def name_upper_copy(v: str) -> str:
    return f"{v}_0"


def name_lower_copy(v: str) -> str:
    return f"{v}_1"


def name_tilde(e: str) -> str:
    return f"{e}~"


def name_h(v: str, i: int) -> str:
    return f"h({v},{i})"


def name_tuple_vertex(parts: Sequence[str]) -> str:
    return "v(" + ",".join(parts) + ")"


def name_alpha(over: str, rest: Sequence[str]) -> str:
    return f"a^{over}(" + ",".join(rest) + ")"


def name_slot_vertex(e: str, i: int) -> str:
    return f"v({e},{i})"


def name_slot_edge(i: int, e: str) -> str:
    return f"a{i}({e})"


def name_edge_slot(e: str, i: int) -> str:
    return f"a^{e}({i})"


# ---------------------------------------------------------------------------
# builders


def build_emn(m: int, n: int) -> BipartiteSeparatedGraph:
    """Two vertices, n+m parallel edges v->w, outgoing fiber split into a
    group of n and a group of m edges."""
    if m < 1 or n < m:
        raise GraphError(f"need 1 <= m <= n, got m={m}, n={n}")
    edges = [(f"e{i}", "v", "w") for i in range(1, n + 1)]
    edges += [(f"f{i}", "v", "w") for i in range(1, m + 1)]
    graph = DirectedGraph.make(("v", "w"), edges)
    sep = SeparatedGraph.make(graph, {
        "v": [[e for e, _, _ in edges[:n]], [f for f, _, _ in edges[n:]]],
    })
    return BipartiteSeparatedGraph.make(sep, upper=("v",), lower=("w",))


def weighted_completion(g: WeightedGraph) -> WeightedGraph:
    """Raise every edge weight to the weight of its source vertex."""
    require_valid(g)
    return WeightedGraph.make(
        g.graph, {e: vertex_weight(g, s) for e, s, _ in g.graph.edges})


def separated_of_vertex_weighted(g: WeightedGraph) -> BipartiteSeparatedGraph:
    """Bipartite separated double of a vertex-weighted graph.

    Regular vertices get an upper copy v_0, every vertex a lower copy v_1.
    Each edge e becomes e~ from s(e)_0 to r(e)_1, and each regular v gets
    parallel edges h(v,i) from v_0 to v_1, one per weight slot.  The fiber
    at v_0 is split into the tilde group and the h group, in that order;
    resolution tuples below depend on this order.
    """
    require_valid(g)
    if not is_vertex_weighted(g):
        raise GraphError("edge weights must equal their source vertex weight")
    d = g.graph
    regular = [v for v in d.vertices if d.out_edges.get(v)]
    upper = tuple(name_upper_copy(v) for v in regular)
    lower = tuple(name_lower_copy(v) for v in d.vertices)
    edges: list[tuple[str, str, str]] = []
    sep: dict[str, list[list[str]]] = {}
    for v in regular:
        tildes = [name_tilde(e) for e in d.out_edges[v]]
        hs = [name_h(v, i) for i in range(1, vertex_weight(g, v) + 1)]
        edges += [(name_tilde(e), name_upper_copy(v), name_lower_copy(d.rng(e)))
                  for e in d.out_edges[v]]
        edges += [(h, name_upper_copy(v), name_lower_copy(v)) for h in hs]
        sep[name_upper_copy(v)] = [tildes, hs]
    graph = DirectedGraph.make(upper + lower, edges)
    out = BipartiteSeparatedGraph.make(SeparatedGraph.make(graph, sep),
                                       upper=upper, lower=lower)
    require_valid(out)
    return out


def one_step_resolution(g: BipartiteSeparatedGraph) -> BipartiteSeparatedGraph:
    """Resolve each upper fiber: new lower vertices are the choice tuples
    across the groups of an upper vertex, and each old edge x spawns the
    group of edges a^x(...) out of r(x), one per complementary tuple."""
    require_valid(g)
    if not g.is_proper:
        raise GraphError("one-step resolution needs a proper bipartite graph")
    d = g.base.graph
    new_upper = tuple(g.lower)
    new_lower: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for u in g.upper:
        groups = g.sep[u]
        for tup in itertools.product(*groups):
            tv = name_tuple_vertex(tup)
            new_lower.append(tv)
            for i, x in enumerate(tup):
                rest = tup[:i] + tup[i + 1:]
                edges.append((name_alpha(x, rest), d.rng(x), tv))
    sep: dict[str, list[list[str]]] = {}
    for w in new_upper:
        sep[w] = []
        for x in d.in_edges.get(w, ()):
            u = d.src(x)
            groups = g.sep[u]
            i = next(k for k, grp in enumerate(groups) if x in grp)
            others = groups[:i] + groups[i + 1:]
            sep[w].append([name_alpha(x, rest)
                           for rest in itertools.product(*others)])
    graph = DirectedGraph.make(new_upper + tuple(new_lower), edges)
    out = BipartiteSeparatedGraph.make(SeparatedGraph.make(graph, sep),
                                       upper=new_upper, lower=tuple(new_lower))
    require_valid(out)
    return out


def separated_of_weighted(g: WeightedGraph) -> BipartiteSeparatedGraph:
    """Bipartite separated companion of an arbitrary weighted graph.

    Upper level keeps the original vertex names; each pair (e, i) with
    i <= weight(e) becomes a lower vertex v(e,i).  Slot groups sit at the
    source vertex: for each slot i the group of edges a{i}(e) over the edges
    of weight >= i.  Edge groups sit at the range vertex: for each incoming
    edge e the group a^e(1..weight(e)).
    """
    require_valid(g)
    d = g.graph
    lower = tuple(name_slot_vertex(e, i)
                  for e, _, _ in d.edges for i in range(1, g.w[e] + 1))
    edges: list[tuple[str, str, str]] = []
    sep: dict[str, list[list[str]]] = {}
    for v in d.vertices:
        groups: list[list[str]] = []
        for i in range(1, vertex_weight(g, v) + 1):
            grp = [name_slot_edge(i, e) for e in d.out_edges[v] if g.w[e] >= i]
            edges += [(name_slot_edge(i, e), v, name_slot_vertex(e, i))
                      for e in d.out_edges[v] if g.w[e] >= i]
            groups.append(grp)
        for e in d.in_edges.get(v, ()):
            grp = [name_edge_slot(e, i) for i in range(1, g.w[e] + 1)]
            edges += [(name_edge_slot(e, i), v, name_slot_vertex(e, i))
                      for i in range(1, g.w[e] + 1)]
            groups.append(grp)
        if groups:
            sep[v] = groups
    graph = DirectedGraph.make(d.vertices + lower, edges)
    out = BipartiteSeparatedGraph.make(SeparatedGraph.make(graph, sep),
                                       upper=d.vertices, lower=lower)
    require_valid(out)
    return out


def thm310_hidden_vertices(g: WeightedGraph) -> frozenset[str]:
    """Tuple vertices of the resolved completion that track the weight slots
    missing from the original graph: v(e~,h(v,j)) for weight(e) < j."""
    require_valid(g)
    hidden = set()
    for e, s, _ in g.graph.edges:
        for j in range(g.w[e] + 1, vertex_weight(g, s) + 1):
            hidden.add(name_tuple_vertex((name_tilde(e), name_h(s, j))))
    return frozenset(hidden)


def thm310_rename(g: WeightedGraph) -> dict[str, str]:
    """Rename table from resolved-completion names to the direct companion
    names of ``separated_of_weighted``: v(e~,h(v,j)) -> v(e,j),
    a^h(v,i)(e~) -> a{i}(e), a^e~(h(v,i)) -> a^e(i), v_1 -> v."""
    table: dict[str, str] = {}
    for v in g.graph.vertices:
        table[name_lower_copy(v)] = v
    for e, s, _ in g.graph.edges:
        for i in range(1, g.w[e] + 1):
            table[name_tuple_vertex((name_tilde(e), name_h(s, i)))] = \
                name_slot_vertex(e, i)
            table[name_alpha(name_h(s, i), (name_tilde(e),))] = \
                name_slot_edge(i, e)
            table[name_alpha(name_tilde(e), (name_h(s, i),))] = \
                name_edge_slot(e, i)
    return table


def rename_graph(g, table: dict[str, str]):
    """Apply a vertex/edge rename table; names not listed stay unchanged."""
    def nm(x: str) -> str:
        return table.get(x, x)

    def do_sep(s: SeparatedGraph) -> SeparatedGraph:
        graph = DirectedGraph.make(
            [nm(v) for v in s.graph.vertices],
            [(nm(e), nm(a), nm(b)) for e, a, b in s.graph.edges])
        return SeparatedGraph.make(
            graph, {nm(v): [[nm(e) for e in grp] for grp in groups]
                    for v, groups in s.separation})

    if isinstance(g, BipartiteSeparatedGraph):
        return BipartiteSeparatedGraph.make(
            do_sep(g.base), upper=[nm(v) for v in g.upper],
            lower=[nm(v) for v in g.lower])
    if isinstance(g, SeparatedGraph):
        return do_sep(g)
    raise GraphError(f"cannot rename {type(g).__name__}")


def _sep_shape(g: SeparatedGraph):
    return (
        frozenset(g.graph.vertices),
        frozenset(g.graph.edges),
        frozenset((v, frozenset(frozenset(grp) for grp in groups))
                  for v, groups in g.separation),
    )


def same_separated_structure(a, b) -> bool:
    """Equality of separated graphs up to list order (groups compared as a
    set of sets; the stored orders only steer generated names)."""
    return _sep_shape(to_separated(a)) == _sep_shape(to_separated(b))


def same_bipartite_structure(a: BipartiteSeparatedGraph,
                             b: BipartiteSeparatedGraph) -> bool:
    return (same_separated_structure(a.base, b.base)
            and a.upper_set == b.upper_set and a.lower_set == b.lower_set)


# ---------------------------------------------------------------------------
# towers


@dataclass(frozen=True)
class BratteliTower:
    """Iterated resolutions: ``layers[k+1]`` resolves ``layers[k]``, and
    ``unions[k]`` glues layers 0..k along the shared level vertices."""
    layers: tuple[BipartiteSeparatedGraph, ...]
    unions: tuple[SeparatedGraph, ...]


def bratteli(g: BipartiteSeparatedGraph, depth: int,
             cap: int = 10 ** 6) -> BratteliTower:
    if depth < 0:
        raise GraphError("depth must be nonnegative")
    require_valid(g)
    layers = [g]
    for _ in range(depth):
        top = layers[-1]
        size = 0
        for u in top.upper:
            tuples = 1
            for grp in top.sep[u]:
                tuples *= len(grp)
            size += tuples * len(top.sep[u])
            if size > cap:
                raise ResourceLimitError(
                    f"next layer would exceed {cap} edges")
        layers.append(one_step_resolution(top))
    unions = []
    seen_vertices: list[str] = []
    seen_edges: list[tuple[str, str, str]] = []
    seen_sep: dict[str, list[list[str]]] = {}
    known = set()
    for layer in layers:
        for v in layer.vertices:
            if v not in known:
                known.add(v)
                seen_vertices.append(v)
        seen_edges += list(layer.edges)
        for v, groups in layer.separation:
            seen_sep[v] = [list(grp) for grp in groups]
        union = SeparatedGraph.make(
            DirectedGraph.make(list(seen_vertices), list(seen_edges)),
            {v: [list(g2) for g2 in gs] for v, gs in seen_sep.items()})
        require_valid(union)
        unions.append(union)
    return BratteliTower(tuple(layers), tuple(unions))


# ---------------------------------------------------------------------------
# hereditary group-saturated subsets


HSatSet = frozenset


@dataclass(frozen=True)
class HSatReport:
    hereditary: bool
    saturated: bool
    # edge leaving the subset, and (vertex, group) forcing the vertex in
    hereditary_witness: tuple[str, str, str] | None
    saturated_witness: tuple[str, tuple[str, ...]] | None


def is_hsat(g, subset: Iterable[str]) -> HSatReport:
    s = to_separated(g)
    require_valid(s)
    h = frozenset(subset)
    unknown = h - s.graph.vertex_set
    if unknown:
        raise GraphError("unknown vertices: " + ", ".join(sorted(unknown)))
    hered_w = None
    for e, src, rng in s.graph.edges:
        if src in h and rng not in h:
            hered_w = (e, src, rng)
            break
    sat_w = None
    for v, groups in s.separation:
        if v in h:
            continue
        for grp in groups:
            if all(s.graph.rng(x) in h for x in grp):
                sat_w = (v, grp)
                break
        if sat_w:
            break
    return HSatReport(hereditary=hered_w is None, saturated=sat_w is None,
                      hereditary_witness=hered_w, saturated_witness=sat_w)


def hsat_closure(g, subset: Iterable[str]) -> frozenset[str]:
    """Least hereditary group-saturated superset: alternate forward closure
    along edges with the saturation rule until nothing changes."""
    s = to_separated(g)
    require_valid(s)
    h = set(subset)
    unknown = h - s.graph.vertex_set
    if unknown:
        raise GraphError("unknown vertices: " + ", ".join(sorted(unknown)))
    changed = True
    while changed:
        changed = False
        for e, src, rng in s.graph.edges:
            if src in h and rng not in h:
                h.add(rng)
                changed = True
        for v, groups in s.separation:
            if v in h:
                continue
            if any(all(s.graph.rng(x) in h for x in grp) for grp in groups):
                h.add(v)
                changed = True
    return frozenset(h)


def _hsat_key(h: frozenset[str]):
    return (len(h), tuple(sorted(h)))


def enumerate_hsat(g, method: str = "auto") -> list[frozenset[str]]:
    """All hereditary group-saturated vertex sets, smallest first.

    ``brute`` scans every vertex subset and is kept as the test oracle
    (refused beyond 20 vertices); ``fixpoint`` grows closures of one-vertex
    extensions from the bottom.  ``auto`` picks by size.
    """
    s = to_separated(g)
    require_valid(s)
    n = len(s.graph.vertices)
    if method == "auto":
        method = "brute" if n <= 12 else "fixpoint"
    if method == "brute":
        if n > 20:
            raise ResourceLimitError(f"brute scan over 2^{n} subsets refused")
        found = []
        for bits in itertools.product((False, True), repeat=n):
            h = frozenset(v for v, b in zip(s.graph.vertices, bits) if b)
            rep = is_hsat(s, h)
            if rep.hereditary and rep.saturated:
                found.append(h)
        return sorted(found, key=_hsat_key)
    if method != "fixpoint":
        raise GraphError(f"unknown method {method!r}")
    bottom = hsat_closure(s, ())
    seen = {bottom}
    queue = [bottom]
    while queue:
        h = queue.pop()
        for v in s.graph.vertices:
            if v in h:
                continue
            bigger = hsat_closure(s, h | {v})
            if bigger not in seen:
                seen.add(bigger)
                queue.append(bigger)
    return sorted(seen, key=_hsat_key)


def quotient_graph(g, subset: Iterable[str]):
    """Drop a hereditary group-saturated set: keep vertices outside it and
    the edges whose range survives; saturation keeps every group nonempty."""
    s = to_separated(g)
    h = frozenset(subset)
    rep = is_hsat(s, h)
    if not (rep.hereditary and rep.saturated):
        raise GraphError(
            "subset is not hereditary group-saturated: "
            f"hereditary={rep.hereditary}, saturated={rep.saturated}")
    vertices = [v for v in s.graph.vertices if v not in h]
    edges = [(e, a, b) for e, a, b in s.graph.edges if b not in h]
    kept = {e for e, _, _ in edges}
    sep = {v: [[x for x in grp if x in kept] for grp in groups]
           for v, groups in s.separation if v not in h}
    out = SeparatedGraph.make(DirectedGraph.make(vertices, edges), sep)
    require_valid(out)
    if isinstance(g, BipartiteSeparatedGraph):
        return BipartiteSeparatedGraph.make(
            out, upper=[v for v in g.upper if v not in h],
            lower=[v for v in g.lower if v not in h])
    return out
