"""Single-vertex weighted graphs classified by partitions.

A weight assignment on n loops at one vertex with top weight m is the same
data as a weakly decreasing tuple (lambda_1, ..., lambda_m) with
lambda_1 = n: lambda_i counts the loops of weight at least i, i.e. the row
lengths of the 0/1 shape matrix whose column j has weight(e_j) ones.

The module enumerates that partition lattice, builds the matching weighted
graphs, and studies the order-ideal lattice of the completed graph through
0/1 matrices: a proper ideal of slot vertices is the complement of the
support of a matrix with no zero row and no zero column, and the minimal
nonzero ideals are the matrices whose every entry is alone in its row or
alone in its column.  The two worked examples give a diagonal generator
assignment onto a rose algebra and a full invariant report for the minimal
partition (n, 1, ..., 1).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from . import constructions as cons
from . import monoids
from .graphs import (
    DirectedGraph,
    GraphError,
    SeparatedGraph,
    WeightedGraph,
    require_valid,
    vertex_weight,
)
from .homs import GeneratorMap, relations, verify
from .staralg import StarAlgebra

Matrix = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class MnPartition:
    m: int
    n: int
    parts: tuple[int, ...]

    @staticmethod
    def make(m: int, n: int, parts) -> "MnPartition":
        parts = tuple(int(x) for x in parts)
        if m < 1 or n < 1:
            raise GraphError("need m >= 1 and n >= 1")
        if len(parts) != m:
            raise GraphError(f"expected {m} parts, got {len(parts)}")
        if parts[0] != n:
            raise GraphError(f"first part must be {n}, got {parts[0]}")
        if any(parts[i] < parts[i + 1] for i in range(m - 1)):
            raise GraphError("parts must be weakly decreasing")
        if parts[-1] < 1:
            raise GraphError("parts must be positive")
        return MnPartition(m, n, parts)


def partitions(m: int, n: int) -> list[MnPartition]:
    """All (m, n) partitions, in decreasing lexicographic order."""
    if m < 1 or n < 1:
        raise GraphError("need m >= 1 and n >= 1")
    out: list[MnPartition] = []

    def rec(acc: list[int]):
        if len(acc) == m:
            out.append(MnPartition(m, n, tuple(acc)))
            return
        for val in range(acc[-1], 0, -1):
            rec(acc + [val])

    rec([n])
    return out


def minimal_partition(m: int, n: int) -> MnPartition:
    return MnPartition.make(m, n, (n,) + (1,) * (m - 1))


def maximal_partition(m: int, n: int) -> MnPartition:
    return MnPartition.make(m, n, (n,) * m)


def partition_meet(a: MnPartition, b: MnPartition) -> MnPartition:
    _match(a, b)
    return MnPartition.make(a.m, a.n,
                            tuple(min(x, y) for x, y in zip(a.parts, b.parts)))


def partition_join(a: MnPartition, b: MnPartition) -> MnPartition:
    _match(a, b)
    return MnPartition.make(a.m, a.n,
                            tuple(max(x, y) for x, y in zip(a.parts, b.parts)))


def _match(a: MnPartition, b: MnPartition) -> None:
    if (a.m, a.n) != (b.m, b.n):
        raise GraphError("partitions live on different (m, n)")


def partition_to_weighted(p: MnPartition) -> WeightedGraph:
    """One vertex, loops e1..en, weight(e_j) = number of parts >= j."""
    edges = [(f"e{j}", "v", "v") for j in range(1, p.n + 1)]
    graph = DirectedGraph.make(("v",), edges)
    weights = {f"e{j}": sum(1 for x in p.parts if x >= j)
               for j in range(1, p.n + 1)}
    return WeightedGraph.make(graph, weights)


def weighted_to_partition(g: WeightedGraph) -> MnPartition:
    """Inverse of ``partition_to_weighted`` for single-vertex graphs."""
    require_valid(g)
    if len(g.graph.vertices) != 1:
        raise GraphError("partition graphs have a single vertex")
    v = g.graph.vertices[0]
    m = vertex_weight(g, v)
    n = len(g.graph.edges)
    parts = tuple(sum(1 for e, _, _ in g.graph.edges if g.w[e] >= i)
                  for i in range(1, m + 1))
    return MnPartition.make(m, n, parts)


def shape_matrix(p: MnPartition) -> Matrix:
    return tuple(tuple(1 if j <= p.parts[i] else 0 for j in range(1, p.n + 1))
                 for i in range(p.m))


def refinement_matrix(p: MnPartition) -> tuple[tuple[str | None, ...], ...]:
    """Slot-vertex names arranged by (slot, edge); row i lists the terms of
    the slot relation at i, column j the terms of the edge relation of e_j."""
    return tuple(
        tuple(cons.name_slot_vertex(f"e{j}", i) if j <= p.parts[i - 1]
              else None for j in range(1, p.n + 1))
        for i in range(1, p.m + 1))


def generator_matrix(p: MnPartition) -> tuple[tuple[str | None, ...], ...]:
    """Indexed edge generators arranged the same way: entry (i, j) is
    e{j}.{i} when slot i exists on edge j."""
    return tuple(
        tuple(f"e{j}.{i}" if j <= p.parts[i - 1] else None
              for j in range(1, p.n + 1))
        for i in range(1, p.m + 1))


# ---------------------------------------------------------------------------
# ideal matrices


def ideal_matrices(m: int, n: int) -> list[Matrix]:
    """All 0/1 m x n matrices without zero rows or zero columns, in row-major
    lexicographic order.  Entry (i, j) = 1 marks slot vertex v(e_j, i) of the
    completed graph staying outside the ideal."""
    if m * n > 20:
        raise cons.ResourceLimitError(
            f"enumeration over 2^{m * n} matrices refused")
    rows = [r for r in itertools.product((0, 1), repeat=n) if any(r)]
    out = []
    for mat in itertools.product(rows, repeat=m):
        if all(any(mat[i][j] for i in range(m)) for j in range(n)):
            out.append(mat)
    return out


def minimal_configurations(m: int, n: int) -> list[Matrix]:
    """Ideal matrices whose every 1 is alone in its row or in its column;
    these mark the maximal proper order ideals."""
    out = []
    for mat in ideal_matrices(m, n):
        ok = True
        for i in range(m):
            for j in range(n):
                if not mat[i][j]:
                    continue
                row = sum(mat[i])
                col = sum(mat[k][j] for k in range(m))
                if row > 1 and col > 1:
                    ok = False
        if ok:
            out.append(mat)
    return out


def matrix_to_hidden(m: int, n: int, mat: Matrix) -> frozenset[str]:
    """Slot vertices of the completed graph hidden by a matrix: the zeros."""
    return frozenset(cons.name_slot_vertex(f"e{j + 1}", i + 1)
                     for i in range(m) for j in range(n) if not mat[i][j])


def hidden_to_matrix(m: int, n: int, hidden) -> Matrix:
    hidden = frozenset(hidden)
    return tuple(
        tuple(0 if cons.name_slot_vertex(f"e{j + 1}", i + 1) in hidden else 1
              for j in range(n))
        for i in range(m))


# ---------------------------------------------------------------------------
# worked examples


def rose_graph(loops: int) -> SeparatedGraph:
    """One vertex with ``loops`` loops x1..xN in a single group."""
    if loops < 1:
        raise GraphError("a rose needs at least one loop")
    edges = [(f"x{i}", "v", "v") for i in range(1, loops + 1)]
    graph = DirectedGraph.make(("v",), edges)
    return SeparatedGraph.with_trivial_separation(graph)


def example_58_map(m: int, n: int) -> GeneratorMap:
    """Diagonal assignment from the full-weight graph on (m, n) onto the
    rose with n - m + 1 loops: the first m - 1 diagonal generators go to
    the vertex, the bottom row from column m on walks the loops, and every
    other generator dies.  All defining relations map to zero."""
    if not 1 <= m <= n:
        raise GraphError("need 1 <= m <= n")
    rose = rose_graph(n - m + 1)
    alg = StarAlgebra(rose)
    images = {"v": alg.vertex("v")}
    for j in range(1, n + 1):
        for i in range(1, m + 1):
            if i == j and i <= m - 1:
                images[f"e{j}.{i}"] = alg.vertex("v")
            elif i == m and j >= m:
                images[f"e{j}.{i}"] = alg.edge(f"x{j - m + 1}")
            else:
                images[f"e{j}.{i}"] = alg.zero()
    return GeneratorMap("example58", alg, images,
                        {"rose_loops": n - m + 1})


def example_59_report(m: int, n: int,
                      budget: monoids.Budget | None = None) -> dict:
    """Full invariant tour of the minimal partition (n, 1, ..., 1).

    Reports the slot monoid with its reduction to two generators, the
    universal group and least (p, q) pair, the order-ideal lattice with its
    unique proper nonzero member, the quotient by that ideal, and the
    diagonal assignment of the completed graph onto a rose, with every
    claim recomputed rather than assumed.
    """
    if not 3 <= m <= n:
        raise GraphError("need 3 <= m <= n")
    budget = budget or monoids.default_budget()
    p0 = minimal_partition(m, n)
    g = partition_to_weighted(p0)
    pres = monoids.m1_of(g)
    slim = monoids.eliminate_identifications(pres)
    shape = monoids.grothendieck(pres)
    ltype = monoids.leavitt_type(slim, "v", budget)

    ideals = monoids.order_ideals(g)
    proper = [e for e in ideals
              if e.vertices and e.vertices != frozenset(
                  cons.separated_of_weighted(g).vertices)]

    quotient_data = None
    if len(proper) == 1:
        killed = proper[0].vertices
        q = monoids.quotient_presentation(pres, killed)
        qslim = monoids.eliminate_identifications(q)
        qshape = monoids.grothendieck(q)
        qtype = monoids.leavitt_type(qslim, "v", budget)
        quotient_data = {
            "killed": sorted(killed),
            "presentation": monoids.format_presentation(qslim),
            "generators": list(qslim.generators),
            "grothendieck": str(qshape),
            "leavitt_type": [qtype.p, qtype.q],
        }

    gmat = [[name if name else "0" for name in row]
            for row in generator_matrix(p0)]
    gmat[0][0] = "0"  # the unique proper ideal is generated by this slot

    full = weighted_completion_of(m, n)
    rose_map = example_58_map(m, n)
    rose_check = verify(rose_map, relations("weighted", full))

    return {
        "m": m,
        "n": n,
        "partition": list(p0.parts),
        "weights": {e: w for e, w in g.weights},
        "monoid": {
            "generators": list(pres.generators),
            "relations": monoids.format_presentation(pres),
            "reduced_generators": list(slim.generators),
            "reduced_relations": monoids.format_presentation(slim),
            "grothendieck": str(shape),
            "leavitt_type": [ltype.p, ltype.q],
        },
        "ideals": {
            "count": len(ideals),
            "members": [sorted(e.vertices) for e in ideals],
            "proper_nonzero": [sorted(e.vertices) for e in proper],
        },
        "quotient": quotient_data,
        "generator_matrix": gmat,
        "rose": {
            "loops": n - m + 1,
            "relations_checked": rose_check.checked,
            "relations_hold": rose_check.all_zero,
        },
    }


def weighted_completion_of(m: int, n: int) -> WeightedGraph:
    """The full-weight single-vertex graph: n loops, every weight m."""
    return cons.weighted_completion(
        partition_to_weighted(minimal_partition(m, n)))
