"""Finitely presented commutative monoids attached to graphs.

A presentation is a generator tuple plus relations between nonnegative
integer vectors.  ``monoid_of`` reads the relations off a separated graph
(one per vertex and group), ``m1_of`` off a weighted graph via its direct
companion.  ``congruent`` decides word problems by budgeted bidirectional
search and is honest about truncation: ``no`` is only reported when one
side's congruence class was exhausted without meeting the other.

``grothendieck`` computes the universal abelian group by Smith normal
form, ``leavitt_type`` scans for the least (p, q) with p·a ~ (p+q)·a, and
``order_ideals`` / ``order_ideal_oracle`` enumerate the ideal lattice from
the graph side and the presentation side independently.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass
from typing import Iterable, Sequence

from . import constructions as cons
from .graphs import GraphError, WeightedGraph, require_valid, vertex_weight
from .homs import phi1
from .staralg import AlgElement, normal_form

Vec = tuple[int, ...]


@dataclass(frozen=True)
class MonoidPresentation:
    generators: tuple[str, ...]
    relations: tuple[tuple[Vec, Vec], ...]
    labels: tuple[str, ...] = ()

    def __post_init__(self):
        if not self.labels:
            object.__setattr__(
                self, "labels",
                tuple(f"rel{i}" for i in range(len(self.relations))))

    def index(self, name: str) -> int:
        try:
            return self.generators.index(name)
        except ValueError:
            raise GraphError(f"unknown generator {name!r}")

    def unit(self, name: str, count: int = 1) -> Vec:
        i = self.index(name)
        return tuple(count if j == i else 0
                     for j in range(len(self.generators)))

    def vector(self, counts: dict[str, int]) -> Vec:
        vec = [0] * len(self.generators)
        for name, c in counts.items():
            vec[self.index(name)] += c
        return tuple(vec)


def format_vector(p: MonoidPresentation, vec: Vec) -> str:
    bits = []
    for name, c in zip(p.generators, vec):
        if c == 1:
            bits.append(name)
        elif c:
            bits.append(f"{c} {name}")
    return " + ".join(bits) if bits else "0"


def format_presentation(p: MonoidPresentation) -> list[str]:
    return [f"{format_vector(p, l)} = {format_vector(p, r)}"
            for l, r in p.relations]


def parse_vector(text: str, p: MonoidPresentation) -> Vec:
    """Parse a sum like ``2 v + w`` over the presentation's generators."""
    counts: dict[str, int] = {}
    text = text.strip()
    if text == "0":
        return tuple(0 for _ in p.generators)
    for piece in text.split("+"):
        toks = piece.split()
        if len(toks) == 1:
            name, c = toks[0], 1
        elif len(toks) == 2:
            try:
                c = int(toks[0])
            except ValueError:
                raise GraphError(f"bad coefficient {toks[0]!r}")
            name = toks[1]
        else:
            raise GraphError(f"cannot read term {piece.strip()!r}")
        if c < 0:
            raise GraphError("coefficients are nonnegative")
        p.index(name)
        counts[name] = counts.get(name, 0) + c
    return p.vector(counts)


# ---------------------------------------------------------------------------
# presentations from graphs


def monoid_of(g) -> MonoidPresentation:
    """One generator per vertex; each separation group X at v contributes
    the relation a_v = sum of a_{r(e)} over e in X."""
    s = cons.to_separated(g)
    require_valid(s)
    d = s.graph
    idx = {v: i for i, v in enumerate(d.vertices)}
    rels = []
    labels = []
    for v, groups in s.separation:
        for k, grp in enumerate(groups):
            lhs = [0] * len(idx)
            lhs[idx[v]] = 1
            rhs = [0] * len(idx)
            for e in grp:
                rhs[idx[d.rng(e)]] += 1
            rels.append((tuple(lhs), tuple(rhs)))
            labels.append(f"fiber:{v}.{k}")
    return MonoidPresentation(d.vertices, tuple(rels), tuple(labels))


def m1_of(g: WeightedGraph) -> MonoidPresentation:
    """Vertex monoid of the direct companion of a weighted graph: one
    generator per original vertex plus one per slot vertex v(e,i)."""
    return monoid_of(cons.separated_of_weighted(g))


def quotient_presentation(p: MonoidPresentation,
                          kill: Iterable[str]) -> MonoidPresentation:
    """Set the given generators to zero and drop trivialized relations."""
    dead = {p.index(name) for name in kill}
    keep = [i for i in range(len(p.generators)) if i not in dead]
    gens = tuple(p.generators[i] for i in keep)
    rels = []
    labels = []
    for (l, r), lab in zip(p.relations, p.labels):
        l2 = tuple(l[i] for i in keep)
        r2 = tuple(r[i] for i in keep)
        if l2 != r2:
            rels.append((l2, r2))
            labels.append(lab)
    return MonoidPresentation(gens, tuple(rels), tuple(labels))


def eliminate_identifications(p: MonoidPresentation) -> MonoidPresentation:
    """Tietze-reduce: while some relation equates a generator with a vector
    not using it, substitute and drop the generator (the later one when two
    generators are equated), keeping the presented monoid."""
    gens = list(p.generators)
    rels = [(list(l), list(r)) for l, r in p.relations]
    labels = list(p.labels)

    def unit_index(vec: list[int]) -> int | None:
        if sum(vec) == 1:
            return vec.index(1)
        return None

    while True:
        # keep low-index (original) generators alive: of all possible
        # eliminations this pass, take the one removing the largest index
        victim = None
        for k, (l, r) in enumerate(rels):
            il, ir = unit_index(l), unit_index(r)
            if il is not None and ir is not None:
                if il == ir:
                    victim = (len(gens), k, None, None)  # trivial relation
                    break
                i = max(il, ir)
                repl = l if i == ir else r
                cand = (i, k, i, list(repl))
            elif il is not None and r[il] == 0:
                cand = (il, k, il, list(r))
            elif ir is not None and l[ir] == 0:
                cand = (ir, k, ir, list(l))
            else:
                continue
            if victim is None or cand[0] > victim[0]:
                victim = cand
        if victim is None:
            break
        _, k, i, repl = victim
        del rels[k], labels[k]
        if i is None:
            continue
        del gens[i]
        repl_rest = repl[:i] + repl[i + 1:]
        for l, r in rels:
            for vec in (l, r):
                c = vec[i]
                del vec[i]
                if c:
                    for j, x in enumerate(repl_rest):
                        vec[j] += c * x
    out_rels = []
    out_labels = []
    for (l, r), lab in zip(rels, labels):
        if l != r:
            out_rels.append((tuple(l), tuple(r)))
            out_labels.append(lab)
    return MonoidPresentation(tuple(gens), tuple(out_rels),
                              tuple(out_labels))


# ---------------------------------------------------------------------------
# word problem


@dataclass(frozen=True)
class Budget:
    coord_sum: int = 32
    states: int = 10 ** 6


def default_budget() -> Budget:
    states = os.environ.get("SEPAL_BUDGET_STATES")
    if states:
        return Budget(states=int(states))
    return Budget()


@dataclass(frozen=True)
class CongruenceAnswer:
    answer: str  # yes | no | unknown
    path: tuple[Vec, ...] | None
    explored: int


def _moves(p: MonoidPresentation):
    out = []
    for l, r in p.relations:
        out.append((l, r))
        out.append((r, l))
    return out


def _step(v: Vec, l: Vec, r: Vec) -> Vec | None:
    if all(a >= b for a, b in zip(v, l)):
        return tuple(a - b + c for a, b, c in zip(v, l, r))
    return None


def congruent(p: MonoidPresentation, x: Vec, y: Vec,
              budget: Budget | None = None) -> CongruenceAnswer:
    """Budgeted bidirectional search for a rewrite chain from x to y.

    ``yes`` comes with the witnessing chain.  ``no`` is definitive: one
    side's entire congruence class fit inside the budget and missed the
    other side.  Everything else is ``unknown``.
    """
    budget = budget or default_budget()
    if len(x) != len(p.generators) or len(y) != len(p.generators):
        raise GraphError("vector length does not match the generators")
    if x == y:
        return CongruenceAnswer("yes", (x,), 0)
    moves = _moves(p)
    seen = ({x: None}, {y: None})
    frontier: tuple[list, list] = ([x], [y])
    trunc = [False, False]

    def chain(meet: Vec) -> tuple[Vec, ...]:
        half = []
        v = meet
        while v is not None:
            half.append(v)
            v = seen[0][v]
        left = list(reversed(half))
        v = seen[1][meet]
        right = []
        while v is not None:
            right.append(v)
            v = seen[1][v]
        return tuple(left + right)

    while frontier[0] or frontier[1]:
        side = 0 if frontier[0] and (
            not frontier[1] or len(frontier[0]) <= len(frontier[1])) else 1
        nxt = []
        for v in frontier[side]:
            for l, r in moves:
                w = _step(v, l, r)
                if w is None:
                    continue
                if sum(w) > budget.coord_sum:
                    trunc[side] = True
                    continue
                if w in seen[side]:
                    continue
                seen[side][w] = v
                if len(seen[0]) + len(seen[1]) > budget.states:
                    return CongruenceAnswer(
                        "unknown", None, len(seen[0]) + len(seen[1]))
                nxt.append(w)
                if w in seen[1 - side]:
                    return CongruenceAnswer(
                        "yes", chain(w), len(seen[0]) + len(seen[1]))
        frontier[side][:] = nxt
        if not nxt and not trunc[side]:
            # this side's class is complete and the other start is not in it
            return CongruenceAnswer("no", None, len(seen[0]) + len(seen[1]))
    return CongruenceAnswer("unknown", None, len(seen[0]) + len(seen[1]))


# ---------------------------------------------------------------------------
# invariants


@dataclass(frozen=True)
class AbelianGroupShape:
    rank: int
    torsion: tuple[int, ...]

    def __str__(self) -> str:
        bits = ["Z"] * self.rank + [f"Z/{d}" for d in self.torsion]
        return " x ".join(bits) if bits else "0"


def smith_normal_form(rows: Sequence[Sequence[int]],
                      width: int) -> list[int]:
    """Diagonal of the Smith normal form, nonnegative, each entry dividing
    the next.  Zero rows are fine; the matrix may be empty."""
    a = [list(map(int, row)) for row in rows]
    m, n = len(a), width
    for row in a:
        if len(row) != n:
            raise GraphError("ragged matrix")
    diag: list[int] = []
    k = 0
    while k < min(m, n):
        # find a pivot of least magnitude
        best = None
        for i in range(k, m):
            for j in range(k, n):
                if a[i][j] and (best is None
                                or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        i0, j0 = best
        a[k], a[i0] = a[i0], a[k]
        for row in a:
            row[k], row[j0] = row[j0], row[k]
        # clear the pivot row and column by euclidean steps
        dirty = True
        while dirty:
            dirty = False
            for i in range(k + 1, m):
                if a[i][k]:
                    q = a[i][k] // a[k][k]
                    for j in range(k, n):
                        a[i][j] -= q * a[k][j]
                    if a[i][k]:
                        a[k], a[i] = a[i], a[k]
                        dirty = True
            for j in range(k + 1, n):
                if a[k][j]:
                    q = a[k][j] // a[k][k]
                    for row in a:
                        row[j] -= q * row[k]
                    if a[k][j]:
                        for row in a:
                            row[k], row[j] = row[j], row[k]
                        dirty = True
        # absorb any entry the pivot does not divide yet
        pivot = a[k][k]
        fix = None
        for i in range(k + 1, m):
            for j in range(k + 1, n):
                if a[i][j] % pivot:
                    fix = i
                    break
            if fix is not None:
                break
        if fix is not None:
            for j in range(k, n):
                a[k][j] += a[fix][j]
            continue
        diag.append(abs(pivot))
        k += 1
    return diag


def grothendieck(p: MonoidPresentation) -> AbelianGroupShape:
    """Universal abelian group of the presented monoid."""
    n = len(p.generators)
    rows = [[l[i] - r[i] for i in range(n)] for l, r in p.relations]
    diag = smith_normal_form(rows, n)
    nonzero = [d for d in diag if d]
    return AbelianGroupShape(rank=n - len(nonzero),
                             torsion=tuple(d for d in nonzero if d > 1))


@dataclass(frozen=True)
class LeavittTypeAnswer:
    answer: str  # yes | unknown
    p: int | None
    q: int | None
    scanned: int


def leavitt_type(pres: MonoidPresentation, gen: str,
                 budget: Budget | None = None) -> LeavittTypeAnswer:
    """Least p >= 1 admitting q >= 1 with p·a ~ (p+q)·a, then least such q,
    scanned within the coordinate budget.  Tietze-reduce large presentations
    first; the scan runs one word problem per candidate pair."""
    budget = budget or default_budget()
    scanned = 0
    for p_ in range(1, budget.coord_sum):
        for q_ in range(1, budget.coord_sum - p_ + 1):
            scanned += 1
            ans = congruent(pres, pres.unit(gen, p_),
                            pres.unit(gen, p_ + q_), budget)
            if ans.answer == "yes":
                return LeavittTypeAnswer("yes", p_, q_, scanned)
    return LeavittTypeAnswer("unknown", None, None, scanned)


# ---------------------------------------------------------------------------
# order ideals


@dataclass(frozen=True)
class OrderIdealEntry:
    vertices: frozenset[str]
    generators: tuple[str, ...]


def order_ideals(g) -> list[OrderIdealEntry]:
    """Order-ideal lattice read off the graph: hereditary group-saturated
    vertex sets, labeled by their generator sets.  Weighted graphs go
    through their direct companion."""
    if isinstance(g, WeightedGraph):
        g = cons.separated_of_weighted(g)
    return [OrderIdealEntry(h, tuple(sorted(h)))
            for h in cons.enumerate_hsat(g)]


def order_ideal_oracle(p: MonoidPresentation,
                       cap: int | None = None) -> list[frozenset[str]]:
    """Supports of order ideals computed purely from the presentation.

    A generator subset S qualifies when every vector supported in S, with
    coordinate sum at most ``cap``, only rewrites to vectors supported in
    S.  A cheap support-closure filter runs first; the box scan confirms
    the survivors.  Default cap: the largest relation-side sum plus one.
    """
    k = len(p.generators)
    if k > 16:
        raise cons.ResourceLimitError(f"oracle over 2^{k} subsets refused")
    if cap is None:
        cap = 1 + max((max(sum(l), sum(r)) for l, r in p.relations),
                      default=1)
    moves = _moves(p)

    def supp(vec: Vec) -> frozenset[int]:
        return frozenset(i for i, c in enumerate(vec) if c)

    def box(indices: tuple[int, ...]):
        def rec(rem: int, pos: int, acc: list[int]):
            if pos == len(indices):
                vec = [0] * k
                for i, c in zip(indices, acc):
                    vec[i] = c
                yield tuple(vec)
                return
            for c in range(rem + 1):
                yield from rec(rem - c, pos + 1, acc + [c])
        yield from rec(cap, 0, [])

    out = []
    for bits in itertools.product((0, 1), repeat=k):
        s = frozenset(i for i, b in enumerate(bits) if b)
        ok = all((supp(l) <= s) == (supp(r) <= s) for l, r in p.relations)
        if not ok:
            continue
        for v in box(tuple(sorted(s))):
            for l, r in moves:
                w = _step(v, l, r)
                if w is not None and not supp(w) <= s:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            out.append(frozenset(p.generators[i] for i in s))
    return sorted(out, key=lambda h: (len(h), tuple(sorted(h))))


# ---------------------------------------------------------------------------
# idempotent images of the monoid generators


@dataclass(frozen=True)
class GammaReport:
    images: dict[str, AlgElement]
    checks: tuple[tuple[str, bool], ...]
    all_ok: bool


def gamma_images(g: WeightedGraph) -> GammaReport:
    """Idempotent realizations of the monoid generators of ``m1_of``.

    The class of a slot generator v(e,i) is represented on the source side
    by the range projection of the mapped generator and on the range side
    by its support projection; every defining monoid relation is verified
    as an orthogonal decomposition of the vertex idempotent (summands
    multiply pairwise to zero and add up to the vertex).
    """
    gmap = phi1(g)
    alg = gmap.target
    d = g.graph
    images: dict[str, AlgElement] = {}
    for v in d.vertices:
        images[v] = alg.vertex(v)
    source_side: dict[tuple[str, int], AlgElement] = {}
    range_side: dict[tuple[str, int], AlgElement] = {}
    checks: list[tuple[str, bool]] = []
    for e, _, _ in d.edges:
        for i in range(1, g.w[e] + 1):
            x = gmap.images[f"{e}.{i}"]
            p = normal_form(x * x.star())
            q = normal_form(x.star() * x)
            source_side[(e, i)] = p
            range_side[(e, i)] = q
            images[cons.name_slot_vertex(e, i)] = p
            checks.append((f"idem:{cons.name_slot_vertex(e, i)}",
                           normal_form(p * p - p).is_zero
                           and normal_form(q * q - q).is_zero))

    def decomposition(label: str, parts: list[AlgElement],
                      whole: AlgElement) -> None:
        ok = True
        for a, b in itertools.combinations(parts, 2):
            if not normal_form(a * b).is_zero:
                ok = False
        total = alg.zero()
        for a in parts:
            total = total + a
        if not normal_form(total - whole).is_zero:
            ok = False
        checks.append((label, ok))

    for v in d.vertices:
        fiber = d.out_edges.get(v, ())
        if not fiber:
            continue
        for i in range(1, vertex_weight(g, v) + 1):
            parts = [source_side[(e, i)] for e in fiber if g.w[e] >= i]
            decomposition(f"slots:{v}.{i}", parts, images[v])
    for e, _, rng in d.edges:
        parts = [range_side[(e, i)] for i in range(1, g.w[e] + 1)]
        decomposition(f"edge:{e}", parts, images[rng])
    return GammaReport(images, tuple(checks),
                       all(ok for _, ok in checks))
