"""Relation families, generator maps, and verification of algebra maps.

A relation family is a labeled list of formal expressions in named
generators that must vanish.  A generator map assigns each generator an
element of a concrete star algebra; ``verify`` substitutes and normalizes,
reporting every nonzero residue by label.

The four bundled maps:

* ``phi_vw``      weighted generators (vertex-weighted case) into the
                  bipartite double, e.i -> h(s(e),i)* e~;
* ``phi1``        weighted generators modulo the diagonal-support ideal
                  into the direct companion, e.i -> a{i}(e) a^e(i)*;
* ``phi0``        separated-graph generators into the one-step resolution,
                  with ghost-letter sums for edges;
* ``rho_tau``     formal upper-corner pairs t(e,f) = e f* and lower-corner
                  pairs r(e,f) = e* f realized inside the algebra itself.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from . import constructions as cons
from .graphs import (
    BipartiteSeparatedGraph,
    GraphError,
    WeightedGraph,
    is_vertex_weighted,
    require_valid,
    vertex_weight,
)
from .staralg import AlgebraError, AlgElement, StarAlgebra, normal_form

GenWord = tuple[tuple[str, bool], ...]


class GenExpr:
    """Formal rational combination of words in named generators."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[GenWord, Fraction] | None = None):
        self.terms = {w: Fraction(c) for w, c in (terms or {}).items() if c}

    @staticmethod
    def gen(name: str, starred: bool = False) -> "GenExpr":
        return GenExpr({((name, starred),): Fraction(1)})

    @staticmethod
    def word(*items: tuple[str, bool]) -> "GenExpr":
        return GenExpr({tuple(items): Fraction(1)})

    @staticmethod
    def zero() -> "GenExpr":
        return GenExpr()

    def __add__(self, other: "GenExpr") -> "GenExpr":
        terms = dict(self.terms)
        for w, c in other.terms.items():
            terms[w] = terms.get(w, Fraction(0)) + c
        return GenExpr(terms)

    def __neg__(self) -> "GenExpr":
        return GenExpr({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "GenExpr") -> "GenExpr":
        return self + (-other)

    def __mul__(self, other: "GenExpr") -> "GenExpr":
        terms: dict[GenWord, Fraction] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                w = wa + wb
                terms[w] = terms.get(w, Fraction(0)) + ca * cb
        return GenExpr(terms)

    def star(self) -> "GenExpr":
        return GenExpr({tuple((n, not s) for n, s in reversed(w)): c
                        for w, c in self.terms.items()})

    def names(self) -> set[str]:
        return {n for w in self.terms for n, _ in w}

    def __eq__(self, other) -> bool:
        return isinstance(other, GenExpr) and self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "<gen 0>"
        bits = []
        for w, c in self.terms.items():
            txt = " ".join(n + "*" if s else n for n, s in w)
            bits.append(txt if c == 1 else f"{c}·{txt}")
        return "<gen " + " + ".join(bits) + ">"


@dataclass(frozen=True)
class RelationSet:
    kind: str
    generators: tuple[str, ...]
    relations: tuple[tuple[str, GenExpr], ...]


@dataclass
class GeneratorMap:
    kind: str
    target: StarAlgebra
    images: dict[str, AlgElement]
    meta: dict = field(default_factory=dict)


@dataclass(frozen=True)
class VerifyReport:
    all_zero: bool
    checked: int
    failures: tuple[tuple[str, AlgElement], ...]


# ---------------------------------------------------------------------------
# relation families


def _g(name: str) -> GenExpr:
    return GenExpr.gen(name)


def _slot(e: str, i: int) -> str:
    return f"{e}.{i}"


def t_name(e: str, f: str) -> str:
    return f"t({e},{f})"


def r_name(e: str, f: str) -> str:
    return f"r({e},{f})"


def p_name(v: str) -> str:
    return f"p({v})"


def _vertex_family(names, out: list) -> None:
    for u in names:
        for v in names:
            rel = _g(u) * _g(v)
            if u == v:
                rel = rel - _g(u)
            out.append((f"vv:{u}.{v}", rel))
    for v in names:
        out.append((f"v*:{v}", GenExpr.gen(v, True) - _g(v)))


def relations(kind: str, g) -> RelationSet:
    """The defining relation family of the given presentation kind over g.

    Kinds: ``separated`` (vertex and edge generators of a separated graph),
    ``weighted`` (indexed edge generators e.i), ``weighted-l1`` (same
    generators with the diagonal-support relations split out), ``lv``
    (upper-corner pair generators), ``lw`` (lower-corner pair generators).
    """
    rels: list[tuple[str, GenExpr]] = []
    if kind == "separated":
        s = cons.to_separated(g)
        require_valid(s)
        d = s.graph
        _vertex_family(d.vertices, rels)
        for e, src, rng in d.edges:
            rels.append((f"src:{e}", _g(src) * _g(e) - _g(e)))
            rels.append((f"rng:{e}", _g(e) * _g(rng) - _g(e)))
        for v, groups in s.separation:
            for grp in groups:
                for e in grp:
                    for f in grp:
                        rel = GenExpr.gen(e, True) * _g(f)
                        if e == f:
                            rel = rel - _g(d.rng(e))
                        rels.append((f"gg:{e}.{f}", rel))
            for i, grp in enumerate(groups):
                total = GenExpr.zero()
                for e in grp:
                    total = total + GenExpr.gen(e) * GenExpr.gen(e, True)
                rels.append((f"fiber:{v}.{i}", _g(v) - total))
        gens = d.vertices + d.edge_names
        return RelationSet(kind, gens, tuple(rels))

    if kind in ("weighted", "weighted-l1"):
        if not isinstance(g, WeightedGraph):
            raise GraphError("these relations need a weighted graph")
        require_valid(g)
        d = g.graph
        _vertex_family(d.vertices, rels)
        slots = [(e, i) for e, _, _ in d.edges for i in range(1, g.w[e] + 1)]
        for e, i in slots:
            rels.append((f"src:{e}.{i}",
                         _g(d.src(e)) * _g(_slot(e, i)) - _g(_slot(e, i))))
            rels.append((f"rng:{e}.{i}",
                         _g(_slot(e, i)) * _g(d.rng(e)) - _g(_slot(e, i))))
        regular = [v for v in d.vertices if d.out_edges.get(v)]
        if kind == "weighted":
            for v in regular:
                wv = vertex_weight(g, v)
                for i in range(1, wv + 1):
                    for j in range(1, wv + 1):
                        total = GenExpr.zero()
                        for e in d.out_edges[v]:
                            if g.w[e] >= i and g.w[e] >= j:
                                total = total + (
                                    _g(_slot(e, i))
                                    * GenExpr.gen(_slot(e, j), True))
                        if i == j:
                            total = total - _g(v)
                        rels.append((f"rows:{v}.{i}.{j}", total))
                for e in d.out_edges[v]:
                    for f in d.out_edges[v]:
                        total = GenExpr.zero()
                        for i in range(1, min(g.w[e], g.w[f]) + 1):
                            total = total + (
                                GenExpr.gen(_slot(e, i), True)
                                * _g(_slot(f, i)))
                        if e == f:
                            total = total - _g(d.rng(e))
                        rels.append((f"cols:{v}.{e}.{f}", total))
        else:
            for e, _, _ in d.edges:
                for i in range(1, g.w[e] + 1):
                    for j in range(1, g.w[e] + 1):
                        if i != j:
                            rels.append((
                                f"offdiag:{e}.{i}.{j}",
                                _g(_slot(e, i))
                                * GenExpr.gen(_slot(e, j), True)))
            for v in regular:
                for e in d.out_edges[v]:
                    for f in d.out_edges[v]:
                        if e == f:
                            continue
                        for i in range(1, min(g.w[e], g.w[f]) + 1):
                            rels.append((
                                f"offedge:{v}.{e}.{f}.{i}",
                                GenExpr.gen(_slot(e, i), True)
                                * _g(_slot(f, i))))
                for i in range(1, vertex_weight(g, v) + 1):
                    total = GenExpr.zero()
                    for e in d.out_edges[v]:
                        if g.w[e] >= i:
                            total = total + (
                                _g(_slot(e, i))
                                * GenExpr.gen(_slot(e, i), True))
                    rels.append((f"diag:{v}.{i}", total - _g(v)))
            for e, _, rng in d.edges:
                total = GenExpr.zero()
                for i in range(1, g.w[e] + 1):
                    total = total + (GenExpr.gen(_slot(e, i), True)
                                     * _g(_slot(e, i)))
                rels.append((f"full:{e}", total - _g(rng)))
        gens = d.vertices + tuple(_slot(e, i) for e, i in slots)
        return RelationSet(kind, gens, tuple(rels))

    if kind in ("lv", "lw"):
        if not isinstance(g, BipartiteSeparatedGraph):
            raise GraphError("these relations need a bipartite graph")
        require_valid(g)
        d = g.base.graph
        if kind == "lv":
            ps = [p_name(v) for v in g.upper]
            _vertex_family(ps, rels)
            pairs = [(e, f) for w in g.lower
                     for e in d.in_edges.get(w, ())
                     for f in d.in_edges.get(w, ())]
            for e, f in pairs:
                rels.append((f"t*:{e}.{f}",
                             GenExpr.gen(t_name(e, f), True)
                             - _g(t_name(f, e))))
                rels.append((f"tp:{e}.{f}",
                             _g(t_name(e, f)) * _g(p_name(d.src(f)))
                             - _g(t_name(e, f))))
                rels.append((f"pt:{e}.{f}",
                             _g(p_name(d.src(e))) * _g(t_name(e, f))
                             - _g(t_name(e, f))))
            gk = g.group_key
            for e, f in pairs:
                for gg, h in pairs:
                    if gk[f] != gk[gg]:
                        continue
                    rel = _g(t_name(e, f)) * _g(t_name(gg, h))
                    if f == gg:
                        rel = rel - _g(t_name(e, h))
                    rels.append((f"tt:{e}.{f}.{gg}.{h}", rel))
            for v, groups in g.separation:
                for i, grp in enumerate(groups):
                    total = GenExpr.zero()
                    for e in grp:
                        total = total + _g(t_name(e, e))
                    rels.append((f"pfull:{v}.{i}", _g(p_name(v)) - total))
            gens = tuple(ps) + tuple(t_name(e, f) for e, f in pairs)
            return RelationSet(kind, gens, tuple(rels))

        ps = [p_name(w) for w in g.lower]
        _vertex_family(ps, rels)
        gk = g.group_key
        pairs = [(e, f) for v in g.upper
                 for e in d.out_edges.get(v, ())
                 for f in d.out_edges.get(v, ())
                 if gk[e] != gk[f]]
        for e, f in pairs:
            rels.append((f"r*:{e}.{f}",
                         GenExpr.gen(r_name(e, f), True) - _g(r_name(f, e))))
            rels.append((f"rp:{e}.{f}",
                         _g(r_name(e, f)) * _g(p_name(d.rng(f)))
                         - _g(r_name(e, f))))
            rels.append((f"pr:{e}.{f}",
                         _g(p_name(d.rng(e))) * _g(r_name(e, f))
                         - _g(r_name(e, f))))
        for v, groups in g.separation:
            fiber = d.out_edges.get(v, ())
            for e in fiber:
                for h in fiber:
                    for i, grp in enumerate(groups):
                        if gk[e] == (v, i) or gk[h] == (v, i):
                            continue
                        total = GenExpr.zero()
                        for f in grp:
                            total = total + (_g(r_name(e, f))
                                             * _g(r_name(f, h)))
                        if gk[e] == gk[h]:
                            if e == h:
                                total = total - _g(p_name(d.rng(e)))
                        else:
                            total = total - _g(r_name(e, h))
                        rels.append((f"rr:{e}.{h}.{v}.{i}", total))
        gens = tuple(ps) + tuple(r_name(e, f) for e, f in pairs)
        return RelationSet(kind, gens, tuple(rels))

    raise GraphError(f"unknown relation kind {kind!r}")


# ---------------------------------------------------------------------------
# generator maps


def rho_tau(g: BipartiteSeparatedGraph) -> GeneratorMap:
    """Realize the pair generators inside the algebra over g itself.

    t(e,f) = e f* for edges with a common range; r(e,f) = e* f for edges
    with a common source, extended across equal groups by r(e,f) = 0 for
    e != f and r(e,e) = r(e), so kernel words can use any pair.
    """
    require_valid(g)
    alg = StarAlgebra(g)
    d = g.base.graph
    images: dict[str, AlgElement] = {}
    for v in d.vertices:
        images[p_name(v)] = alg.vertex(v)
    for w in g.lower:
        for e in d.in_edges.get(w, ()):
            for f in d.in_edges.get(w, ()):
                images[t_name(e, f)] = alg.edge(e) * alg.ghost(f)
    gk = g.group_key
    for v in g.upper:
        for e in d.out_edges.get(v, ()):
            for f in d.out_edges.get(v, ()):
                if gk[e] != gk[f]:
                    images[r_name(e, f)] = alg.ghost(e) * alg.edge(f)
                elif e == f:
                    images[r_name(e, f)] = alg.vertex(d.rng(e))
                else:
                    images[r_name(e, f)] = alg.zero()
    return GeneratorMap("rho-tau", alg, images)


def phi_vw(g: WeightedGraph) -> GeneratorMap:
    """Indexed edge generators of a vertex-weighted graph into the algebra
    of its bipartite double: v -> v_1 and e.i -> h(s(e),i)* e~."""
    double = cons.separated_of_vertex_weighted(g)
    alg = StarAlgebra(double)
    images: dict[str, AlgElement] = {}
    for v in g.graph.vertices:
        images[v] = alg.vertex(cons.name_lower_copy(v))
    for e, s, _ in g.graph.edges:
        for i in range(1, g.w[e] + 1):
            images[_slot(e, i)] = (alg.ghost(cons.name_h(s, i))
                                   * alg.edge(cons.name_tilde(e)))
    return GeneratorMap("phi", alg, images, {"companion": double})


def phi1(g: WeightedGraph) -> GeneratorMap:
    """Indexed edge generators of any weighted graph into the algebra of
    its direct companion: v -> v and e.i -> a{i}(e) a^e(i)*."""
    companion = cons.separated_of_weighted(g)
    alg = StarAlgebra(companion)
    images: dict[str, AlgElement] = {}
    for v in g.graph.vertices:
        images[v] = alg.vertex(v)
    for e, _, _ in g.graph.edges:
        for i in range(1, g.w[e] + 1):
            images[_slot(e, i)] = (alg.edge(cons.name_slot_edge(i, e))
                                   * alg.ghost(cons.name_edge_slot(e, i)))
    return GeneratorMap("phi1", alg, images, {"companion": companion})


def phi0(g: BipartiteSeparatedGraph) -> GeneratorMap:
    """Vertex and edge generators of a bipartite separated graph into the
    algebra of its one-step resolution.

    Upper vertices go to the sum of their choice-tuple vertices, lower
    vertices stay put, and an edge x goes to the sum of the ghost letters
    a^x(...)* over the complementary tuples.
    """
    resolved = cons.one_step_resolution(g)
    alg = StarAlgebra(resolved)
    images: dict[str, AlgElement] = {}
    for w in g.lower:
        images[w] = alg.vertex(w)
    for u in g.upper:
        groups = g.sep[u]
        total = alg.zero()
        for tup in itertools.product(*groups):
            total = total + alg.vertex(cons.name_tuple_vertex(tup))
        images[u] = total
        for i, grp in enumerate(groups):
            others = groups[:i] + groups[i + 1:]
            for x in grp:
                total = alg.zero()
                for rest in itertools.product(*others):
                    total = total + alg.ghost(cons.name_alpha(x, rest))
                images[x] = total
    return GeneratorMap("phi0", alg, images, {"resolution": resolved})


# ---------------------------------------------------------------------------
# evaluation


def evaluate(expr: GenExpr, gmap: GeneratorMap) -> AlgElement:
    """Substitute generator images and normalize."""
    out = gmap.target.zero()
    for word, coeff in expr.terms.items():
        acc: AlgElement | None = None
        for name, starred in word:
            try:
                img = gmap.images[name]
            except KeyError:
                raise AlgebraError(f"no image for generator {name!r}")
            if starred:
                img = img.star()
            acc = img if acc is None else acc * img
        assert acc is not None
        out = out + acc.scale(coeff)
    return normal_form(out)


def verify(gmap: GeneratorMap, rels: RelationSet) -> VerifyReport:
    failures = []
    for label, expr in rels.relations:
        residue = evaluate(expr, gmap)
        if not residue.is_zero:
            failures.append((label, residue))
    return VerifyReport(all_zero=not failures, checked=len(rels.relations),
                        failures=tuple(failures))


def apply_map(gmap: GeneratorMap, elem: AlgElement) -> AlgElement:
    """Push an algebra element through a map whose images are keyed by the
    vertex and edge names of the element's own graph (e.g. phi0)."""
    from .staralg import GHOST

    out = gmap.target.zero()
    for word, coeff in elem.terms.items():
        acc: AlgElement | None = None
        for name, kind in word:
            try:
                img = gmap.images[name]
            except KeyError:
                raise AlgebraError(f"no image for letter {name!r}")
            if kind == GHOST:
                img = img.star()
            acc = img if acc is None else acc * img
        assert acc is not None
        out = out + acc.scale(coeff)
    return normal_form(out)


def kernel_generator(g: BipartiteSeparatedGraph, e: str, f: str, g2: str,
                     h: str, _map: GeneratorMap | None = None) -> AlgElement:
    """The lower-corner kernel word r(e,f)r(f,g)r(g,h) - r(e,g)r(g,f)r(f,h)
    for four edges with a common source, normalized."""
    gmap = _map or rho_tau(g)
    d = g.base.graph
    unknown = [x for x in (e, f, g2, h) if x not in d._ends]
    if unknown:
        raise GraphError("unknown edges: " + ", ".join(unknown))
    srcs = {d.src(x) for x in (e, f, g2, h)}
    if len(srcs) != 1:
        raise GraphError("kernel words need four edges with a common source")
    def r(a: str, b: str) -> AlgElement:
        return gmap.images[r_name(a, b)]
    lhs = r(e, f) * r(f, g2) * r(g2, h)
    rhs = r(e, g2) * r(g2, f) * r(f, h)
    return normal_form(lhs - rhs)


# ---------------------------------------------------------------------------
# ideal generator families


def _format_word(word: tuple[tuple[str, bool], ...]) -> str:
    return " ".join(n + "*" if s else n for n, s in word)


def _semigroup_words(names: list[str], compose, bound: int):
    """Composable sequences over direct/starred letters, up to ``bound``."""
    layer: list[GenWord] = [((n, s),) for n in names for s in (False, True)]
    out: list[GenWord] = []
    for _ in range(bound):
        out += layer
        nxt = []
        for w in layer:
            if len(w) == bound:
                continue
            for n in names:
                for s in (False, True):
                    if compose(w[-1], (n, s)):
                        nxt.append(w + ((n, s),))
        layer = nxt
        if not layer:
            break
    return out


def ideal_generators(kind: str, g, bound: int | None = None,
                     subset=None) -> list[tuple[str, AlgElement]]:
    """Labeled generating families for the distinguished ideals.

    ``i0``: diagonal-support words of a vertex-weighted graph, as images
    under phi_vw.  ``kernel``: all nonzero kernel words of the one-step
    resolution map.  ``commutator``: commutators of range projections
    u u* over semigroup words up to ``bound`` letters (indexed generators
    count as one letter and map through phi1).  ``hsat``: the vertices of
    a hereditary group-saturated set.
    """
    if kind == "i0":
        if not isinstance(g, WeightedGraph):
            raise GraphError("i0 needs a weighted graph")
        if not is_vertex_weighted(g):
            raise GraphError("i0 images need a vertex-weighted graph")
        gmap = phi_vw(g)
        out = []
        d = g.graph
        for e, _, _ in d.edges:
            for i in range(1, g.w[e] + 1):
                for j in range(1, g.w[e] + 1):
                    if i != j:
                        el = normal_form(gmap.images[_slot(e, i)]
                                         * gmap.images[_slot(e, j)].star())
                        out.append((f"i0:offdiag:{e}.{i}.{j}", el))
        for v in d.vertices:
            for e in d.out_edges.get(v, ()):
                for f in d.out_edges.get(v, ()):
                    if e == f:
                        continue
                    for i in range(1, min(g.w[e], g.w[f]) + 1):
                        el = normal_form(gmap.images[_slot(e, i)].star()
                                         * gmap.images[_slot(f, i)])
                        out.append((f"i0:offedge:{e}.{f}.{i}", el))
        return out

    if kind == "kernel":
        if not isinstance(g, BipartiteSeparatedGraph):
            raise GraphError("kernel words need a bipartite graph")
        gmap = rho_tau(g)
        d = g.base.graph
        out = []
        for v in g.upper:
            fiber = d.out_edges.get(v, ())
            for e, f, g2, h in itertools.product(fiber, repeat=4):
                el = kernel_generator(g, e, f, g2, h, _map=gmap)
                if not el.is_zero:
                    out.append((f"gamma:{e}.{f}.{g2}.{h}", el))
        return out

    if kind == "commutator":
        if bound is None or bound < 1:
            raise GraphError("commutator generators need a word bound >= 1")
        if isinstance(g, WeightedGraph):
            gmap = phi1(g)
            d = g.graph
            names = [_slot(e, i) for e, _, _ in d.edges
                     for i in range(1, g.w[e] + 1)]
            blocks = {n: gmap.images[n] for n in names}
            ends = {_slot(e, i): (d.src(e), d.rng(e)) for e, _, _ in d.edges
                    for i in range(1, g.w[e] + 1)}
        else:
            s = cons.to_separated(g)
            alg = StarAlgebra(s)
            names = list(s.graph.edge_names)
            blocks = {n: alg.edge(n) for n in names}
            ends = {n: (s.graph.src(n), s.graph.rng(n)) for n in names}

        def letter_ends(l):
            n, starred = l
            a, b = ends[n]
            return (b, a) if starred else (a, b)

        def compose(l1, l2):
            return letter_ends(l1)[1] == letter_ends(l2)[0]

        words = _semigroup_words(names, compose, bound)
        projections: dict = {}
        for w in words:
            acc = None
            for n, starred in w:
                img = blocks[n].star() if starred else blocks[n]
                acc = img if acc is None else acc * img
            p = normal_form(acc * acc.star())
            if p.is_zero:
                continue
            key = frozenset(p.terms.items())
            projections.setdefault(key, (_format_word(w), p))
        out = []
        seen = set()
        items = list(projections.values())
        for i, (la, pa) in enumerate(items):
            for lb, pb in items[i + 1:]:
                c = normal_form(pa * pb - pb * pa)
                if c.is_zero:
                    continue
                key = frozenset(c.terms.items())
                if key in seen:
                    continue
                seen.add(key)
                out.append((f"comm:[{la} | {lb}]", c))
        return out

    if kind == "hsat":
        s = cons.to_separated(g)
        if subset is None:
            raise GraphError("hsat generators need a vertex subset")
        rep = cons.is_hsat(s, subset)
        if not (rep.hereditary and rep.saturated):
            raise GraphError("subset is not hereditary group-saturated")
        alg = StarAlgebra(s)
        return [(f"hsat:{v}", alg.vertex(v)) for v in sorted(subset)]

    raise GraphError(f"unknown ideal kind {kind!r}")
