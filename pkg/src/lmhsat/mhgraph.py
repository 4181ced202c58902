"""Looped multi-hypergraphs as multisets of hyperedges.

An edge is a nonempty frozenset of positive-integer vertices (size 1 is a
loop).  `EdgeMultiset` is an immutable, hashable multiset of edges and may
be empty; `MHGraph` adds the nonempty invariant.  Vertex-local parts
(star/link/rest), the two partial orders (subgraph, shaved version),
multiset 2-partitions, isomorphism-canonical labeling, and the text format
live here.
"""

from __future__ import annotations

import itertools
import re
from typing import Dict, Iterable, Iterator, Mapping, Tuple, Union

Vertex = int
Edge = frozenset  # frozenset[int], nonempty


def edge(vertices: Iterable[int]) -> Edge:
    """Build an edge; vertices are positive ints, duplicates collapse."""
    vs = frozenset(vertices)
    if not vs:
        raise ValueError("an edge must contain at least one vertex")
    for v in vs:
        if not isinstance(v, int) or isinstance(v, bool) or v < 1:
            raise ValueError(f"vertex ids are positive integers, got {v!r}")
    return vs


def _edge_key(e: Edge) -> tuple:
    return (len(e), tuple(sorted(e)))


class EdgeMultiset:
    """Immutable multiset of edges with positive multiplicities; may be empty."""

    __slots__ = ("_items", "_hash")

    def __init__(self, edges: Union[Mapping, Iterable, None] = None):
        counts: Dict[Edge, int] = {}
        if edges is None:
            pass
        elif isinstance(edges, EdgeMultiset):
            counts = dict(edges._items)
        elif isinstance(edges, Mapping):
            for e, m in edges.items():
                e = edge(e)
                if not isinstance(m, int) or m < 1:
                    raise ValueError(f"multiplicities are positive integers, got {m!r}")
                counts[e] = counts.get(e, 0) + m
        else:
            for item in edges:
                e = edge(item)
                counts[e] = counts.get(e, 0) + 1
        self._items: Tuple[Tuple[Edge, int], ...] = tuple(
            sorted(counts.items(), key=lambda em: _edge_key(em[0]))
        )
        self._hash = hash(self._items)

    # -- basic queries ----------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self._items

    def counts(self) -> Dict[Edge, int]:
        return dict(self._items)

    def items(self) -> Tuple[Tuple[Edge, int], ...]:
        return self._items

    def multiplicity(self, e: Edge) -> int:
        for f, m in self._items:
            if f == e:
                return m
        return 0

    def edges(self) -> Iterator[Edge]:
        """Distinct edges."""
        return (e for e, _ in self._items)

    def instances(self) -> Iterator[Edge]:
        """Edges with repetition per multiplicity."""
        for e, m in self._items:
            for _ in range(m):
                yield e

    def total_multiplicity(self) -> int:
        return sum(m for _, m in self._items)

    def vertices(self) -> frozenset:
        return frozenset(v for e, _ in self._items for v in e)

    # -- algebra -----------------------------------------------------------

    def __add__(self, other: "EdgeMultiset") -> "EdgeMultiset":
        counts = self.counts()
        for e, m in other.items():
            counts[e] = counts.get(e, 0) + m
        return EdgeMultiset(counts)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, EdgeMultiset) and self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __len__(self) -> int:
        return self.total_multiplicity()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({str(self)!r})"

    def __str__(self) -> str:
        return format_graph(self) if self._items else "(empty)"


class MHGraph(EdgeMultiset):
    """A looped multi-hypergraph: a nonempty multiset of edges."""

    __slots__ = ()

    def __init__(self, edges):
        super().__init__(edges)
        if self.is_empty:
            raise ValueError("a graph must contain at least one edge")


def mhgraph(edges) -> MHGraph:
    """Convenience constructor from edge lists, e.g. ``mhgraph([[1,2],[1,2,3]])``."""
    return MHGraph(edges)


def edge_multiset(edges=None) -> EdgeMultiset:
    return EdgeMultiset(edges)


def graph_from_multiset(ems: EdgeMultiset) -> MHGraph:
    if ems.is_empty:
        raise ValueError("empty edge multiset is not a graph")
    return MHGraph(ems.counts())


# -- vertex-local structure -------------------------------------------------


def degree(v: Vertex, g: EdgeMultiset) -> int:
    """Number of edge instances containing ``v``; a loop instance counts 1."""
    return sum(m for e, m in g.items() if v in e)


def star(g: MHGraph, v: Vertex) -> MHGraph:
    """Sub-multiset of edges containing ``v``; error if the degree is 0."""
    sub = {e: m for e, m in g.items() if v in e}
    if not sub:
        raise ValueError(f"vertex {v} has degree 0; its star would be empty")
    return MHGraph(sub)


def link(g: MHGraph, v: Vertex) -> EdgeMultiset:
    """Star edges with ``v`` deleted; edges emptied by the deletion are omitted."""
    if degree(v, g) < 1:
        raise ValueError(f"vertex {v} has degree 0 in {g}")
    counts: Dict[Edge, int] = {}
    for e, m in g.items():
        if v not in e:
            continue
        rem = e - {v}
        if rem:
            counts[rem] = counts.get(rem, 0) + m
    return EdgeMultiset(counts)


def rest(g: MHGraph, v: Vertex) -> EdgeMultiset:
    """All edges not containing ``v``."""
    return EdgeMultiset({e: m for e, m in g.items() if v not in e})


def loops_at(g: EdgeMultiset, v: Vertex) -> int:
    """Multiplicity of the loop edge at ``v``."""
    return g.multiplicity(frozenset((v,)))


# -- partial orders ----------------------------------------------------------


def is_subgraph(g: EdgeMultiset, h: EdgeMultiset) -> bool:
    """True iff every edge multiplicity in ``g`` is at most its multiplicity in ``h``."""
    return all(m <= h.multiplicity(e) for e, m in g.items())


def is_shaved_version(g: EdgeMultiset, h: EdgeMultiset) -> bool:
    """True iff some bijection of edge instances maps each ``g`` edge onto a
    superset instance in ``h`` (each edge replaced by a nonempty face)."""
    g_inst = list(g.instances())
    h_inst = list(h.instances())
    if len(g_inst) != len(h_inst):
        return False

    def match(i: int, used: int) -> bool:
        if i == len(g_inst):
            return True
        for j, f in enumerate(h_inst):
            if used >> j & 1:
                continue
            if g_inst[i] <= f and match(i + 1, used | (1 << j)):
                return True
        return False

    # sort g instances largest-first so dead branches die early
    g_inst.sort(key=len, reverse=True)
    return match(0, 0)


# -- 2-partitions ------------------------------------------------------------


def two_partitions(ems: EdgeMultiset) -> Iterator[Tuple[EdgeMultiset, EdgeMultiset]]:
    """All unordered pairs of nonempty sub-multisets summing to ``ems``.

    Multiplicity may split across the pair; pairs equal as multiset pairs
    are emitted once.  For d pairwise-distinct edges this yields
    2^(d-1) - 1 pairs.
    """
    items = ems.items()
    if ems.total_multiplicity() < 2:
        return
    ranges = [range(m + 1) for _, m in items]
    seen = set()
    for split in itertools.product(*ranges):
        left = {e: k for (e, _), k in zip(items, split) if k}
        right = {e: m - k for (e, m), k in zip(items, split) if m - k}
        if not left or not right:
            continue
        a, b = EdgeMultiset(left), EdgeMultiset(right)
        key = frozenset((a, b))
        if key in seen:
            continue
        seen.add(key)
        yield a, b


# -- relabeling and canonical form -------------------------------------------


def relabel(g: EdgeMultiset, mapping: Mapping[int, int]) -> EdgeMultiset:
    counts: Dict[Edge, int] = {}
    for e, m in g.items():
        f = frozenset(mapping[v] for v in e)
        if len(f) != len(e):
            raise ValueError("relabeling must be injective on each edge")
        counts[f] = counts.get(f, 0) + m
    return type(g)(counts) if counts else EdgeMultiset()


class CanonicalForm:
    """Isomorphism-class key: the least relabeled edge list over vertex bijections."""

    __slots__ = ("key", "graph")

    def __init__(self, key: tuple, graph: EdgeMultiset):
        self.key = key
        self.graph = graph

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CanonicalForm) and self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __str__(self) -> str:
        return format_graph(self.graph) if not self.graph.is_empty else "(empty)"

    def __repr__(self) -> str:
        return f"CanonicalForm({self})"


def _vertex_profile(g: EdgeMultiset):
    prof: Dict[int, list] = {v: [] for v in g.vertices()}
    for e, m in g.items():
        for v in e:
            prof[v].append((len(e), m))
    return {v: (degree(v, g), tuple(sorted(sig))) for v, sig in prof.items()}


def canonical_form(g: EdgeMultiset, max_vertices: int = 8) -> CanonicalForm:
    """Canonical form by minimization over vertex bijections.

    Bijections are restricted to those preserving the (degree, incidence
    signature) profile; the profile multiset is part of the key, so equal
    keys still hold exactly for isomorphic graphs.  Guarded by a vertex
    bound since the search is factorial in the profile class sizes.
    """
    verts = sorted(g.vertices())
    n = len(verts)
    if n > max_vertices:
        raise ValueError(f"canonical form limited to {max_vertices} vertices, got {n}")
    if n == 0:
        return CanonicalForm(((), ()), EdgeMultiset())

    prof = _vertex_profile(g)
    classes: Dict[tuple, list] = {}
    for v in verts:
        classes.setdefault(prof[v], []).append(v)
    ordered = sorted(classes.items())
    profile_key = tuple((p, len(vs)) for p, vs in ordered)

    # target ids 1..n are handed out classwise in sorted-profile order
    starts = []
    base = 1
    for _, vs in ordered:
        starts.append(base)
        base += len(vs)

    best = None
    for perms in itertools.product(*(itertools.permutations(vs) for _, vs in ordered)):
        mapping = {}
        for start, perm in zip(starts, perms):
            for offset, v in enumerate(perm):
                mapping[v] = start + offset
        key = tuple(
            sorted(
                ((len(e), tuple(sorted(mapping[v] for v in e))), m)
                for e, m in g.items()
            )
        )
        if best is None or key < best[0]:
            best = (key, mapping)
    key, mapping = best
    return CanonicalForm((profile_key, key), relabel(g, mapping))


# -- text format --------------------------------------------------------------

_SUPERSCRIPTS = {c: str(i) for i, c in enumerate("⁰¹²³⁴⁵⁶⁷⁸⁹")}

_EDGE_RE = re.compile(
    r"\(\s*(\d+(?:\s*,\s*\d+)*)\s*\)\s*(\^\s*\d+|[⁰¹²³⁴⁵⁶⁷⁸⁹]+)?"
)


class GraphParseError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


def parse_graph(text: str) -> MHGraph:
    """Parse the edge-list grammar, e.g. ``(1,2)^2, (1,4), (1,2,4)²``.

    Multiplicity is ``^n`` or superscript digits; edges separated by commas
    (optional) and whitespace.
    """
    counts: Dict[Edge, int] = {}
    pos = 0
    ln = len(text)
    first = True
    while True:
        while pos < ln and text[pos].isspace():
            pos += 1
        if pos >= ln:
            break
        if not first:
            if text[pos] == ",":
                pos += 1
                while pos < ln and text[pos].isspace():
                    pos += 1
            if pos >= ln:
                raise GraphParseError("trailing separator", pos)
        m = _EDGE_RE.match(text, pos)
        if not m:
            raise GraphParseError("expected an edge like (1,2)", pos)
        verts = [int(t) for t in re.split(r"\s*,\s*", m.group(1))]
        if any(v < 1 for v in verts):
            raise GraphParseError("vertex ids are positive integers", pos)
        mult = 1
        if m.group(2):
            sup = m.group(2)
            if sup.startswith("^"):
                mult = int(sup[1:].strip())
            else:
                mult = int("".join(_SUPERSCRIPTS[c] for c in sup))
            if mult < 1:
                raise GraphParseError("multiplicity must be positive", pos)
        e = edge(verts)
        if len(e) != len(verts):
            raise GraphParseError("repeated vertex inside an edge", pos)
        counts[e] = counts.get(e, 0) + mult
        pos = m.end()
        first = False
    if not counts:
        raise GraphParseError("empty graph", 0)
    return MHGraph(counts)


def format_graph(g: EdgeMultiset, compact: bool = False) -> str:
    """Inverse of `parse_graph`; multiplicities printed as ASCII ``^n`` for n >= 2."""
    if g.is_empty:
        raise ValueError("cannot format an empty edge multiset as a graph")
    parts = []
    for e, m in g.items():
        body = "(" + ",".join(str(v) for v in sorted(e)) + ")"
        parts.append(body + (f"^{m}" if m > 1 else ""))
    return ("," if compact else ", ").join(parts)
