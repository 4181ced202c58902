"""Translation of graphs into sets of CNFs.

A vertex maps to its literal pair, a size-k edge to its 2^k clauses (one
polarity choice per vertex), a multiplicity-n edge to the C(2^k, n)
conjunctions of n distinct clauses, and a graph to the product set of
per-edge choices.  `CnfSet` is the common carrier: an explicit finite set,
a lazily enumerated graph-backed set, the singleton constants TOP_SET and
BOTTOM_SET, or the empty set (which is *not* the same thing as BOTTOM_SET:
the empty set is unsatisfiable by the nonemptiness requirement, and the
distinction matters for diagnostics).
"""

from __future__ import annotations

import itertools
import math
from typing import Dict, Iterable, Iterator, Tuple, Union

from .cnf import (
    BOTTOM_CNF,
    TOP_CNF,
    Bool,
    Clause,
    Cnf,
    tautologically_reduce,
    variables,
)
from .mhgraph import Edge, EdgeMultiset, MHGraph


def clauses_on_edge(e: Edge) -> Tuple[Clause, ...]:
    """The 2^k clauses choosing one polarity per vertex, in a fixed order
    (vertices ascending, positive polarity first)."""
    verts = sorted(e)
    out = []
    for signs in itertools.product((1, -1), repeat=len(verts)):
        out.append(frozenset(s * v for s, v in zip(signs, verts)))
    return tuple(out)


def cnfs_on_edge(n: int, e: Edge) -> Iterator[Cnf]:
    """All conjunctions of ``n`` pairwise-distinct clauses on ``e``.

    Yields C(2^k, n) CNFs; nothing when n > 2^k.
    """
    if n < 1:
        raise ValueError("multiplicity must be at least 1")
    for combo in itertools.combinations(clauses_on_edge(e), n):
        yield frozenset(combo)


def cnfs_on_graph(g: EdgeMultiset) -> Iterator[Cnf]:
    """Lazy product of per-edge choices, each conjunction reduced.

    An empty edge multiset yields the single CNF TRUE (empty conjunction).
    Restartable: each call builds an independent iterator.
    """
    items = g.items()
    if not items:
        yield TOP_CNF
        return
    per_edge = [tuple(cnfs_on_edge(m, e)) for e, m in items]
    for choice in itertools.product(*per_edge):
        yield tautologically_reduce(frozenset(c for part in choice for c in part))


def cnf_count(g: EdgeMultiset) -> int:
    """Exact number of CNFs living on ``g``: the product of C(2^k, n)."""
    total = 1
    for e, m in g.items():
        total *= math.comb(2 ** len(e), m)
    return total


def is_empty_set(g: EdgeMultiset) -> bool:
    """True iff no CNF lives on ``g``: some size-k edge has multiplicity > 2^k."""
    return any(m > 2 ** len(e) for e, m in g.items())


def supporting_graph(x: Cnf) -> MHGraph:
    """The graph a CNF lives on: each clause maps to its variable set.

    Distinct clauses with equal variable sets stack up as multiplicity.
    Undefined for the constant CNFs.
    """
    if x == TOP_CNF or x == BOTTOM_CNF:
        raise ValueError("the constant CNFs have no supporting graph")
    counts: Dict[Edge, int] = {}
    for c in x:
        if any(isinstance(l, Bool) for l in c):
            raise ValueError("supporting graph requires a reduced, constant-free CNF")
        e = frozenset(abs(l) for l in c)
        counts[e] = counts.get(e, 0) + 1
    return MHGraph(counts)


class CnfSet:
    """A set of CNFs: explicit, graph-backed, a constant singleton, or empty."""

    __slots__ = ("kind", "payload")

    _EXPLICIT = "explicit"
    _GRAPH = "graph"
    _TOP = "top"
    _BOTTOM = "bottom"
    _EMPTY = "empty"

    def __init__(self, kind: str, payload=None):
        self.kind = kind
        self.payload = payload

    # -- constructors -------------------------------------------------------

    @classmethod
    def from_graph(cls, g: EdgeMultiset) -> "CnfSet":
        if g.is_empty:
            return cls.top()
        return cls(cls._GRAPH, g)

    @classmethod
    def from_cnfs(cls, cnfs: Iterable[Cnf]) -> "CnfSet":
        members = frozenset(tautologically_reduce(x) for x in cnfs)
        if not members:
            return cls.empty()
        return cls(cls._EXPLICIT, members)

    @classmethod
    def top(cls) -> "CnfSet":
        return cls(cls._TOP)

    @classmethod
    def bottom(cls) -> "CnfSet":
        return cls(cls._BOTTOM)

    @classmethod
    def empty(cls) -> "CnfSet":
        return cls(cls._EMPTY)

    @classmethod
    def coerce(cls, obj: Union["CnfSet", EdgeMultiset, Iterable[Cnf]]) -> "CnfSet":
        if isinstance(obj, CnfSet):
            return obj
        if isinstance(obj, EdgeMultiset):
            return cls.from_graph(obj)
        return cls.from_cnfs(obj)

    # -- queries -------------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        if self.kind == self._EMPTY:
            return True
        if self.kind == self._GRAPH:
            return is_empty_set(self.payload)
        return False

    @property
    def graph(self) -> EdgeMultiset:
        if self.kind != self._GRAPH:
            raise ValueError("not a graph-backed set")
        return self.payload

    def members(self) -> Iterator[Cnf]:
        if self.kind == self._EXPLICIT:
            return iter(self.payload)
        if self.kind == self._GRAPH:
            return cnfs_on_graph(self.payload)
        if self.kind == self._TOP:
            return iter((TOP_CNF,))
        if self.kind == self._BOTTOM:
            return iter((BOTTOM_CNF,))
        return iter(())

    def materialize(self) -> frozenset:
        return frozenset(self.members())

    def count(self) -> int:
        if self.kind == self._EXPLICIT:
            return len(self.payload)
        if self.kind == self._GRAPH:
            return cnf_count(self.payload)
        return 0 if self.kind == self._EMPTY else 1

    def variables(self) -> frozenset:
        if self.kind == self._GRAPH:
            return self.payload.vertices()
        return frozenset(v for x in self.members() for v in variables(x))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CnfSet):
            return NotImplemented
        if self.kind == other.kind and self.payload == other.payload:
            return True
        return self.materialize() == other.materialize()

    def __hash__(self) -> int:
        return hash(self.materialize())

    def __repr__(self) -> str:
        if self.kind == self._GRAPH:
            return f"CnfSet.from_graph({self.payload})"
        if self.kind == self._EXPLICIT:
            return f"CnfSet({len(self.payload)} cnfs)"
        return f"CnfSet.{self.kind}()"


TOP_SET = CnfSet.top()
BOTTOM_SET = CnfSet.bottom()
EMPTY_SET = CnfSet.empty()
