"""Satisfiability-preserving global reduction rules and their fixpoint.

Each rule matches the *entire* star of an anchor vertex (so the rest of
the graph never needs inspection) and rewrites the graph into a list of
replacement graphs:

* Exact outcome: the graph is totally satisfiable iff every replacement
  is.
* Partial outcome: an unsatisfiable lower replacement forces the graph
  unsatisfiable; all upper replacements satisfiable force it totally
  satisfiable.  Nothing follows in the other directions.

Every rule removes its anchor vertex, so fixpoint iteration terminates.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple, Union

from .cnf import Bool
from .mhgraph import (
    EdgeMultiset,
    MHGraph,
    canonical_form,
    degree,
    graph_from_multiset,
    rest,
)
from .solve import (
    DEFAULT_CONFIG,
    Refused,
    SatResult,
    SolveConfig,
    Status,
    decide_brute,
    decide_cover,
)

# A replacement is a graph (possibly empty = trivially satisfiable) or the
# FALSE marker (trivially unsatisfiable).
Replacement = Union[EdgeMultiset, Bool]


@dataclass(frozen=True)
class RewriteOutcome:
    kind: str  # "exact" | "partial"
    replacements: Tuple[Replacement, ...] = ()
    lower: Tuple[Replacement, ...] = ()
    upper: Tuple[Replacement, ...] = ()


def _star_items(g: MHGraph, v: int):
    return tuple(sorted(((e, m) for e, m in g.items() if v in e), key=lambda em: (len(em[0]), sorted(em[0]), em[1])))


def rule_leaf(g: MHGraph, v: int) -> Optional[RewriteOutcome]:
    """Vertex on a single edge type: drop it, halve the multiplicity onto the
    link edge, or conclude unsatisfiable when the multiplicity saturates.

    Multiplicity n on a size-k edge: n = 1 drops the edge; 1 < n < 2^k
    replaces e^n by (e - v)^(n // 2); n >= 2^k makes the graph
    unsatisfiable outright.
    """
    items = _star_items(g, v)
    if len(items) != 1:
        return None
    (e, n) = items[0]
    k = len(e)
    rs = rest(g, v)
    if n >= 2**k:
        return RewriteOutcome("exact", (Bool.FALSE,))
    if n == 1:
        return RewriteOutcome("exact", (rs,))
    reduced = e - {v}
    return RewriteOutcome("exact", (rs + EdgeMultiset({reduced: n // 2}),))


def rule_smooth(g: MHGraph, v: int) -> Optional[RewriteOutcome]:
    """Degree-2 vertex on two distinct multiplicity-1 edges: merge them into
    their union minus the vertex."""
    items = _star_items(g, v)
    if len(items) != 2:
        return None
    (e, me), (f, mf) = items
    if me != 1 or mf != 1:
        return None
    merged = (e | f) - {v}
    if not merged:
        return None
    return RewriteOutcome("exact", (rest(g, v) + EdgeMultiset({frozenset(merged): 1}),))


def rule_tuck(g: MHGraph, v: int) -> Optional[RewriteOutcome]:
    """Edge/hyperedge fins sharing the anchor vertex and one more vertex.

    With star patterns written at anchor 1 (up to relabeling):
    (1,2)(1,2,3) folds to (2,3); (1,2)(1,3)(1,2,3) to the pair of loops
    (2), (3); (1,2)(1,2,3)^2 to the loop (2); (1,2)^2(1,2,3) only bounds:
    lower (2), upper (2)(2,3).
    """
    items = _star_items(g, v)
    sig = tuple((len(e), m) for e, m in items)
    rs = rest(g, v)

    if sig == ((2, 1), (3, 1)):
        (e2, _), (e3, _) = items
        if e2 < e3:
            return RewriteOutcome("exact", (rs + EdgeMultiset({e3 - {v}: 1}),))
        return None
    if sig == ((2, 1), (2, 1), (3, 1)):
        (a2, _), (b2, _), (e3, _) = items
        if a2 | b2 == e3:
            x = a2 - {v}
            y = b2 - {v}
            return RewriteOutcome(
                "exact", (rs + EdgeMultiset({x: 1}), rs + EdgeMultiset({y: 1}))
            )
        return None
    if sig == ((2, 1), (3, 2)):
        (e2, _), (e3, _) = items
        if e2 < e3:
            return RewriteOutcome("exact", (rs + EdgeMultiset({e2 - {v}: 1}),))
        return None
    if sig == ((2, 2), (3, 1)):
        (e2, _), (e3, _) = items
        if e2 < e3:
            x = e2 - {v}
            lower = rs + EdgeMultiset({x: 1})
            upper = rs + EdgeMultiset({x: 1, e3 - {v}: 1})
            return RewriteOutcome("partial", (), (lower,), (upper,))
        return None
    return None


def rule_triple(g: MHGraph, v: int) -> Optional[RewriteOutcome]:
    """Three triangles through the anchor pairwise sharing one boundary
    vertex each: open into the three boundary edges, one replacement per
    edge."""
    items = _star_items(g, v)
    if len(items) != 3:
        return None
    if any(m != 1 or len(e) != 3 for e, m in items):
        return None
    links = [e - {v} for e, _ in items]
    boundary = frozenset().union(*links)
    if len(boundary) != 3 or len(set(links)) != 3:
        return None
    rs = rest(g, v)
    return RewriteOutcome(
        "exact", tuple(rs + EdgeMultiset({lk: 1}) for lk in sorted(links, key=sorted))
    )


RULES: Tuple[Tuple[str, object], ...] = (
    ("leaf", rule_leaf),
    ("smooth", rule_smooth),
    ("tuck", rule_tuck),
    ("triple", rule_triple),
)


def find_reduction(
    g: MHGraph, allow_partial: bool = False
) -> Optional[Tuple[str, int, RewriteOutcome]]:
    """First applicable rule, anchored at ascending vertex ids, rules in
    fixed order; exact outcomes preferred over partial ones."""
    partial_hit = None
    for v in sorted(g.vertices()):
        for name, rule in RULES:
            outcome = rule(g, v)
            if outcome is None:
                continue
            if outcome.kind == "exact":
                return (name, v, outcome)
            if allow_partial and partial_hit is None:
                partial_hit = (name, v, outcome)
    return partial_hit


def is_irreducible(g: MHGraph) -> bool:
    return find_reduction(g) is None


@dataclass
class ReductionResult:
    """Fixpoint output: irreducible graphs with exact/partial bookkeeping.

    With no partial rewrites applied, the source graph is totally
    satisfiable iff every member of ``exact`` is.  ``lower`` members came
    through unsat-preserving bounds only, ``upper`` through sat-preserving
    ones; see `RewriteOutcome`.
    """

    exact: Tuple[Replacement, ...]
    lower: Tuple[Replacement, ...] = ()
    upper: Tuple[Replacement, ...] = ()
    partial_used: bool = False
    steps: Tuple[Tuple[str, int], ...] = ()


def _dedup(items: List[Replacement]) -> Tuple[Replacement, ...]:
    seen = set()
    out = []
    for r in items:
        key = r if isinstance(r, Bool) else canonical_form(r)
        if key in seen:
            continue
        seen.add(key)
        out.append(r)
    return tuple(
        sorted(
            out,
            key=lambda r: (0, ()) if isinstance(r, Bool) else (1, canonical_form(r).key),
        )
    )


def reduce_fixpoint(g: MHGraph, allow_partial: bool = False) -> ReductionResult:
    """Apply exact rules everywhere until none applies, branching over
    replacement unions; partial rules fire only when requested and fork
    the affected branch into its lower and upper bounds."""
    steps: List[Tuple[str, int]] = []
    exact_out: List[Replacement] = []
    lower_out: List[Replacement] = []
    upper_out: List[Replacement] = []
    partial_used = False

    # (mode, graph) work items; mode tracks which one-sided contract applies
    work: List[Tuple[str, Replacement]] = [("exact", g)]
    seen = set()
    while work:
        mode, item = work.pop()
        if isinstance(item, Bool) or item.is_empty:
            target = {"exact": exact_out, "lower": lower_out, "upper": upper_out}[mode]
            target.append(item if isinstance(item, Bool) else EdgeMultiset())
            continue
        key = (mode, canonical_form(item))
        if key in seen:
            continue
        seen.add(key)
        graph = graph_from_multiset(item)
        hit = find_reduction(graph, allow_partial=allow_partial)
        if hit is None:
            {"exact": exact_out, "lower": lower_out, "upper": upper_out}[mode].append(graph)
            continue
        name, v, outcome = hit
        steps.append((name, v))
        if outcome.kind == "exact":
            work.extend((mode, r) for r in outcome.replacements)
        else:
            partial_used = True
            if mode in ("exact", "lower"):
                work.extend(("lower", r) for r in outcome.lower)
            if mode in ("exact", "upper"):
                work.extend(("upper", r) for r in outcome.upper)

    return ReductionResult(
        exact=_dedup(exact_out),
        lower=_dedup(lower_out),
        upper=_dedup(upper_out),
        partial_used=partial_used,
        steps=tuple(steps),
    )


def _decide_residue(r: Replacement, config: SolveConfig) -> Status:
    if isinstance(r, Bool):
        return Status.TOTALLY_SAT if r is Bool.TRUE else Status.UNSAT
    if r.is_empty:
        return Status.TOTALLY_SAT
    from .rewrite import decide_direct, decompose

    graph = graph_from_multiset(r)
    try:
        return decide_direct(r, config).status
    except Refused:
        return decompose(graph, config).status


def reduce_then_decide(g: MHGraph, config: SolveConfig = DEFAULT_CONFIG) -> SatResult:
    """Exact-rule fixpoint, then decide every irreducible residue; the graph
    is totally satisfiable iff all residues are."""
    result = reduce_fixpoint(g)
    for r in result.exact:
        status = _decide_residue(r, config)
        if status is Status.UNSAT:
            return SatResult(Status.UNSAT, None, "reduce")
    return SatResult(Status.TOTALLY_SAT, None, "reduce")


def thicken(g: MHGraph) -> MHGraph:
    """Replace each size-2 edge instance (a,b) by the triangle fan
    (a,b,c)(a,c,d)(b,c,d) on fresh vertices c, d; preserves the
    satisfiability status."""
    if any(len(e) != 2 for e, _ in g.items()):
        raise ValueError("thickening is defined for graphs whose edges all have size 2")
    fresh = max(g.vertices()) + 1
    counts: Dict = {}
    for e in g.instances():
        a, b = sorted(e)
        c, d = fresh, fresh + 1
        fresh += 2
        for tri in (frozenset((a, b, c)), frozenset((a, c, d)), frozenset((b, c, d))):
            counts[tri] = counts.get(tri, 0) + 1
    return MHGraph(counts)
