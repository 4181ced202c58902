"""Local rewriting at a vertex and the checking procedures built on it.

The central fact: for a vertex v of degree >= 2 carrying no loop, the
graph is equisatisfiable to the union, over all 2-partitions {h1, h2} of
its link at v, of (h1 v h2) ^ rest.  Loops at v break the partition
reformulation (the loop contributes nothing to the link, so the union
misses the loop's polarity constraints); `local_rewrite` therefore rejects
loop vertices, and the procedures route around them.

`decompose` turns the contrapositive pair of corollaries into a recursive
decision procedure: a graph is totally satisfiable if every link
2-partition at some vertex has a totally satisfiable side (conjoined with
the rest); if some partition has both sides unsatisfiable nothing follows
locally and the graph is checked directly.  Results are memoized by
canonical form.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional, Tuple

from .cnf import Cnf, TOP_CNF, assignment, assign, cnf_or_cnf, tautologically_reduce
from .embedding import CnfSet, cnf_count, cnfs_on_graph, is_empty_set
from .logic import GroupKey, graph_and, graph_or, group_by_supporting_graph
from .mhgraph import (
    EdgeMultiset,
    MHGraph,
    canonical_form,
    degree,
    graph_from_multiset,
    link,
    loops_at,
    rest,
    star,
    two_partitions,
)
from .solve import (
    DEFAULT_CONFIG,
    Refused,
    SatResult,
    SolveConfig,
    Status,
    cover_capacity_short,
    decide_brute,
    decide_cover,
)


@dataclass(frozen=True)
class ProcedureResult:
    status: Status
    trace: Tuple[tuple, ...] = ()


def vertex_assignment_set(
    g: MHGraph, v: int, config: SolveConfig = DEFAULT_CONFIG
) -> CnfSet:
    """The definitional assignment set at a vertex: for every member x, the
    normal form of x[v] v x[~v].  Equisatisfiable to the graph itself.

    Materializes every member, so it is budgeted like brute force; the
    partition reformulation in `local_rewrite` is the scalable route.
    """
    if degree(v, g) < 1:
        raise ValueError(f"vertex {v} has degree 0 in {g}")
    count = cnf_count(g)
    if count > config.brute_budget:
        raise Refused(f"{count} member CNFs exceed the budget {config.brute_budget}")
    pos, neg = assignment([v]), assignment([-v])
    members = set()
    for x in cnfs_on_graph(g):
        members.add(cnf_or_cnf(assign(x, pos), assign(x, neg)))
    if not members:
        return CnfSet.empty()
    return CnfSet.from_cnfs(members)


@dataclass(frozen=True)
class LocalRewriteResult:
    """CNFs of the rewrite union at a vertex, grouped by supporting graph."""

    grouping: Dict[GroupKey, frozenset]

    def union(self) -> frozenset:
        out: set = set()
        for members in self.grouping.values():
            out |= members
        return frozenset(out)


def local_rewrite(g: MHGraph, v: int) -> LocalRewriteResult:
    """Materialize the partition union at ``v`` and group it by graph.

    Requires degree >= 2 and no loop at ``v``; degree 1 belongs to
    `drop_leaf`.
    """
    d = degree(v, g)
    if d == 0:
        raise ValueError(f"vertex {v} does not occur in {g}")
    if d == 1:
        raise ValueError(f"vertex {v} has degree 1; use drop_leaf")
    if loops_at(g, v):
        raise ValueError(
            f"vertex {v} carries a loop; the partition union does not cover loops"
        )
    lk = link(g, v)
    rs = rest(g, v)
    members: set = set()
    for h1, h2 in two_partitions(lk):
        term = graph_and(graph_or(h1, h2), rs)
        members.update(term.members())
    return LocalRewriteResult(group_by_supporting_graph(members))


def drop_leaf(g: MHGraph, v: int) -> EdgeMultiset:
    """Remove the single edge instance at a degree-1 vertex; the result is
    equisatisfiable to ``g`` (and may be empty)."""
    if degree(v, g) != 1:
        raise ValueError(f"vertex {v} has degree {degree(v, g)}, not 1")
    return rest(g, v)


# -- procedures ---------------------------------------------------------------


def _conj(part: EdgeMultiset, rs: EdgeMultiset) -> EdgeMultiset:
    return part + rs


def _quick_status(g: EdgeMultiset, config: SolveConfig) -> Optional[Status]:
    if g.is_empty:
        return Status.TOTALLY_SAT
    if is_empty_set(g):
        return Status.UNSAT
    if cover_capacity_short(g):
        return Status.TOTALLY_SAT
    return None


def decide_direct(g: EdgeMultiset, config: SolveConfig) -> SatResult:
    quick = _quick_status(g, config)
    if quick is not None:
        return SatResult(quick, None, "quick")
    graph = graph_from_multiset(g)
    try:
        return decide_cover(graph, config)
    except Refused:
        return decide_brute(graph, config)


def check_nonrecursive(
    g: MHGraph, v: int, config: SolveConfig = DEFAULT_CONFIG
) -> ProcedureResult:
    """One-level partition check at ``v``.

    Each 2-partition of the link needs a totally satisfiable side
    (conjoined with the rest); a partition with both sides unsatisfiable
    exits INCONCLUSIVE, and exhausting all partitions proves the graph
    totally satisfiable.
    """
    if degree(v, g) < 2:
        raise ValueError(f"vertex {v} has degree {degree(v, g)}, need >= 2")
    rs = rest(g, v)
    trace: List[tuple] = []
    for h1, h2 in two_partitions(link(g, v)):
        r1 = decide_direct(_conj(h1, rs), config)
        r2 = r1 if h1 == h2 else decide_direct(_conj(h2, rs), config)
        trace.append((v, h1, h2, r1.status, r2.status))
        if r1.status is Status.UNSAT and r2.status is Status.UNSAT:
            return ProcedureResult(Status.INCONCLUSIVE, tuple(trace))
    return ProcedureResult(Status.TOTALLY_SAT, tuple(trace))


def _pick_vertex(g: MHGraph) -> Optional[int]:
    """Lowest-degree loop-free vertex, ties to the smallest id."""
    best = None
    for v in sorted(g.vertices()):
        if loops_at(g, v):
            continue
        d = degree(v, g)
        if best is None or d < best[0]:
            best = (d, v)
    return best[1] if best else None


def decompose(
    g: MHGraph,
    config: SolveConfig = DEFAULT_CONFIG,
    _memo: Optional[Dict] = None,
) -> SatResult:
    """Recursive partition decomposition; never INCONCLUSIVE.

    At the chosen vertex every 2-partition is examined: a partition whose
    two children (side ^ rest) are both unsatisfiable yields no local
    conclusion, so the graph is handed to a direct satchecker; if every
    partition has a satisfiable child the graph is totally satisfiable.
    Memoized by canonical form, shared with the persistent cache when one
    is configured.
    """
    memo: Dict = {} if _memo is None else _memo
    result = _decompose_ems(EdgeMultiset(g.counts()), config, memo)
    return SatResult(result, None, "decompose")


def _decompose_ems(g: EdgeMultiset, config: SolveConfig, memo: Dict) -> Status:
    quick = _quick_status(g, config)
    if quick is not None:
        return quick
    key = canonical_form(g)
    hit = memo.get(key)
    if hit is not None:
        return hit
    if config.cache is not None:
        cached = config.cache.lookup(g)
        if cached is not None:
            memo[key] = cached
            return cached
    status = _decompose_work(g, config, memo)
    memo[key] = status
    if config.cache is not None:
        config.cache.insert(g, status)
    return status


def _decompose_work(g: EdgeMultiset, config: SolveConfig, memo: Dict) -> Status:
    config.check_deadline()
    graph = graph_from_multiset(g)
    if len(g.vertices()) <= 3:
        return decide_direct(g, config).status

    v = _pick_vertex(graph)
    if v is None:
        return decide_direct(g, config).status
    if degree(v, graph) == 1:
        return _decompose_ems(drop_leaf(graph, v), config, memo)

    rs = rest(graph, v)
    for h1, h2 in two_partitions(link(graph, v)):
        s1 = _decompose_ems(_conj(h1, rs), config, memo)
        s2 = s1 if h1 == h2 else _decompose_ems(_conj(h2, rs), config, memo)
        if s1 is Status.UNSAT and s2 is Status.UNSAT:
            return decide_direct(g, config).status
    return Status.TOTALLY_SAT


def check_completion(
    g: MHGraph, v: int, depth: int = 0, config: SolveConfig = DEFAULT_CONFIG
) -> ProcedureResult:
    """Graph-completion check at ``v``.

    The partition union is completed to the covering family of its
    supporting graphs; if every completed graph is totally satisfiable so
    is ``g``, otherwise nothing follows (INCONCLUSIVE).  Positive depth
    re-applies the procedure to each completed graph instead of checking
    it directly.
    """
    if degree(v, g) < 2:
        raise ValueError(f"vertex {v} has degree {degree(v, g)}, need >= 2")
    grouping = local_rewrite(g, v).grouping
    trace: List[tuple] = [(v, tuple(grouping))]
    for key in grouping:
        status = _completed_status(key, depth, config, trace)
        if status is not Status.TOTALLY_SAT:
            return ProcedureResult(Status.INCONCLUSIVE, tuple(trace))
    return ProcedureResult(Status.TOTALLY_SAT, tuple(trace))


def _completed_status(
    key: GroupKey, depth: int, config: SolveConfig, trace: List[tuple]
) -> Status:
    from .cnf import Bool

    if isinstance(key, Bool):
        return Status.TOTALLY_SAT if key is Bool.TRUE else Status.UNSAT
    if depth > 0:
        w = _pick_vertex(key)
        if w is not None and degree(w, key) >= 2:
            sub = check_completion(key, w, depth - 1, config)
            trace.append((key, w, sub.status))
            if sub.status is Status.TOTALLY_SAT:
                return Status.TOTALLY_SAT
            # inconclusive recursion falls back to a direct check
    return decide_direct(key, config).status
