"""Deciding total satisfiability of a graph.

Two base deciders:

* `decide_brute` streams every CNF living on the graph through the
  CNF-level solver; first unsatisfiable member is the witness.

* `decide_cover` never enumerates members.  A member is unsatisfiable
  exactly when the falsified-assignment sets of its clauses cover the
  whole assignment space, so graph unsatisfiability is a per-edge
  clause-selection cover problem: pick n_e distinct clauses on each edge
  so that every total assignment is falsified somewhere.  The search
  branches on the first uncovered assignment (any cover must pick, on
  some edge with remaining capacity, the unique clause of that edge
  falsified there) and prunes on remaining coverage capacity: a clause of
  size k on n vertices falsifies exactly 2^(n-k) assignments.

`decide` dispatches on a strategy ladder; all strategies agree and are
cross-checked in the tests.
"""

from __future__ import annotations

import enum
import os
import threading
import time
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple

from .cnf import Cnf, TOP_CNF, satisfiable, tautologically_reduce
from .embedding import (
    clauses_on_edge,
    cnf_count,
    cnfs_on_graph,
    is_empty_set,
    supporting_graph,
)
from .mhgraph import EdgeMultiset, MHGraph, canonical_form, format_graph


class Status(enum.Enum):
    TOTALLY_SAT = "SAT"
    UNSAT = "UNSAT"
    INCONCLUSIVE = "INCONCLUSIVE"


class Strategy(enum.Enum):
    BRUTE = "brute"
    COVER = "cover"
    DECOMPOSE = "decompose"
    REDUCE_FIRST = "reduce"
    AUTO = "auto"


class Refused(RuntimeError):
    """Raised when a decider declines an instance (budget/bound/timeout);
    callers may escalate to another strategy."""


@dataclass(frozen=True)
class SatResult:
    status: Status
    witness: Optional[Cnf] = None
    method: str = ""

    @property
    def is_sat(self) -> bool:
        return self.status is Status.TOTALLY_SAT


@dataclass
class SolveConfig:
    strategy: Strategy = Strategy.AUTO
    brute_budget: int = 10**6
    cover_vertex_bound: int = 24
    tau_budget: int = 10**3
    # AUTO ladder thresholds on total edge instances
    small_edges: int = 6
    medium_edges: int = 20
    deadline: Optional[float] = None  # time.monotonic() timestamp
    long_running: bool = False
    cache: Optional["StatusCache"] = None

    def check_deadline(self) -> None:
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise Refused("timeout")


DEFAULT_CONFIG = SolveConfig()


# -- brute force ----------------------------------------------------------------


def decide_brute(g: MHGraph, config: SolveConfig = DEFAULT_CONFIG) -> SatResult:
    """Check every member CNF; Unsat carries the first failing member."""
    count = cnf_count(g)
    if count > config.brute_budget:
        raise Refused(f"{count} member CNFs exceed the brute budget {config.brute_budget}")
    if count == 0:
        return SatResult(Status.UNSAT, None, "brute")
    for i, x in enumerate(cnfs_on_graph(g)):
        if i % 256 == 0:
            config.check_deadline()
        if not satisfiable(x):
            return SatResult(Status.UNSAT, x, "brute")
    return SatResult(Status.TOTALLY_SAT, None, "brute")


# -- cover search ----------------------------------------------------------------


def cover_capacity_short(g: EdgeMultiset) -> bool:
    """Cheap sufficient condition for total satisfiability: the edges cannot
    falsify enough assignments even with every clause choice distinct.

    False for graphs carrying no CNFs at all (those are unsatisfiable by
    the nonemptiness clause, not satisfiable).
    """
    if g.is_empty:
        return True
    if is_empty_set(g):
        return False
    n = len(g.vertices())
    capacity = sum(m << (n - len(e)) for e, m in g.items())
    return capacity < (1 << n)


def _assignment_clause(e_sorted: Tuple[int, ...], a: int, pos: Dict[int, int]) -> frozenset:
    # the unique clause on the edge falsified by assignment index a
    return frozenset((-v if a >> pos[v] & 1 else v) for v in e_sorted)


def decide_cover(g: MHGraph, config: SolveConfig = DEFAULT_CONFIG) -> SatResult:
    """Decide by searching for a falsified-assignment cover (see module doc)."""
    if is_empty_set(g):
        return SatResult(Status.UNSAT, None, "cover")
    verts = sorted(g.vertices())
    n = len(verts)
    if n > config.cover_vertex_bound:
        raise Refused(f"{n} vertices exceed the cover bound {config.cover_vertex_bound}")
    pos = {v: i for i, v in enumerate(verts)}
    space = 1 << n
    full = (1 << space) - 1

    items = g.items()
    caps = [m for _, m in items]
    sizes = [len(e) for e, _ in items]
    sorted_edges = [tuple(sorted(e)) for e, _ in items]
    weight = [1 << (n - k) for k in sizes]
    chosen: List[set] = [set() for _ in items]
    # falsified-set masks are cached per (edge, clause)
    mask_cache: Dict[Tuple[int, frozenset], int] = {}

    def clause_mask(idx: int, c: frozenset) -> int:
        key = (idx, c)
        m = mask_cache.get(key)
        if m is None:
            m = 1
            for i in range(n):
                v = verts[i]
                if v in c:
                    pass  # needs bit i = 0
                elif -v in c:
                    m <<= 1 << i
                else:
                    m |= m << (1 << i)
            mask_cache[key] = m
        return m

    capacity = sum(c * w for c, w in zip(caps, weight))

    def extend(covered: int, capacity: int, banned: frozenset) -> bool:
        config.check_deadline()
        if covered == full:
            return True
        if covered.bit_count() + capacity < space:
            return False
        a = (~covered & full).bit_length() - 1  # highest uncovered; any point works
        options = []
        for idx in range(len(items)):
            if len(chosen[idx]) >= caps[idx]:
                continue
            c = _assignment_clause(sorted_edges[idx], a, pos)
            if c in chosen[idx] or (idx, c) in banned:
                continue
            options.append((idx, c))
        new_banned = set(banned)
        for idx, c in options:
            chosen[idx].add(c)
            if extend(covered | clause_mask(idx, c), capacity - weight[idx], frozenset(new_banned)):
                return True
            chosen[idx].remove(c)
            new_banned.add((idx, c))
        return False

    if extend(0, capacity, frozenset()):
        # complete the selection to a full member: unused slots get the
        # lexicographically first unchosen clauses; the cover keeps it unsat
        clauses = []
        for idx, (e, m) in enumerate(items):
            picked = set(chosen[idx])
            for c in clauses_on_edge(e):
                if len(picked) >= m:
                    break
                picked.add(c)
            clauses.extend(picked)
        witness = tautologically_reduce(frozenset(clauses))
        return SatResult(Status.UNSAT, witness, "cover")
    return SatResult(Status.TOTALLY_SAT, None, "cover")


# -- strategy dispatch -------------------------------------------------------------


def decide(
    g: MHGraph,
    strategy: Strategy = Strategy.AUTO,
    config: Optional[SolveConfig] = None,
) -> SatResult:
    """Decide total satisfiability with the requested strategy.

    AUTO follows an edge-count ladder (small: cover, medium: decompose,
    large: reduce first); a refusal escalates to the next rung, and only
    when every fallback refuses does the refusal propagate.
    """
    config = config or DEFAULT_CONFIG
    if config.cache is not None:
        hit = config.cache.lookup(g)
        if hit is not None:
            return SatResult(hit, None, "cache")
    result = _decide_uncached(g, strategy, config)
    if config.cache is not None:
        config.cache.insert(g, result.status)
    return result


def _decide_uncached(g: MHGraph, strategy: Strategy, config: SolveConfig) -> SatResult:
    from . import reduce_rules, rewrite  # local import; those modules build on this one

    def run(s: Strategy) -> SatResult:
        if s is Strategy.BRUTE:
            return decide_brute(g, config)
        if s is Strategy.COVER:
            return decide_cover(g, config)
        if s is Strategy.DECOMPOSE:
            return rewrite.decompose(g, config)
        if s is Strategy.REDUCE_FIRST:
            return reduce_rules.reduce_then_decide(g, config)
        raise AssertionError(s)

    if strategy is not Strategy.AUTO:
        return run(strategy)

    edges = g.total_multiplicity()
    if edges <= config.small_edges:
        ladder = [Strategy.COVER, Strategy.BRUTE, Strategy.DECOMPOSE]
    elif edges <= config.medium_edges:
        ladder = [Strategy.DECOMPOSE, Strategy.COVER]
    else:
        ladder = [Strategy.REDUCE_FIRST, Strategy.COVER]
    last: Optional[Refused] = None
    for s in ladder:
        try:
            return run(s)
        except Refused as exc:
            last = exc
    raise Refused(f"every strategy refused; last: {last}")


# -- single-CNF translation ----------------------------------------------------------


def to_single_cnf(g: MHGraph, config: SolveConfig = DEFAULT_CONFIG) -> Cnf:
    """Conjoin fresh-variable relabelings of every member CNF.

    The result is satisfiable exactly when the graph is totally
    satisfiable, turning the universal member check into one existential
    query.  A graph with no members maps to FALSE.
    """
    count = cnf_count(g)
    if count > config.tau_budget:
        raise Refused(f"{count} member CNFs exceed the translation budget {config.tau_budget}")
    from .cnf import BOTTOM_CNF, variables

    if count == 0:
        return BOTTOM_CNF
    clauses = []
    base = 0
    for x in cnfs_on_graph(g):
        if x == TOP_CNF:
            continue
        mapping = {v: base + i + 1 for i, v in enumerate(sorted(variables(x)))}
        base += len(mapping)
        for c in x:
            clauses.append(frozenset((1 if l > 0 else -1) * mapping[abs(l)] for l in c))
    if not clauses:
        return TOP_CNF
    return frozenset(clauses)


# -- verdict cache ---------------------------------------------------------------------


class StatusCache:
    """Canonical-form-keyed verdict store with an append-only file format.

    One record per line: ``<canonical-form-text>\\t<SAT|UNSAT>``.  Verdicts
    are deterministic, so concurrent duplicate inserts are harmless.
    """

    def __init__(self, path: Optional[str] = None):
        self.path = path
        self._memo: Dict[str, Status] = {}
        self._lock = threading.Lock()
        if path and os.path.exists(path):
            self.load(path)

    def load(self, path: str) -> None:
        with open(path, "r", encoding="utf-8") as fh:
            for line in fh:
                line = line.strip()
                if not line:
                    continue
                text, _, verdict = line.partition("\t")
                if verdict == "SAT":
                    self._memo[text] = Status.TOTALLY_SAT
                elif verdict == "UNSAT":
                    self._memo[text] = Status.UNSAT

    def _key(self, g: EdgeMultiset) -> str:
        return format_graph(canonical_form(g).graph, compact=True)

    def lookup(self, g: EdgeMultiset) -> Optional[Status]:
        if g.is_empty:
            return Status.TOTALLY_SAT
        try:
            return self._memo.get(self._key(g))
        except ValueError:  # beyond the canonicalization bound
            return None

    def insert(self, g: EdgeMultiset, status: Status) -> None:
        if g.is_empty or status is Status.INCONCLUSIVE:
            return
        try:
            key = self._key(g)
        except ValueError:
            return
        with self._lock:
            known = self._memo.get(key)
            if known is not None and known is not status:
                raise RuntimeError(f"cache verdict conflict for {key}: {known} vs {status}")
            self._memo[key] = status
            if self.path:
                with open(self.path, "a", encoding="utf-8") as fh:
                    fh.write(f"{key}\t{status.value}\n")

    def __len__(self) -> int:
        return len(self._memo)
