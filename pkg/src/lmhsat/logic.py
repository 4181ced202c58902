"""Set-level logic on CNF sets: disjunction, conjunction, total
satisfiability, equi-implication checks, and bounded unions.

Disjunction always materializes (it escapes graph shape under reduction);
conjunction of two graph-backed sets stays symbolic as the multiset sum of
their edges.  When a disjunction is not exactly a union of graphs, the
best available description is a subset/superset pair of graph unions; see
`BoundedUnion`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterable, List, Tuple, Union

from .cnf import (
    BOTTOM_CNF,
    TOP_CNF,
    Bool,
    Cnf,
    cnf_and_cnf,
    cnf_or_cnf,
    minimal_equivalent_cnf,
    satisfiable,
    variables,
)
from .embedding import CnfSet, cnf_count, cnfs_on_graph, supporting_graph
from .mhgraph import EdgeMultiset, MHGraph, canonical_form

SetLike = Union[CnfSet, EdgeMultiset, Iterable[Cnf]]

# Group keys for CNFs bucketed by the graph they live on.  The constant
# CNFs have no supporting graph; they key on the Bool constants.
GroupKey = Union[MHGraph, Bool]
TOP_KEY = Bool.TRUE
BOTTOM_KEY = Bool.FALSE


def graph_or(s1: SetLike, s2: SetLike) -> CnfSet:
    """Pairwise disjunction over the Cartesian product, as an explicit set."""
    a, b = CnfSet.coerce(s1), CnfSet.coerce(s2)
    if a.is_empty or b.is_empty:
        return CnfSet.empty()
    return CnfSet.from_cnfs(
        cnf_or_cnf(x, y) for x, y in itertools.product(a.members(), b.members())
    )


def graph_and(s1: SetLike, s2: SetLike) -> CnfSet:
    """Pairwise conjunction; graph-backed operands combine symbolically."""
    a, b = CnfSet.coerce(s1), CnfSet.coerce(s2)
    if a.is_empty or b.is_empty:
        return CnfSet.empty()
    if a.kind == CnfSet._GRAPH and b.kind == CnfSet._GRAPH:
        return CnfSet.from_graph(a.graph + b.graph)
    if a.kind == CnfSet._TOP:
        return b
    if b.kind == CnfSet._TOP:
        return a
    return CnfSet.from_cnfs(
        cnf_and_cnf(x, y) for x, y in itertools.product(a.members(), b.members())
    )


def totally_satisfiable(s: SetLike) -> bool:
    """True iff the set is nonempty and every member CNF is satisfiable."""
    cs = CnfSet.coerce(s)
    if cs.kind == CnfSet._GRAPH:
        from .solve import Status, decide

        return decide(cs.graph).status is Status.TOTALLY_SAT
    if cs.is_empty:
        return False
    return all(satisfiable(x) for x in cs.members())


# -- equi-implication criteria ------------------------------------------------


def equi_implies_by_unsat(s1: SetLike, s2: SetLike) -> bool:
    """For every unsatisfiable member of ``s1`` there is an unsatisfiable
    member of ``s2`` (vacuously true when ``s1`` is all-satisfiable)."""
    a, b = CnfSet.coerce(s1), CnfSet.coerce(s2)
    if all(satisfiable(x) for x in a.members()):
        return True
    return any(not satisfiable(y) for y in b.members())


def _falsified_mask(x: Cnf, var_index: Dict[int, int]) -> int:
    """Bitmask over total assignments (bit i of assignment a = value of the
    i-th variable) falsifying ``x``."""
    n = len(var_index)
    if x == TOP_CNF:
        return 0
    if x == BOTTOM_CNF:
        return (1 << (1 << n)) - 1
    mask = 0
    ordered = sorted(var_index.items(), key=lambda vi: vi[1])
    for c in x:
        m = 1  # grown one variable at a time; shift distance doubles each step
        for v, i in ordered:
            if v in c:
                pass  # falsification needs bit i = 0: keep the low half
            elif -v in c:
                m = m << (1 << i)
            else:
                m = m | (m << (1 << i))
        mask |= m
    return mask


def equi_implies_by_falsification(s1: SetLike, s2: SetLike, max_vars: int = 12) -> bool:
    """For every member of ``s1`` some member of ``s2`` is falsified by every
    assignment falsifying it.

    Checked over total assignments on the combined variable set: a partial
    falsification extends to total ones, so this is equivalent for the
    implication direction used here.
    """
    a, b = CnfSet.coerce(s1), CnfSet.coerce(s2)
    vs = sorted(a.variables() | b.variables())
    if len(vs) > max_vars:
        raise ValueError(f"falsification check limited to {max_vars} variables, got {len(vs)}")
    var_index = {v: i for i, v in enumerate(vs)}
    b_masks = [_falsified_mask(y, var_index) for y in b.members()]
    for x in a.members():
        fx = _falsified_mask(x, var_index)
        if not any(fx & ~fy == 0 for fy in b_masks):
            return False
    return True


# -- grouping and bounded unions ----------------------------------------------


def group_by_supporting_graph(cnfs: Iterable[Cnf]) -> Dict[GroupKey, frozenset]:
    """Bucket CNFs by the graph they live on (constants under TOP/BOTTOM keys)."""
    groups: Dict[GroupKey, set] = {}
    for x in cnfs:
        if x == TOP_CNF:
            key: GroupKey = TOP_KEY
        elif x == BOTTOM_CNF:
            key = BOTTOM_KEY
        else:
            key = supporting_graph(x)
        groups.setdefault(key, set()).add(x)
    return {k: frozenset(v) for k, v in groups.items()}


def group_is_complete(key: GroupKey, members: frozenset) -> bool:
    """Whether a bucket holds the *entire* set of CNFs living on its graph."""
    if isinstance(key, Bool):
        return True
    return cnf_count(key) == len(members)


@dataclass(frozen=True)
class BoundedUnion:
    """Lower/upper graph-union bounds for a set of CNFs.

    ``lower`` unions to a subset of the represented set and ``upper`` to a
    superset; when ``exact`` the two coincide and the set *is* that union.
    Satisfiability transfers one-sidedly: an unsatisfiable lower component
    forces the set unsatisfiable, and all upper components satisfiable
    forces it totally satisfiable.
    """

    lower: Tuple[GroupKey, ...]
    upper: Tuple[GroupKey, ...]
    exact: bool

    def components(self) -> Tuple[GroupKey, ...]:
        return self.upper


def _component_sort_key(key: GroupKey):
    if key is TOP_KEY:
        return (0, (), ())
    if key is BOTTOM_KEY:
        return (2, (), ())
    labeled = tuple(((len(e), tuple(sorted(e))), m) for e, m in key.items())
    return (1, canonical_form(key).key, labeled)


def bounded_or(
    g1: SetLike, g2: SetLike, normalize_members: bool = False
) -> BoundedUnion:
    """Describe a disjunction as graph-union bounds via graph completion.

    Members are grouped by supporting graph; complete groups make up the
    lower bound, all groups the upper bound.  With ``normalize_members``
    each member is first replaced by its canonical minimal equivalent
    (sound: logical equivalence), which collapses redundant clauses before
    grouping; used for table presentation.
    """
    members = list(graph_or(g1, g2).members())
    if normalize_members:
        members = [minimal_equivalent_cnf(x) for x in members]
    groups = group_by_supporting_graph(members)
    upper = tuple(sorted(groups, key=_component_sort_key))
    lower = tuple(
        k for k in upper if group_is_complete(k, groups[k])
    )
    return BoundedUnion(lower=lower, upper=upper, exact=lower == upper)
