"""Boolean formulae in conjunctive normal form.

Literals are nonzero ints (positive = variable, negative = its negation)
plus the two constant literals TRUE and FALSE.  A clause is a nonempty
frozenset of literals, a CNF a nonempty frozenset of clauses; duplicates
collapse by set semantics.  Every public operation returns tautologically
reduced CNFs, so the one-clause forms ``(TRUE)`` and ``(FALSE)`` are the
unique representations of trivially true/false formulae and set equality
of CNFs is meaningful.
"""

from __future__ import annotations

import enum
import functools
import itertools
from typing import Iterable, Union


class Bool(enum.Enum):
    """Constant literals: the always-true and always-false literal."""

    TRUE = "TRUE"
    FALSE = "FALSE"

    def __repr__(self) -> str:
        return self.value


TRUE = Bool.TRUE
FALSE = Bool.FALSE

Literal = Union[int, Bool]
Clause = frozenset  # frozenset[Literal], nonempty
Cnf = frozenset     # frozenset[Clause], nonempty
Assignment = frozenset  # frozenset[int], consistent, no constant literals


def variable(lit: Literal) -> int:
    """Variable id of a non-constant literal."""
    if isinstance(lit, Bool):
        raise ValueError(f"constant literal {lit!r} has no variable")
    return abs(lit)


def negate(lit: Literal) -> Literal:
    """Flip a literal: v <-> -v, TRUE <-> FALSE."""
    if lit is TRUE:
        return FALSE
    if lit is FALSE:
        return TRUE
    return -lit


def _check_literal(lit: Literal) -> Literal:
    if isinstance(lit, Bool):
        return lit
    if isinstance(lit, int) and not isinstance(lit, bool) and lit != 0:
        return lit
    raise ValueError(f"not a literal: {lit!r}")


def clause(literals: Iterable[Literal]) -> Clause:
    """Build a clause (disjunction); must be nonempty."""
    lits = frozenset(_check_literal(l) for l in literals)
    if not lits:
        raise ValueError("a clause must contain at least one literal")
    return lits


def cnf(clauses: Iterable[Iterable[Literal]]) -> Cnf:
    """Build a CNF (conjunction of clauses); must be nonempty."""
    cls = frozenset(c if isinstance(c, frozenset) else clause(c) for c in clauses)
    if not cls:
        raise ValueError("a CNF must contain at least one clause")
    for c in cls:
        if not c:
            raise ValueError("a CNF may not contain an empty clause")
    return cls


TOP_CNF: Cnf = cnf([[TRUE]])
BOTTOM_CNF: Cnf = cnf([[FALSE]])


def assignment(literals: Iterable[int]) -> Assignment:
    """Build an assignment: a consistent set of variable literals.

    Constant literals are rejected outright; there is no meaningful way to
    assign to them.
    """
    lits = frozenset(literals)
    for l in lits:
        if isinstance(l, Bool) or not isinstance(l, int) or l == 0:
            raise ValueError(f"assignments may contain only variable literals, got {l!r}")
        if -l in lits:
            raise ValueError(f"inconsistent assignment: contains both {l} and {-l}")
    return lits


def variables(x: Cnf) -> frozenset:
    """All variable ids occurring in a CNF."""
    return frozenset(abs(l) for c in x for l in c if not isinstance(l, Bool))


def tautologically_reduce(x: Cnf) -> Cnf:
    """Reduce a CNF to its canonical trivial-constant-free form.

    A clause holding TRUE or a complementary pair becomes true and is
    dropped; FALSE literals are dropped from clauses; a clause emptied that
    way falsifies the whole CNF.  The result either is TOP_CNF/BOTTOM_CNF
    or mentions no constant literal and no complementary pair inside a
    clause.  Idempotent.
    """
    out = []
    for c in x:
        if TRUE in c:
            continue
        if any((not isinstance(l, Bool)) and -l in c for l in c):
            continue
        lits = c - {FALSE}
        if not lits:
            return BOTTOM_CNF
        out.append(lits)
    if not out:
        return TOP_CNF
    return frozenset(out)


def assign(x: Cnf, a: Assignment) -> Cnf:
    """Apply an assignment: literals in ``a`` become TRUE, their negations
    FALSE; the result is tautologically reduced."""
    mapping = {}
    for l in a:
        mapping[l] = TRUE
        mapping[-l] = FALSE
    replaced = frozenset(frozenset(mapping.get(l, l) for l in c) for c in x)
    return tautologically_reduce(replaced)


def cnf_or_cnf(x: Cnf, y: Cnf) -> Cnf:
    """Disjunction brought back to normal form by distributivity.

    Every clause of one operand is unioned with every clause of the other;
    no new variables are introduced.  Reduced.
    """
    return tautologically_reduce(frozenset(c | d for c in x for d in y))


def cnf_and_cnf(x: Cnf, y: Cnf) -> Cnf:
    """Conjunction: union of the clause sets, reduced."""
    return tautologically_reduce(x | y)


def satisfiable(x: Cnf) -> bool:
    """Decide satisfiability with unit-propagating backtracking search."""
    x = tautologically_reduce(x)
    if x == TOP_CNF:
        return True
    if x == BOTTOM_CNF:
        return False
    # reduced CNFs contain int literals only
    return _dpll([set(c) for c in x])


def _dpll(clauses: list) -> bool:
    fixed: set = set()
    while True:
        unit = None
        for c in clauses:
            if len(c) == 1:
                unit = next(iter(c))
                break
        if unit is None:
            break
        if -unit in fixed:
            return False
        fixed.add(unit)
        new = []
        for c in clauses:
            if unit in c:
                continue
            rest = c - {-unit}
            if not rest:
                return False
            new.append(rest)
        clauses = new
    if not clauses:
        return True
    counts: dict = {}
    for c in clauses:
        for l in c:
            counts[abs(l)] = counts.get(abs(l), 0) + 1
    branch = max(counts, key=counts.get)
    for lit in (branch, -branch):
        trial = []
        ok = True
        for c in clauses:
            if lit in c:
                continue
            rest = c - {-lit}
            if not rest:
                ok = False
                break
            trial.append(rest)
        if ok and _dpll(trial):
            return True
    return False


def satisfiable_exhaustive(x: Cnf, max_vars: int = 20) -> bool:
    """Slow oracle: try every total assignment over the variables of ``x``.

    Kept deliberately naive; used to cross-check `satisfiable` in tests.
    """
    x = tautologically_reduce(x)
    if x == TOP_CNF:
        return True
    if x == BOTTOM_CNF:
        return False
    vs = sorted(variables(x))
    if len(vs) > max_vars:
        raise ValueError(f"exhaustive check limited to {max_vars} variables, got {len(vs)}")
    for signs in itertools.product((1, -1), repeat=len(vs)):
        a = assignment(s * v for s, v in zip(signs, vs))
        if assign(x, a) == TOP_CNF:
            return True
    return False


def minimal_equivalent_cnf(x: Cnf, max_vars: int = 10) -> Cnf:
    """Canonical minimal CNF logically equivalent to ``x``.

    Computes the set of minimal implied clauses by truth-table, so it is
    only meant for very small formulae (table presentation, tests).  The
    result is unique per logical-equivalence class.
    """
    x = tautologically_reduce(x)
    if x in (TOP_CNF, BOTTOM_CNF):
        return x
    vs = sorted(variables(x))
    n = len(vs)
    if n > max_vars:
        raise ValueError(f"minimal form limited to {max_vars} variables, got {n}")
    index = {v: i for i, v in enumerate(vs)}
    models = []
    for bits in range(1 << n):
        if all(any((l > 0) == bool(bits >> index[abs(l)] & 1) for l in c) for c in x):
            models.append(bits)
    if len(models) == 1 << n:
        return TOP_CNF
    if not models:
        return BOTTOM_CNF
    implied = []
    for polarity in itertools.product((None, True, False), repeat=n):
        c = frozenset(
            (v if p else -v) for v, p in zip(vs, polarity) if p is not None
        )
        if not c:
            continue
        if all(any((l > 0) == bool(m >> index[abs(l)] & 1) for l in c) for m in models):
            implied.append(c)
    prime = [c for c in implied if not any(d < c for d in implied)]
    return frozenset(prime)


@functools.lru_cache(maxsize=None)
def _literal_key(lit: Literal) -> tuple:
    if lit is TRUE:
        return (2, 0)
    if lit is FALSE:
        return (3, 0)
    return (0, abs(lit), 0 if lit > 0 else 1)


def format_clause(c: Clause) -> str:
    lits = sorted(c, key=_literal_key)
    return "(" + ",".join(str(l) if isinstance(l, int) else l.value for l in lits) + ")"


def format_cnf(x: Cnf) -> str:
    """Text form: clauses juxtaposed, e.g. ``(1,2)(-1,3)``; TRUE/FALSE for
    the trivial one-clause forms."""
    if x == TOP_CNF:
        return "TRUE"
    if x == BOTTOM_CNF:
        return "FALSE"
    key = lambda c: (len(c), sorted(_literal_key(l) for l in c))
    return "".join(format_clause(c) for c in sorted(x, key=key))


def cnf_sort_key(x: Cnf) -> tuple:
    """Deterministic ordering key for reduced CNFs (for stable output)."""
    if x == TOP_CNF:
        return (0,)
    if x == BOTTOM_CNF:
        return (2,)
    return (1, len(x), sorted(sorted(_literal_key(l) for l in c) for c in x))
