"""Reference tables of small graph disjunctions.

Three catalogues of disjunctions of letter-named graphs (a..f = 1..6):
``b1`` and ``b2`` list disjunctions that equal a union of graphs exactly;
``b3`` lists disjunctions only representable between a lower and an upper
union.  The b2 results are stated with every member CNF replaced by its
minimal equivalent form, which collapses redundant clauses (e.g. a clause
subsumed by a unit) before grouping; b1 and b3 use the raw normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, List, Tuple

from .cnf import Bool
from .logic import BoundedUnion, GroupKey, bounded_or
from .mhgraph import MHGraph

_LETTERS = "abcdef"


def letter_graph(spec: str) -> MHGraph:
    """Parse letter notation: edges joined by '&', multiplicity '^n';
    e.g. ``"ab^2&ac"`` is the graph (1,2)^2, (1,3)."""
    counts: Dict = {}
    for part in spec.split("&"):
        body, _, mult = part.partition("^")
        e = frozenset(_LETTERS.index(ch) + 1 for ch in body)
        if not e:
            raise ValueError(f"empty edge in {spec!r}")
        counts[e] = counts.get(e, 0) + (int(mult) if mult else 1)
    return MHGraph(counts)


def component_text(key: GroupKey) -> str:
    """Letter form of a union component; T and F for the constant sets."""
    if key is Bool.TRUE:
        return "T"
    if key is Bool.FALSE:
        return "F"
    parts = []
    for e, m in key.items():
        body = "".join(_LETTERS[v - 1] for v in sorted(e))
        parts.append(body + (f"^{m}" if m > 1 else ""))
    return "&".join(parts)


# (h1, h2) operands per row, in letter notation.
TABLE_B1: Tuple[Tuple[str, str], ...] = (
    ("a", "a"),
    ("a", "b"),
    ("a", "bc"),
    ("a", "ab"),
    ("ab", "cd"),
    ("ab", "ac"),
    ("ab", "ab"),
)

TABLE_B2: Tuple[Tuple[str, str], ...] = (
    ("a", "a^2"),
    ("a", "b^2"),
    ("a", "ab^2"),
    ("a", "b&ab"),
    ("ab", "c^2"),
    ("ab", "a&c"),
    ("ab", "a^2"),
    ("ab", "a&b"),
    ("ab", "c&ac"),
    ("ab", "c&ab"),
    ("ab", "a&cd"),
    ("ab", "a&ac"),
    ("ab", "a&bc"),
    ("ab", "a&ab"),
    ("ab", "ab&cd"),
    ("ab", "ab&ac"),
    ("ab", "ac^2"),
    ("ab", "ac&bc"),
    ("ab", "ab^2"),
)

TABLE_B3: Tuple[Tuple[str, str], ...] = (
    ("a", "b&c"),
    ("a", "a&b"),
    ("a", "b&cd"),
    ("a", "a&bc"),
    ("a", "b&ac"),
    ("a", "b&bc"),
    ("a", "a&ab"),
    ("a", "bc&de"),
    ("a", "bc&bd"),
    ("a", "bc^2"),
    ("a", "ab&cd"),
    ("a", "ab&bc"),
    ("a", "ab&ac"),
    ("ab", "c&d"),
    ("ab", "c&de"),
    ("ab", "c&cd"),
    ("ab", "c&ad"),
    ("ab", "cd&ef"),
    ("ab", "cd&ce"),
    ("ab", "cd^2"),
    ("ab", "cd&ac"),
    ("ab", "ac&ad"),
    ("ab", "ac&bd"),
    ("ab", "ac&cd"),
)


@dataclass(frozen=True)
class TableRow:
    lhs: str
    rhs: str
    bounds: BoundedUnion

    @property
    def lower_text(self) -> Tuple[str, ...]:
        return tuple(component_text(k) for k in self.bounds.lower)

    @property
    def upper_text(self) -> Tuple[str, ...]:
        return tuple(component_text(k) for k in self.bounds.upper)


def compute_table(which: str) -> List[TableRow]:
    if which == "b1":
        rows, normalize = TABLE_B1, False
    elif which == "b2":
        rows, normalize = TABLE_B2, True
    elif which == "b3":
        rows, normalize = TABLE_B3, False
    else:
        raise ValueError(f"unknown table {which!r}; expected b1, b2 or b3")
    out = []
    for lhs, rhs in rows:
        bounds = bounded_or(letter_graph(lhs), letter_graph(rhs), normalize_members=normalize)
        out.append(TableRow(lhs, rhs, bounds))
    return out


def format_table(which: str) -> str:
    lines = []
    for row in compute_table(which):
        head = f"{row.lhs} v ({row.rhs.replace('&', ' & ')})"
        if row.bounds.exact:
            lines.append(f"{head} = {' u '.join(row.upper_text)}")
        else:
            lower = " u ".join(row.lower_text) if row.bounds.lower else "(none)"
            upper = " u ".join(row.upper_text)
            lines.append(f"{head} : lower {lower} ; upper {upper}")
    return "\n".join(lines)
