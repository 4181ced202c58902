"""Named surface triangulations with their expected verdicts.

Vertex lists are embedded verbatim (letters a..d mapped to 1..4 for the
tetrahedron) so the reproduction is self-contained.  The Klein-bottle
triangulation is large enough that deciding it by decomposition takes
hours; it is gated behind the long-running flag.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .mhgraph import MHGraph
from .solve import Status


def _tri(faces) -> MHGraph:
    return MHGraph([list(f) for f in faces])


_KLEIN_242 = (
    (1, 2, 3), (3, 7, 2), (1, 5, 3), (1, 7, 5), (1, 4, 7), (1, 6, 2),
    (6, 4, 2), (1, 6, 8), (1, 4, 8), (2, 4, 8), (6, 4, 3), (3, 7, 4),
    (6, 8, 5), (6, 5, 3), (8, 2, 5), (2, 7, 5),
)

_TORUS = (
    (1, 2, 6), (2, 6, 7), (2, 3, 7), (3, 7, 1), (6, 7, 4), (7, 4, 5),
    (7, 1, 5), (1, 5, 6), (4, 1, 2), (4, 5, 2), (5, 2, 3), (5, 6, 3),
    (6, 3, 4), (4, 3, 1),
)

TRIANGULATIONS: Dict[str, MHGraph] = {
    "tetrahedron": _tri([(1, 2, 3), (1, 3, 4), (1, 2, 4), (2, 3, 4)]),
    "prism-sym": _tri(
        [(1, 2, 3), (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 6), (2, 5, 6), (3, 4, 6), (4, 5, 6)]
    ),
    "prism-asym": _tri(
        [(1, 2, 3), (1, 2, 5), (1, 3, 6), (1, 4, 5), (1, 4, 6), (2, 3, 6), (2, 5, 6), (4, 5, 6)]
    ),
    "mobius": _tri([(1, 2, 4), (1, 4, 6), (2, 3, 5), (2, 4, 5), (3, 4, 6), (3, 5, 6)]),
    "rp2": _tri(
        [(1, 2, 3), (3, 2, 6), (4, 6, 1), (4, 1, 2), (5, 2, 6), (5, 6, 1), (1, 5, 3), (3, 6, 4), (4, 2, 5), (5, 3, 4)]
    ),
    "klein242": _tri(_KLEIN_242),
    "klein242-sub": _tri(_KLEIN_242[:-2]),
    "torus": _tri(_TORUS),
    "torus-sub": _tri(_TORUS[:-2]),
}

EXPECTED: Dict[str, Status] = {
    "tetrahedron": Status.TOTALLY_SAT,
    "prism-sym": Status.TOTALLY_SAT,
    "prism-asym": Status.TOTALLY_SAT,
    "mobius": Status.TOTALLY_SAT,
    "rp2": Status.TOTALLY_SAT,
    "klein242": Status.UNSAT,
    "klein242-sub": Status.UNSAT,
    "torus": Status.UNSAT,
    "torus-sub": Status.UNSAT,
}

LONG_RUNNING: Tuple[str, ...] = ("klein242",)
