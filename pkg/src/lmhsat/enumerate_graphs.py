"""Generation of candidate graphs up to isomorphism, and their
classification into totally satisfiable / unsatisfiable with irreducible
residues.

Generation works per vertex count: all admissible edge subsets (or
multiplicity vectors) over a fixed slot order are scanned and a graph is
kept exactly when its incidence mask is the minimum over all vertex
permutations, so every isomorphism class surfaces once.  Large mask
spaces (tens of millions) go through a vectorized numpy scan.

Multiplicity conventions: ``simple`` means classic graphs (size-2 edges,
no repeats); ``max_multiplicity=1`` allows loops and hyperedges but no
repeats; otherwise each size-k edge may repeat up to 2^k - 1 times (more
would carry no CNFs at all).
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field, replace
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .cnf import Bool
from .mhgraph import (
    EdgeMultiset,
    MHGraph,
    canonical_form,
    degree,
    format_graph,
    graph_from_multiset,
    parse_graph,
)
from .reduce_rules import reduce_fixpoint
from .solve import DEFAULT_CONFIG, SatResult, SolveConfig, Status, decide_cover


@dataclass(frozen=True)
class GenerationFilter:
    """Conjunctive admission filters for generated graphs."""

    max_vertices: int
    max_edge_size: int = 3
    min_degree: int = 2
    connected: bool = True
    multiplicity_bounded: bool = True  # per-edge multiplicity < 2^k
    simple: bool = False  # classic graphs: size-2 edges, no repeats, no loops
    max_multiplicity: Optional[int] = None  # extra cap; 1 = no repeated edges

    def __post_init__(self):
        if self.max_vertices < 1 or self.max_edge_size < 1 or self.min_degree < 0:
            raise ValueError("filter bounds must be positive")


class GenerationRefused(RuntimeError):
    def __init__(self, message: str, estimate: int):
        super().__init__(f"{message} (estimated search space {estimate:.3g})")
        self.estimate = estimate


def _edge_slots(n: int, f: GenerationFilter) -> List[frozenset]:
    sizes = (2,) if f.simple else tuple(range(1, min(f.max_edge_size, n) + 1))
    slots: List[frozenset] = []
    for k in sizes:
        for combo in itertools.combinations(range(1, n + 1), k):
            slots.append(frozenset(combo))
    return sorted(slots, key=lambda e: (len(e), sorted(e)))


def _slot_caps(slots: Sequence[frozenset], f: GenerationFilter) -> List[int]:
    if f.simple:
        return [1] * len(slots)
    caps = []
    for e in slots:
        cap = (1 << len(e)) - 1 if f.multiplicity_bounded else 1 << len(e)
        if f.max_multiplicity is not None:
            cap = min(cap, f.max_multiplicity)
        caps.append(cap)
    return caps


def _is_connected(g: EdgeMultiset) -> bool:
    verts = list(g.vertices())
    if not verts:
        return False
    comp = {v: v for v in verts}

    def find(v):
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    for e in g.edges():
        vs = sorted(e)
        for w in vs[1:]:
            comp[find(vs[0])] = find(w)
    return len({find(v) for v in verts}) == 1


def passes_filter(g: MHGraph, f: GenerationFilter) -> bool:
    if len(g.vertices()) > f.max_vertices:
        return False
    for e, m in g.items():
        if len(e) > f.max_edge_size or (f.simple and len(e) != 2):
            return False
        if f.simple and m > 1:
            return False
        if f.multiplicity_bounded and m >= (1 << len(e)):
            return False
        if f.max_multiplicity is not None and m > f.max_multiplicity:
            return False
    if f.min_degree and any(degree(v, g) < f.min_degree for v in g.vertices()):
        return False
    if f.connected and not _is_connected(g):
        return False
    return True


# -- canonical mask scans ------------------------------------------------------


def _slot_permutations(slots: Sequence[frozenset], n: int) -> List[List[int]]:
    index = {e: i for i, e in enumerate(slots)}
    out = []
    for perm in itertools.permutations(range(1, n + 1)):
        mapping = {v: perm[v - 1] for v in range(1, n + 1)}
        out.append([index[frozenset(mapping[v] for v in e)] for e in slots])
    return out


def _canonical_masks_python(nslots: int, slot_perms: List[List[int]]) -> Iterator[int]:
    perms = [p for p in slot_perms if p != list(range(nslots))]
    for mask in range(1 << nslots):
        canonical = True
        for p in perms:
            permuted = 0
            m = mask
            while m:
                i = (m & -m).bit_length() - 1
                permuted |= 1 << p[i]
                m &= m - 1
            if permuted < mask:
                canonical = False
                break
        if canonical:
            yield mask
    return


def _canonical_masks_numpy(nslots: int, slot_perms: List[List[int]]) -> Iterator[int]:
    import numpy as np

    total = 1 << nslots
    masks = np.arange(total, dtype=np.uint32)
    best = masks.copy()
    identity = list(range(nslots))
    for p in slot_perms:
        if p == identity:
            continue
        permuted = np.zeros(total, dtype=np.uint32)
        for i, target in enumerate(p):
            permuted |= ((masks >> np.uint32(i)) & np.uint32(1)) << np.uint32(target)
        np.minimum(best, permuted, out=best)
    return iter(np.nonzero(best == masks)[0].tolist())


def _mask_to_graph(mask: int, slots: Sequence[frozenset]) -> Optional[MHGraph]:
    edges = {slots[i]: 1 for i in range(len(slots)) if mask >> i & 1}
    return MHGraph(edges) if edges else None


def _generate_mask_mode(n: int, f: GenerationFilter) -> Iterator[MHGraph]:
    """All canonical graphs with support exactly 1..n and no repeated edges."""
    slots = _edge_slots(n, f)
    if not slots:
        return
    nslots = len(slots)
    if nslots > 28:
        raise GenerationRefused(f"{nslots} edge slots on {n} vertices", 2**nslots)
    slot_perms = _slot_permutations(slots, n)
    scan = _canonical_masks_numpy if nslots > 10 else _canonical_masks_python
    full_support = frozenset(range(1, n + 1))
    for mask in scan(nslots, slot_perms):
        g = _mask_to_graph(int(mask), slots)
        if g is None or g.vertices() != full_support:
            continue
        if passes_filter(g, f):
            yield g


def _generate_multi_mode(n: int, f: GenerationFilter) -> Iterator[MHGraph]:
    """Canonical graphs with repeated edges: full multiplicity-vector scan
    with permutation-minimality, guarded by a search-space estimate."""
    slots = _edge_slots(n, f)
    caps = _slot_caps(slots, f)
    space = 1
    for c in caps:
        space *= c + 1
    if space > 3_000_000:
        raise GenerationRefused(
            f"multiplicity scan over {len(slots)} slots on {n} vertices", space
        )
    slot_perms = _slot_permutations(slots, n)
    identity = list(range(len(slots)))
    perms = [p for p in slot_perms if p != identity]
    full_support = frozenset(range(1, n + 1))
    for vector in itertools.product(*(range(c + 1) for c in caps)):
        if not any(vector):
            continue
        canonical = True
        for p in perms:
            permuted = [0] * len(slots)
            for i, m in enumerate(vector):
                permuted[p[i]] = m
            if tuple(permuted) < vector:
                canonical = False
                break
        if not canonical:
            continue
        g = MHGraph({slots[i]: m for i, m in enumerate(vector) if m})
        if g.vertices() != full_support:
            continue
        if passes_filter(g, f):
            yield g


def generate(f: GenerationFilter) -> Iterator[MHGraph]:
    """Every admissible graph, once per isomorphism class, in canonical
    form, ordered by (vertex count, edge count, canonical key)."""
    repeats_allowed = not f.simple and (f.max_multiplicity is None or f.max_multiplicity > 1)
    for n in range(1, f.max_vertices + 1):
        batch = []
        gen = _generate_multi_mode(n, f) if repeats_allowed else _generate_mask_mode(n, f)
        for g in gen:
            cf = canonical_form(g)
            batch.append((g.total_multiplicity(), cf.key, cf.graph))
        batch.sort(key=lambda t: t[:2])
        for _, _, g in batch:
            yield graph_from_multiset(g)


def count_connected_simple(max_vertices: int) -> int:
    """Connected classic graphs with at most ``max_vertices`` vertices,
    counting the one-vertex edgeless graph by the usual convention (it has
    no edge-multiset representation here)."""
    f = GenerationFilter(
        max_vertices=max_vertices, simple=True, min_degree=0, connected=True
    )
    return 1 + sum(1 for _ in generate(f))


# -- classification -------------------------------------------------------------


@dataclass
class ClassificationReport:
    filter: GenerationFilter
    total: int = 0
    sat: int = 0
    unsat: int = 0
    irreducible_unsat: List[str] = field(default_factory=list)
    seconds: float = 0.0

    def summary(self) -> str:
        lines = [
            f"generated={self.total} sat={self.sat} unsat={self.unsat} "
            f"seconds={self.seconds:.2f}",
            f"irreducible unsat residues: {len(self.irreducible_unsat)}",
        ]
        lines.extend(f"  {text}" for text in self.irreducible_unsat)
        return "\n".join(lines)


def classify(
    g: MHGraph, config: SolveConfig = DEFAULT_CONFIG
) -> Tuple[SatResult, List[MHGraph]]:
    """Reduce to irreducible residues, decide each, and report the graph's
    status with its unsatisfiable residues (minimal-criminal candidates)."""
    from .rewrite import decide_direct

    result = reduce_fixpoint(g)
    bad: List[MHGraph] = []
    status = Status.TOTALLY_SAT
    for r in result.exact:
        if isinstance(r, Bool):
            if r is Bool.FALSE:
                status = Status.UNSAT
            continue
        if r.is_empty:
            continue
        residue = graph_from_multiset(r)
        if decide_direct(r, config).status is Status.UNSAT:
            status = Status.UNSAT
            bad.append(canonical_form(residue).graph)
    return SatResult(status, None, "classify"), bad


def run_pipeline(
    f: GenerationFilter,
    config: SolveConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> ClassificationReport:
    """Generate, classify, and collect the irreducible unsatisfiable
    residues over the whole admissible family."""
    report = ClassificationReport(filter=f)
    start = time.monotonic()
    residues: Dict[str, None] = {}
    graphs = generate(f)
    if jobs > 1:
        results = _classify_parallel(graphs, config, jobs, report)
    else:
        results = (classify(g, config) for g in graphs)
    for decide_result, bad in results:
        report.total += 1
        if decide_result.status is Status.UNSAT:
            report.unsat += 1
            for residue in bad:
                residues.setdefault(format_graph(residue), None)
        else:
            report.sat += 1
    report.irreducible_unsat = sorted(residues)
    report.seconds = time.monotonic() - start
    return report


def _classify_worker(text: str) -> Tuple[str, List[str]]:
    g = parse_graph(text)
    result, bad = classify(g)
    return result.status.value, [format_graph(b) for b in bad]


def _classify_parallel(graphs, config, jobs, report):
    import concurrent.futures

    texts = [format_graph(g) for g in graphs]
    with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as pool:
        for status, bad in pool.map(_classify_worker, texts, chunksize=64):
            yield (
                SatResult(Status(status), None, "classify"),
                [parse_graph(b) for b in bad],
            )


# -- fixed families ---------------------------------------------------------------


def complete_uniform(a: int, b: int) -> MHGraph:
    """The complete a-uniform hypergraph on b vertices: all C(b, a) size-a
    edges, multiplicity 1."""
    if not 1 <= a <= b:
        raise ValueError("need 1 <= a <= b")
    return MHGraph({frozenset(c): 1 for c in itertools.combinations(range(1, b + 1), a)})


def all_small_graphs(max_vertices: int, max_total_multiplicity: int) -> List[MHGraph]:
    """Every canonical graph on at most ``max_vertices`` vertices with total
    edge multiplicity at most the bound, any edge sizes.  Exhaustive test
    family; sizes grow fast."""
    universe = [
        frozenset(c)
        for k in range(1, max_vertices + 1)
        for c in itertools.combinations(range(1, max_vertices + 1), k)
    ]
    seen = {}
    for t in range(1, max_total_multiplicity + 1):
        for combo in itertools.combinations_with_replacement(universe, t):
            g = MHGraph(list(combo))
            cf = canonical_form(g)
            seen.setdefault(cf, cf.graph)
    return [graph_from_multiset(g) for g in seen.values()]


# -- known-unsatisfiable list verification ------------------------------------------


@dataclass
class VerificationLine:
    number: int
    text: str
    status: Optional[str]  # SAT / UNSAT / parse-error message


@dataclass
class VerificationReport:
    lines: List[VerificationLine] = field(default_factory=list)

    @property
    def total(self) -> int:
        return len(self.lines)

    @property
    def confirmed(self) -> int:
        return sum(1 for l in self.lines if l.status == "UNSAT")

    def failures(self) -> List[VerificationLine]:
        return [l for l in self.lines if l.status != "UNSAT"]


def verify_known_unsat(
    path: str, config: SolveConfig = DEFAULT_CONFIG
) -> VerificationReport:
    """Check that every graph listed in the file is unsatisfiable.

    One graph per line, optional leading index; parse failures are
    reported per line and the run continues.
    """
    report = VerificationReport()
    with open(path, "r", encoding="utf-8") as fh:
        for number, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            body = line.split(None, 1)[1] if line.split(None, 1)[0].isdigit() else line
            try:
                g = parse_graph(body)
            except ValueError as exc:
                report.lines.append(VerificationLine(number, line, f"parse error: {exc}"))
                continue
            result = decide_cover(g, config)
            report.lines.append(VerificationLine(number, body, result.status.value))
    return report
