"""Tight-cycle-free hypergraph constructions.

``paper_construction`` chains three stages: a random high-girth bipartite
template, an edge-disjoint packing of random copies, and the tripartite
lifting in which every edge of the i-th packed graph is extended by each of
``k`` vertices reserved for that graph.  ``cone_lift`` then raises uniformity
one step at a time.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from .core import Hypergraph, HypergraphError, density_ratio, new_hypergraph
from .detector import BudgetExhausted, DetectOptions, find_tight_cycle, partite_find
from .girth import GirthGenConfig, generate_high_girth
from .packing import PackingFamily, coverage_stats, pack

__all__ = [
    "UnverifiedPrecondition",
    "PipelineParams",
    "ConstructionReport",
    "tripartite_from_family",
    "sum_product",
    "cone_lift",
    "star",
    "complete_r_partite",
    "paper_construction",
    "construct_r_uniform",
    "certify",
    "DEFAULT_VERIFY_STATES",
]

DEFAULT_VERIFY_STATES = 200_000
STRUCTURAL = "structurally guaranteed, not exhaustively verified"


class UnverifiedPrecondition(UserWarning):
    """A tight-cycle precondition was too expensive to check and was assumed."""


@dataclass(frozen=True)
class PipelineParams:
    n: int
    alpha: float = 0.3
    k_override: int | None = None
    seed: int = 0xC0FFEE
    girth_cfg: GirthGenConfig = field(default_factory=GirthGenConfig)
    r: int = 3

    @property
    def k(self) -> int:
        if self.k_override is not None:
            return self.k_override
        if self.n < math.e ** math.e:
            return 1
        return max(1, math.floor(self.alpha * math.log(self.n) / math.log(math.log(self.n))))

    @property
    def t(self) -> int:
        return self.n // self.k


@dataclass(frozen=True)
class ConstructionReport:
    n: int
    k: int
    t: int
    alpha: float
    seed: int
    r: int
    template_edges: int
    family_edge_sum: int
    union_coverage_ratio: float
    hyperedge_count: int
    total_vertices: int
    density: Fraction
    verification: str = "unchecked"

    @property
    def density_ratio(self) -> float:
        return float(self.density)

    def items(self, exact: bool = False) -> list[tuple[str, object]]:
        ratio = repr(self.union_coverage_ratio) if exact else f"{self.union_coverage_ratio:.6f}"
        return [
            ("r", self.r),
            ("n", self.n),
            ("k", self.k),
            ("t", self.t),
            ("alpha", self.alpha),
            ("seed", self.seed),
            ("template_edges", self.template_edges),
            ("family_edge_sum", self.family_edge_sum),
            ("union_coverage_ratio", ratio),
            ("hyperedge_count", self.hyperedge_count),
            ("total_vertices", self.total_vertices),
            ("density_exact", self.density),
            ("density_ratio", f"{float(self.density):.6g}"),
            ("verification", self.verification),
        ]

    def to_text(self, machine: bool = False) -> str:
        if machine:
            return "format=1\n" + "".join(f"{k}={v}\n" for k, v in self.items(exact=True))
        width = max(len(k) for k, _ in self.items())
        return "".join(f"{k:<{width}}  {v}\n" for k, v in self.items())

    @classmethod
    def from_text(cls, text: str) -> "ConstructionReport":
        """Inverse of ``to_text(machine=True)``."""
        kv = dict(line.split("=", 1) for line in text.splitlines() if "=" in line)
        if kv.pop("format", None) != "1":
            raise ValueError("unsupported report format")
        return cls(
            n=int(kv["n"]), k=int(kv["k"]), t=int(kv["t"]), alpha=float(kv["alpha"]),
            seed=int(kv["seed"]), r=int(kv["r"]), template_edges=int(kv["template_edges"]),
            family_edge_sum=int(kv["family_edge_sum"]),
            union_coverage_ratio=float(kv["union_coverage_ratio"]),
            hyperedge_count=int(kv["hyperedge_count"]), total_vertices=int(kv["total_vertices"]),
            density=Fraction(kv["density_exact"]), verification=kv["verification"],
        )


def z_index(n: int, k: int, i: int, s: int) -> int:
    """Vertex index of the ``s``-th (1-based) extra vertex of member ``i`` (1-based)."""
    return 2 * n + (i - 1) * k + (s - 1)


def tripartite_from_family(fam: PackingFamily) -> Hypergraph:
    """3-uniform hypergraph ``{x, n+y, z(i,s)}`` over edges ``xy`` of member i.

    Classes are X = [0, n), Y = [n, 2n) and Z = [2n, 2n + kt).
    """
    fam.validate()
    n, k = fam.n, fam.k
    edges = [
        (x, n + y, z_index(n, k, i, s))
        for i, g in enumerate(fam.members, start=1)
        for x, y in g.edges
        for s in range(1, k + 1)
    ]
    total = 2 * n + k * fam.t
    return new_hypergraph(3, total, edges, partition=[range(0, n), range(n, 2 * n), range(2 * n, total)])


def _assert_free(H: Hypergraph, what: str, lo: int | None, hi: int | None, max_states: int) -> bool:
    """Check a length-restricted freeness precondition; False if unaffordable."""
    try:
        w = find_tight_cycle(H, DetectOptions(min_length=lo, max_length=hi, state_budget=max_states))
    except BudgetExhausted:
        return False
    if w is not None:
        raise HypergraphError(f"{what} has a tight cycle {w.format()}")
    return True


def sum_product(Gs: Sequence[Hypergraph], Hs: Sequence[Hypergraph], k: int,
                max_states: int = DEFAULT_VERIFY_STATES) -> Hypergraph:
    """Edges ``e | f`` for ``e`` in ``Gs[i]`` and ``f`` in ``Hs[i]``.

    Vertices of the ``Hs`` are shifted past those of the ``Gs``.  Each
    ``Gs[i]`` must have no tight cycle of length at most ``r*k`` and each
    ``Hs[i]`` none longer than ``r'*k``; these are checked with the detector
    under ``max_states`` and otherwise assumed with an
    :class:`UnverifiedPrecondition` warning.
    """
    if len(Gs) != len(Hs):
        raise HypergraphError(f"length mismatch: {len(Gs)} G's vs {len(Hs)} H's")
    if not Gs:
        raise HypergraphError("need at least one pair")
    r, n_g = Gs[0].r, Gs[0].n_vertices
    r2, n_h = Hs[0].r, Hs[0].n_vertices
    if any(g.r != r or g.n_vertices != n_g for g in Gs):
        raise HypergraphError("vertex-set collision: G's must share uniformity and vertex set")
    if any(h.r != r2 or h.n_vertices != n_h for h in Hs):
        raise HypergraphError("vertex-set collision: H's must share uniformity and vertex set")
    for family, name in ((Gs, "G"), (Hs, "H")):
        seen: set[tuple[int, ...]] = set()
        for i, g in enumerate(family, start=1):
            if seen & g.edge_set:
                raise HypergraphError(f"{name}_{i} shares an edge with an earlier {name}")
            seen |= g.edge_set
    verified = True
    for i, (g, h) in enumerate(zip(Gs, Hs), start=1):
        verified &= _assert_free(g, f"G_{i}", None, r * k, max_states)
        verified &= _assert_free(h, f"H_{i}", r2 * k + 1, None, max_states)
    if not verified:
        warnings.warn("sum_product preconditions not verified", UnverifiedPrecondition, stacklevel=2)
    edges = [
        e + tuple(n_g + v for v in f)
        for g, h in zip(Gs, Hs)
        for e in g.edges
        for f in h.edges
    ]
    return new_hypergraph(r + r2, n_g + n_h, edges)


def cone_lift(H: Hypergraph, m: int | None = None, max_states: int = DEFAULT_VERIFY_STATES) -> Hypergraph:
    """Extend every edge of ``H`` by each of ``m`` new apex vertices.

    Apexes get indices ``n .. n+m-1``; ``m`` defaults to ``H.n_vertices``.
    A tight cycle in the output would pass through the apex class every r
    steps, and deleting those vertices leaves a tight cycle of ``H``, so the
    output is tight-cycle-free whenever ``H`` is.  ``H`` is checked under
    ``max_states`` and otherwise assumed free with a warning.
    """
    n = H.n_vertices
    m = n if m is None else m
    if m < 1:
        raise HypergraphError("apex class size m must be >= 1")
    if not _assert_free(H, "input", None, None, max_states):
        warnings.warn("cone_lift input not verified tight-cycle-free", UnverifiedPrecondition, stacklevel=2)
    edges = [e + (a,) for e in H.edges for a in range(n, n + m)]
    partition = None
    if H.partition is not None:
        partition = list(H.partition) + [range(n, n + m)]
    return new_hypergraph(H.r + 1, n + m, edges, partition=partition)


def star(r: int, n: int) -> Hypergraph:
    """All ``C(n-1, r-1)`` r-sets containing vertex 0."""
    if r < 1 or n < r:
        raise HypergraphError(f"star needs n >= r >= 1, got r={r}, n={n}")
    return new_hypergraph(r, n, ((0, *rest) for rest in combinations(range(1, n), r - 1)))


def complete_r_partite(r: int, part_sizes: Sequence[int]) -> Hypergraph:
    if len(part_sizes) != r:
        raise HypergraphError(f"wrong part count: {len(part_sizes)} parts for r={r}")
    if any(s < 1 for s in part_sizes):
        raise HypergraphError("part sizes must be >= 1")
    starts = [0]
    for s in part_sizes:
        starts.append(starts[-1] + s)
    parts = [range(a, b) for a, b in zip(starts, starts[1:])]
    return new_hypergraph(r, starts[-1], product(*parts), partition=parts)


def paper_construction(p: PipelineParams) -> tuple[Hypergraph, ConstructionReport]:
    """High-girth template, random packing and tripartite lifting in one run."""
    if p.n < 4:
        raise ValueError("paper_construction needs n >= 4")
    k, t = p.k, p.t
    template = generate_high_girth(p.n, k, p.girth_cfg, seed=p.seed)
    fam = pack(template, t, k, seed=p.seed)
    H = tripartite_from_family(fam)
    stats = coverage_stats(fam)
    report = ConstructionReport(
        n=p.n, k=k, t=t, alpha=p.alpha, seed=p.seed, r=3,
        template_edges=len(template), family_edge_sum=stats.edge_sum,
        union_coverage_ratio=stats.coverage_ratio, hyperedge_count=len(H),
        total_vertices=H.n_vertices, density=density_ratio(H).exact,
    )
    return H, report


def construct_r_uniform(p: PipelineParams) -> tuple[Hypergraph, ConstructionReport]:
    """The 3-uniform construction followed by ``r - 3`` vertex-doubling cone lifts."""
    if p.r < 3:
        raise ValueError("target uniformity must be >= 3")
    H, report = paper_construction(p)
    for _ in range(p.r - 3):
        # the base is free by construction; skip the re-check inside cone_lift
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", UnverifiedPrecondition)
            H = cone_lift(H, max_states=0)
    if p.r > 3:
        report = replace(report, r=p.r, hyperedge_count=len(H), total_vertices=H.n_vertices,
                         density=density_ratio(H).exact)
    return H, report


def certify(H: Hypergraph, report: ConstructionReport, max_states: int = 10**7) -> ConstructionReport:
    """Run the detectors on a construction and record the verdict in the report.

    The partite fast check runs whenever an r-class partition is present; the
    full detector runs under ``max_states``.
    """
    notes = []
    if H.partition is not None and len(H.partition) == H.r:
        notes.append("fast-check free" if partite_find(H) is None else "fast-check FOUND CYCLE")
    try:
        w = find_tight_cycle(H, DetectOptions(state_budget=max_states))
    except BudgetExhausted:
        notes.append(STRUCTURAL)
    else:
        notes.append("detector free" if w is None else f"detector FOUND {w.format()}")
    return replace(report, verification="; ".join(notes))

