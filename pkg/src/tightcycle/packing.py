"""Edge-disjoint families of high-girth subgraphs of K_{n,n}.

:func:`pack` places ``t`` independent uniformly random copies ``H_1..H_t`` of
a template and peels them: ``G_1 = H_1`` and ``G_i`` keeps the edges of
``H_i`` not used by any earlier copy.  Copy ``i`` (1-based) is drawn from
``derive_seed(seed, i)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .core import BipartiteGraph, HypergraphError, ParseError, derive_seed, new_bipartite, parse, serialize
from .girth import has_cycle_at_most

__all__ = [
    "PackingError",
    "PackingFamily",
    "CoverageStats",
    "random_copy",
    "copy_seed",
    "pack",
    "coverage_stats",
    "serialize_family",
    "parse_family",
]


class PackingError(ValueError):
    pass


@dataclass(frozen=True)
class PackingFamily:
    n: int
    k: int
    t: int
    members: tuple[BipartiteGraph, ...]
    template_edge_count: int = 0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(self.members))
        if len(self.members) != self.t:
            raise PackingError(f"expected {self.t} members, got {len(self.members)}")
        if self.k * self.t > self.n:
            raise PackingError(f"precondition kt > n: k={self.k}, t={self.t}, n={self.n}")

    @property
    def edge_sum(self) -> int:
        return sum(len(g) for g in self.members)

    def validate(self) -> None:
        """Check disjointness and the per-member cycle condition.

        Raises :class:`PackingError` naming the first failing member (1-based).
        """
        seen: set[tuple[int, int]] = set()
        for i, g in enumerate(self.members, start=1):
            if g.n_left != self.n or g.n_right != self.n:
                raise PackingError(f"member {i} is not a subgraph of K_{{{self.n},{self.n}}}")
            if seen & g.edge_set:
                raise PackingError(f"member {i} shares an edge with an earlier member")
            seen |= g.edge_set
            if self.k >= 2 and has_cycle_at_most(g, 2 * self.k):
                raise PackingError(f"member {i} has a cycle of length at most {2 * self.k}")


class CoverageStats(NamedTuple):
    edge_sum: int
    coverage_ratio: float
    predicted_missing_fraction: float


def random_copy(H: BipartiteGraph, seed: int) -> BipartiteGraph:
    """Image of ``H`` under independent uniform permutations of both sides."""
    if H.n_left != H.n_right:
        raise PackingError("template must have equal sides")
    rng = np.random.default_rng(seed)
    px = rng.permutation(H.n_left)
    py = rng.permutation(H.n_right)
    return new_bipartite(H.n_left, H.n_right, ((px[x], py[y]) for x, y in H.edges))


def copy_seed(seed: int, i: int) -> int:
    """Seed of the ``i``-th copy (1-based) in :func:`pack`."""
    return derive_seed(seed, i)


def pack(H: BipartiteGraph, t: int | None = None, k: int = 1, seed: int = 0) -> PackingFamily:
    n = H.n_left
    if H.n_right != n:
        raise PackingError("template must have equal sides")
    if k < 1:
        raise PackingError("k must be >= 1")
    t = n // k if t is None else t
    if t < 1:
        raise PackingError("t must be >= 1")
    if k * t > n:
        raise PackingError(f"precondition kt > n: k={k}, t={t}, n={n}")
    if k >= 2 and has_cycle_at_most(H, 2 * k):
        raise PackingError(f"template has short cycle (length at most {2 * k})")
    used: set[tuple[int, int]] = set()
    members = []
    for i in range(1, t + 1):
        copy = random_copy(H, copy_seed(seed, i))
        fresh = copy.edge_set - used
        members.append(new_bipartite(n, n, fresh))
        used |= fresh
    fam = PackingFamily(n, k, t, tuple(members), len(H), seed)
    assert fam.edge_sum == len(used), "peeled members must partition the union of copies"
    return fam


def coverage_stats(fam: PackingFamily) -> CoverageStats:
    s = fam.edge_sum
    n2 = fam.n * fam.n
    ratio = s / n2 if n2 else 0.0
    predicted = math.exp(-fam.template_edge_count * fam.t / n2) if n2 else 1.0
    return CoverageStats(s, ratio, predicted)


def serialize_family(fam: PackingFamily) -> str:
    """Concatenated member edge lists behind a ``# family`` manifest line."""
    out = [
        f"# family {fam.n} {fam.k} {fam.t} {fam.seed} {fam.edge_sum}\n",
        f"# template_edges {fam.template_edge_count}\n",
    ]
    for i, g in enumerate(fam.members, start=1):
        out.append(serialize(g.to_hypergraph(), [f"member {i}", f"bipartite {g.n_left} {g.n_right}"]))
    return "".join(out)


def parse_family(text: str) -> PackingFamily:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# family"):
        raise ParseError("missing family manifest", 1)
    try:
        n, k, t, seed, edge_sum = (int(x) for x in lines[0].split()[2:])
    except ValueError:
        raise ParseError("malformed family manifest", 1) from None
    template = 0
    pos = 1
    if pos < len(lines) and lines[pos].startswith("# template_edges"):
        template = int(lines[pos].split()[2])
        pos += 1
    members = []
    for i in range(1, t + 1):
        start = pos
        while pos < len(lines) and lines[pos].lstrip().startswith("#"):
            pos += 1
        if pos >= len(lines):
            raise ParseError(f"member {i} missing", pos + 1)
        m = int(lines[pos].split()[2])
        chunk = "\n".join(lines[start : pos + 1 + m]) + "\n"
        try:
            hg = parse(chunk)
        except ParseError as exc:
            raise ParseError(f"member {i}: {exc}") from None
        members.append(BipartiteGraph.from_hypergraph(hg, n))
        pos += 1 + m
    fam = PackingFamily(n, k, t, tuple(members), template, seed)
    if fam.edge_sum != edge_sum:
        raise HypergraphError(f"manifest edge_sum {edge_sum} disagrees with members ({fam.edge_sum})")
    return fam
