"""Hypergraph and bipartite-graph types, validation, and the edge-list format.

Vertices are dense 0-based integers.  Edges are stored as ascending tuples and
the edge sequence of a :class:`Hypergraph` is kept in lexicographic order, so
two hypergraphs compare equal exactly when their canonical forms agree.

Edge-list text format::

    # optional comment lines
    r n m
    v1 v2 ... vr        (m lines, ascending, lexicographic order)

A comment of the form ``# partition a:b c:d ...`` carries the optional vertex
partition through a round trip.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, NamedTuple, Sequence

__all__ = [
    "HypergraphError",
    "ParseError",
    "Hypergraph",
    "BipartiteGraph",
    "TightCycleWitness",
    "Density",
    "new_hypergraph",
    "new_bipartite",
    "verify_witness",
    "serialize",
    "parse",
    "density_ratio",
    "splitmix64",
    "derive_seed",
]

_MASK64 = (1 << 64) - 1


class HypergraphError(ValueError):
    """Raised when an edge or partition violates the hypergraph invariants."""


class ParseError(HypergraphError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"{message} at line {line}"
        super().__init__(message)


@dataclass(frozen=True)
class Hypergraph:
    """An r-uniform hypergraph on vertices ``0..n_vertices-1``.

    Build instances with :func:`new_hypergraph`; the constructor itself
    assumes canonical input.
    """

    r: int
    n_vertices: int
    edges: tuple[tuple[int, ...], ...]
    partition: tuple[range, ...] | None = field(default=None, compare=False)

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, ...]]:
        return frozenset(self.edges)

    @property
    def m(self) -> int:
        return len(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    def __contains__(self, edge) -> bool:
        return tuple(sorted(edge)) in self.edge_set

    def part_of(self, v: int) -> int:
        """Index of the partition class containing ``v``."""
        if self.partition is None:
            raise HypergraphError("hypergraph has no partition")
        for i, part in enumerate(self.partition):
            if v in part:
                return i
        raise HypergraphError(f"vertex {v} lies in no partition class")

    def without_edge(self, edge: Sequence[int]) -> "Hypergraph":
        e = tuple(sorted(edge))
        return Hypergraph(
            self.r, self.n_vertices, tuple(f for f in self.edges if f != e), self.partition
        )


def _check_edge(r: int, n: int, edge) -> tuple[int, ...]:
    e = tuple(sorted(int(v) for v in edge))
    if len(e) != r:
        raise HypergraphError(f"wrong arity: edge {tuple(edge)} has {len(e)} vertices, expected {r}")
    if len(set(e)) != r:
        raise HypergraphError(f"repeated vertex in edge {tuple(edge)}")
    if e and (e[0] < 0 or e[-1] >= n):
        raise HypergraphError(f"index out of range in edge {tuple(edge)} (n_vertices={n})")
    return e


def _check_partition(n: int, partition: Iterable) -> tuple[range, ...]:
    parts = []
    for p in partition:
        p = p if isinstance(p, range) else range(*p)
        if p.step != 1 or p.start < 0 or p.stop > n or p.start > p.stop:
            raise HypergraphError(f"invalid partition class {p}")
        parts.append(p)
    ordered = sorted(parts, key=lambda p: p.start)
    for a, b in zip(ordered, ordered[1:]):
        if a.stop > b.start:
            raise HypergraphError(f"partition classes {a} and {b} overlap")
    return tuple(parts)


def new_hypergraph(r: int, n: int, edges: Iterable[Sequence[int]], partition=None) -> Hypergraph:
    """Validate, sort and deduplicate ``edges`` into a :class:`Hypergraph`.

    ``partition`` is an optional iterable of ``range`` objects (or
    ``(start, stop)`` pairs); every edge may meet each class at most once.
    """
    if r < 1:
        raise HypergraphError(f"uniformity must be >= 1, got {r}")
    if n < 0:
        raise HypergraphError(f"vertex count must be >= 0, got {n}")
    canon = sorted({_check_edge(r, n, e) for e in edges})
    parts = None
    if partition is not None:
        parts = _check_partition(n, partition)
        owner = {}
        for i, p in enumerate(parts):
            for v in p:
                owner[v] = i
        for e in canon:
            seen = [owner[v] for v in e if v in owner]
            if len(seen) != len(set(seen)):
                raise HypergraphError(f"edge {e} meets a partition class more than once")
    return Hypergraph(r, n, tuple(canon), parts)


@dataclass(frozen=True)
class BipartiteGraph:
    """Simple bipartite graph with sides X = 0..n_left-1 and Y = 0..n_right-1.

    ``edges`` holds ``(x, y)`` pairs in sorted order.  When a single vertex
    numbering is needed (BFS, serialization) Y-vertex ``y`` becomes
    ``n_left + y``.
    """

    n_left: int
    n_right: int
    edges: tuple[tuple[int, int], ...]

    @cached_property
    def edge_set(self) -> frozenset[tuple[int, int]]:
        return frozenset(self.edges)

    def __len__(self) -> int:
        return len(self.edges)

    @property
    def n_vertices(self) -> int:
        return self.n_left + self.n_right

    def adjacency(self) -> list[list[int]]:
        """Sorted neighbour lists in the combined numbering."""
        adj: list[list[int]] = [[] for _ in range(self.n_vertices)]
        for x, y in self.edges:
            adj[x].append(self.n_left + y)
            adj[self.n_left + y].append(x)
        for nbrs in adj:
            nbrs.sort()
        return adj

    def to_hypergraph(self) -> Hypergraph:
        n = self.n_left
        return new_hypergraph(
            2,
            self.n_vertices,
            ((x, n + y) for x, y in self.edges),
            partition=[range(0, n), range(n, n + self.n_right)],
        )

    @classmethod
    def from_hypergraph(cls, H: Hypergraph, n_left: int) -> "BipartiteGraph":
        if H.r != 2:
            raise HypergraphError(f"expected a 2-uniform hypergraph, got r={H.r}")
        pairs = []
        for a, b in H.edges:
            if not (a < n_left <= b):
                raise HypergraphError(f"edge {(a, b)} does not cross the bipartition at {n_left}")
            pairs.append((a, b - n_left))
        return new_bipartite(n_left, H.n_vertices - n_left, pairs)


def new_bipartite(n_left: int, n_right: int, edges: Iterable[Sequence[int]]) -> BipartiteGraph:
    if n_left < 0 or n_right < 0:
        raise HypergraphError("side sizes must be >= 0")
    pairs = set()
    for x, y in edges:
        x, y = int(x), int(y)
        if not (0 <= x < n_left and 0 <= y < n_right):
            raise HypergraphError(f"index out of range in bipartite edge {(x, y)}")
        pairs.add((x, y))
    return BipartiteGraph(n_left, n_right, tuple(sorted(pairs)))


@dataclass(frozen=True)
class TightCycleWitness:
    """Cyclic vertex sequence claimed to span a tight cycle."""

    vertices: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(int(v) for v in self.vertices))

    @property
    def length(self) -> int:
        return len(self.vertices)

    def windows(self, r: int) -> list[tuple[int, ...]]:
        vs, ell = self.vertices, len(self.vertices)
        return [tuple(sorted(vs[(i + j) % ell] for j in range(r))) for i in range(ell)]

    def canonical(self) -> tuple[int, ...]:
        """Rotation/reflection representative: smallest vertex first, then the
        smaller of its two neighbours."""
        vs = self.vertices
        if not vs:
            return vs
        i = vs.index(min(vs))
        fwd = vs[i:] + vs[:i]
        back = (fwd[0],) + tuple(reversed(fwd[1:]))
        return min(fwd, back)

    def format(self) -> str:
        return f"cycle {self.length}: " + " ".join(map(str, self.vertices))

    @classmethod
    def parse(cls, line: str) -> "TightCycleWitness":
        head, _, body = line.partition(":")
        parts = head.split()
        if len(parts) != 2 or parts[0] != "cycle":
            raise ParseError(f"malformed witness line {line!r}")
        vs = tuple(int(v) for v in body.split())
        if len(vs) != int(parts[1]):
            raise ParseError(f"witness length {parts[1]} does not match {len(vs)} vertices")
        return cls(vs)


def verify_witness(H: Hypergraph, w: TightCycleWitness) -> bool:
    """True iff ``w`` spans a tight cycle of ``H``.

    Requires length > r, pairwise distinct vertices, and every cyclic window
    of r consecutive vertices to be an edge of ``H``.
    """
    vs = w.vertices
    if len(vs) <= H.r or len(set(vs)) != len(vs):
        return False
    return all(win in H.edge_set for win in w.windows(H.r))


def serialize(H: Hypergraph, comments: Iterable[str] = ()) -> str:
    lines = [f"# {c}" if not c.startswith("#") else c for c in comments]
    if H.partition is not None:
        lines.append("# partition " + " ".join(f"{p.start}:{p.stop}" for p in H.partition))
    lines.append(f"{H.r} {H.n_vertices} {len(H.edges)}")
    lines.extend(" ".join(map(str, e)) for e in H.edges)
    return "\n".join(lines) + "\n"


def _parse_ints(tokens: list[str], lineno: int, what: str) -> list[int]:
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(f"non-integer token in {what}", lineno) from None


def parse(text: str, *, return_comments: bool = False):
    """Parse the edge-list format; errors carry 1-based line numbers.

    With ``return_comments=True`` returns ``(H, comments)`` where comments are
    the leading ``#`` lines with the marker stripped.
    """
    lines = text.splitlines()
    comments: list[str] = []
    partition = None
    i = 0
    while i < len(lines) and (not lines[i].strip() or lines[i].lstrip().startswith("#")):
        c = lines[i].strip().lstrip("#").strip()
        if c:
            comments.append(c)
            if c.startswith("partition"):
                try:
                    partition = [range(*map(int, p.split(":"))) for p in c.split()[1:]]
                except (ValueError, TypeError):
                    raise ParseError("malformed partition comment", i + 1) from None
        i += 1
    if i == len(lines):
        raise ParseError("missing header", i + 1)
    header = lines[i].split()
    if len(header) != 3:
        raise ParseError("malformed header", i + 1)
    r, n, m = _parse_ints(header, i + 1, "header")
    if r < 1 or n < 0 or m < 0:
        raise ParseError("malformed header", i + 1)
    edges = []
    seen = set()
    for j in range(m):
        lineno = i + 2 + j
        if i + 1 + j >= len(lines):
            raise ParseError(f"expected {m} edges, found {j}", lineno)
        vs = _parse_ints(lines[i + 1 + j].split(), lineno, "edge")
        if len(vs) != r:
            raise ParseError(f"wrong arity ({len(vs)} vertices, expected {r})", lineno)
        if len(set(vs)) != r:
            raise ParseError("repeated vertex", lineno)
        if min(vs) < 0 or max(vs) >= n:
            raise ParseError("index out of range", lineno)
        e = tuple(sorted(vs))
        if e in seen:
            raise ParseError("duplicate edge", lineno)
        seen.add(e)
        edges.append(e)
    for lineno, rest in enumerate(lines[i + 1 + m :], start=i + 2 + m):
        if rest.strip() and not rest.lstrip().startswith("#"):
            raise ParseError(f"trailing data after {m} edges", lineno)
    H = new_hypergraph(r, n, edges, partition=partition)
    return (H, comments) if return_comments else H


class Density(NamedTuple):
    exact: Fraction
    approx: float

    def __str__(self) -> str:
        return f"{self.exact} (~{self.approx:.6g})"


def density_ratio(H: Hypergraph) -> Density:
    """``|E| / n_vertices**(r-1)`` exactly and as a float."""
    if H.n_vertices == 0:
        raise HypergraphError("empty vertex set")
    d = Fraction(len(H.edges), H.n_vertices ** (H.r - 1))
    return Density(d, float(d))


def splitmix64(x: int) -> int:
    """One step of the SplitMix64 output function."""
    z = (x + 0x9E3779B97F4A7C15) & _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


def derive_seed(seed: int, index: int) -> int:
    """Child seed for stream ``index``: ``splitmix64(seed XOR splitmix64(index))``.

    Every randomized stage that needs several independent streams derives
    them through this function, so runs are reproducible from one 64-bit seed.
    """
    return splitmix64((seed & _MASK64) ^ splitmix64(index & _MASK64))


def all_edges(r: int, n: int) -> list[tuple[int, ...]]:
    return list(combinations(range(n), r))
