"""Shortest cycles in bipartite graphs and random high-girth subgraphs of K_{n,n}."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass

import numpy as np

from .core import BipartiteGraph, derive_seed, new_bipartite

__all__ = [
    "RemovalStrategy",
    "GirthGenConfig",
    "GirthInfeasible",
    "shortest_cycle_length",
    "has_cycle_at_most",
    "generate_high_girth",
    "edge_probability",
]


class GirthInfeasible(RuntimeError):
    pass


class RemovalStrategy(str, enum.Enum):
    DELETE = "delete_random_edge_per_short_cycle"
    GREEDY = "greedy_insertion"


@dataclass(frozen=True)
class GirthGenConfig:
    """Parameters of :func:`generate_high_girth`.

    The deletion strategy samples every pair of K_{n,n} with probability
    ``min(1, scale * n**(-1 + exponent))``.  ``exponent`` is
    ``density_exponent_c / k`` when ``density_exponent_c`` is given, and
    ``1 / (2k - 1)`` otherwise; the latter keeps the expected number of
    cycles of length at most 2k a constant fraction of the edge count.
    """

    density_exponent_c: float | None = None
    initial_edge_probability_scale: float = 1.0
    removal_strategy: RemovalStrategy = RemovalStrategy.DELETE
    max_retries: int = 20
    max_k: int | None = None  # default ceil(log2 n)

    def __post_init__(self):
        if self.density_exponent_c is not None and not 0 < self.density_exponent_c <= 1:
            raise ValueError("density_exponent_c must lie in (0, 1]")
        if self.initial_edge_probability_scale <= 0:
            raise ValueError("initial_edge_probability_scale must be positive")
        if self.max_retries < 1:
            raise ValueError("max_retries must be >= 1")
        object.__setattr__(self, "removal_strategy", RemovalStrategy(self.removal_strategy))


def _bfs_cycle_bound(adj, root: int, limit: int) -> int:
    """Smallest ``dist[u] + dist[w] + 1`` over non-tree edges seen from ``root``.

    Stops expanding once no value below ``limit`` can appear; returns
    ``limit`` if nothing smaller was found.
    """
    dist = {root: 0}
    parent = {root: -1}
    queue = deque([root])
    best = limit
    while queue:
        u = queue.popleft()
        du = dist[u]
        if 2 * du >= best:
            break
        for w in adj[u]:
            if w not in dist:
                dist[w] = du + 1
                parent[w] = u
                queue.append(w)
            elif w != parent[u]:
                best = min(best, du + dist[w] + 1)
    return best


def shortest_cycle_length(G: BipartiteGraph) -> float:
    """Girth of ``G``; ``math.inf`` for a forest.

    The minimum over all BFS roots of the shortest non-tree-edge closure is
    the exact girth.
    """
    adj = G.adjacency()
    best = math.inf
    for root in range(G.n_vertices):
        if adj[root]:
            best = _bfs_cycle_bound(adj, root, best)
    return best


def has_cycle_at_most(G: BipartiteGraph, L: int) -> bool:
    if L < 2:
        raise ValueError("L must be >= 2")
    adj = G.adjacency()
    for root in range(G.n_vertices):
        if adj[root] and _bfs_cycle_bound(adj, root, L + 1) <= L:
            return True
    return False


def _short_cycle_from(adj, root: int, k: int) -> list[int] | None:
    """A cycle of length <= 2k found by BFS from ``root``, as a vertex list.

    Vertices at depth < k are expanded; in a bipartite graph every non-tree
    edge met that way closes a cycle of length <= 2k, and any such cycle
    through ``root`` is met.
    """
    parent = {root: -1}
    depth = {root: 0}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        if depth[u] >= k:
            break
        for w in sorted(adj[u]):
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                queue.append(w)
            elif w != parent[u]:
                return _splice(parent, u, w)
    return None


def _splice(parent, u: int, w: int) -> list[int]:
    up = [u]
    while parent[up[-1]] != -1:
        up.append(parent[up[-1]])
    wp = [w]
    on_up = set(up)
    while wp[-1] not in on_up:
        wp.append(parent[wp[-1]])
    lca = wp[-1]
    return up[: up.index(lca) + 1] + wp[-2::-1]


def edge_probability(n: int, k: int, cfg: GirthGenConfig) -> float:
    if cfg.density_exponent_c is None:
        exponent = 1.0 / (2 * k - 1)
    else:
        exponent = cfg.density_exponent_c / k
    return min(1.0, cfg.initial_edge_probability_scale * n ** (-1.0 + exponent))


def _delete_short_cycles(n: int, k: int, p: float, rng: np.random.Generator) -> list[tuple[int, int]]:
    sample = rng.random((n, n)) < p
    adj = [set() for _ in range(2 * n)]
    for x, y in zip(*np.nonzero(sample)):
        adj[x].add(n + int(y))
        adj[n + int(y)].add(int(x))
    if k > 1:
        # deleting edges never creates cycles, so one pass over roots suffices
        for root in range(2 * n):
            while (cyc := _short_cycle_from(adj, root, k)) is not None:
                i = int(rng.integers(len(cyc)))
                a, b = cyc[i], cyc[(i + 1) % len(cyc)]
                adj[a].discard(b)
                adj[b].discard(a)
    return [(x, y - n) for x in range(n) for y in sorted(adj[x])]


def _within(adjm: list[int], src: int, dst: int, radius: int) -> bool:
    """Whether ``dst`` is within ``radius`` steps of ``src`` (bitset BFS)."""
    seen = frontier = 1 << src
    target = 1 << dst
    for _ in range(radius):
        nxt = 0
        f = frontier
        while f:
            low = f & -f
            nxt |= adjm[low.bit_length() - 1]
            f ^= low
        frontier = nxt & ~seen
        if frontier & target:
            return True
        if not frontier:
            return False
        seen |= frontier
    return False


def _greedy_insertion(n: int, k: int, rng: np.random.Generator) -> list[tuple[int, int]]:
    adjm = [0] * (2 * n)
    kept = []
    for idx in rng.permutation(n * n):
        x, y = divmod(int(idx), n)
        # adding xy closes a cycle of length dist(x, y) + 1
        if _within(adjm, x, n + y, 2 * k - 1):
            continue
        adjm[x] |= 1 << (n + y)
        adjm[n + y] |= 1 << x
        kept.append((x, y))
    return kept


def generate_high_girth(n: int, k: int, cfg: GirthGenConfig | None = None, seed: int = 0) -> BipartiteGraph:
    """Random subgraph of K_{n,n} with no cycle of length at most ``2k``.

    Deterministic in ``(n, k, cfg, seed)``.  Attempts that keep fewer than
    ``n`` edges are resampled from derived seeds, up to ``cfg.max_retries``.
    """
    cfg = cfg or GirthGenConfig()
    if n < 2 or k < 1:
        raise ValueError(f"need n >= 2 and k >= 1, got n={n}, k={k}")
    max_k = cfg.max_k if cfg.max_k is not None else math.ceil(math.log2(n))
    if k > max_k:
        raise GirthInfeasible(f"girth target infeasible: k={k} exceeds validity bound {max_k} for n={n}")
    p = edge_probability(n, k, cfg)
    for attempt in range(cfg.max_retries):
        rng = np.random.default_rng(seed if attempt == 0 else derive_seed(seed, attempt))
        if cfg.removal_strategy is RemovalStrategy.GREEDY:
            pairs = _greedy_insertion(n, k, rng)
        else:
            pairs = _delete_short_cycles(n, k, p, rng)
        if len(pairs) >= n:
            break
    else:
        raise GirthInfeasible(
            f"girth target infeasible: {cfg.max_retries} attempts kept fewer than n={n} edges"
        )
    G = new_bipartite(n, n, pairs)
    girth = shortest_cycle_length(G)
    if girth <= 2 * k:
        raise AssertionError(f"generator output has a cycle of length {girth} <= {2 * k}")
    return G
