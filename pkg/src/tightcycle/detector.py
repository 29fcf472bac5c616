"""Exact tight-cycle detection.

The search walks *ordered tight paths*: sequences ``v1 v2 ... vm`` of distinct
vertices in which every r consecutive vertices form an edge.  A path closes
into a tight cycle when the ``r - 1`` wrap-around windows are edges too.

Each cycle is discovered once: its smallest vertex is placed first and its
orientation is fixed by ``v2 < v_last``.  Extension lookups go through an
index from (r-1)-subsets, stored as bitmasks, to the vertices completing them
to an edge.
"""

from __future__ import annotations

import bisect
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .core import Hypergraph, HypergraphError, TightCycleWitness, verify_witness

__all__ = [
    "DetectOptions",
    "BudgetExhausted",
    "NotPartiteError",
    "EdgeIndex",
    "find_tight_cycle",
    "is_tight_cycle_free",
    "brute_force_find",
    "partite_find",
    "tripartite_fast_check",
    "find_cycle_through",
]


class BudgetExhausted(RuntimeError):
    """The search hit its state budget before reaching a verdict."""

    def __init__(self, states: int):
        self.states = states
        super().__init__(f"budget exhausted after {states} states")


class NotPartiteError(HypergraphError):
    pass


@dataclass(frozen=True)
class DetectOptions:
    min_length: int | None = None  # default r + 1
    max_length: int | None = None  # default n_vertices
    state_budget: int | None = None
    parallel_roots: bool = False
    workers: int | None = None

    def bounds(self, H: Hypergraph) -> tuple[int, int]:
        lo = H.r + 1 if self.min_length is None else max(self.min_length, H.r + 1)
        hi = H.n_vertices if self.max_length is None else min(self.max_length, H.n_vertices)
        if self.min_length is not None and self.max_length is not None and self.min_length > self.max_length:
            raise ValueError(f"min_length {self.min_length} exceeds max_length {self.max_length}")
        return lo, hi


def _mask(vs: Iterable[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


class EdgeIndex:
    """Mutable edge set keyed by bitmask, with (r-1)-subset extension lists."""

    def __init__(self, r: int, edges: Iterable[Sequence[int]] = ()):
        self.r = r
        self.masks: set[int] = set()
        self.ext: dict[int, list[int]] = defaultdict(list)
        for e in edges:
            self.add(e)

    def add(self, e: Sequence[int]) -> None:
        m = _mask(e)
        self.masks.add(m)
        for v in e:
            bisect.insort(self.ext[m ^ (1 << v)], v)

    def remove(self, e: Sequence[int]) -> None:
        m = _mask(e)
        self.masks.discard(m)
        for v in e:
            self.ext[m ^ (1 << v)].remove(v)

    def extensions(self, tail: Sequence[int]) -> list[int]:
        return self.ext.get(_mask(tail), [])


class _Counter:
    __slots__ = ("states", "budget")

    def __init__(self, budget: int | None):
        self.states = 0
        self.budget = budget

    def tick(self) -> None:
        self.states += 1
        if self.budget is not None and self.states > self.budget:
            raise BudgetExhausted(self.states)


def _extend(ix: EdgeIndex, start: Sequence[int], allowed, lo: int, hi: int,
            oriented: bool, step: int, counter: _Counter) -> tuple[int, ...] | None:
    """Depth-first search over tight paths that begin with the window ``start``.

    ``allowed[u]`` gates which vertices may be appended; ``step`` restricts
    closing lengths to multiples of it.
    """
    r = ix.r
    masks = ix.masks
    path = list(start)
    used = set(start)

    def closes() -> bool:
        m = len(path)
        if m < lo or m % step:
            return False
        if oriented and m >= 3 and path[1] > path[-1]:
            return False
        for j in range(1, r):
            if _mask(path[m - r + j:] + path[:j]) not in masks:
                return False
        return True

    if len(path) >= hi:
        return None
    stack = [iter(ix.extensions(path[len(path) - r + 1:] if r > 1 else ()))]
    while stack:
        for u in stack[-1]:
            if allowed[u] and u not in used:
                break
        else:
            stack.pop()
            if stack:
                used.discard(path.pop())
            continue
        counter.tick()
        path.append(u)
        used.add(u)
        if closes():
            return tuple(path)
        if len(path) < hi:
            stack.append(iter(ix.extensions(path[len(path) - r + 1:] if r > 1 else ())))
        else:
            used.discard(path.pop())
    return None


def _search_roots(H: Hypergraph, roots: Sequence[int], lo: int, hi: int,
                  budget: int | None) -> tuple[tuple[int, ...] | None, int]:
    ix = EdgeIndex(H.r, H.edges)
    counter = _Counter(budget)
    by_min: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for e in H.edges:
        by_min[e[0]].append(e)
    n = H.n_vertices
    for s in roots:
        if not by_min.get(s):
            continue
        allowed = bytearray(n)
        allowed[s + 1:] = b"\x01" * (n - s - 1)
        for e in by_min[s]:
            for perm in permutations(e[1:]):
                counter.tick()
                found = _extend(ix, (s, *perm), allowed, lo, hi, True, 1, counter)
                if found is not None:
                    return found, counter.states
    return None, counter.states


def _parallel_search(H: Hypergraph, lo: int, hi: int, opt: DetectOptions):
    roots = sorted({e[0] for e in H.edges})
    workers = opt.workers or None
    with ProcessPoolExecutor(max_workers=workers) as pool:
        nchunks = max(1, min(len(roots), 4 * (pool._max_workers)))
        chunks = [roots[i::nchunks] for i in range(nchunks)]
        futures = [pool.submit(_search_roots, H, c, lo, hi, opt.state_budget) for c in chunks]
        results = [f.result() for f in futures]
    found = [(min(w), w) for w, _ in results if w is not None]
    # the witness rooted at the smallest vertex matches the sequential search
    return (min(found)[1] if found else None), sum(s for _, s in results)


def find_tight_cycle(H: Hypergraph, opt: DetectOptions | None = None, **kwargs) -> TightCycleWitness | None:
    """Return a tight cycle of ``H`` with length in the requested range, or None.

    Raises :class:`BudgetExhausted` if ``state_budget`` is hit first; ``None``
    is only returned after an exhaustive search.
    """
    opt = opt or DetectOptions(**kwargs)
    lo, hi = opt.bounds(H)
    if lo > hi or not H.edges:
        return None
    if opt.parallel_roots:
        found, _ = _parallel_search(H, lo, hi, opt)
    else:
        found, _ = _search_roots(H, range(H.n_vertices), lo, hi, opt.state_budget)
    if found is None:
        return None
    w = TightCycleWitness(found)
    assert verify_witness(H, w), f"detector produced an invalid witness {found}"
    return w


def is_tight_cycle_free(H: Hypergraph, state_budget: int | None = None) -> bool:
    return find_tight_cycle(H, DetectOptions(state_budget=state_budget)) is None


def find_cycle_through(ix: EdgeIndex, edge: Sequence[int], n: int,
                       counter: _Counter | None = None) -> tuple[int, ...] | None:
    """Tight cycle of the indexed edge set that uses ``edge`` as a window.

    Used for incremental checking: adding ``edge`` to a tight-cycle-free set
    creates a cycle iff this returns a path.
    """
    counter = counter or _Counter(None)
    allowed = b"\x01" * n
    for perm in permutations(edge):
        found = _extend(ix, perm, allowed, ix.r + 1, n, False, 1, counter)
        if found is not None:
            return found
    return None


def brute_force_find(H: Hypergraph, opt: DetectOptions | None = None, cap: int = 10,
                     **kwargs) -> TightCycleWitness | None:
    """Reference search over cyclic vertex orders, smallest vertex first.

    Shares no code with :func:`find_tight_cycle`.  Orders are grown one
    vertex at a time and abandoned as soon as a completed window is not an
    edge; otherwise nothing is assumed.  Intended as an oracle on hypergraphs
    with at most ``cap`` vertices.
    """
    if H.n_vertices > cap:
        raise ValueError(f"brute force capped at {cap} vertices, got {H.n_vertices}")
    opt = opt or DetectOptions(**kwargs)
    lo, hi = opt.bounds(H)
    r, edges, n = H.r, H.edge_set, H.n_vertices

    def window(seq, i):
        return tuple(sorted(seq[(i + j) % len(seq)] for j in range(r)))

    def grow(seq):
        ell = len(seq)
        if ell >= r and window(seq, ell - r) not in edges:
            return None
        if lo <= ell and (ell < 3 or seq[1] < seq[-1]):
            if all(window(seq, i) in edges for i in range(ell - r + 1, ell)):
                return TightCycleWitness(tuple(seq))
        if ell == hi:
            return None
        for v in range(seq[0] + 1, n):
            if v not in seq:
                found = grow(seq + [v])
                if found:
                    return found
        return None

    for s in range(n):
        found = grow([s])
        if found:
            return found
    return None


def partite_find(H: Hypergraph, opt: DetectOptions | None = None) -> TightCycleWitness | None:
    """Tight-cycle search specialised to r-partite inputs with transversal edges.

    In such a hypergraph consecutive vertices of a tight cycle cycle through
    the parts with period r, so the cycle length is a multiple of r and every
    cycle visits part 0.  The search roots only at part-0 vertices and closes
    only at multiples of r.
    """
    if H.partition is None or len(H.partition) != H.r:
        raise NotPartiteError("not tripartite-transversal: partition missing or wrong size"
                              if H.r == 3 else "not partite-transversal: partition missing or wrong size")
    owner = [-1] * H.n_vertices
    for i, part in enumerate(H.partition):
        for v in part:
            owner[v] = i
    for e in H.edges:
        if sorted(owner[v] for v in e) != list(range(H.r)):
            raise NotPartiteError(f"not tripartite-transversal: edge {e}" if H.r == 3
                                  else f"not partite-transversal: edge {e}")
    opt = opt or DetectOptions()
    lo, hi = opt.bounds(H)
    counter = _Counter(opt.state_budget)
    ix = EdgeIndex(H.r, H.edges)
    by_root: dict[int, list[tuple[int, ...]]] = defaultdict(list)
    for e in H.edges:
        by_root[next(v for v in e if owner[v] == 0)].append(e)
    for s in sorted(by_root):
        allowed = bytearray(1 if (owner[u] != 0 or u > s) else 0 for u in range(H.n_vertices))
        for e in by_root[s]:
            others = [v for v in e if v != s]
            for perm in permutations(others):
                counter.tick()
                found = _extend(ix, (s, *perm), allowed, lo, hi, True, H.r, counter)
                if found is not None:
                    w = TightCycleWitness(found)
                    assert verify_witness(H, w)
                    return w
    return None


def tripartite_fast_check(H: Hypergraph, state_budget: int | None = None) -> bool:
    """Tight-cycle-freeness of a 3-partite hypergraph whose edges are transversals."""
    if H.r != 3:
        raise NotPartiteError(f"not tripartite-transversal: uniformity {H.r}")
    return partite_find(H, DetectOptions(state_budget=state_budget)) is None
