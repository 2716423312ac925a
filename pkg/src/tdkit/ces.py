"""The cost-effective subgraph problem: cost evaluation and exact solvers.

Given a graph and an edge cost c, choosing a vertex subset X makes every
edge inside X cost |X| and every other edge cost c:

    cost(X) = c * (|E(G)| - |E(X)|) + |X| * |E(X)|

The empty set always achieves c*|E(G)|, so minimizing trades covering
edges against the per-edge penalty of a large subset.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable

from .strings import TdkError


class GraphError(TdkError):
    pass


class SelfLoopError(GraphError):
    pass


class DuplicateEdgeError(GraphError):
    pass


class InvalidVertexError(GraphError):
    pass


class TooLargeError(TdkError):
    """Instance exceeds the full-enumeration limit."""


EXACT_ENUMERATION_LIMIT = 25  # 2^n subsets; keep desk runs under a minute


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1 with an ordered edge list.

    The edge order is significant downstream (generated instances index
    edge gadgets by it), so it is preserved; endpoints within an edge are
    normalized to (min, max).
    """

    n: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"vertex count must be >= 0, got {self.n}")
        norm: list[tuple[int, int]] = []
        seen: set[tuple[int, int]] = set()
        for u, v in self.edges:
            if u == v:
                raise SelfLoopError(f"self-loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidVertexError(f"edge ({u}, {v}) out of range for n={self.n}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise DuplicateEdgeError(f"duplicate edge {e}")
            seen.add(e)
            norm.append(e)
        object.__setattr__(self, "edges", tuple(norm))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adjacency(self) -> tuple[frozenset[int], ...]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return tuple(frozenset(s) for s in adj)

    def edges_inside(self, subset: Iterable[int]) -> int:
        xs = set(subset)
        return sum(1 for u, v in self.edges if u in xs and v in xs)


@dataclass(frozen=True)
class CesInstance:
    graph: Graph
    c: int

    def __post_init__(self) -> None:
        if self.c < 1:
            raise ValueError(f"edge cost c must be >= 1, got {self.c}")


@dataclass(frozen=True)
class CesSolution:
    subset: tuple[int, ...]
    cost: int


def ces_cost(inst: CesInstance, subset: Iterable[int]) -> int:
    """Exact cost of a vertex subset."""
    xs = set(subset)
    for v in xs:
        if not (0 <= v < inst.graph.n):
            raise InvalidVertexError(f"vertex {v} out of range for n={inst.graph.n}")
    e_in = inst.graph.edges_inside(xs)
    return inst.c * (inst.graph.m - e_in) + len(xs) * e_in


def _mask_subset(mask: int, n: int) -> tuple[int, ...]:
    return tuple(v for v in range(n) if mask >> v & 1)


def ces_solve_exact(inst: CesInstance) -> CesSolution:
    """Global minimum over all 2^n subsets.

    Ties break toward smaller subsets, then lexicographically smallest,
    so results are reproducible.
    """
    g = inst.graph
    if g.n > EXACT_ENUMERATION_LIMIT:
        raise TooLargeError(
            f"n={g.n} exceeds the full-enumeration limit of {EXACT_ENUMERATION_LIMIT}"
        )
    emasks = [(1 << u) | (1 << v) for u, v in g.edges]
    best_key: tuple[int, int] | None = None
    best_subset: tuple[int, ...] = ()
    for mask in range(1 << g.n):
        e_in = sum(1 for em in emasks if em & mask == em)
        size = mask.bit_count()
        key = (inst.c * (g.m - e_in) + size * e_in, size)
        if best_key is None or key < best_key:
            best_key, best_subset = key, _mask_subset(mask, g.n)
        elif key == best_key:
            cand = _mask_subset(mask, g.n)
            if cand < best_subset:
                best_subset = cand
    assert best_key is not None
    return CesSolution(best_subset, best_key[0])


def ces_solve_bounded(inst: CesInstance) -> CesSolution:
    """Minimum over subsets of size at most c; equals the global optimum.

    Any subset larger than c pays more than c per inner edge, so the empty
    set does at least as well: restricting to |X| <= c loses nothing.
    """
    g = inst.graph
    best: tuple[int, int, tuple[int, ...]] | None = None
    for size in range(min(inst.c, g.n) + 1):
        for combo in combinations(range(g.n), size):
            e_in = g.edges_inside(combo)
            cost = inst.c * (g.m - e_in) + size * e_in
            key = (cost, size, combo)
            if best is None or key < best:
                best = key
    assert best is not None
    return CesSolution(best[2], best[0])


def ces_decide(inst: CesInstance, budget: int) -> bool:
    """True iff some subset costs at most the budget."""
    return ces_solve_exact(inst).cost <= budget
