"""Extraction of a dense induced subgraph by low-degree peeling.

Given ``2m > n(k-1)``, repeatedly deleting a vertex of degree at most
``(k-1)/2`` preserves that inequality, so the loop terminates on a
nonempty subgraph in which every vertex has degree at least ``ceil(k/2)``.
If peeling leaves several components, the component maximizing
``2e - (k-1)n`` still satisfies the threshold and is kept.

Full minimality (no proper induced subgraph above the threshold) is not
verified; downstream algorithms need only connectivity and the minimum
degree bound, and both are guaranteed here.
"""

from dataclasses import dataclass

from .errors import PreconditionError
from .graph import Graph, connected_components, exceeds_threshold, induced_subgraph


@dataclass(frozen=True)
class PeelResult:
    """Peeled subgraph, the old->new index map, and the ordered removal
    log of ``(vertex, degree_at_removal)`` pairs.  Replaying the log on
    the input graph reproduces the subgraph's vertex set."""

    subgraph: Graph
    vertex_map: dict[int, int]
    removed: tuple[tuple[int, int], ...]


def minimal_dense_subgraph(g: Graph, k: int) -> PeelResult:
    """Peel ``g`` down to a connected subgraph H with ``2e(H) > |H|(k-1)``
    and minimum degree at least ``ceil(k/2)``.

    Ties are broken deterministically: among simultaneously eligible
    vertices the lowest index is removed first; among surviving
    components the winner maximizes ``2e - (k-1)n``, then vertex count,
    then has the lowest minimum index.  A graph already satisfying the
    degree bound and connectivity is returned unchanged.
    """
    if k < 2:
        raise PreconditionError(f"peeling needs k >= 2, got {k}")
    if not exceeds_threshold(g, k):
        raise PreconditionError(
            f"density threshold fails: 2m = {2 * g.m} <= n(k-1) = {g.n * (k - 1)}")

    n = g.n
    alive = [True] * n
    deg = [g.degree(v) for v in range(n)]
    n_alive, e_alive = n, g.m
    removed: list[tuple[int, int]] = []
    limit = (k - 1) // 2

    def drop(v: int) -> None:
        nonlocal n_alive, e_alive
        removed.append((v, deg[v]))
        alive[v] = False
        e_alive -= deg[v]
        n_alive -= 1
        for w in g.adjacency[v]:
            if alive[w]:
                deg[w] -= 1

    while True:
        progressed = True
        while progressed:
            progressed = False
            for v in range(n):
                if alive[v] and deg[v] <= limit:
                    drop(v)
                    # deleting degree <= (k-1)/2 keeps 2e > n(k-1)
                    assert 2 * e_alive > n_alive * (k - 1)
                    progressed = True
                    break
        comps = _alive_components(g, alive)
        if len(comps) == 1:
            break
        best = max(comps, key=lambda c: (2 * _edges_within(g, c) - (k - 1) * len(c),
                                         len(c), -min(c)))
        best_set = set(best)
        for v in range(n):
            if alive[v] and v not in best_set:
                drop(v)
        assert 2 * e_alive > n_alive * (k - 1)

    keepers = [v for v in range(n) if alive[v]]
    sub, vmap = induced_subgraph(g, keepers)
    assert exceeds_threshold(sub, k)
    assert all(sub.degree(v) >= (k + 1) // 2 for v in range(sub.n))
    assert len(connected_components(sub)) == 1
    return PeelResult(sub, vmap, tuple(removed))


def _alive_components(g: Graph, alive: list[bool]) -> list[list[int]]:
    seen = [False] * g.n
    comps = []
    for start in range(g.n):
        if not alive[start] or seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if alive[w] and not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comps.append(sorted(comp))
    return comps


def _edges_within(g: Graph, comp: list[int]) -> int:
    cs = set(comp)
    return sum(1 for u, v in g.edges if u in cs and v in cs)
