"""Exact searches for cycles and paths, with explicit node budgets.

All searches are exact backtracking with pruning, not heuristics: the
4-leg case machine relies on true maximality of the returned cycle and
path for its non-adjacency facts, so an approximate answer would make
the constructive embedder unsound.  Running out of budget raises
:class:`BudgetExhaustedError`, a first-class outcome distinct from
"does not exist".
"""

from dataclasses import dataclass

from .errors import BudgetExhaustedError, PreconditionError
from .graph import Graph, is_connected

DEFAULT_SEARCH_NODES = 10_000_000


@dataclass
class SearchBudget:
    """Mutable counter of search-tree nodes; ``consumed`` never exceeds
    ``max_nodes``."""

    max_nodes: int = DEFAULT_SEARCH_NODES
    consumed: int = 0

    def charge(self) -> None:
        if self.consumed >= self.max_nodes:
            raise BudgetExhaustedError(
                f"search budget of {self.max_nodes} nodes exhausted")
        self.consumed += 1

    @property
    def remaining(self) -> int:
        return self.max_nodes - self.consumed


def _ensure_budget(budget: SearchBudget | None) -> SearchBudget:
    return budget if budget is not None else SearchBudget()


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CycleCert:
    """Cycle witness ``order[0], ..., order[s-1]`` with the closing edge
    implied.  ``maximal`` means no longer cycle through ``through``
    exists in the searched graph."""

    order: tuple[int, ...]
    through: int
    maximal: bool

    @property
    def s(self) -> int:
        return len(self.order)

    def to_json_obj(self) -> dict:
        return {"order": list(self.order), "s": self.s,
                "through": self.through, "maximal": self.maximal}


@dataclass(frozen=True)
class PathCert:
    """Path witness from ``order[0]``; ``maximal`` means no longer path
    from the same start avoiding the same forbidden set exists."""

    order: tuple[int, ...]
    maximal: bool

    @property
    def ell(self) -> int:
        return len(self.order) - 1

    def to_json_obj(self) -> dict:
        return {"order": list(self.order), "length": self.ell,
                "maximal": self.maximal}


def cycle_is_valid(g: Graph, order) -> bool:
    """Structural check: at least 3 distinct vertices, consecutive edges
    present, closing edge present."""
    if len(order) < 3 or len(set(order)) != len(order):
        return False
    for a, b in zip(order, order[1:]):
        if not g.has_edge(a, b):
            return False
    return g.has_edge(order[-1], order[0])


def rotate_cycle(cert: CycleCert, v: int) -> CycleCert:
    """Same cycle re-anchored to start at ``v``, direction preserved.

    The ``maximal`` flag is carried over; that is only meaningful when
    maximality did not depend on the anchor (e.g. spanning cycles).
    """
    if v not in cert.order:
        raise PreconditionError(f"vertex {v} is not on the cycle")
    i = cert.order.index(v)
    return CycleCert(cert.order[i:] + cert.order[:i], v, cert.maximal)


def reverse_cycle(cert: CycleCert) -> CycleCert:
    """Mirror orientation with the same anchor."""
    return CycleCert((cert.order[0],) + tuple(reversed(cert.order[1:])),
                     cert.through, cert.maximal)


# ---------------------------------------------------------------------------
# Biconnectivity
# ---------------------------------------------------------------------------

def is_two_connected(g: Graph) -> bool:
    """True iff n >= 3, connected, and no articulation vertex (iterative
    depth-first low-link)."""
    n = g.n
    if n < 3 or not is_connected(g):
        return False
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    disc[0] = low[0] = 0
    timer = 1
    root_children = 0
    stack: list[tuple[int, object]] = [(0, iter(g.adjacency[0]))]
    while stack:
        u, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                parent[w] = u
                disc[w] = low[w] = timer
                timer += 1
                if u == 0:
                    root_children += 1
                stack.append((w, iter(g.adjacency[w])))
                advanced = True
                break
            elif w != parent[u]:
                if disc[w] < low[u]:
                    low[u] = disc[w]
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[u] < low[p]:
                    low[p] = low[u]
                if p != 0 and low[u] >= disc[p]:
                    return False
    return root_children < 2


# ---------------------------------------------------------------------------
# Hamiltonian cycle
# ---------------------------------------------------------------------------

def hamiltonian_cycle(g: Graph, budget: SearchBudget | None = None) -> CycleCert | None:
    """Exact hamiltonian-cycle search.

    Returns a spanning :class:`CycleCert` anchored at vertex 0, oriented
    toward its lowest-index cycle neighbor, or ``None`` if no hamiltonian
    cycle exists.  ``None`` is an exact verdict; exhaustion raises.
    """
    n = g.n
    if n < 3:
        raise PreconditionError(f"hamiltonian cycle needs n >= 3, got {n}")
    budget = _ensure_budget(budget)
    if not is_connected(g):
        return None
    if min(g.degree(v) for v in range(n)) < 2:
        return None

    adj = g.adjacency
    adj0 = g.adj_sets[0]
    path = [0]
    on_path = [False] * n
    on_path[0] = True
    found: list[int] | None = None

    def extend() -> bool:
        nonlocal found
        budget.charge()
        tail = path[-1]
        if len(path) == n:
            if tail in adj0 and path[1] < tail:
                found = path.copy()
                return True
            return False
        # every unvisited vertex still needs two usable endpoints
        for v in range(n):
            if on_path[v]:
                continue
            usable = 0
            for w in adj[v]:
                if w == 0 or w == tail or not on_path[w]:
                    usable += 1
                    if usable == 2:
                        break
            if usable < 2:
                return False
        # all unvisited vertices must be reachable from the tail
        seen = [False] * n
        seen[tail] = True
        stack = [tail]
        reached = 0
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w] and not on_path[w]:
                    seen[w] = True
                    reached += 1
                    stack.append(w)
        if reached < n - len(path):
            return False
        for w in adj[tail]:
            if not on_path[w]:
                path.append(w)
                on_path[w] = True
                done = extend()
                path.pop()
                on_path[w] = False
                if done:
                    return True
        return False

    extend()
    if found is None:
        return None
    return CycleCert(tuple(found), through=0, maximal=True)


# ---------------------------------------------------------------------------
# Maximum cycle through a vertex
# ---------------------------------------------------------------------------

def max_cycle_through(g: Graph, v: int, lower_bound: int = 1,
                      budget: SearchBudget | None = None) -> CycleCert | None:
    """Longest cycle containing ``v``, found by exact backtracking.

    The returned certificate starts at ``v`` and proceeds toward its
    lowest-index neighbor on the cycle; the mirror orientation is
    obtainable via :func:`reverse_cycle`.  ``lower_bound`` is the length
    the caller expects from its own hypotheses; it does not constrain the
    search, which always returns the true maximum (or ``None`` if no
    cycle passes through ``v``).
    """
    if not (0 <= v < g.n):
        raise PreconditionError(f"vertex {v} out of range")
    if g.degree(v) < 2:
        raise PreconditionError(f"no cycle through vertex {v}: degree < 2")
    if lower_bound < 0:
        raise PreconditionError("lower_bound must be non-negative")
    budget = _ensure_budget(budget)

    n = g.n
    adj = g.adjacency
    adj_v = g.adj_sets[v]
    best: list[int] | None = None
    path = [v]
    on_path = [False] * n
    on_path[v] = True

    def extend() -> bool:
        nonlocal best
        budget.charge()
        tail = path[-1]
        length = len(path)
        if length >= 3 and tail in adj_v and path[1] < tail:
            if best is None or length > len(best):
                best = path.copy()
                if length == n:
                    return True
        # reachability bound: extensions stay within path + reach
        seen = [False] * n
        seen[tail] = True
        stack = [tail]
        reach: list[int] = []
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w] and not on_path[w]:
                    seen[w] = True
                    reach.append(w)
                    stack.append(w)
        if best is not None and length + len(reach) <= len(best):
            return False
        if not any(w in adj_v for w in reach):
            return False
        for w in adj[tail]:
            if not on_path[w]:
                path.append(w)
                on_path[w] = True
                done = extend()
                path.pop()
                on_path[w] = False
                if done:
                    return True
        return False

    extend()
    if best is None:
        return None
    return CycleCert(tuple(best), through=v, maximal=True)


# ---------------------------------------------------------------------------
# Maximum path from a vertex avoiding a forbidden set
# ---------------------------------------------------------------------------

def max_path_from_avoiding(g: Graph, v: int, forbidden,
                           budget: SearchBudget | None = None) -> PathCert:
    """Longest path starting at ``v`` whose internal vertices avoid
    ``forbidden``.  ``v`` itself may belong to the forbidden set (it is
    the anchor); the result has length 0 iff ``v`` has no neighbor
    outside the forbidden set.
    """
    if not (0 <= v < g.n):
        raise PreconditionError(f"vertex {v} out of range")
    budget = _ensure_budget(budget)
    n = g.n
    adj = g.adjacency
    allowed = [u not in forbidden for u in range(n)]
    allowed[v] = False  # anchor usable only at position 0
    best = [v]
    path = [v]
    on_path = [False] * n
    on_path[v] = True

    def extend() -> None:
        nonlocal best
        budget.charge()
        tail = path[-1]
        if len(path) > len(best):
            best = path.copy()
        seen = [False] * n
        seen[tail] = True
        stack = [tail]
        reach = 0
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if not seen[w] and allowed[w] and not on_path[w]:
                    seen[w] = True
                    reach += 1
                    stack.append(w)
        if len(path) + reach <= len(best):
            return
        for w in adj[tail]:
            if allowed[w] and not on_path[w]:
                path.append(w)
                on_path[w] = True
                extend()
                path.pop()
                on_path[w] = False

    extend()
    return PathCert(tuple(best), maximal=True)
