"""Undirected simple graphs and spider certificates.

Vertices are dense 0-based integers; external labels are the parser's
concern only.  Graphs are immutable after construction and safe to share
between concurrent tasks.  Every density decision is made in exact
integer arithmetic (the threshold ``e > n(k-1)/2`` is evaluated as
``2m > n(k-1)``), never in floating point.
"""

from dataclasses import dataclass, field
from itertools import combinations

from .errors import GraphParseError, PreconditionError


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    """Simple undirected graph in canonical form.

    ``edges`` holds pairs ``(u, v)`` with ``u < v`` sorted
    lexicographically; ``adjacency`` holds per-vertex ascending neighbor
    tuples.  Two graphs built from the same edge set in any input order
    compare equal.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...] = field(compare=False, repr=False)
    adj_sets: tuple[frozenset[int], ...] = field(compare=False, repr=False)

    @classmethod
    def from_edges(cls, n: int, edges) -> "Graph":
        if n < 0:
            raise ValueError(f"vertex count must be non-negative, got {n}")
        seen: set[tuple[int, int]] = set()
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex out of range in edge ({u}, {v}), n={n}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise ValueError(f"duplicate edge {key}")
            seen.add(key)
        return cls._build(n, tuple(sorted(seen)))

    @classmethod
    def _build(cls, n: int, canonical_edges: tuple[tuple[int, int], ...]) -> "Graph":
        # Fast path: edges already validated, deduplicated and sorted.
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in canonical_edges:
            adj[u].append(v)
            adj[v].append(u)
        adjacency = tuple(tuple(sorted(a)) for a in adj)
        adj_sets = tuple(frozenset(a) for a in adjacency)
        return cls(n, canonical_edges, adjacency, adj_sets)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adjacency[v]

    def adj(self, v: int) -> frozenset[int]:
        return self.adj_sets[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj_sets[u]


def parse_edge_list(text: str) -> Graph:
    """Parse the edge-list format: a header line ``n m`` followed by m
    lines ``u v``.  Lines starting with ``#`` and blank lines are ignored.

    Raises :class:`GraphParseError` naming the offending line for
    self-loops, duplicate edges, out-of-range vertices, malformed tokens
    and edge-count mismatches.
    """
    n = m = -1
    have_header = False
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if not have_header:
            if len(tokens) != 2:
                raise GraphParseError("expected header 'n m'", line_no)
            try:
                n, m = int(tokens[0]), int(tokens[1])
            except ValueError:
                raise GraphParseError("expected header 'n m' with integers", line_no)
            if n < 0 or m < 0:
                raise GraphParseError("n and m must be non-negative", line_no)
            have_header = True
            continue
        if len(edges) >= m:
            raise GraphParseError(
                f"edge count mismatch: header declared {m} edges, found more", line_no)
        if len(tokens) != 2:
            raise GraphParseError("expected edge line 'u v'", line_no)
        try:
            u, v = int(tokens[0]), int(tokens[1])
        except ValueError:
            raise GraphParseError("expected edge line 'u v' with integers", line_no)
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", line_no)
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range in edge {u} {v} (n={n})", line_no)
        key = (u, v) if u < v else (v, u)
        if key in seen:
            raise GraphParseError(f"duplicate edge {key[0]} {key[1]}", line_no)
        seen.add(key)
        edges.append(key)
    if not have_header:
        raise GraphParseError("missing 'n m' header line")
    if len(edges) != m:
        raise GraphParseError(
            f"edge count mismatch: header declared {m} edges, found {len(edges)}")
    return Graph._build(n, tuple(sorted(seen)))


def serialize_graph(g: Graph) -> str:
    """Inverse of :func:`parse_edge_list`; edges emitted in lexicographic
    order, so the output is canonical."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def connected_components(g: Graph) -> list[list[int]]:
    """Components as ascending vertex lists, ordered by smallest member."""
    seen = [False] * g.n
    comps: list[list[int]] = []
    for start in range(g.n):
        if seen[start]:
            continue
        seen[start] = True
        comp = [start]
        stack = [start]
        while stack:
            u = stack.pop()
            for w in g.adjacency[u]:
                if not seen[w]:
                    seen[w] = True
                    comp.append(w)
                    stack.append(w)
        comp.sort()
        comps.append(comp)
    return comps


def is_connected(g: Graph) -> bool:
    return g.n <= 1 or len(connected_components(g)) == 1


# ---------------------------------------------------------------------------
# Degree statistics and the density threshold
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DegreeStats:
    """Degree extremes plus the average degree as the exact rational
    ``avg_degree_num / avg_degree_den`` = ``2m / n`` (never reduced)."""

    min_degree: int
    max_degree: int
    avg_degree_num: int
    avg_degree_den: int


def degree_stats(g: Graph) -> DegreeStats:
    if g.n < 1:
        raise PreconditionError("degree_stats needs at least one vertex")
    degrees = [g.degree(v) for v in range(g.n)]
    lo, hi = min(degrees), max(degrees)
    # min <= 2m/n <= max, checked in integer form
    assert lo * g.n <= 2 * g.m <= hi * g.n
    return DegreeStats(lo, hi, 2 * g.m, g.n)


def exceeds_threshold(g: Graph, k: int) -> bool:
    """Exact integer check of ``e(G) > n(k-1)/2``, i.e. average degree
    above ``k - 1``."""
    if k < 1:
        raise PreconditionError(f"k must be >= 1, got {k}")
    return 2 * g.m > g.n * (k - 1)


def induced_subgraph(g: Graph, keep) -> tuple[Graph, dict[int, int]]:
    """Induced subgraph on ``keep`` with dense relabeling.

    Returns the relabeled graph and the injective old->new index map.
    """
    kept = sorted(set(keep))
    if not kept:
        raise PreconditionError("empty keep set")
    for v in kept:
        if not (0 <= v < g.n):
            raise PreconditionError(f"vertex {v} out of range")
    mapping = {old: new for new, old in enumerate(kept)}
    keep_set = set(kept)
    edges = tuple(sorted(
        (mapping[u], mapping[v]) for u, v in g.edges
        if u in keep_set and v in keep_set))
    return Graph._build(len(kept), edges), mapping


# ---------------------------------------------------------------------------
# Spider shapes and embedding certificates
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpiderShape:
    """Leg-length multiset of a spider: ``legs`` ascending, all >= 1.

    A single leg is a plain path; two legs form a path rooted at an
    interior vertex; three or more legs have a genuine center.
    """

    legs: tuple[int, ...]

    def __post_init__(self):
        if not self.legs:
            raise ValueError("a spider needs at least one leg")
        if any(l < 1 for l in self.legs):
            raise ValueError(f"leg lengths must be positive: {self.legs}")
        if list(self.legs) != sorted(self.legs):
            raise ValueError(f"leg lengths must be ascending: {self.legs}")

    @classmethod
    def from_legs(cls, legs) -> "SpiderShape":
        return cls(tuple(sorted(int(l) for l in legs)))

    @classmethod
    def parse(cls, text: str) -> "SpiderShape":
        try:
            return cls.from_legs(int(tok) for tok in text.replace(",", " ").split())
        except ValueError as exc:
            raise ValueError(f"cannot parse shape {text!r}: {exc}")

    @property
    def k(self) -> int:
        return sum(self.legs)

    @property
    def f(self) -> int:
        return len(self.legs)

    def __str__(self) -> str:
        return "S(" + ",".join(str(l) for l in self.legs) + ")"


@dataclass(frozen=True)
class SpiderEmbedding:
    """Root plus one vertex path per leg; every leg starts at the root."""

    root: int
    legs: tuple[tuple[int, ...], ...]

    def to_json_obj(self) -> dict:
        return {"root": self.root, "legs": [list(leg) for leg in self.legs]}

    @classmethod
    def from_json_obj(cls, obj: dict) -> "SpiderEmbedding":
        return cls(int(obj["root"]),
                   tuple(tuple(int(v) for v in leg) for leg in obj["legs"]))

    def vertices(self) -> set[int]:
        return {v for leg in self.legs for v in leg}


def validate_embedding(g: Graph, shape: SpiderShape,
                       emb: SpiderEmbedding) -> tuple[bool, str | None]:
    """Check an embedding certificate against the graph and the shape.

    Leg lengths are matched to the shape as a multiset: the shape fixes
    only the sorted lengths, not which constructed leg carries which
    length.  Returns ``(ok, first_failure_diagnostic)`` and never raises.
    """
    if not (0 <= emb.root < g.n):
        return False, f"root {emb.root} out of range"
    if len(emb.legs) != shape.f:
        return False, f"expected {shape.f} legs, got {len(emb.legs)}"
    for i, leg in enumerate(emb.legs):
        if len(leg) < 2:
            return False, f"leg {i} has no edge"
        if leg[0] != emb.root:
            return False, f"leg {i} does not start at root {emb.root}"
        if len(set(leg)) != len(leg):
            return False, f"leg {i} repeats a vertex"
        for v in leg:
            if not (0 <= v < g.n):
                return False, f"leg {i} vertex {v} out of range"
        for a, b in zip(leg, leg[1:]):
            if not g.has_edge(a, b):
                return False, f"leg {i} uses missing edge ({a}, {b})"
    if sorted(len(leg) - 1 for leg in emb.legs) != list(shape.legs):
        return False, (f"leg lengths {sorted(len(l) - 1 for l in emb.legs)} "
                       f"do not match shape {list(shape.legs)}")
    used: set[int] = set()
    for i, leg in enumerate(emb.legs):
        for v in leg[1:]:
            if v in used:
                return False, f"legs share non-root vertex {v}"
            used.add(v)
    if emb.root in used:
        return False, "root reappears inside a leg"
    if len(used) + 1 != shape.k + 1:
        return False, f"expected {shape.k + 1} distinct vertices, got {len(used) + 1}"
    return True, None


def all_pairs(n: int) -> list[tuple[int, int]]:
    """Lexicographically ordered vertex pairs of an n-vertex graph."""
    return list(combinations(range(n), 2))
