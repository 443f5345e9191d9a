"""Deterministic graph generators, exhaustive small-graph enumeration,
and the conjecture-scanning experiment runner.

Every generator is a pure function of its seed, and scan reports are
byte-identical across runs with the same config, wall time aside.  The
exhaustive enumerator is labeled (not isomorphism-free): redundant for
universal claims, but simple and sound.
"""

import json
import time
from dataclasses import dataclass, field, asdict
from itertools import combinations
from random import Random
from typing import Iterator, TextIO

from .cycles import CycleCert, SearchBudget, hamiltonian_cycle, is_two_connected
from .embed import embed_any, enumerate_shapes, oracle_embed
from .errors import (BudgetExhaustedError, InfeasibleError, PreconditionError,
                     ProofDiscrepancyError)
from .graph import Graph, SpiderShape, all_pairs, exceeds_threshold, serialize_graph

# Recorded in every report header so runs stay reproducible across builds.
RNG_STREAM = "cpython-random-mersenne-twister"

GRAPH_ID_HEX_DIGITS = 16


def graph_id(g: Graph) -> str:
    import hashlib
    return hashlib.sha256(serialize_graph(g).encode()).hexdigest()[:GRAPH_ID_HEX_DIGITS]


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------

def gen_random_dense(n: int, k: int, seed: int) -> Graph:
    """Uniform random graph with the minimum edge count satisfying
    ``2m > n(k-1)``, namely ``m = floor(n(k-1)/2) + 1``.  Same seed,
    same graph."""
    if n < k + 1:
        raise InfeasibleError(
            f"no simple graph on n={n} vertices can satisfy 2m > n(k-1) for k={k}; "
            "need n >= k+1")
    m = n * (k - 1) // 2 + 1
    pairs = all_pairs(n)
    assert m <= len(pairs)
    rng = Random(seed)
    edges = rng.sample(pairs, m)
    g = Graph.from_edges(n, edges)
    assert exceeds_threshold(g, k)
    return g


def gen_hamiltonian(n: int, extra_edges: int, seed: int) -> tuple[Graph, CycleCert]:
    """Random permutation cycle plus ``extra_edges`` distinct chords,
    returned together with the planted cycle certificate."""
    if n < 3:
        raise InfeasibleError(f"a cycle needs n >= 3, got {n}")
    max_extra = n * (n - 1) // 2 - n
    if not (0 <= extra_edges <= max_extra):
        raise InfeasibleError(
            f"extra_edges must be in [0, {max_extra}] for n={n}, got {extra_edges}")
    rng = Random(seed)
    perm = rng.sample(range(n), n)
    cycle_edges = {tuple(sorted((perm[i], perm[(i + 1) % n]))) for i in range(n)}
    chords = [p for p in all_pairs(n) if p not in cycle_edges]
    extra = rng.sample(chords, extra_edges)
    g = Graph.from_edges(n, sorted(cycle_edges) + extra)
    cert = CycleCert(tuple(perm), through=perm[0], maximal=True)
    return g, cert


def gen_two_connected(n: int, m: int, seed: int) -> Graph:
    """Planted hamiltonian cycle plus ``m - n`` chords; 2-connectivity is
    asserted before returning."""
    if n < 3:
        raise InfeasibleError(f"2-connectivity needs n >= 3, got {n}")
    if not (n <= m <= n * (n - 1) // 2):
        raise InfeasibleError(
            f"edge count must be in [{n}, {n * (n - 1) // 2}] for n={n}, got {m}")
    g, _ = gen_hamiltonian(n, m - n, seed)
    assert is_two_connected(g)
    return g


def enumerate_labeled_graphs(n: int, predicate=None) -> Iterator[Graph]:
    """Stream all ``2^C(n,2)`` labeled graphs on ``n`` vertices in
    ascending edge-mask order (bit i of the mask toggles the i-th
    lexicographic vertex pair), optionally filtered by ``predicate``."""
    if not (1 <= n <= 8):
        raise PreconditionError(f"labeled enumeration is bounded to n <= 8, got {n}")
    pairs = all_pairs(n)
    npairs = len(pairs)
    for mask in range(1 << npairs):
        edges = tuple(pairs[i] for i in range(npairs) if mask >> i & 1)
        g = Graph._build(n, edges)
        if predicate is None or predicate(g):
            yield g


# ---------------------------------------------------------------------------
# Scan configuration and report
# ---------------------------------------------------------------------------

MODES = ("exhaustive", "random")
FAMILIES = ("dense", "hamiltonian", "two_connected")
ROUTES = ("oracle", "constructive", "both")


@dataclass(frozen=True)
class ScanConfig:
    n_range: tuple[int, int]
    k_range: tuple[int, int]
    mode: str = "random"
    samples: int = 0
    seed: int = 0
    family: str = "dense"
    budget: int = 10_000_000
    route: str = "oracle"

    def validate(self) -> None:
        if self.mode not in MODES:
            raise PreconditionError(f"mode must be one of {MODES}, got {self.mode!r}")
        if self.family not in FAMILIES:
            raise PreconditionError(
                f"family must be one of {FAMILIES}, got {self.family!r}")
        if self.route not in ROUTES:
            raise PreconditionError(f"route must be one of {ROUTES}, got {self.route!r}")
        if self.n_range[0] > self.n_range[1] or self.n_range[0] < 1:
            raise PreconditionError(f"bad n_range {self.n_range}")
        if self.k_range[0] > self.k_range[1] or self.k_range[0] < 1:
            raise PreconditionError(f"bad k_range {self.k_range}")
        if self.mode == "exhaustive" and self.n_range[1] > 8:
            raise PreconditionError("exhaustive mode requires n <= 8")
        if self.samples < 0:
            raise PreconditionError("samples must be non-negative")
        if self.budget < 1:
            raise PreconditionError("budget must be positive")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["n_range"] = list(self.n_range)
        d["k_range"] = list(self.k_range)
        return d


def _parse_range(value: str) -> tuple[int, int]:
    if ".." in value:
        lo, hi = value.split("..", 1)
        return int(lo), int(hi)
    v = int(value)
    return v, v


def parse_scan_config(text: str) -> ScanConfig:
    """Flat ``key=value`` config, one pair per line, '#' comments.
    Ranges use ``lo..hi`` (inclusive) or a single integer."""
    values: dict[str, str] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise PreconditionError(f"config line {line_no}: expected key=value")
        key, _, val = line.partition("=")
        values[key.strip()] = val.strip()
    try:
        cfg = ScanConfig(
            n_range=_parse_range(values.pop("n_range")),
            k_range=_parse_range(values.pop("k_range")),
            mode=values.pop("mode", "random"),
            samples=int(values.pop("samples", "0")),
            seed=int(values.pop("seed", "0")),
            family=values.pop("family", "dense"),
            budget=int(values.pop("budget", str(10_000_000))),
            route=values.pop("route", "oracle"),
        )
    except KeyError as exc:
        raise PreconditionError(f"config missing required key: {exc.args[0]}")
    if values:
        raise PreconditionError(f"unknown config keys: {sorted(values)}")
    cfg.validate()
    return cfg


@dataclass
class ScanReport:
    config: ScanConfig
    graphs_tested: int = 0
    shapes_tested: int = 0
    embeddings_found: int = 0
    budget_exhausted_rows: int = 0
    discrepancies: list[dict] = field(default_factory=list)
    counterexamples: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    def summary_dict(self) -> dict:
        return {
            "type": "summary",
            "graphs_tested": self.graphs_tested,
            "shapes_tested": self.shapes_tested,
            "embeddings_found": self.embeddings_found,
            "budget_exhausted_rows": self.budget_exhausted_rows,
            "discrepancies": self.discrepancies,
            "counterexamples": self.counterexamples,
            "wall_time": self.wall_time,
        }


# ---------------------------------------------------------------------------
# Runner
# ---------------------------------------------------------------------------

def _instances(cfg: ScanConfig):
    """Yield ``(graph, k)`` pairs satisfying the scanned hypothesis."""
    n_lo, n_hi = cfg.n_range
    k_lo, k_hi = cfg.k_range
    if cfg.mode == "exhaustive":
        for n in range(n_lo, n_hi + 1):
            for g in enumerate_labeled_graphs(n):
                family_ok = None  # computed lazily, shared across k
                for k in range(k_lo, k_hi + 1):
                    if not exceeds_threshold(g, k):
                        continue
                    if family_ok is None:
                        family_ok = _family_holds(g, cfg)
                    if family_ok:
                        yield g, k
        return
    rng = Random(cfg.seed)
    produced = 0
    attempts = 0
    while produced < cfg.samples and attempts < cfg.samples * 50 + 100:
        attempts += 1
        n = rng.randint(n_lo, n_hi)
        k = rng.randint(k_lo, k_hi)
        sub_seed = rng.getrandbits(63)
        if n < k + 1:
            continue
        try:
            g = _generate(cfg.family, n, k, sub_seed, rng)
        except InfeasibleError:
            continue
        assert exceeds_threshold(g, k) and _family_holds(g, cfg)
        produced += 1
        yield g, k


def _generate(family: str, n: int, k: int, seed: int, rng: Random) -> Graph:
    if family == "dense":
        return gen_random_dense(n, k, seed)
    min_m = n * (k - 1) // 2 + 1
    max_m = n * (n - 1) // 2
    if family == "hamiltonian":
        lo = max(0, min_m - n)
        hi = max_m - n
        if lo > hi:
            raise InfeasibleError("threshold needs more chords than fit")
        g, _ = gen_hamiltonian(n, rng.randint(lo, hi), seed)
        return g
    lo = max(n, min_m)
    if lo > max_m:
        raise InfeasibleError("threshold needs more edges than fit")
    return gen_two_connected(n, rng.randint(lo, max_m), seed)


def _family_holds(g: Graph, cfg: ScanConfig) -> bool:
    if cfg.family == "dense":
        return True  # density itself is checked per k
    if cfg.family == "two_connected":
        return is_two_connected(g)
    if g.n < 3:
        return False
    return hamiltonian_cycle(g, SearchBudget(cfg.budget)) is not None


def run_conjecture_scan(cfg: ScanConfig, out: TextIO | None = None) -> ScanReport:
    """Run the configured scan and return the report.

    One row per (graph, shape).  When ``out`` is given the report is
    additionally streamed as JSON lines: a header object, rows sorted by
    (graph id, shape), and a summary trailer.  Per-row budget exhaustion
    is recorded, never aborts the scan.  A counterexample row carries the
    full serialized graph so the verdict can be reproduced by re-running
    the oracle on the record.
    """
    cfg.validate()
    started = time.perf_counter()
    report = ScanReport(config=cfg)
    rows: list[dict] = []
    seen_graphs: set[str] = set()

    for g, k in _instances(cfg):
        gid = graph_id(g)
        seen_graphs.add(gid)
        for shape in enumerate_shapes(k):
            rows.append(_run_row(g, gid, k, shape, cfg, report))

    rows.sort(key=lambda r: (r["graph_id"], r["k"], r["shape"]))
    report.graphs_tested = len(seen_graphs)
    report.shapes_tested = len(rows)
    report.embeddings_found = sum(1 for r in rows if r["found"])
    report.budget_exhausted_rows = sum(1 for r in rows if r["budget_exhausted"])
    report.wall_time = time.perf_counter() - started

    if out is not None:
        header = {"type": "header", "rng": RNG_STREAM, **cfg.to_dict()}
        out.write(json.dumps(header) + "\n")
        for row in rows:
            out.write(json.dumps(row) + "\n")
        out.write(json.dumps(report.summary_dict()) + "\n")
    return report


def _run_row(g: Graph, gid: str, k: int, shape: SpiderShape,
             cfg: ScanConfig, report: ScanReport) -> dict:
    row = {
        "type": "row", "graph_id": gid, "n": g.n, "m": g.m, "k": k,
        "shape": list(shape.legs), "found": False, "budget_exhausted": False,
        "oracle_found": None, "constructive_found": None, "agreement": None,
    }
    oracle_found = None
    if cfg.route in ("oracle", "both"):
        try:
            emb = oracle_embed(g, shape, budget=SearchBudget(cfg.budget))
            oracle_found = emb is not None
            row["oracle_found"] = oracle_found
        except BudgetExhaustedError:
            row["budget_exhausted"] = True
    cons_found = None
    if cfg.route in ("constructive", "both"):
        try:
            outcome = embed_any(g, k, shape, SearchBudget(cfg.budget))
            cons_found = outcome.embedding is not None
            row["constructive_found"] = cons_found
        except BudgetExhaustedError:
            row["budget_exhausted"] = True
        except ProofDiscrepancyError as exc:
            report.discrepancies.append({
                "graph": serialize_graph(g), "graph_id": gid, "k": k,
                "shape": list(shape.legs), "message": str(exc),
                "trace": exc.trace.to_json_obj() if exc.trace is not None else None,
            })
            row["discrepancy"] = True
    row["found"] = bool(oracle_found) or bool(cons_found)
    if cfg.route == "both" and oracle_found is not None and cons_found is not None:
        row["agreement"] = oracle_found == cons_found
        if not row["agreement"]:
            report.discrepancies.append({
                "graph": serialize_graph(g), "graph_id": gid, "k": k,
                "shape": list(shape.legs),
                "message": "constructive and oracle verdicts disagree",
                "trace": None,
            })
    # an exact negative verdict under a holding hypothesis is a counterexample
    exact_negative = (oracle_found is False) or (oracle_found is None and
                                                 cons_found is False)
    if exact_negative and not row["budget_exhausted"]:
        report.counterexamples.append({
            "graph": serialize_graph(g), "graph_id": gid, "k": k,
            "shape": list(shape.legs),
        })
    return row
