import io
import json
import math

import pytest

from spiderembed import (Graph, InfeasibleError, PreconditionError, ScanConfig,
                         cycle_is_valid, enumerate_labeled_graphs,
                         exceeds_threshold, gen_hamiltonian, gen_random_dense,
                         gen_two_connected, graph_id, is_two_connected,
                         parse_edge_list, parse_scan_config, run_conjecture_scan)

from conftest import complete_graph
from naive import two_connected_by_deletion


# ---------------------------------------------------------------------------
# generators
# ---------------------------------------------------------------------------

def test_gen_random_dense_minimum_edges():
    g = gen_random_dense(5, 4, seed=1)
    assert g.n == 5 and g.m == 5 * 3 // 2 + 1 == 8
    assert 2 * g.m > 5 * 3
    assert gen_random_dense(5, 4, seed=1) == g          # same seed, same graph
    assert gen_random_dense(5, 4, seed=2) != g


def test_gen_random_dense_infeasible():
    with pytest.raises(InfeasibleError):
        gen_random_dense(4, 4, seed=0)


def test_gen_random_dense_small_k():
    g = gen_random_dense(6, 2, seed=7)
    assert g.m == 4 and 2 * g.m > 6  # 8 > 6


def test_gen_hamiltonian_plants_valid_cycle():
    g, cert = gen_hamiltonian(5, 0, seed=3)
    assert g.m == 5 and cert.s == 5
    assert cycle_is_valid(g, cert.order)

    g, cert = gen_hamiltonian(5, 5, seed=3)
    assert g == complete_graph(5)

    g, cert = gen_hamiltonian(8, 10, seed=9)
    assert g.m == 18
    assert cycle_is_valid(g, cert.order) and cert.s == 8
    assert gen_hamiltonian(8, 10, seed=9)[0] == g


def test_gen_hamiltonian_infeasible():
    with pytest.raises(InfeasibleError):
        gen_hamiltonian(5, 6, seed=0)  # C(5,2) - 5 = 5 max chords
    with pytest.raises(InfeasibleError):
        gen_hamiltonian(2, 0, seed=0)


def test_gen_two_connected():
    g = gen_two_connected(4, 4, seed=1)
    assert g.n == 4 and g.m == 4
    assert all(g.degree(v) == 2 for v in range(4))  # any 4-cycle
    assert is_two_connected(g)

    g = gen_two_connected(6, 9, seed=2)
    assert two_connected_by_deletion(g)

    with pytest.raises(InfeasibleError):
        gen_two_connected(3, 2, seed=0)


# ---------------------------------------------------------------------------
# labeled enumeration
# ---------------------------------------------------------------------------

def test_enumerate_all_n3():
    graphs = list(enumerate_labeled_graphs(3))
    assert len(graphs) == 8
    assert len({g.edges for g in graphs}) == 8


def test_enumerate_filter_k4():
    graphs = list(enumerate_labeled_graphs(4, predicate=lambda g: g.m == 6))
    assert graphs == [complete_graph(4)]


def test_enumerate_threshold_count_n5():
    # graphs on 5 vertices with 2m > 15, i.e. m >= 8: binomial tail count
    want = sum(math.comb(10, m) for m in range(8, 11))
    assert want == 56
    got = sum(1 for _ in enumerate_labeled_graphs(
        5, predicate=lambda g: exceeds_threshold(g, 4)))
    assert got == want


def test_enumerate_bound():
    with pytest.raises(PreconditionError):
        next(enumerate_labeled_graphs(9))


# ---------------------------------------------------------------------------
# config parsing
# ---------------------------------------------------------------------------

def test_parse_scan_config_round_trip():
    text = """
# comment
mode=exhaustive
family=dense
n_range=3..5
k_range=2..4
route=oracle
seed=99
budget=50000
"""
    cfg = parse_scan_config(text)
    assert cfg.n_range == (3, 5) and cfg.k_range == (2, 4)
    assert cfg.mode == "exhaustive" and cfg.seed == 99 and cfg.budget == 50000


def test_parse_scan_config_errors():
    with pytest.raises(PreconditionError, match="missing"):
        parse_scan_config("mode=random\n")
    with pytest.raises(PreconditionError, match="unknown"):
        parse_scan_config("n_range=3\nk_range=2\nbogus=1\n")
    with pytest.raises(PreconditionError, match="n <= 8"):
        parse_scan_config("n_range=3..12\nk_range=2\nmode=exhaustive\n")


# ---------------------------------------------------------------------------
# scan runs
# ---------------------------------------------------------------------------

def test_exhaustive_small_scan_no_counterexamples():
    cfg = ScanConfig(n_range=(1, 4), k_range=(1, 3), mode="exhaustive",
                     family="dense", route="oracle", budget=100_000)
    out = io.StringIO()
    report = run_conjecture_scan(cfg, out)
    assert report.counterexamples == []
    assert report.discrepancies == []
    assert report.budget_exhausted_rows == 0
    assert report.shapes_tested > 0
    assert report.embeddings_found == report.shapes_tested
    lines = out.getvalue().splitlines()
    header = json.loads(lines[0])
    assert header["type"] == "header" and "rng" in header
    trailer = json.loads(lines[-1])
    assert trailer["type"] == "summary"
    assert len(lines) == report.shapes_tested + 2


def test_scan_determinism_modulo_wall_time():
    cfg = ScanConfig(n_range=(4, 6), k_range=(2, 4), mode="random", samples=25,
                     seed=31337, family="hamiltonian", route="oracle",
                     budget=100_000)
    outs = []
    for _ in range(2):
        buf = io.StringIO()
        run_conjecture_scan(cfg, buf)
        lines = buf.getvalue().splitlines()
        trailer = json.loads(lines[-1])
        trailer.pop("wall_time")
        outs.append((lines[:-1], trailer))
    assert outs[0] == outs[1]


def test_scan_zero_samples_zero_totals():
    cfg = ScanConfig(n_range=(4, 6), k_range=(2, 3), mode="random", samples=0,
                     seed=1, family="dense", route="oracle")
    report = run_conjecture_scan(cfg)
    assert report.graphs_tested == 0 and report.shapes_tested == 0
    assert report.embeddings_found == 0
    assert report.counterexamples == []


def test_random_both_routes_agree():
    cfg = ScanConfig(n_range=(4, 8), k_range=(2, 6), mode="random", samples=30,
                     seed=777, family="dense", route="both", budget=2_000_000)
    out = io.StringIO()
    report = run_conjecture_scan(cfg, out)
    assert report.counterexamples == []
    assert report.discrepancies == []
    rows = [json.loads(l) for l in out.getvalue().splitlines()[1:-1]]
    assert rows and all(r["agreement"] for r in rows)
    # hypothesis gating: every scanned graph satisfies the density threshold
    for row in rows:
        assert 2 * row["m"] > row["n"] * (row["k"] - 1)


def test_two_connected_family_scan():
    cfg = ScanConfig(n_range=(4, 9), k_range=(2, 5), mode="random", samples=20,
                     seed=5, family="two_connected", route="constructive",
                     budget=2_000_000)
    report = run_conjecture_scan(cfg)
    assert report.counterexamples == []
    assert report.discrepancies == []


def test_counterexample_records_are_recheckable():
    """Counterexample rows carry the full graph; re-running the oracle on
    the record must reproduce the verdict.  Absence of counterexamples is
    the expected outcome on real scans, so exercise the record path by
    scanning an impossible-to-satisfy shape size directly."""
    from spiderembed import SpiderShape, oracle_embed
    from spiderembed.scan import _run_row, ScanReport

    g = complete_graph(3)
    report = ScanReport(config=ScanConfig(n_range=(3, 3), k_range=(3, 3)))
    # K3 satisfies 2m > n(k-1) for k = 3 (6 > 6 is false)... use k = 2
    assert exceeds_threshold(g, 2)
    # a 2-spider with two unit legs exists; a path of length 2 exists too;
    # force a fake absence via a shape needing 4 vertices
    row = _run_row(g, graph_id(g), 2, SpiderShape((1, 2)),
                   ScanConfig(n_range=(3, 3), k_range=(2, 2), route="oracle"),
                   report)
    assert row["found"] is False
    assert len(report.counterexamples) == 1
    rec = report.counterexamples[0]
    g2 = parse_edge_list(rec["graph"])
    assert g2 == g
    assert oracle_embed(g2, SpiderShape(tuple(rec["shape"]))) is None
