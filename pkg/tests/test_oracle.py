from itertools import combinations
from random import Random

import pytest

from spiderembed import (BudgetExhaustedError, Graph, PreconditionError,
                         SearchBudget, SpiderShape, oracle_embed,
                         validate_embedding)

from conftest import complete_graph, cycle_graph, petersen_graph, star_graph
from naive import spider_exists


def test_c6_claw_absent():
    g = cycle_graph(6)
    assert oracle_embed(g, SpiderShape((1, 1, 1))) is None  # max degree 2


def test_star_five_spokes():
    g = star_graph(5)
    shape = SpiderShape((1, 1, 1, 1, 1))
    emb = oracle_embed(g, shape, root=0)
    assert emb is not None and emb.root == 0
    assert sorted(leg[1] for leg in emb.legs) == [1, 2, 3, 4, 5]


def test_petersen_has_1_2_3_spider():
    g = petersen_graph()
    shape = SpiderShape((1, 2, 3))
    emb = oracle_embed(g, shape)
    assert emb is not None
    ok, why = validate_embedding(g, shape, emb)
    assert ok, why


def test_root_pinning():
    g = star_graph(4)
    assert oracle_embed(g, SpiderShape((1, 1)), root=0) is not None
    # a leaf cannot root a two-leg spider in a star
    assert oracle_embed(g, SpiderShape((1, 1)), root=1) is None
    with pytest.raises(PreconditionError):
        oracle_embed(g, SpiderShape((1,)), root=99)


def test_too_few_vertices_is_immediate_none():
    g = complete_graph(3)
    assert oracle_embed(g, SpiderShape((2, 2))) is None  # needs 5 vertices


def test_budget_exhaustion_distinct_from_absent():
    g = complete_graph(7)
    with pytest.raises(BudgetExhaustedError):
        oracle_embed(g, SpiderShape((2, 2, 2)), budget=SearchBudget(max_nodes=3))


def test_matches_naive_reference_on_random_graphs():
    rng = Random(314)
    shapes = [SpiderShape(t) for t in
              [(1,), (2,), (1, 1), (1, 2), (1, 1, 1), (2, 2), (1, 1, 2),
               (1, 2, 3), (2, 2, 2), (1, 1, 1, 1)]]
    for _ in range(150):
        n = rng.randint(2, 7)
        pairs = list(combinations(range(n), 2))
        g = Graph.from_edges(n, [p for p in pairs if rng.random() < rng.uniform(0.2, 0.9)])
        for shape in shapes:
            got = oracle_embed(g, shape)
            assert (got is not None) == spider_exists(g, shape)
            if got is not None:
                ok, why = validate_embedding(g, shape, got)
                assert ok, why


def test_matches_naive_with_pinned_roots():
    rng = Random(2718)
    for _ in range(60):
        n = rng.randint(3, 6)
        pairs = list(combinations(range(n), 2))
        g = Graph.from_edges(n, [p for p in pairs if rng.random() < 0.6])
        shape = SpiderShape((1, 2))
        for r in range(n):
            assert (oracle_embed(g, shape, root=r) is not None) \
                == spider_exists(g, shape, root=r)
