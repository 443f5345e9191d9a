from random import Random

import pytest

from spiderembed import (CASE_HAMILTONIAN, CycleCert, Graph, PreconditionError,
                         SpiderShape, embed_in_hamiltonian, enumerate_shapes,
                         gen_hamiltonian, oracle_embed, rotate_cycle,
                         validate_embedding)

from conftest import complete_graph
from naive import spider_exists


def spanning_cert(g, order, x0):
    cert = CycleCert(tuple(order), through=order[0], maximal=True)
    return rotate_cycle(cert, x0)


def test_k4_claw_base_case(k4):
    cert = spanning_cert(k4, [0, 1, 2, 3], 0)
    outcome = embed_in_hamiltonian(k4, cert, 0, SpiderShape((1, 1, 1)))
    assert outcome.validated
    assert outcome.embedding.root == 0
    assert sorted(outcome.embedding.legs) == [(0, 1), (0, 2), (0, 3)]


def test_wheel_like_c6_recursion_picks_alpha_3():
    # 6-cycle plus all chords from vertex 0; embed legs (2, 3) at root 0
    g = Graph.from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0),
                             (0, 2), (0, 3), (0, 4)])
    cert = spanning_cert(g, [0, 1, 2, 3, 4, 5], 0)
    shape = SpiderShape((2, 3))
    outcome = embed_in_hamiltonian(g, cert, 0, shape)
    assert outcome.validated and outcome.embedding.root == 0
    # shortest leg runs along the first cycle positions, then the
    # recursion jumps to the first chord past it
    assert outcome.embedding.legs[0] == (0, 1, 2)
    assert outcome.trace.alpha == 3
    assert outcome.embedding.legs[1] == (0, 3, 4, 5)
    assert oracle_embed(g, shape) is not None


def test_k8_three_leg():
    g = complete_graph(8)
    shape = SpiderShape((1, 2, 4))
    cert = spanning_cert(g, list(range(8)), 0)
    outcome = embed_in_hamiltonian(g, cert, 0, shape)
    assert outcome.validated and outcome.embedding.root == 0
    assert spider_exists(g, shape, root=0)


def test_path_shapes_walk_the_cycle():
    g = complete_graph(6)
    cert = spanning_cert(g, list(range(6)), 0)
    out1 = embed_in_hamiltonian(g, cert, 0, SpiderShape((5,)))
    assert out1.embedding.legs == ((0, 1, 2, 3, 4, 5),)
    out2 = embed_in_hamiltonian(g, cert, 0, SpiderShape((2, 3)))
    assert out2.validated and out2.embedding.root == 0


def test_base_cases_rooted():
    g = complete_graph(5)
    cert = spanning_cert(g, list(range(5)), 0)
    for legs in [(1, 1), (2,), (1, 2), (3,), (1, 1, 1)]:
        outcome = embed_in_hamiltonian(g, cert, 0, SpiderShape(legs))
        assert outcome.validated and outcome.embedding.root == 0


def test_preconditions():
    g = complete_graph(4)
    cert = spanning_cert(g, [0, 1, 2, 3], 0)
    with pytest.raises(PreconditionError, match="deg"):
        embed_in_hamiltonian(g, cert, 0, SpiderShape((2, 2)))  # k=4 > deg 3
    with pytest.raises(PreconditionError, match="start at the root"):
        embed_in_hamiltonian(g, cert, 1, SpiderShape((1, 1)))
    not_spanning = CycleCert((0, 1, 2), through=0, maximal=False)
    with pytest.raises(PreconditionError, match="hamiltonian"):
        embed_in_hamiltonian(g, not_spanning, 0, SpiderShape((1, 1)))
    bogus = CycleCert((0, 2, 1, 3), through=0, maximal=False)
    # 4-cycle 0-2-1-3 exists in K4, but a cert must really be a cycle
    broken = Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    with pytest.raises(PreconditionError):
        embed_in_hamiltonian(broken, bogus, 0, SpiderShape((1, 1)))


def test_generated_hamiltonian_graphs_all_shapes():
    """Every shape of every feasible size embeds rooted at the chosen
    vertex, with the shortest leg on consecutive cycle positions."""
    rng = Random(2024)
    for trial in range(60):
        n = rng.randint(5, 14)
        max_extra = n * (n - 1) // 2 - n
        g, cert = gen_hamiltonian(n, rng.randint(0, max_extra), rng.getrandbits(32))
        x0 = max(range(n), key=g.degree)
        cert0 = rotate_cycle(cert, x0)
        for k in range(2, min(8, g.degree(x0)) + 1):
            for shape in enumerate_shapes(k):
                outcome = embed_in_hamiltonian(g, cert0, x0, shape)
                assert outcome.validated
                assert outcome.embedding.root == x0
                assert outcome.trace.case == CASE_HAMILTONIAN
                l1 = shape.legs[0]
                assert outcome.embedding.legs[0] == tuple(cert0.order[:l1 + 1])
                ok, why = validate_embedding(g, shape, outcome.embedding)
                assert ok, why
