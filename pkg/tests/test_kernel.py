import random
from itertools import product

import pytest

from containment import graphs, kernel
from containment.kernel import (
    COPS,
    ROBBER,
    CONTAINMENT,
    VERTEX_PURSUIT,
    GameState,
    Rules,
    VertexState,
)

from conftest import random_connected_graph


STANDARD = Rules(CONTAINMENT, 1)


def test_rules_validation():
    with pytest.raises(ValueError):
        Rules(CONTAINMENT, 0)
    with pytest.raises(ValueError):
        Rules("chess", 1)
    with pytest.raises(ValueError):
        Rules(VERTEX_PURSUIT, 1, robber_may_pass=False)


# ---------------------------------------------------------------------------
# Containment terminal predicate


def test_contained_on_k2():
    g = graphs.complete(2)
    assert kernel.is_contained(g, GameState((0,), 0, ROBBER))


def test_one_cop_does_not_contain_degree_two():
    g = graphs.cycle(4)
    e = g.incident_edges[0][0]
    assert not kernel.is_contained(g, GameState((e,), 0, ROBBER))


def test_contained_on_complete4():
    g = graphs.complete(4)
    squad = tuple(sorted(g.incident_edges[2]))
    assert kernel.is_contained(g, GameState(squad, 2, COPS))
    assert not kernel.is_contained(g, GameState(squad, 0, COPS))


def test_multiplicity_is_irrelevant():
    g = graphs.complete(2)
    assert kernel.is_contained(g, GameState((0, 0, 0), 1, ROBBER))


# ---------------------------------------------------------------------------
# Robber moves


def test_robber_moves_with_blocked_edge():
    g = graphs.cycle(4)
    e01 = g.edge_index(0, 1)
    rules = Rules(CONTAINMENT, 1)
    s = GameState((e01,), 0, ROBBER)
    moves = kernel.robber_moves(g, rules, s)
    # degree 2, one incident edge occupied: 1 slide + 1 pass
    assert [m.robber for m in moves] == [0, 3]
    nopass = Rules(CONTAINMENT, 1, robber_may_pass=False)
    assert [m.robber for m in kernel.robber_moves(g, nopass, s)] == [3]


def test_robber_moves_unblocked_cubic():
    g = graphs.petersen()
    far_edge = g.edge_index(5, 7)
    s = GameState((far_edge,), 0, ROBBER)
    moves = kernel.robber_moves(g, STANDARD, s)
    assert len(moves) == 4  # 3 slides + pass
    assert all(m.turn == COPS for m in moves)


def test_robber_moves_rejects_contained_state():
    g = graphs.complete(2)
    with pytest.raises(ValueError):
        kernel.robber_moves(g, STANDARD, GameState((0,), 0, ROBBER))


def test_blocking_exhaustive_against_set_difference():
    """Every state of C5 and P4 with k <= 2: a slide across e exists iff e is free."""
    for g in (graphs.cycle(5), graphs.path(4)):
        for k in (1, 2):
            rules = Rules(CONTAINMENT, k)
            for squad in kernel.initial_cop_placements(g, rules):
                for v in range(g.n):
                    s = GameState(squad, v, ROBBER)
                    if kernel.is_contained(g, s):
                        continue
                    moves = kernel.robber_moves(g, rules, s)
                    got = {m.robber for m in moves} - {v}
                    expect = set()
                    for e in set(g.incident_edges[v]) - set(squad):
                        a, b = g.edges[e]
                        expect.add(b if a == v else a)
                    assert got == expect


def test_no_pass_immobile_iff_contained():
    g = graphs.cycle(4)
    rules = Rules(CONTAINMENT, 2, robber_may_pass=False)
    for squad in kernel.initial_cop_placements(g, rules):
        for v in range(g.n):
            s = GameState(squad, v, ROBBER)
            if kernel.is_contained(g, s):
                continue
            assert kernel.robber_moves(g, rules, s)


# ---------------------------------------------------------------------------
# Cop moves


def test_single_cop_moves_on_path():
    g = graphs.path(3)
    s = GameState((0,), 2, COPS)
    moves = kernel.cop_joint_moves(g, s)
    assert [m.cop_edges for m in moves] == [(0,), (1,)]
    assert all(m.turn == ROBBER for m in moves)


def test_single_cop_moves_on_cycle():
    g = graphs.cycle(4)
    moves = kernel.cop_joint_moves(g, GameState((0,), 2, COPS))
    assert len(moves) == 3  # stay + 2 adjacent edges


def test_stacked_cops_on_path():
    g = graphs.path(3)
    moves = kernel.cop_joint_moves(g, GameState((0, 0), 2, COPS))
    # oracle: enumerate the 2x2 per-cop options, canonicalize, dedupe
    expect = sorted({tuple(sorted(p)) for p in product((0, 1), repeat=2)})
    assert [m.cop_edges for m in moves] == expect


def test_joint_moves_match_product_oracle():
    rng = random.Random(9)
    for _ in range(20):
        g = random_connected_graph(rng, max_n=7)
        k = rng.randint(1, 3)
        squad = tuple(sorted(rng.randrange(g.m) for _ in range(k)))
        s = GameState(squad, 0, COPS)
        moves = kernel.cop_joint_moves(g, s)
        options = [[e] + list(g.edge_neighbors[e]) for e in squad]
        expect = sorted({tuple(sorted(p)) for p in product(*options)})
        assert [m.cop_edges for m in moves] == expect


# ---------------------------------------------------------------------------
# Vertex game


def test_vertex_cop_moves_on_path():
    g = graphs.path(3)
    moves = kernel.vertex_moves(g, VertexState((1,), 0, COPS))
    assert [m.cop_vertices for m in moves] == [(0,), (1,), (2,)]


def test_vertex_capture_predicate():
    assert kernel.is_captured(VertexState((2,), 2, ROBBER))
    assert not kernel.is_captured(VertexState((1,), 2, ROBBER))


def test_vertex_robber_moves_no_blocking():
    g = graphs.cycle(4)
    moves = kernel.vertex_moves(g, VertexState((1,), 0, ROBBER))
    assert [m.robber for m in moves] == [0, 1, 3]  # stay + both neighbors, cop irrelevant


# ---------------------------------------------------------------------------
# Successor discipline


def test_turn_alternation_and_canonical_closure():
    rng = random.Random(13)
    for _ in range(20):
        g = random_connected_graph(rng, max_n=6)
        for kind in (CONTAINMENT, VERTEX_PURSUIT):
            rules = Rules(kind, 2)
            base = kernel.domain_size(g, rules)
            squad = tuple(sorted(rng.randrange(base) for _ in range(2)))
            for turn in (COPS, ROBBER):
                s = kernel.make_state(rules, squad, rng.randrange(g.n), turn)
                if turn == ROBBER and kernel.is_terminal(g, rules, s):
                    continue
                for nxt in kernel.successors(g, rules, s):
                    assert nxt.turn != s.turn
                    assert tuple(sorted(nxt[0])) == nxt[0]
                    kernel.validate_state(g, rules, nxt)


def test_placements_count():
    g = graphs.path(4)  # 3 edges
    rules = Rules(CONTAINMENT, 2)
    assert len(list(kernel.initial_cop_placements(g, rules))) == 6  # C(4,2)
    g2 = graphs.complete(2)
    assert len(list(kernel.initial_cop_placements(g2, Rules(CONTAINMENT, 1)))) == 1


def test_k2_every_placement_contains_everyone():
    g = graphs.complete(2)
    rules = Rules(CONTAINMENT, 1)
    for squad in kernel.initial_cop_placements(g, rules):
        for v in kernel.initial_robber_choices(g):
            assert kernel.is_contained(g, GameState(squad, v, COPS))


def test_apply_cop_move_validation():
    g = graphs.path(3)
    s = GameState((0, 1), 2, COPS)
    nxt = kernel.apply_cop_move(g, STANDARD, s, [(0, 1), (1, 1)])
    assert nxt == GameState((1, 1), 2, ROBBER)
    with pytest.raises(ValueError):
        kernel.apply_cop_move(g, STANDARD, s, [(0, 0)])  # wrong squad
    g2 = graphs.path(4)
    s2 = GameState((0, 2), 1, COPS)
    with pytest.raises(ValueError):
        kernel.apply_cop_move(g2, STANDARD, s2, [(0, 2), (2, 2)])  # 0 and 2 not adjacent


# ---------------------------------------------------------------------------
# State codec


def test_encode_decode_roundtrip_random():
    g = graphs.petersen()
    rules = Rules(CONTAINMENT, 3)
    rng = random.Random(99)
    seen = set()
    for _ in range(100_000):
        squad = tuple(sorted(rng.randrange(g.m) for _ in range(3)))
        s = GameState(squad, rng.randrange(g.n), rng.choice((COPS, ROBBER)))
        key = kernel.encode_state(g, rules, s)
        assert kernel.decode_state(g, rules, key) == s
        seen.add((key, s))
    # injectivity: same key never maps to two states
    by_key = {}
    for key, s in seen:
        assert by_key.setdefault(key, s) == s


def test_encode_exhaustive_bijection_small():
    g = graphs.path(4)
    rules = Rules(CONTAINMENT, 2)
    keys = set()
    for squad in kernel.initial_cop_placements(g, rules):
        for v in range(g.n):
            for turn in (COPS, ROBBER):
                keys.add(kernel.encode_state(g, rules, GameState(squad, v, turn)))
    assert keys == set(range(6 * 4 * 2))


def test_encode_requires_canonical_order():
    g = graphs.path(3)
    rules = Rules(CONTAINMENT, 2)
    with pytest.raises(ValueError):
        kernel.encode_state(g, rules, GameState((1, 0), 0, COPS))
