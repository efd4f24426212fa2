"""Independent verification of solver output.

Two deliberately separate re-derivations live here:

* solve_by_sweeps: a naive full-enumeration solver.  It recomputes the
  cop-win region by Jacobi sweeps over ALL states, enumerating every joint
  cop move as a raw per-cop product (duplicates and all).  It shares no code
  path with the solver's counter/worklist machinery or its factorized
  transition chain, so agreement is meaningful evidence.

* audit_result: a Bellman local-consistency check of a SolveResult.  Every
  state's label and level is re-justified directly from kernel-generated
  successors: terminals at level 0, robber states cop-win iff ALL successors
  are (level = 1 + max), cop states iff SOME successor is (level = 1 + min).

Both are exponential-ish and meant for desk-scale instances.
"""

from __future__ import annotations

import numpy as np

from . import kernel, multiset
from .graphs import Graph
from .kernel import COPS, ROBBER, CONTAINMENT, Rules
from .solver import COPS_WIN, ROBBER_WINS, SolveResult


def solve_by_sweeps(g: Graph, rules: Rules, max_sweeps: int = 10_000) -> tuple[str, np.ndarray, np.ndarray]:
    """Naive fixed-point solver: sweep until no label changes.

    Returns (value, cop_win_on_cop_turn, cop_win_on_robber_turn) with the
    win masks indexed [squad_rank, robber_vertex].
    """
    base = kernel.domain_size(g, rules)
    k = rules.cop_count
    M = multiset.count_multisets(base, k)
    n = g.n
    containment = rules.kind == CONTAINMENT

    squads = np.empty((M, k), dtype=np.int32)
    for r, squad in enumerate(multiset.iter_multisets(base, k)):
        squads[r] = squad

    degrees = np.array([g.degree(v) for v in range(n)], dtype=np.int32)
    if containment:
        edge_in = np.zeros((M, g.m), dtype=bool)
        edge_in[np.repeat(np.arange(M), k), squads.ravel()] = True
        occupancy = np.zeros((M, n), dtype=np.int32)
        for v in range(n):
            occupancy[:, v] = edge_in[:, list(g.incident_edges[v])].sum(axis=1)
        terminal = occupancy == degrees[None, :]
        may_pass = rules.robber_may_pass
    else:
        vertex_in = np.zeros((M, n), dtype=bool)
        vertex_in[np.repeat(np.arange(M), k), squads.ravel()] = True
        terminal = vertex_in
        may_pass = True

    # Raw joint-move enumeration: pad every option list to a common width by
    # repeating the stay move, then take the cartesian product.  Duplicate
    # target squads are harmless under the OR-aggregation below.
    if containment:
        option_lists = [(b,) + g.edge_neighbors[b] for b in range(base)]
    else:
        option_lists = [(b,) + g.adjacency[b] for b in range(base)]
    width = max(len(o) for o in option_lists)
    options = np.array(
        [o + (o[0],) * (width - len(o)) for o in option_lists], dtype=np.int32
    )
    tables = [np.array(t, dtype=np.int64) for t in multiset.rank_weight_tables(base, k)]
    grids = np.indices((width,) * k).reshape(k, -1).T  # (width^k, k) option picks

    def joint_target_ranks(block: np.ndarray) -> np.ndarray:
        """Ranks of every joint target squad for a block of squads (with dups)."""
        picks = options[block[:, None, :], grids[None, :, :]]  # (B, width^k, k)
        picks = np.sort(picks, axis=2)
        rank = tables[0][picks[:, :, 0]].astype(np.int64)
        for j in range(1, k):
            rank += tables[j][picks[:, :, j]] - tables[j][picks[:, :, j - 1]]
        return rank

    cop_win = terminal.copy()   # cop to move
    rob_win = terminal.copy()   # robber to move

    chunk = max(1, 2_000_000 // (width**k) or 1)
    for _ in range(max_sweeps):
        # Cop turn: some joint move reaches a cop-win robber-turn state.
        new_cop = terminal.copy()
        for start in range(0, M, chunk):
            block = squads[start : start + chunk]
            targets = joint_target_ranks(block)  # (B, width^k)
            reach = rob_win[targets]             # (B, width^k, n)
            new_cop[start : start + chunk] |= reach.any(axis=1)

        # Robber turn: every available move (and the pass, if allowed) leads
        # to a cop-win cop-turn state.  A blocked edge imposes no constraint.
        new_rob = np.ones((M, n), dtype=bool)
        for v in range(n):
            for e in g.incident_edges[v]:
                a, b = g.edges[e]
                u = b if a == v else a
                if containment:
                    new_rob[:, v] &= edge_in[:, e] | new_cop[:, u]
                else:
                    new_rob[:, v] &= new_cop[:, u]
        if may_pass:
            new_rob &= new_cop
        new_rob |= terminal

        if np.array_equal(new_cop, cop_win) and np.array_equal(new_rob, rob_win):
            break
        cop_win, rob_win = new_cop, new_rob
    else:
        raise RuntimeError("sweep solver failed to converge")

    value = COPS_WIN if cop_win.all(axis=1).any() else ROBBER_WINS
    return value, cop_win, rob_win


def sweep_xi(g: Graph, robber_may_pass: bool = True) -> int:
    """Containability number recomputed entirely by the sweep solver."""
    from .graphs import min_degree, domination_number

    _, witness = domination_number(g)
    bound = sum(g.degree(v) for v in witness)
    for k in range(max(1, min_degree(g)), bound + 1):
        value, _, _ = solve_by_sweeps(g, Rules(CONTAINMENT, k, robber_may_pass))
        if value == COPS_WIN:
            return k
    raise AssertionError("dominating bound failed in sweep solver")


def audit_result(result: SolveResult) -> int:
    """Re-verify the Bellman conditions of a SolveResult over ALL states.

    Successors come from the kernel, not from the solver's internals.
    Returns the number of states checked; raises AssertionError on the first
    violation.
    """
    g, rules = result.graph, result.rules
    arena = result._arena
    checked = 0
    succ_cache: dict[int, list[int]] = {}

    for rank in range(arena.M):
        squad = arena.squad_at(rank)
        for v in range(g.n):
            rob_state = kernel.make_state(rules, squad, v, ROBBER)
            cop_state = kernel.make_state(rules, squad, v, COPS)
            rob_lv = int(result.rob_level[rank, v])
            cop_lv = int(result.cop_level[rank, v])
            if kernel.is_terminal(g, rules, rob_state):
                assert rob_lv == 0 and cop_lv == 0, (
                    f"terminal state not at level 0: {rob_state}"
                )
                checked += 2
                continue

            # Robber turn: win iff ALL successors are cop-win.
            succ_levels = [
                int(result.cop_level[arena.rank_of(nxt[0]), nxt.robber])
                for nxt in kernel.successors(g, rules, rob_state)
            ]
            if all(lv >= 0 for lv in succ_levels):
                expect = 1 + max(succ_levels)
                assert rob_lv == expect, (
                    f"robber state {rob_state}: level {rob_lv}, expected {expect}"
                )
            else:
                assert rob_lv == -1, (
                    f"robber state {rob_state}: labeled {rob_lv} but an escape exists"
                )
            checked += 1

            # Cop turn: win iff SOME successor is cop-win; joint moves are
            # enumerated through the kernel but cached per squad.
            succ_ranks = succ_cache.get(rank)
            if succ_ranks is None:
                succ_states = kernel.successors(g, rules, cop_state)
                succ_ranks = [
                    arena.rank_of(nxt[0]) for nxt in succ_states
                ]
                succ_cache[rank] = succ_ranks
            levels = [int(result.rob_level[r2, v]) for r2 in succ_ranks]
            labeled = [lv for lv in levels if lv >= 0]
            if labeled:
                expect = 1 + min(labeled)
                assert cop_lv == expect, (
                    f"cop state {cop_state}: level {cop_lv}, expected {expect}"
                )
            else:
                assert cop_lv == -1, (
                    f"cop state {cop_state}: labeled {cop_lv} with no labeled successor"
                )
            checked += 1
    return checked


def assert_matches_sweeps(result: SolveResult) -> None:
    """Cross-check a SolveResult against the naive sweep solver."""
    value, cop_win, rob_win = solve_by_sweeps(result.graph, result.rules)
    assert value == result.value, f"value mismatch: {result.value} vs sweeps {value}"
    assert np.array_equal(cop_win, result.cop_level >= 0), "cop-turn region mismatch"
    assert np.array_equal(rob_win, result.rob_level >= 0), "robber-turn region mismatch"
