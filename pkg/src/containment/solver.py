"""Exact game solving by retrograde analysis.

States are (cop squad, robber vertex, side to move) triples; squads are
sorted multisets indexed by their rank (see multiset.py).  The solver runs a
least-fixed-point computation backwards from the terminal states:

* robber-turn states hold a counter of successors not yet known cop-win;
  a state is labeled once the counter hits zero (ALL successors cop-win);
* cop-turn states are labeled as soon as SOME successor is labeled.

Labels are produced level by level, so level(s) certifies the number of
plies to the end under optimal play: 1 + min over successors on cop turns,
1 + max on robber turns, 0 at terminals.

The expensive direction is finding the cop-turn predecessors of a labeled
robber state, which is the squad-transition relation (every cop stays or
slides one step, squads compared as multisets).  That relation is never
materialized; it is factored through k "one cop commits" layers over
(chosen-targets, remaining-sources) pairs and applied level-by-level as
sparse matrix products.  The relation is symmetric, so successor queries
double as predecessor queries.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from typing import Iterable

import numpy as np
from scipy import sparse

from . import kernel, multiset
from .graphs import Graph, domination_number, min_degree
from .kernel import COPS, ROBBER, CONTAINMENT, VERTEX_PURSUIT, Rules, State

DEFAULT_STATE_CAP = 20_000_000

COPS_WIN = "copsWin"
ROBBER_WINS = "robberWins"


class StateCapExceeded(RuntimeError):
    """Estimated state space exceeds the configured cap."""

    def __init__(self, estimate: int, cap: int):
        super().__init__(f"estimated {estimate} states exceeds cap {cap}")
        self.estimate = estimate
        self.cap = cap


def estimate_states(g: Graph, rules: Rules) -> int:
    """Placements x vertices x 2 turns."""
    base = kernel.domain_size(g, rules)
    return multiset.count_multisets(base, rules.cop_count) * g.n * 2


def _rank_rows(rows: np.ndarray, tables: list[np.ndarray]) -> np.ndarray:
    """Vectorized multiset_rank over an array of sorted rows (N, k)."""
    if rows.shape[1] == 0:
        return np.zeros(len(rows), dtype=np.int64)
    rank = tables[0][rows[:, 0]].astype(np.int64)
    for j in range(1, rows.shape[1]):
        rank += tables[j][rows[:, j]] - tables[j][rows[:, j - 1]]
    return rank


class _Arena:
    """Per-(graph, rules) solving tables: squads, occupancy, transition chain."""

    def __init__(self, g: Graph, rules: Rules, state_cap: int):
        self.g = g
        self.rules = rules
        self.base = kernel.domain_size(g, rules)
        self.k = rules.cop_count
        if rules.kind == CONTAINMENT and g.m == 0:
            raise ValueError("containment needs a graph with at least one edge")
        self.state_count = estimate_states(g, rules)
        if self.state_count > state_cap:
            raise StateCapExceeded(self.state_count, state_cap)
        self.M = multiset.count_multisets(self.base, self.k)

        if rules.kind == CONTAINMENT:
            self.options = [
                np.array((e,) + g.edge_neighbors[e], dtype=np.int32) for e in range(g.m)
            ]
        else:
            self.options = [
                np.array((v,) + g.adjacency[v], dtype=np.int32) for v in range(g.n)
            ]

        self.squads = np.empty((self.M, self.k), dtype=np.int32)
        for r, squad in enumerate(multiset.iter_multisets(self.base, self.k)):
            self.squads[r] = squad

        degrees = np.array([g.degree(v) for v in range(g.n)], dtype=np.int32)
        if rules.kind == CONTAINMENT:
            # occupancy[r, v] = number of distinct squad edges incident at v
            self.edge_in = np.zeros((self.M, g.m), dtype=bool)
            rows = np.repeat(np.arange(self.M), self.k)
            self.edge_in[rows, self.squads.ravel()] = True
            occupancy = np.zeros((self.M, g.n), dtype=np.int32)
            for v in range(g.n):
                occupancy[:, v] = self.edge_in[:, list(g.incident_edges[v])].sum(axis=1)
            self.terminal = occupancy == degrees[None, :]
            free = degrees[None, :] - occupancy
            self.counters = free + (1 if rules.robber_may_pass else 0)
        else:
            self.vertex_in = np.zeros((self.M, g.n), dtype=bool)
            rows = np.repeat(np.arange(self.M), self.k)
            self.vertex_in[rows, self.squads.ravel()] = True
            self.terminal = self.vertex_in.copy()
            self.counters = np.broadcast_to(degrees + 1, (self.M, g.n)).copy()

        self._chain: list[sparse.csr_matrix] | None = None
        self._rank_of: dict[tuple[int, ...], int] | None = None
        self._succ_cache: dict[int, np.ndarray] = {}

    # -- squad indexing ----------------------------------------------------

    def rank_of(self, squad: tuple[int, ...]) -> int:
        if self._rank_of is None:
            self._rank_of = {
                tuple(int(x) for x in row): r for r, row in enumerate(self.squads)
            }
        return self._rank_of[squad]

    def squad_at(self, rank: int) -> tuple[int, ...]:
        return tuple(int(x) for x in self.squads[rank])

    # -- squad transition chain --------------------------------------------

    def chain(self) -> list[sparse.csr_matrix]:
        """Transposed layer matrices mapping squad sets to their joint-move images.

        Layer i commits a target for the smallest remaining source position:
        (targets D of size i, sources T of size k-i) -> (D + {x}, T minus its
        head) for x in the head's closed neighborhood.  Composing all k layers
        maps a set of squads to the union of their one-turn squad successors.
        """
        if self._chain is not None:
            return self._chain
        B, k = self.base, self.k
        sizes = [multiset.count_multisets(B, j) for j in range(k + 1)]
        lists = [self._enumerate(j) for j in range(k + 1)]
        tables = [
            [np.array(t, dtype=np.int64) for t in multiset.rank_weight_tables(B, j)]
            for j in range(k + 1)
        ]

        # Rank of T minus its head, grouped by head value, per todo size.
        chain = []
        for i in range(k):
            todo = k - i
            heads = lists[todo][:, 0]
            tail_rank = _rank_rows(lists[todo][:, 1:], tables[todo - 1])
            done = lists[i]
            rows_parts, cols_parts = [], []
            for c in range(B):
                t_sel = np.nonzero(heads == c)[0]
                if len(t_sel) == 0:
                    continue
                t_tail = tail_rank[t_sel]
                opts = self.options[c]
                # insert each option into every size-i target multiset
                merged = np.concatenate(
                    [
                        np.broadcast_to(done[:, None, :], (sizes[i], len(opts), i)),
                        np.broadcast_to(
                            opts[None, :, None].astype(np.int32),
                            (sizes[i], len(opts), 1),
                        ),
                    ],
                    axis=2,
                )
                merged.sort(axis=2)
                ins = _rank_rows(merged.reshape(-1, i + 1), tables[i + 1])
                ins = ins.reshape(sizes[i], len(opts))
                rows = (
                    np.arange(sizes[i], dtype=np.int64)[:, None, None] * sizes[todo]
                    + t_sel[None, :, None]
                )
                cols = (
                    ins[:, None, :] * sizes[todo - 1] + t_tail[None, :, None]
                )
                rows, cols = np.broadcast_arrays(rows, cols)
                rows_parts.append(rows.ravel())
                cols_parts.append(cols.ravel())
            rows = np.concatenate(rows_parts)
            cols = np.concatenate(cols_parts)
            mat = sparse.csr_matrix(
                (np.ones(len(rows), dtype=np.uint32), (cols, rows)),
                shape=(sizes[i + 1] * sizes[todo - 1], sizes[i] * sizes[todo]),
            )
            mat.sum_duplicates()
            mat.data[:] = 1
            chain.append(mat)
        self._chain = chain
        return chain

    def _enumerate(self, j: int) -> np.ndarray:
        out = np.empty((multiset.count_multisets(self.base, j), j), dtype=np.int32)
        for r, t in enumerate(multiset.iter_multisets(self.base, j)):
            out[r] = t
        return out

    def push_squads(self, mat: sparse.spmatrix) -> sparse.csr_matrix:
        """Apply the full chain to a (M x cols) indicator matrix."""
        out = mat.tocsr().astype(np.uint32)
        for layer in self.chain():
            out = layer @ out
            out.data[:] = 1
        return out

    def squad_successors(self, rank: int) -> np.ndarray:
        """Sorted ranks of the one-turn squad successors of one squad."""
        cached = self._succ_cache.get(rank)
        if cached is not None:
            return cached
        seed = sparse.csr_matrix(
            (np.ones(1, dtype=np.uint32), ([rank], [0])), shape=(self.M, 1)
        )
        image = self.push_squads(seed)
        succ = np.sort(image.tocoo().row).astype(np.int64)
        self._succ_cache[rank] = succ
        return succ


@dataclass
class SolveResult:
    """Cop-win labeling of the full state space for one (graph, rules) pair.

    level arrays hold -1 for robber-win states; otherwise the fixed-point
    depth (plies to the end under optimal play).  optimal_time counts cop
    turns after placement, minimized over winning placements against a
    worst-case robber.
    """

    graph: Graph
    rules: Rules
    state_count: int
    value: str
    best_placement: tuple[int, ...] | None
    optimal_time: int | None
    cop_level: np.ndarray = field(repr=False)
    rob_level: np.ndarray = field(repr=False)
    elapsed: float = 0.0
    _arena: _Arena = field(repr=False, default=None)

    @property
    def squad_count(self) -> int:
        return self._arena.M

    def level(self, s: State) -> int:
        """Fixed-point level of a state; -1 when the robber wins it."""
        rank = self._arena.rank_of(s[0])
        arr = self.cop_level if s.turn == COPS else self.rob_level
        return int(arr[rank, s.robber])

    def is_cop_win(self, s: State) -> bool:
        return self.level(s) >= 0

    def placement_state(self, squad: tuple[int, ...], robber: int) -> State:
        return kernel.make_state(self.rules, squad, robber, COPS)

    def winning_placements(self) -> np.ndarray:
        """Boolean mask over squad ranks: placement wins against every robber choice."""
        return (self.cop_level >= 0).all(axis=1)

    def summary(self) -> dict:
        return {
            "kind": self.rules.kind,
            "copCount": self.rules.cop_count,
            "robberMayPass": self.rules.robber_may_pass,
            "value": self.value,
            "stateCount": self.state_count,
            "squadCount": self.squad_count,
            "copWinStates": int((self.cop_level >= 0).sum() + (self.rob_level >= 0).sum()),
            "maxLevel": int(max(self.cop_level.max(initial=-1), self.rob_level.max(initial=-1))),
            "bestPlacement": list(self.best_placement) if self.best_placement else None,
            "optimalTime": self.optimal_time,
        }

    def fingerprint(self) -> str:
        """Deterministic digest of the full labeling, for re-solve identity tests."""
        import hashlib

        h = hashlib.sha256()
        h.update(np.ascontiguousarray(self.cop_level).tobytes())
        h.update(np.ascontiguousarray(self.rob_level).tobytes())
        h.update(repr(self.summary()).encode())
        return h.hexdigest()


def solve(g: Graph, rules: Rules, state_cap: int = DEFAULT_STATE_CAP) -> SolveResult:
    """Label every state of the game as cop-win or robber-win.

    Counter-based retrograde propagation: terminal states seed level 0, a
    worklist of newly labeled states is processed strictly level by level,
    robber states are labeled through successor counters, cop states through
    batched squad-predecessor queries.
    """
    started = time.perf_counter()
    arena = _Arena(g, rules, state_cap)
    M, n = arena.M, g.n

    cop_level = np.full((M, n), -1, dtype=np.int32)
    rob_level = np.full((M, n), -1, dtype=np.int32)
    cop_level[arena.terminal] = 0
    rob_level[arena.terminal] = 0
    counters = arena.counters.astype(np.int32).copy()

    term_r, term_v = np.nonzero(arena.terminal)
    rob_front = (term_r.astype(np.int64), term_v.astype(np.int64))
    cop_front = rob_front

    containment = rules.kind == CONTAINMENT
    may_pass = rules.robber_may_pass or not containment

    level = 0
    while len(rob_front[0]) or len(cop_front[0]):
        # Cop states acquiring a labeled successor: batched squad predecessors
        # of the robber frontier (the squad relation is symmetric).
        if len(rob_front[0]):
            indicator = sparse.csr_matrix(
                (
                    np.ones(len(rob_front[0]), dtype=np.uint32),
                    (rob_front[0], rob_front[1]),
                ),
                shape=(M, n),
            )
            image = arena.push_squads(indicator).tocoo()
            fresh = cop_level[image.row, image.col] == -1
            new_cop = (image.row[fresh].astype(np.int64), image.col[fresh].astype(np.int64))
            cop_level[new_cop] = level + 1
        else:
            new_cop = (np.empty(0, dtype=np.int64),) * 2

        # Robber states: decrement successor counters for every predecessor
        # move into the cop frontier; zero means all escapes are cop-win.
        new_rob_r, new_rob_v = [], []

        def settle(rows: np.ndarray, u: int) -> None:
            live = rows[rob_level[rows, u] == -1]
            if not len(live):
                return
            counters[live, u] -= 1
            hit = live[counters[live, u] == 0]
            if len(hit):
                rob_level[hit, u] = level + 1
                new_rob_r.append(hit)
                new_rob_v.append(np.full(len(hit), u, dtype=np.int64))

        fr, fv = cop_front
        for v in range(n):
            rows = fr[fv == v]
            if not len(rows):
                continue
            if may_pass:
                settle(rows, v)
            for u in g.adjacency[v]:
                if containment:
                    e = g.edge_index(u, v)
                    settle(rows[~arena.edge_in[rows, e]], u)
                else:
                    settle(rows, u)

        if new_rob_r:
            rob_front = (np.concatenate(new_rob_r), np.concatenate(new_rob_v))
        else:
            rob_front = (np.empty(0, dtype=np.int64),) * 2
        cop_front = new_cop
        level += 1

    wins = (cop_level >= 0).all(axis=1)
    if wins.any():
        value = COPS_WIN
        worst = cop_level.max(axis=1)
        times = (worst + 1) // 2  # cop turns: ceil(plies / 2)
        times = np.where(wins, times, np.iinfo(np.int64).max)
        best_rank = int(times.argmin())
        best_placement = arena.squad_at(best_rank)
        optimal_time = int(times[best_rank])
    else:
        value = ROBBER_WINS
        best_placement = None
        optimal_time = None

    return SolveResult(
        graph=g,
        rules=rules,
        state_count=arena.state_count,
        value=value,
        best_placement=best_placement,
        optimal_time=optimal_time,
        cop_level=cop_level,
        rob_level=rob_level,
        elapsed=time.perf_counter() - started,
        _arena=arena,
    )


def containment_time(result: SolveResult) -> int:
    """Optimal cop turns to containment (placement not counted)."""
    if result.value != COPS_WIN:
        raise ValueError("containment time is defined only for cop-win results")
    return result.optimal_time


# ---------------------------------------------------------------------------
# Invariant searches


@dataclass(frozen=True)
class SearchOutcome:
    """Result of an ascending-k search.

    value is None when the state cap stopped the search first; then
    [lower, upper] brackets the invariant (everything below lower was solved
    as a robber win; upper is the constructive guarantee).
    """

    value: int | None
    lower: int
    upper: int
    result: SolveResult | None
    record: dict[int, str]

    @property
    def bracket(self) -> tuple[int, int] | None:
        return None if self.value is not None else (self.lower, self.upper)


def xi(
    g: Graph,
    robber_may_pass: bool = True,
    state_cap: int = DEFAULT_STATE_CAP,
) -> SearchOutcome:
    """Minimum number of edge cops that contain the robber.

    Ascends from the min-degree floor (fewer cops leave no terminal state);
    the sum of degrees over a minimum dominating set is a guaranteed upper
    bound, realized by the one-step dominating placement, so the search
    terminates in both pass variants.
    """
    floor = min_degree(g)
    _, witness = domination_number(g)
    bound = sum(g.degree(v) for v in witness)
    record: dict[int, str] = {}
    for k in range(max(1, floor), bound + 1):
        rules = Rules(CONTAINMENT, k, robber_may_pass)
        try:
            result = solve(g, rules, state_cap)
        except StateCapExceeded:
            return SearchOutcome(None, k, bound, None, record)
        record[k] = result.value
        if result.value == COPS_WIN:
            return SearchOutcome(k, k, k, result, record)
    raise AssertionError(
        f"dominating bound {bound} failed to win on {g}; solver inconsistency"
    )


def cop_number(g: Graph, state_cap: int = DEFAULT_STATE_CAP) -> SearchOutcome:
    """Minimum number of vertex cops that capture the robber (classic game).

    gamma(G) cops trivially suffice (dominate, then step onto the robber), so
    the ascent is bounded.
    """
    gamma, _ = domination_number(g)
    record: dict[int, str] = {}
    for k in range(1, gamma + 1):
        rules = Rules(VERTEX_PURSUIT, k)
        try:
            result = solve(g, rules, state_cap)
        except StateCapExceeded:
            return SearchOutcome(None, k, gamma, None, record)
        record[k] = result.value
        if result.value == COPS_WIN:
            return SearchOutcome(k, k, k, result, record)
    raise AssertionError(f"domination bound {gamma} failed to capture on {g}")


# ---------------------------------------------------------------------------
# Strategies


class CopStrategy:
    """Optimal cop policy: pick the successor of minimal level (first on ties).

    On cop-win states each move strictly decreases the level, which certifies
    the time bound; in the robber-win region the first successor in squad
    order is played so playouts stay deterministic.  Entries are materialized
    on demand and cached, so tables over huge spaces stay affordable.
    """

    def __init__(self, result: SolveResult):
        self._result = result
        self._table: dict[State, State] = {}

    def move(self, s: State) -> State:
        got = self._table.get(s)
        if got is not None:
            return got
        result = self._result
        arena = result._arena
        if s.turn != COPS:
            raise ValueError("cop strategy queried off turn")
        rank = arena.rank_of(s[0])
        succ = arena.squad_successors(rank)
        levels = result.rob_level[succ, s.robber]
        labeled = levels >= 0
        if labeled.any():
            pick = succ[labeled][int(levels[labeled].argmin())]
        else:
            # Robber-win region: every move is equally hopeless; stay
            # deterministic by taking the first successor in squad order.
            pick = succ[0]
        nxt = kernel.make_state(result.rules, arena.squad_at(int(pick)), s.robber, ROBBER)
        self._table[s] = nxt
        return nxt

    def table(self) -> dict[State, State]:
        """Entries materialized so far."""
        return dict(self._table)

    def materialize_reachable(self) -> dict[State, State]:
        """Fill the table over every state reachable under this policy.

        Starts from the best placement against every robber reply and follows
        the policy against all robber moves.
        """
        result = self._result
        if result.value != COPS_WIN:
            raise ValueError("no winning placement to start from")
        seen: set[State] = set()
        stack: list[State] = [
            result.placement_state(result.best_placement, v)
            for v in range(result.graph.n)
        ]
        while stack:
            s = stack.pop()
            if s in seen or kernel.is_terminal(result.graph, result.rules, s):
                continue
            seen.add(s)
            if s.turn == COPS:
                stack.append(self.move(s))
            else:
                stack.extend(kernel.successors(result.graph, result.rules, s))
        return self.table()


class RobberStrategy:
    """Optimal robber policy.

    Prefers any robber-win successor (first by target vertex); in a lost
    position, maximizes the level to stall longest.  On robber-win states the
    policy never leaves the robber-win region.
    """

    def __init__(self, result: SolveResult):
        self._result = result
        self._table: dict[State, State] = {}

    def move(self, s: State) -> State:
        got = self._table.get(s)
        if got is not None:
            return got
        result = self._result
        if s.turn != ROBBER:
            raise ValueError("robber strategy queried off turn")
        succs = kernel.successors(result.graph, result.rules, s)
        best = None
        for nxt in succs:
            if result.level(nxt) < 0:
                best = nxt
                break
        if best is None:
            best = max(succs, key=lambda nxt: result.level(nxt))  # first on ties
        self._table[s] = best
        return best

    def place(self, squad: tuple[int, ...]) -> int:
        """Robber's best initial vertex against a given placement."""
        result = self._result
        arena = result._arena
        rank = arena.rank_of(squad)
        levels = result.cop_level[rank]
        losing = levels >= 0
        if not losing.all():
            return int(np.nonzero(~losing)[0][0])
        return int(levels.argmax())

    def table(self) -> dict[State, State]:
        return dict(self._table)


def extract_strategies(result: SolveResult) -> tuple[CopStrategy, RobberStrategy]:
    return CopStrategy(result), RobberStrategy(result)


def playout(
    result: SolveResult,
    squad: tuple[int, ...] | None = None,
    robber: int | None = None,
    random_robber: "random.Random | None" = None,
    random_cops: "random.Random | None" = None,
    max_plies: int = 100_000,
) -> dict:
    """Play a full game and return a transcript.

    Each side follows its extracted strategy unless given an RNG, in which
    case it plays uniformly random legal moves.  Ends at containment/capture
    or at the first repeated position (a stationary evasion certificate,
    since optimal strategies are positional).
    """
    import random  # noqa: F811 - only for the type above

    g, rules = result.graph, result.rules
    cop_strat, rob_strat = extract_strategies(result)
    if squad is None:
        if result.value != COPS_WIN:
            raise ValueError("no winning placement; pass an explicit squad")
        squad = result.best_placement
    if robber is None:
        robber = (
            random_robber.randrange(g.n) if random_robber else rob_strat.place(squad)
        )
    s = kernel.make_state(rules, squad, robber, COPS)
    plies = [{"mover": "placement", "squad": list(squad), "robber": robber}]
    seen = {s}
    cop_turns = 0
    outcome = None
    for _ in range(max_plies):
        if kernel.is_terminal(g, rules, s):
            outcome = "contained" if rules.kind == CONTAINMENT else "captured"
            break
        if s.turn == COPS:
            if random_cops is not None:
                s = random_cops.choice(kernel.successors(g, rules, s))
            else:
                s = cop_strat.move(s)
            cop_turns += 1
            plies.append({"mover": "cops", "squad": list(s[0]), "robber": s.robber})
        else:
            if random_robber is not None:
                s = random_robber.choice(kernel.successors(g, rules, s))
            else:
                s = rob_strat.move(s)
            plies.append({"mover": "robber", "squad": list(s[0]), "robber": s.robber})
        if s in seen:
            outcome = "evasion-by-repetition"
            break
        seen.add(s)
    if outcome is None:
        raise AssertionError("playout exceeded the ply bound without resolution")
    return {
        "placement": list(squad),
        "robberStart": robber,
        "plies": plies,
        "outcome": outcome,
        "copTurns": cop_turns if outcome in ("contained", "captured") else None,
        "finalRobber": s.robber,
    }


# ---------------------------------------------------------------------------
# The constructive dominating-set placement


def dominating_containment_strategy(
    g: Graph,
) -> tuple[tuple[int, ...], dict[int, list[tuple[int, int]]]]:
    """One-step containment from a dominating set.

    Places one cop per (dominating vertex, incident edge) pair; for every
    robber vertex outside the set, returns a joint move that occupies all of
    its edges in a single cop turn.  Robber vertices inside the set are
    contained at placement already.
    """
    _, witness = domination_number(g)
    dominators = set(witness)

    placement: list[int] = []
    for v in sorted(dominators):
        placement.extend(g.incident_edges[v])
    placement.sort()
    squad = tuple(placement)

    responses: dict[int, list[tuple[int, int]]] = {}
    for x in range(g.n):
        if x in dominators:
            continue
        wanted: dict[int, int] = {}  # source edge -> target edge, one cop each
        for e in g.incident_edges[x]:
            a, b = g.edges[e]
            other = b if a == x else a
            if other in dominators:
                wanted.setdefault(e, e)  # that cop is already on an edge at x
            else:
                w = min(w for w in g.adjacency[other] if w in dominators)
                source = g.edge_index(w, other)
                wanted[source] = e
        moves: list[tuple[int, int]] = []
        for e in squad:
            if e in wanted:
                moves.append((e, wanted.pop(e)))
            else:
                moves.append((e, e))
        assert not wanted, f"unassigned cop moves for robber at {x}: {wanted}"
        responses[x] = moves
    return squad, responses
