"""Exact mechanics of the two pursuit games, as pure state functions.

Containment: cops stand on edges, the robber on a vertex.  The robber may
not cross an edge holding a cop; the cops win once every edge at the
robber's vertex is occupied.  Vertex pursuit is the classic game: cops and
robber all on vertices, capture by co-location, no blocking.

Placement protocol for both games: cops choose positions first, the robber
answers, then the cops move first.  Multiple cops may share a position, so
a squad is a nondecreasing tuple (a sorted multiset).  Every function here
is pure; successor lists are deduplicated and sorted, and that order is the
tie-break inherited by everything downstream.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator, NamedTuple

from . import multiset
from .graphs import Graph

COPS = 0
ROBBER = 1

CONTAINMENT = "containment"
VERTEX_PURSUIT = "vertexPursuit"


@dataclass(frozen=True)
class Rules:
    """Game-variant descriptor.

    robber_may_pass applies to containment only; the classic vertex game
    always allows every player to stay put.
    """

    kind: str = CONTAINMENT
    cop_count: int = 1
    robber_may_pass: bool = True

    def __post_init__(self):
        if self.kind not in (CONTAINMENT, VERTEX_PURSUIT):
            raise ValueError(f"unknown game kind {self.kind!r}")
        if self.cop_count < 1:
            raise ValueError("cop_count must be >= 1")
        if self.kind == VERTEX_PURSUIT and not self.robber_may_pass:
            raise ValueError("the vertex game always allows passing")

    @property
    def positions(self) -> str:
        return "edges" if self.kind == CONTAINMENT else "vertices"


class GameState(NamedTuple):
    """Containment position: sorted cop edge multiset, robber vertex, mover."""

    cop_edges: tuple[int, ...]
    robber: int
    turn: int


class VertexState(NamedTuple):
    """Vertex-pursuit position: sorted cop vertex multiset, robber vertex, mover."""

    cop_vertices: tuple[int, ...]
    robber: int
    turn: int


State = GameState | VertexState


def domain_size(g: Graph, rules: Rules) -> int:
    """Number of distinct cop positions (edges or vertices)."""
    return g.m if rules.kind == CONTAINMENT else g.n


def validate_state(g: Graph, rules: Rules, s: State) -> None:
    tokens = s[0]
    if len(tokens) != rules.cop_count:
        raise ValueError(f"expected {rules.cop_count} cops, got {len(tokens)}")
    if tuple(sorted(tokens)) != tokens:
        raise ValueError("cop positions must be sorted")
    bound = domain_size(g, rules)
    if any(not 0 <= t < bound for t in tokens):
        raise ValueError("cop position out of range")
    if not 0 <= s.robber < g.n:
        raise ValueError("robber vertex out of range")
    if s.turn not in (COPS, ROBBER):
        raise ValueError("bad turn marker")
    if rules.kind == CONTAINMENT and not isinstance(s, GameState):
        raise ValueError("containment rules need a GameState")
    if rules.kind == VERTEX_PURSUIT and not isinstance(s, VertexState):
        raise ValueError("vertex pursuit rules need a VertexState")


# ---------------------------------------------------------------------------
# Terminal predicates


def is_contained(g: Graph, s: GameState) -> bool:
    """True iff every edge at the robber's vertex holds a cop (multiplicity irrelevant)."""
    occupied = set(s.cop_edges)
    return all(e in occupied for e in g.incident_edges[s.robber])


def is_captured(s: VertexState) -> bool:
    """True iff a cop shares the robber's vertex."""
    return s.robber in s.cop_vertices


def is_terminal(g: Graph, rules: Rules, s: State) -> bool:
    if rules.kind == CONTAINMENT:
        return is_contained(g, s)
    return is_captured(s)


# ---------------------------------------------------------------------------
# Successors


def robber_moves(g: Graph, rules: Rules, s: GameState) -> list[GameState]:
    """Successors of a containment robber turn, sorted by target vertex.

    One move per unoccupied incident edge, plus a pass when the variant
    allows it.  Must not be called on a contained state.
    """
    if s.turn != ROBBER:
        raise ValueError("not the robber's turn")
    if is_contained(g, s):
        raise ValueError("robber is contained; no moves exist")
    occupied = set(s.cop_edges)
    targets = set()
    if rules.robber_may_pass:
        targets.add(s.robber)
    v = s.robber
    for e in g.incident_edges[v]:
        if e not in occupied:
            a, b = g.edges[e]
            targets.add(b if a == v else a)
    return [GameState(s.cop_edges, t, COPS) for t in sorted(targets)]


def cop_joint_moves(g: Graph, s: GameState) -> list[GameState]:
    """All distinct cop-squad successors, canonicalized and sorted.

    Each cop independently stays or slides to an edge sharing an endpoint
    with its own.
    """
    if s.turn != COPS:
        raise ValueError("not the cops' turn")
    options = [(e,) + g.edge_neighbors[e] for e in s.cop_edges]
    squads = {tuple(sorted(pick)) for pick in product(*options)}
    return [GameState(squad, s.robber, ROBBER) for squad in sorted(squads)]


def vertex_moves(g: Graph, s: VertexState) -> list[VertexState]:
    """Successors in the classic vertex game (either side), sorted.

    Cops: product of per-cop stay/step, canonicalized.  Robber: stay or step
    to any neighbor; there is no blocking in this game.
    """
    if s.turn == COPS:
        options = [(v,) + g.adjacency[v] for v in s.cop_vertices]
        squads = {tuple(sorted(pick)) for pick in product(*options)}
        return [VertexState(squad, s.robber, ROBBER) for squad in sorted(squads)]
    targets = sorted((s.robber,) + g.adjacency[s.robber])
    return [VertexState(s.cop_vertices, t, COPS) for t in targets]


def successors(g: Graph, rules: Rules, s: State) -> list[State]:
    """Kernel successor dispatch (no terminal check for cop turns)."""
    if rules.kind == VERTEX_PURSUIT:
        return vertex_moves(g, s)
    if s.turn == COPS:
        return cop_joint_moves(g, s)
    return robber_moves(g, rules, s)


def apply_cop_move(g: Graph, rules: Rules, s: State, pairs: list[tuple[int, int]]) -> State:
    """Apply an explicit per-cop (from, to) assignment, validating legality.

    Avoids enumerating the joint move set, which is exponential in the squad
    size; used by the service and the dominating-set strategy replay.
    """
    if s.turn != COPS:
        raise ValueError("not the cops' turn")
    if sorted(src for src, _ in pairs) != list(s[0]):
        raise ValueError("move sources do not match the cop positions")
    neighborhoods = g.edge_neighbors if rules.kind == CONTAINMENT else g.adjacency
    for src, dst in pairs:
        if dst != src and dst not in neighborhoods[src]:
            raise ValueError(f"cop cannot reach {dst} from {src}")
    squad = tuple(sorted(dst for _, dst in pairs))
    if rules.kind == CONTAINMENT:
        return GameState(squad, s.robber, ROBBER)
    return VertexState(squad, s.robber, ROBBER)


# ---------------------------------------------------------------------------
# Placement and state codec


def initial_cop_placements(g: Graph, rules: Rules) -> Iterator[tuple[int, ...]]:
    """All C(base+k-1, k) cop multisets, in rank order."""
    return multiset.iter_multisets(domain_size(g, rules), rules.cop_count)


def initial_robber_choices(g: Graph) -> range:
    return range(g.n)


def make_state(rules: Rules, squad: tuple[int, ...], robber: int, turn: int) -> State:
    if rules.kind == CONTAINMENT:
        return GameState(squad, robber, turn)
    return VertexState(squad, robber, turn)


def encode_state(g: Graph, rules: Rules, s: State) -> int:
    """Bijective integer key via mixed-radix ranking of the sorted multiset.

    key = (squad_rank * n + robber) * 2 + turn.  The squad rank matches the
    enumeration order of initial_cop_placements.
    """
    validate_state(g, rules, s)
    rank = multiset.multiset_rank(s[0], domain_size(g, rules))
    return (rank * g.n + s.robber) * 2 + s.turn


def decode_state(g: Graph, rules: Rules, key: int) -> State:
    """Inverse of encode_state."""
    total = multiset.count_multisets(domain_size(g, rules), rules.cop_count) * g.n * 2
    if not 0 <= key < total:
        raise ValueError(f"key {key} out of range [0, {total})")
    key, turn = divmod(key, 2)
    rank, robber = divmod(key, g.n)
    squad = multiset.multiset_unrank(rank, domain_size(g, rules), rules.cop_count)
    return make_state(rules, squad, robber, turn)
