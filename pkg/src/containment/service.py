"""HTTP session service: play either side against the optimal engine.

Sessions are created only for instances the solver can finish under the cap,
so every engine reply is backed by the exact win/level labeling.  The wire
protocol exposes the canonical vertex/edge indexing of the graph module:
cop moves are (fromEdge, toEdge) pairs with stay encoded as equal indices,
robber moves are a target vertex or "pass".

Endpoints: POST /sessions, GET /sessions/{id}, POST /sessions/{id}/moves,
POST /solve, GET /families, GET /health.

Solve summaries are cached on disk keyed by (canonical graph6, game kind,
cop count, pass flag); records are written atomically (write then rename).
Full win-region arrays are never persisted; sessions re-solve on demand and
hold results in an in-process LRU.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import threading
import uuid
from collections import OrderedDict
from pathlib import Path

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import graphs, kernel, solver
from .graphs import Graph, GraphError, Graph6Error
from .kernel import COPS, ROBBER, CONTAINMENT, Rules
from .solver import COPS_WIN, ROBBER_WINS, SolveResult, StateCapExceeded

JOINT_HINT_LIMIT = 512


class CreateSessionRequest(BaseModel):
    family: str | None = None
    graph6: str | None = None
    k: int = Field(ge=1)
    noPass: bool = False
    humanRole: str = Field(pattern="^(cops|robber)$")
    hints: bool = False


class MoveRequest(BaseModel):
    placeCops: list[int] | None = None
    placeRobber: int | None = None
    cops: list[tuple[int, int]] | None = None
    robber: int | str | None = None


class SolveRequest(BaseModel):
    family: str | None = None
    graph6: str | None = None
    k: int = Field(ge=1)
    noPass: bool = False
    vertexGame: bool = False


def resolve_graph(family: str | None, graph6: str | None) -> Graph:
    if (family is None) == (graph6 is None):
        raise HTTPException(400, "provide exactly one of 'family' or 'graph6'")
    try:
        return graphs.parse_family(family) if family else graphs.parse_graph6(graph6)
    except (GraphError, Graph6Error) as exc:
        raise HTTPException(400, str(exc))


class SolveCache:
    """Disk cache of solve summaries plus an in-process result LRU."""

    def __init__(self, directory: str | None, memory_slots: int = 16):
        self.directory = Path(
            directory
            or os.environ.get("CONTAINMENT_CACHE_DIR")
            or Path.home() / ".cache" / "containment"
        )
        self._memory: OrderedDict[str, SolveResult] = OrderedDict()
        self._slots = memory_slots
        self._lock = threading.Lock()

    @staticmethod
    def key(g: Graph, rules: Rules) -> str:
        raw = f"{graphs.to_graph6(g)}|{rules.kind}|{rules.cop_count}|{rules.robber_may_pass}"
        return hashlib.sha256(raw.encode()).hexdigest()[:24]

    def result(self, g: Graph, rules: Rules, state_cap: int) -> SolveResult:
        """Solve (or reuse) the full labeling; memory only, regions are big."""
        key = self.key(g, rules)
        with self._lock:
            if key in self._memory:
                self._memory.move_to_end(key)
                return self._memory[key]
        result = solver.solve(g, rules, state_cap)
        with self._lock:
            self._memory[key] = result
            while len(self._memory) > self._slots:
                self._memory.popitem(last=False)
        self.store_summary(g, rules, result)
        return result

    def summary(self, g: Graph, rules: Rules, state_cap: int) -> dict:
        """Cached summary record, recomputed and persisted on a miss."""
        record = self.load_summary(g, rules)
        if record is not None:
            return record
        result = self.result(g, rules, state_cap)
        return self.load_summary(g, rules) or self._record(g, rules, result)

    def _path(self, key: str) -> Path:
        return self.directory / f"{key}.json"

    def _record(self, g: Graph, rules: Rules, result: SolveResult) -> dict:
        record = {
            "schemaVersion": 1,
            "graph6": graphs.to_graph6(g),
            **result.summary(),
        }
        if result.value == COPS_WIN:
            cop_strat, _ = solver.extract_strategies(result)
            table = cop_strat.materialize_reachable()
            record["copStrategy"] = [
                {"squad": list(s[0]), "robber": s.robber, "toSquad": list(nxt[0])}
                for s, nxt in sorted(table.items())
            ]
        return record

    def store_summary(self, g: Graph, rules: Rules, result: SolveResult) -> None:
        record = self._record(g, rules, result)
        self.directory.mkdir(parents=True, exist_ok=True)
        path = self._path(self.key(g, rules))
        fd, tmp = tempfile.mkstemp(dir=self.directory, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                json.dump(record, fh, sort_keys=True)
            os.replace(tmp, path)  # atomic publish
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise

    def load_summary(self, g: Graph, rules: Rules) -> dict | None:
        path = self._path(self.key(g, rules))
        if not path.exists():
            return None
        with open(path) as fh:
            return json.load(fh)


class Session:
    """One isolated game; all mutation happens under the per-session lock."""

    def __init__(
        self,
        session_id: str,
        g: Graph,
        rules: Rules,
        result: SolveResult,
        human_role: str,
        hints: bool,
    ):
        self.id = session_id
        self.graph = g
        self.rules = rules
        self.result = result
        self.human_role = human_role
        self.hints = hints
        self.lock = threading.Lock()
        self.cop_strategy, self.robber_strategy = solver.extract_strategies(result)
        self.squad: tuple[int, ...] | None = None
        self.robber: int | None = None
        self.turn: int | None = None
        self.phase = "copPlacement"
        self.history: list[dict] = []
        if human_role == "robber":
            self._engine_place_cops()

    # -- engine actions ------------------------------------------------------

    def _engine_place_cops(self) -> None:
        if self.result.value == COPS_WIN:
            squad = self.result.best_placement
        else:
            squad = self.result._arena.squad_at(0)
        self._apply_cop_placement(squad, by="engine")

    def _engine_place_robber(self) -> None:
        v = self.robber_strategy.place(self.squad)
        self._apply_robber_placement(v, by="engine")

    def _engine_move(self) -> None:
        state = self.state()
        if self.phase != "inPlay" or kernel.is_terminal(self.graph, self.rules, state):
            return
        engine_turn = COPS if self.human_role == "robber" else ROBBER
        if state.turn != engine_turn:
            return
        if engine_turn == COPS:
            nxt = self.cop_strategy.move(state)
        else:
            nxt = self.robber_strategy.move(state)
        self.squad, self.robber, self.turn = nxt[0], nxt.robber, nxt.turn
        self.history.append(
            {"by": "engine", "squad": list(self.squad), "robber": self.robber}
        )
        self._finish_if_terminal()

    # -- transitions ---------------------------------------------------------

    def _apply_cop_placement(self, squad: tuple[int, ...], by: str) -> None:
        self.squad = tuple(sorted(squad))
        self.phase = "robberPlacement"
        self.history.append({"by": by, "placeCops": list(self.squad)})

    def _apply_robber_placement(self, v: int, by: str) -> None:
        self.robber = v
        self.turn = COPS
        self.phase = "inPlay"
        self.history.append({"by": by, "placeRobber": v})
        self._finish_if_terminal()

    def _finish_if_terminal(self) -> None:
        if self.phase == "inPlay" and kernel.is_terminal(self.graph, self.rules, self.state()):
            self.phase = "finished"

    def state(self) -> kernel.State:
        return kernel.make_state(self.rules, self.squad, self.robber, self.turn)

    # -- wire view -----------------------------------------------------------

    def status(self) -> str:
        if self.phase == "finished":
            return "copsWin"
        if self.phase == "copPlacement":
            certified = self.result.value == ROBBER_WINS
        elif self.phase == "robberPlacement":
            rank = self.result._arena.rank_of(self.squad)
            certified = bool((self.result.cop_level[rank] < 0).any())
        else:
            certified = not self.result.is_cop_win(self.state())
        return "robberWins-certified" if certified else "ongoing"

    def legal_moves(self) -> dict:
        if self.phase == "finished":
            return {"kind": "none"}
        if self.phase == "copPlacement":
            return {
                "kind": "placeCops",
                "count": self.rules.cop_count,
                "edges": list(range(self.graph.m)),
                "stackingAllowed": True,
            }
        if self.phase == "robberPlacement":
            return {"kind": "placeRobber", "vertices": list(range(self.graph.n))}
        state = self.state()
        if state.turn == COPS:
            return {
                "kind": "cops",
                "perCop": [
                    {"from": e, "targets": [e, *self.graph.edge_neighbors[e]]}
                    for e in self.squad
                ],
            }
        moves = kernel.robber_moves(self.graph, self.rules, state)
        targets = [m.robber for m in moves if m.robber != state.robber]
        return {
            "kind": "robber",
            "targets": targets,
            "passAllowed": self.rules.robber_may_pass,
        }

    def hint_moves(self) -> dict | None:
        """Moves preserving the mover's current game value."""
        if not self.hints or self.phase == "finished":
            return None
        if self.phase == "copPlacement":
            if self.result.value == COPS_WIN:
                return {"kind": "placeCops", "placements": [list(self.result.best_placement)]}
            return {"kind": "placeCops", "placements": []}
        if self.phase == "robberPlacement":
            rank = self.result._arena.rank_of(self.squad)
            levels = self.result.cop_level[rank]
            escaping = [v for v in range(self.graph.n) if levels[v] < 0]
            if escaping:
                return {"kind": "placeRobber", "vertices": escaping}
            best = int(levels.argmax())
            return {"kind": "placeRobber", "vertices": [best]}
        state = self.state()
        winning_now = self.result.is_cop_win(state)
        if state.turn == ROBBER:
            keep = []
            for nxt in kernel.robber_moves(self.graph, self.rules, state):
                if self.result.is_cop_win(nxt) == winning_now:
                    keep.append("pass" if nxt.robber == state.robber else nxt.robber)
            return {"kind": "robber", "moves": keep}
        succs = kernel.cop_joint_moves(self.graph, state)
        if len(succs) > JOINT_HINT_LIMIT:
            return {"kind": "cops", "squads": [list(self.cop_strategy.move(state)[0])]}
        keep = [nxt for nxt in succs if self.result.is_cop_win(nxt) == winning_now]
        # best moves first: winning cops should see the fastest containment
        keep.sort(key=lambda nxt: (self.result.level(nxt), nxt[0]))
        return {"kind": "cops", "squads": [list(nxt[0]) for nxt in keep]}

    def payload(self) -> dict:
        return {
            "id": self.id,
            "phase": self.phase,
            "status": self.status(),
            "humanRole": self.human_role,
            "rules": {
                "kind": self.rules.kind,
                "copCount": self.rules.cop_count,
                "robberMayPass": self.rules.robber_may_pass,
            },
            "graph": {
                "n": self.graph.n,
                "edges": [list(e) for e in self.graph.edges],
                "graph6": graphs.to_graph6(self.graph),
            },
            "state": {
                "copEdges": list(self.squad) if self.squad is not None else None,
                "robber": self.robber,
                "turn": {COPS: "cops", ROBBER: "robber", None: None}[self.turn],
            },
            "legalMoves": self.legal_moves(),
            "hint": self.hint_moves(),
            "history": self.history,
        }

    # -- human move entry ----------------------------------------------------

    def apply_human_move(self, move: MoveRequest) -> None:
        if self.phase == "finished":
            raise HTTPException(409, detail={"error": "game over", "legal": self.legal_moves()})
        legal = self.legal_moves()
        if self.phase == "copPlacement":
            if self.human_role != "cops" or move.placeCops is None:
                raise HTTPException(409, detail={"error": "expected placeCops", "legal": legal})
            if len(move.placeCops) != self.rules.cop_count or any(
                not 0 <= e < self.graph.m for e in move.placeCops
            ):
                raise HTTPException(409, detail={"error": "bad placement", "legal": legal})
            self._apply_cop_placement(tuple(move.placeCops), by="human")
            self._engine_place_robber()
            return
        if self.phase == "robberPlacement":
            if self.human_role != "robber" or move.placeRobber is None:
                raise HTTPException(409, detail={"error": "expected placeRobber", "legal": legal})
            if not 0 <= move.placeRobber < self.graph.n:
                raise HTTPException(409, detail={"error": "bad vertex", "legal": legal})
            self._apply_robber_placement(move.placeRobber, by="human")
            self._engine_move()
            return

        state = self.state()
        human_turn = COPS if self.human_role == "cops" else ROBBER
        if state.turn != human_turn:
            raise HTTPException(409, detail={"error": "not your turn", "legal": legal})
        if human_turn == COPS:
            if move.cops is None:
                raise HTTPException(409, detail={"error": "expected cop moves", "legal": legal})
            try:
                nxt = kernel.apply_cop_move(self.graph, self.rules, state, list(move.cops))
            except ValueError as exc:
                raise HTTPException(409, detail={"error": str(exc), "legal": legal})
        else:
            if move.robber is None:
                raise HTTPException(409, detail={"error": "expected robber move", "legal": legal})
            target = state.robber if move.robber == "pass" else move.robber
            if move.robber == "pass" and not self.rules.robber_may_pass:
                raise HTTPException(409, detail={"error": "passing not allowed", "legal": legal})
            candidates = kernel.robber_moves(self.graph, self.rules, state)
            nxt = next((m for m in candidates if m.robber == target), None)
            if nxt is None:
                raise HTTPException(409, detail={"error": "illegal robber move", "legal": legal})
        self.squad, self.robber, self.turn = nxt[0], nxt.robber, nxt.turn
        self.history.append({"by": "human", "squad": list(self.squad), "robber": self.robber})
        self._finish_if_terminal()
        self._engine_move()


def build_app(state_cap: int = solver.DEFAULT_STATE_CAP, cache_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="containment", version="0.1.0")
    cache = SolveCache(cache_dir)
    sessions: dict[str, Session] = {}
    registry_lock = threading.Lock()

    @app.get("/health")
    def health():
        return {"status": "ok", "stateCap": state_cap}

    @app.get("/families")
    def families():
        return {"families": graphs.family_catalog()}

    @app.post("/solve")
    def solve_remote(req: SolveRequest):
        g = resolve_graph(req.family, req.graph6)
        kind = kernel.VERTEX_PURSUIT if req.vertexGame else CONTAINMENT
        try:
            rules = Rules(kind, req.k, robber_may_pass=True if req.vertexGame else not req.noPass)
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        try:
            return cache.summary(g, rules, state_cap)
        except StateCapExceeded as exc:
            raise HTTPException(
                413, {"error": "state cap", "estimate": exc.estimate, "cap": exc.cap}
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc))

    @app.post("/sessions", status_code=201)
    def create_session(req: CreateSessionRequest):
        g = resolve_graph(req.family, req.graph6)
        try:
            rules = Rules(CONTAINMENT, req.k, robber_may_pass=not req.noPass)
            result = cache.result(g, rules, state_cap)
        except StateCapExceeded as exc:
            raise HTTPException(
                413, {"error": "state cap", "estimate": exc.estimate, "cap": exc.cap}
            )
        except ValueError as exc:
            raise HTTPException(400, str(exc))
        session = Session(uuid.uuid4().hex[:12], g, rules, result, req.humanRole, req.hints)
        with registry_lock:
            sessions[session.id] = session
        return session.payload()

    def get_session(session_id: str) -> Session:
        with registry_lock:
            session = sessions.get(session_id)
        if session is None:
            raise HTTPException(404, f"no session {session_id}")
        return session

    @app.get("/sessions/{session_id}")
    def session_state(session_id: str):
        session = get_session(session_id)
        with session.lock:
            return session.payload()

    @app.post("/sessions/{session_id}/moves")
    def session_move(session_id: str, move: MoveRequest):
        session = get_session(session_id)
        with session.lock:
            session.apply_human_move(move)
            return session.payload()

    return app
