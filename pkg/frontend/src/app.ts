import { ApiError, Client } from "./api";
import { buildBoard, type BoardView } from "./board";
import { layoutFor, type Point } from "./layout";
import type { MoveBody, Role, SessionState } from "./types";

// Thin DOM layer: one active session per tab, no optimistic updates — every
// render comes from a service payload, so the board can never drift from
// the game the engine is actually playing.

const SVG_NS = "http://www.w3.org/2000/svg";
const SIZE = 640;

interface AppState {
  client: Client;
  family: string;
  session: SessionState | null;
  positions: Point[];
  selectedCop: number | null;
  pendingCopMoves: Map<number, [number, number][]>;
}

export function mount(root: HTMLElement, base = ""): void {
  const state: AppState = {
    client: new Client(base),
    family: "petersen",
    session: null,
    positions: [],
    selectedCop: null,
    pendingCopMoves: new Map(),
  };

  root.innerHTML = `
    <div class="lobby">
      <label>graph <input id="family" value="petersen" size="12"></label>
      <label>cops <input id="k" type="number" min="1" value="3" style="width:4em"></label>
      <label>play as
        <select id="role"><option value="robber">robber</option><option value="cops">cops</option></select>
      </label>
      <label><input id="nopass" type="checkbox"> robber must move</label>
      <label><input id="hints" type="checkbox" checked> hints</label>
      <button id="start">new game</button>
      <span id="error" class="error"></span>
    </div>
    <div id="banner" class="banner"></div>
    <svg id="board" viewBox="0 0 ${SIZE} ${SIZE}" width="${SIZE}" height="${SIZE}"></svg>
    <div class="controls"><button id="pass" hidden>pass</button><button id="submit" hidden>move cops</button></div>
    <ol id="log" class="log"></ol>
  `;

  const el = <T extends HTMLElement>(id: string) => root.querySelector<T>(`#${id}`)!;

  el<HTMLButtonElement>("start").addEventListener("click", async () => {
    const family = el<HTMLInputElement>("family").value.trim();
    const k = Number(el<HTMLInputElement>("k").value);
    const role = el<HTMLSelectElement>("role").value as Role;
    try {
      const session = await state.client.createSession({
        family,
        k,
        humanRole: role,
        noPass: el<HTMLInputElement>("nopass").checked,
        hints: el<HTMLInputElement>("hints").checked,
      });
      state.family = family;
      state.session = session;
      state.positions = layoutFor(family, session.graph);
      state.selectedCop = null;
      state.pendingCopMoves = new Map();
      el("error").textContent = "";
      render();
    } catch (err) {
      el("error").textContent =
        err instanceof ApiError ? `rejected: ${JSON.stringify(err.detail)}` : String(err);
    }
  });

  el<HTMLButtonElement>("pass").addEventListener("click", () => submit({ robber: "pass" }));

  el<HTMLButtonElement>("submit").addEventListener("click", () => {
    const session = state.session;
    if (!session || session.legalMoves.kind !== "cops") return;
    const moves: [number, number][] = [];
    const used = new Map(state.pendingCopMoves);
    for (const cop of session.legalMoves.perCop) {
      const queue = used.get(cop.from) ?? [];
      const next = queue.shift();
      moves.push(next ?? [cop.from, cop.from]);
    }
    submit({ cops: moves });
  });

  async function submit(body: MoveBody): Promise<void> {
    const session = state.session;
    if (!session) return;
    try {
      state.session = await state.client.move(session.id, body);
      state.selectedCop = null;
      state.pendingCopMoves = new Map();
      el("error").textContent = "";
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        el("board").classList.add("shake");
        setTimeout(() => el("board").classList.remove("shake"), 300);
      } else {
        el("error").textContent = String(err);
      }
    }
    render();
  }

  function onVertexClick(id: number): void {
    const session = state.session;
    if (!session) return;
    if (session.legalMoves.kind === "placeRobber") void submit({ placeRobber: id });
    else if (session.legalMoves.kind === "robber") void submit({ robber: id });
  }

  const placementPicks: number[] = [];

  function onEdgeClick(id: number): void {
    const session = state.session;
    if (!session) return;
    const legal = session.legalMoves;
    if (legal.kind === "placeCops") {
      placementPicks.push(id);
      if (placementPicks.length === legal.count) {
        void submit({ placeCops: placementPicks.splice(0) });
      } else {
        render();
      }
      return;
    }
    if (legal.kind === "cops") {
      if (state.selectedCop === null) {
        if (legal.perCop.some((c) => c.from === id)) state.selectedCop = id;
      } else {
        const pending = state.pendingCopMoves.get(state.selectedCop) ?? [];
        pending.push([state.selectedCop, id]);
        state.pendingCopMoves.set(state.selectedCop, pending);
        state.selectedCop = null;
      }
      render();
    }
  }

  function render(): void {
    const session = state.session;
    if (!session) return;
    const board = buildBoard(session, state.positions, state.selectedCop);
    el("banner").textContent = board.banner + ` [${session.status}]`;
    drawBoard(el<HTMLElement>("board") as unknown as SVGSVGElement, board, onVertexClick, onEdgeClick);
    const passButton = el<HTMLButtonElement>("pass");
    passButton.hidden = !board.pass.visible;
    passButton.disabled = !board.pass.enabled;
    passButton.classList.toggle("hinted", board.pass.hinted);
    el<HTMLButtonElement>("submit").hidden = session.legalMoves.kind !== "cops";
    const log = el<HTMLOListElement>("log");
    log.innerHTML = "";
    for (const entry of session.history) {
      const item = document.createElement("li");
      item.textContent = JSON.stringify(entry);
      log.appendChild(item);
    }
  }
}

function drawBoard(
  svg: SVGSVGElement,
  board: BoardView,
  onVertex: (id: number) => void,
  onEdge: (id: number) => void,
): void {
  svg.innerHTML = "";
  for (const edge of board.edges) {
    const line = document.createElementNS(SVG_NS, "line");
    line.setAttribute("x1", String(edge.x1 * SIZE));
    line.setAttribute("y1", String(edge.y1 * SIZE));
    line.setAttribute("x2", String(edge.x2 * SIZE));
    line.setAttribute("y2", String(edge.y2 * SIZE));
    line.setAttribute("class", ["edge", edge.clickable && "clickable", edge.hinted && "hinted"].filter(Boolean).join(" "));
    if (edge.clickable) line.addEventListener("click", () => onEdge(edge.id));
    svg.appendChild(line);
  }
  for (const edge of board.edges) {
    if (edge.copCount === 0 && !edge.clickable) continue;
    const token = document.createElementNS(SVG_NS, "g");
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(edge.midX * SIZE));
    circle.setAttribute("cy", String(edge.midY * SIZE));
    circle.setAttribute("r", edge.copCount > 0 ? "14" : "7");
    circle.setAttribute(
      "class",
      ["cop-token", edge.copCount === 0 && "empty", edge.clickable && "clickable", edge.hinted && "hinted"]
        .filter(Boolean)
        .join(" "),
    );
    circle.addEventListener("click", () => onEdge(edge.id));
    token.appendChild(circle);
    if (edge.copCount > 1) {
      // stacking badge: several cops may share one edge
      const badge = document.createElementNS(SVG_NS, "text");
      badge.setAttribute("x", String(edge.midX * SIZE + 10));
      badge.setAttribute("y", String(edge.midY * SIZE - 10));
      badge.setAttribute("class", "stack-badge");
      badge.textContent = `x${edge.copCount}`;
      token.appendChild(badge);
    }
    svg.appendChild(token);
  }
  for (const vertex of board.vertices) {
    const circle = document.createElementNS(SVG_NS, "circle");
    circle.setAttribute("cx", String(vertex.x * SIZE));
    circle.setAttribute("cy", String(vertex.y * SIZE));
    circle.setAttribute("r", vertex.robber ? "16" : "10");
    circle.setAttribute(
      "class",
      ["vertex", vertex.robber && "robber", vertex.clickable && "clickable", vertex.hinted && "hinted"]
        .filter(Boolean)
        .join(" "),
    );
    if (vertex.clickable) circle.addEventListener("click", () => onVertex(vertex.id));
    svg.appendChild(circle);
  }
}
