import type { Point } from "./layout";
import type { SessionState } from "./types";

// Pure projection of a service session onto drawable, clickable elements.
// The invariant the tests pin down: exactly the service-reported legal moves
// are clickable, never more, never fewer.

export interface VertexView {
  id: number;
  x: number;
  y: number;
  robber: boolean;
  clickable: boolean;
  hinted: boolean;
}

export interface EdgeView {
  id: number;
  from: number;
  to: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  midX: number;
  midY: number;
  copCount: number;
  clickable: boolean;
  hinted: boolean;
}

export interface PassButton {
  visible: boolean;
  enabled: boolean;
  hinted: boolean;
}

export interface BoardView {
  vertices: VertexView[];
  edges: EdgeView[];
  pass: PassButton;
  banner: string;
  selectedCop: number | null;
}

/** Vertices the robber-side human may click right now. */
export function clickableVertices(session: SessionState): number[] {
  const legal = session.legalMoves;
  if (legal.kind === "placeRobber") return [...legal.vertices];
  if (legal.kind === "robber") return [...legal.targets];
  return [];
}

/** Edges the cop-side human may click, given the currently selected cop. */
export function clickableEdges(session: SessionState, selectedCop: number | null): number[] {
  const legal = session.legalMoves;
  if (legal.kind === "placeCops") return [...legal.edges];
  if (legal.kind === "cops") {
    if (selectedCop === null) return legal.perCop.map((c) => c.from);
    const entry = legal.perCop.find((c) => c.from === selectedCop);
    return entry ? [...entry.targets] : [];
  }
  return [];
}

export function passAvailable(session: SessionState): PassButton {
  const legal = session.legalMoves;
  if (legal.kind !== "robber") return { visible: false, enabled: false, hinted: false };
  if (!legal.passAllowed) return { visible: false, enabled: false, hinted: false };
  const hinted =
    session.hint?.kind === "robber" ? session.hint.moves.includes("pass") : false;
  return { visible: true, enabled: true, hinted };
}

function hintedVertices(session: SessionState): Set<number> {
  const hint = session.hint;
  if (!hint) return new Set();
  if (hint.kind === "placeRobber") return new Set(hint.vertices);
  if (hint.kind === "robber")
    return new Set(hint.moves.filter((m): m is number => m !== "pass"));
  return new Set();
}

function hintedEdges(session: SessionState): Set<number> {
  const hint = session.hint;
  if (!hint) return new Set();
  if (hint.kind === "placeCops") return new Set(hint.placements.flat());
  if (hint.kind === "cops") return new Set(hint.squads.flat());
  return new Set();
}

function countCopMoves(session: SessionState): number {
  // cop turns alternate starting with the cops right after placement
  let turns = 0;
  let expectCops = true;
  for (const h of session.history) {
    if (!("squad" in h)) continue;
    if (expectCops) turns += 1;
    expectCops = !expectCops;
  }
  return turns;
}

export function banner(session: SessionState): string {
  if (session.phase === "copPlacement") return `place ${session.rules.copCount} cops on edges`;
  if (session.phase === "robberPlacement") return "place the robber on a vertex";
  if (session.phase === "finished")
    return `Contained in ${countCopMoves(session)} cop turn(s)`;
  const turn = session.state.turn === "cops" ? "cops to move" : "robber to move";
  if (session.status === "robberWins-certified")
    return `${turn} (robber evasion certified)`;
  return turn;
}

export function buildBoard(
  session: SessionState,
  positions: Point[],
  selectedCop: number | null = null,
): BoardView {
  const clickV = new Set(clickableVertices(session));
  const clickE = new Set(clickableEdges(session, selectedCop));
  const hintV = hintedVertices(session);
  const hintE = hintedEdges(session);
  const copCounts = new Map<number, number>();
  for (const e of session.state.copEdges ?? [])
    copCounts.set(e, (copCounts.get(e) ?? 0) + 1);

  const vertices: VertexView[] = positions.map((p, id) => ({
    id,
    x: p.x,
    y: p.y,
    robber: session.state.robber === id,
    clickable: clickV.has(id),
    hinted: hintV.has(id),
  }));

  const edges: EdgeView[] = session.graph.edges.map(([u, v], id) => {
    const a = positions[u]!;
    const b = positions[v]!;
    return {
      id,
      from: u,
      to: v,
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
      midX: (a.x + b.x) / 2,
      midY: (a.y + b.y) / 2,
      copCount: copCounts.get(id) ?? 0,
      clickable: clickE.has(id),
      hinted: hintE.has(id),
    };
  });

  return {
    vertices,
    edges,
    pass: passAvailable(session),
    banner: banner(session),
    selectedCop,
  };
}
