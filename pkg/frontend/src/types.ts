// Wire types for the play/solve service. Field names and index conventions
// mirror the server payloads exactly: vertices and edges use the canonical
// indexing the server reports in `graph.edges`.

export type Role = "cops" | "robber";
export type Phase = "copPlacement" | "robberPlacement" | "inPlay" | "finished";
export type Status = "ongoing" | "copsWin" | "robberWins-certified";

export interface RulesInfo {
  kind: string;
  copCount: number;
  robberMayPass: boolean;
}

export interface GraphInfo {
  n: number;
  edges: [number, number][];
  graph6: string;
}

export interface BoardState {
  copEdges: number[] | null;
  robber: number | null;
  turn: "cops" | "robber" | null;
}

export type LegalMoves =
  | { kind: "none" }
  | { kind: "placeCops"; count: number; edges: number[]; stackingAllowed: boolean }
  | { kind: "placeRobber"; vertices: number[] }
  | { kind: "cops"; perCop: { from: number; targets: number[] }[] }
  | { kind: "robber"; targets: number[]; passAllowed: boolean };

export type Hint =
  | { kind: "placeCops"; placements: number[][] }
  | { kind: "placeRobber"; vertices: number[] }
  | { kind: "cops"; squads: number[][] }
  | { kind: "robber"; moves: (number | "pass")[] }
  | null;

export interface SessionState {
  id: string;
  phase: Phase;
  status: Status;
  humanRole: Role;
  rules: RulesInfo;
  graph: GraphInfo;
  state: BoardState;
  legalMoves: LegalMoves;
  hint: Hint;
  history: Record<string, unknown>[];
}

export type MoveBody =
  | { placeCops: number[] }
  | { placeRobber: number }
  | { cops: [number, number][] }
  | { robber: number | "pass" };

export interface CreateSessionBody {
  family?: string;
  graph6?: string;
  k: number;
  noPass?: boolean;
  humanRole: Role;
  hints?: boolean;
}

export interface FamilyInfo {
  name: string;
  params: number;
  description: string;
}
