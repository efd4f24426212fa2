import { describe, expect, it } from "vitest";

import { banner, buildBoard, clickableEdges, clickableVertices, passAvailable } from "../src/board";
import { layoutFor } from "../src/layout";
import type { SessionState } from "../src/types";

// A recorded robber-turn payload on C4 with cops on edges 0 and 2:
// edge 1 = {1,2} and edge 3 = {0,3} are free, robber at 1 can cross edge 1.
const fixture: SessionState = {
  id: "fixture1",
  phase: "inPlay",
  status: "ongoing",
  humanRole: "robber",
  rules: { kind: "containment", copCount: 2, robberMayPass: true },
  graph: {
    n: 4,
    edges: [
      [0, 1],
      [0, 3],
      [1, 2],
      [2, 3],
    ],
    graph6: "C~",
  },
  state: { copEdges: [0, 3], robber: 1, turn: "robber" },
  legalMoves: { kind: "robber", targets: [2], passAllowed: true },
  hint: { kind: "robber", moves: [2] },
  history: [],
};

describe("board view model", () => {
  it("marks exactly the legal targets clickable", () => {
    const board = buildBoard(fixture, layoutFor("cycle:4", fixture.graph));
    const clickable = board.vertices.filter((v) => v.clickable).map((v) => v.id);
    expect(clickable).toEqual([2]);
    expect(clickableVertices(fixture)).toEqual([2]);
    expect(board.vertices.filter((v) => v.hinted).map((v) => v.id)).toEqual([2]);
  });

  it("occupied edges carry cop tokens and are never robber-clickable", () => {
    const board = buildBoard(fixture, layoutFor("cycle:4", fixture.graph));
    const withCops = board.edges.filter((e) => e.copCount > 0).map((e) => e.id);
    expect(withCops).toEqual([0, 3]);
    expect(board.edges.every((e) => !e.clickable)).toBe(true);
  });

  it("stacked cops are counted for the badge", () => {
    const stacked = {
      ...fixture,
      state: { ...fixture.state, copEdges: [0, 0] },
      legalMoves: { kind: "robber", targets: [2], passAllowed: true } as const,
    };
    const board = buildBoard(stacked, layoutFor("cycle:4", fixture.graph));
    expect(board.edges[0]!.copCount).toBe(2);
  });

  it("shows the pass button only when passing is legal", () => {
    expect(passAvailable(fixture).visible).toBe(true);
    const noPass = {
      ...fixture,
      rules: { ...fixture.rules, robberMayPass: false },
      legalMoves: { kind: "robber", targets: [2], passAllowed: false } as const,
    };
    expect(passAvailable(noPass).visible).toBe(false);
  });

  it("cop placement exposes every edge; in-play cops expose per-cop targets", () => {
    const placing: SessionState = {
      ...fixture,
      phase: "copPlacement",
      humanRole: "cops",
      state: { copEdges: null, robber: null, turn: null },
      legalMoves: { kind: "placeCops", count: 2, edges: [0, 1, 2, 3], stackingAllowed: true },
      hint: null,
    };
    expect(clickableEdges(placing, null)).toEqual([0, 1, 2, 3]);

    const moving: SessionState = {
      ...fixture,
      humanRole: "cops",
      state: { copEdges: [0, 3], robber: 1, turn: "cops" },
      legalMoves: {
        kind: "cops",
        perCop: [
          { from: 0, targets: [0, 1, 2] },
          { from: 3, targets: [1, 2, 3] },
        ],
      },
      hint: null,
    };
    expect(clickableEdges(moving, null)).toEqual([0, 3]); // pick a cop first
    expect(clickableEdges(moving, 0)).toEqual([0, 1, 2]);
    expect(clickableEdges(moving, 3)).toEqual([1, 2, 3]);
  });

  it("banner reflects phase and certified status", () => {
    expect(banner(fixture)).toBe("robber to move");
    const certified = { ...fixture, status: "robberWins-certified" as const };
    expect(banner(certified)).toContain("evasion certified");
    const done: SessionState = {
      ...fixture,
      phase: "finished",
      status: "copsWin",
      history: [
        { by: "engine", placeCops: [0, 3] },
        { by: "human", placeRobber: 1 },
        { by: "engine", squad: [0, 2], robber: 1 },
      ],
    };
    expect(banner(done)).toBe("Contained in 1 cop turn(s)");
  });
});

describe("layouts", () => {
  it("is deterministic", () => {
    const g = { n: 9, edges: [[0, 1]] as [number, number][], graph6: "" };
    expect(layoutFor("prufer:1,2,3", g)).toEqual(layoutFor("prufer:1,2,3", g));
  });

  it("keeps known families inside the unit square with distinct positions", () => {
    for (const [family, n, m] of [
      ["petersen", 10, 15],
      ["ktrack:5", 10, 15],
      ["ring:4", 16, 24],
      ["cycle:7", 7, 7],
      ["q3", 8, 12],
    ] as const) {
      const graph = { n, edges: Array(m).fill([0, 1]) as [number, number][], graph6: "" };
      const pts = layoutFor(family, graph);
      expect(pts).toHaveLength(n);
      const seen = new Set(pts.map((p) => `${p.x.toFixed(4)},${p.y.toFixed(4)}`));
      expect(seen.size).toBe(n);
      for (const p of pts) {
        expect(p.x).toBeGreaterThan(0);
        expect(p.x).toBeLessThan(1);
        expect(p.y).toBeGreaterThan(0);
        expect(p.y).toBeLessThan(1);
      }
    }
  });
});
