import type { GraphInfo } from "./types";

export interface Point {
  x: number;
  y: number;
}

const TAU = Math.PI * 2;
const CX = 0.5;
const CY = 0.5;

function onCircle(index: number, count: number, radius: number, phase = -Math.PI / 2): Point {
  const angle = phase + (TAU * index) / count;
  return { x: CX + radius * Math.cos(angle), y: CY + radius * Math.sin(angle) };
}

/** Deterministic PRNG so force layouts (and screenshots) are reproducible. */
function mulberry32(seed: number): () => number {
  let a = seed >>> 0;
  return () => {
    a |= 0;
    a = (a + 0x6d2b79f5) | 0;
    let t = Math.imul(a ^ (a >>> 15), 1 | a);
    t = (t + Math.imul(t ^ (t >>> 7), 61 | t)) ^ t;
    return ((t ^ (t >>> 14)) >>> 0) / 4294967296;
  };
}

function forceLayout(graph: GraphInfo, seed = 7): Point[] {
  const rand = mulberry32(seed);
  const pos = Array.from({ length: graph.n }, () => ({
    x: 0.2 + 0.6 * rand(),
    y: 0.2 + 0.6 * rand(),
  }));
  const ideal = 0.8 / Math.sqrt(Math.max(graph.n, 2));
  for (let iter = 0; iter < 300; iter++) {
    const step = 0.02 * (1 - iter / 300);
    const disp = pos.map(() => ({ x: 0, y: 0 }));
    for (let i = 0; i < graph.n; i++) {
      for (let j = i + 1; j < graph.n; j++) {
        const dx = pos[i]!.x - pos[j]!.x;
        const dy = pos[i]!.y - pos[j]!.y;
        const d2 = Math.max(dx * dx + dy * dy, 1e-6);
        const push = (ideal * ideal) / d2;
        disp[i]!.x += dx * push;
        disp[i]!.y += dy * push;
        disp[j]!.x -= dx * push;
        disp[j]!.y -= dy * push;
      }
    }
    for (const [u, v] of graph.edges) {
      const dx = pos[u]!.x - pos[v]!.x;
      const dy = pos[u]!.y - pos[v]!.y;
      const d = Math.sqrt(dx * dx + dy * dy) || 1e-3;
      const pull = (d - ideal) / d;
      disp[u]!.x -= dx * pull * 0.5;
      disp[u]!.y -= dy * pull * 0.5;
      disp[v]!.x += dx * pull * 0.5;
      disp[v]!.y += dy * pull * 0.5;
    }
    for (let i = 0; i < graph.n; i++) {
      pos[i]!.x = Math.min(0.95, Math.max(0.05, pos[i]!.x + disp[i]!.x * step));
      pos[i]!.y = Math.min(0.95, Math.max(0.05, pos[i]!.y + disp[i]!.y * step));
    }
  }
  return pos;
}

/**
 * Vertex coordinates in the unit square. Known families get hand-tuned
 * concentric layouts keyed on the family spec string; anything else falls
 * back to the seeded force layout.
 */
export function layoutFor(family: string | undefined, graph: GraphInfo): Point[] {
  const name = (family ?? "").split(":")[0];
  const param = Number((family ?? "").split(":")[1] ?? NaN);

  if (name === "cycle" || name === "complete") {
    return Array.from({ length: graph.n }, (_, i) => onCircle(i, graph.n, 0.42));
  }
  if (name === "path" || name === "tree-path") {
    return Array.from({ length: graph.n }, (_, i) => ({
      x: graph.n === 1 ? CX : 0.08 + (0.84 * i) / (graph.n - 1),
      y: CY,
    }));
  }
  if (name === "star") {
    const pts = [{ x: CX, y: CY }];
    for (let i = 1; i < graph.n; i++) pts.push(onCircle(i - 1, graph.n - 1, 0.4));
    return pts;
  }
  if (name === "bipartite") {
    const a = Number.isFinite(param) ? param : Math.floor(graph.n / 2);
    const pts: Point[] = [];
    for (let i = 0; i < a; i++) pts.push({ x: 0.2, y: 0.1 + (0.8 * (i + 0.5)) / a });
    for (let i = 0; i < graph.n - a; i++)
      pts.push({ x: 0.8, y: 0.1 + (0.8 * (i + 0.5)) / (graph.n - a) });
    return pts;
  }
  if (name === "q3" && graph.n === 8) {
    // two nested squares in gray-code order so all edges stay short
    const order = [0, 1, 3, 2];
    const pts: Point[] = new Array(8);
    order.forEach((v, i) => {
      pts[v] = onCircle(i, 4, 0.42, -Math.PI / 4 - Math.PI / 2);
      pts[v + 4] = onCircle(i, 4, 0.2, -Math.PI / 4 - Math.PI / 2);
    });
    return pts;
  }
  if (name === "ktrack" && graph.n % 2 === 0) {
    const k = graph.n / 2;
    const pts: Point[] = new Array(graph.n);
    for (let i = 0; i < k; i++) {
      pts[i] = onCircle(i, k, 0.42);
      pts[k + i] = onCircle(i, k, 0.22);
    }
    return pts;
  }
  if (name === "ring" && graph.n % 4 === 0) {
    const k = graph.n / 4;
    const pts: Point[] = new Array(graph.n);
    for (let i = 0; i < k; i++) {
      const theta = -Math.PI / 2 + (TAU * i) / k;
      const cx = CX + 0.33 * Math.cos(theta);
      const cy = CY + 0.33 * Math.sin(theta);
      for (let j = 0; j < 4; j++) {
        // corner order matches the cyclic 0-1-2-3 square; 1 and 3 face the
        // neighboring squares that their bridges connect to
        const local = theta + Math.PI / 4 + (TAU * j) / 4;
        pts[4 * i + j] = { x: cx + 0.1 * Math.cos(local), y: cy + 0.1 * Math.sin(local) };
      }
    }
    return pts;
  }
  if (name === "petersen" && graph.n === 10) {
    const pts: Point[] = new Array(10);
    for (let i = 0; i < 5; i++) {
      pts[i] = onCircle(i, 5, 0.42);
      pts[5 + i] = onCircle(i, 5, 0.2);
    }
    return pts;
  }
  if (name === "mcgee" && graph.n === 24) {
    return Array.from({ length: 24 }, (_, i) => onCircle(i, 24, 0.42));
  }
  return forceLayout(graph, 7 + graph.n);
}
