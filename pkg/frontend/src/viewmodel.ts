// Pure view-model logic: everything the renderer draws and every decision
// about what a click means is computed here from the latest server payload.
// The server stays authoritative for the rules; the only local judgement is
// presentation (layout scaling, muting, highlights) and the click-to-move
// convention: clicking the half of an edge nearer a vertex directs the
// arrow TOWARD that vertex, and only moves the server just listed as legal
// are ever sent.

import { BoardDoc, Dir, GamePayload, MoveDoc } from "./types.js";

export interface EdgeView {
  id: number;
  x1: number;
  y1: number;
  x2: number;
  y2: number; // endpoint coordinates in screen space (u first)
  mark: Dir | null;
  unmarkable: boolean;
  clickable: boolean; // some legal orientation exists
  inWonCell: boolean;
}

export interface VertexView {
  id: number;
  x: number;
  y: number;
  exempt: boolean;
}

export interface ViewModel {
  vertices: VertexView[];
  edges: EdgeView[];
  banner: string;
  gameOver: boolean;
  humanTurn: boolean;
  completableCells: number[][]; // vertex chains of cells one move from done
}

export interface Transform {
  scale: number;
  ox: number;
  oy: number;
}

export function fitTransform(board: BoardDoc, width: number, height: number,
                             margin = 40): Transform {
  const xs = board.vertices.map(v => v.x);
  const ys = board.vertices.map(v => v.y);
  const minX = Math.min(...xs), maxX = Math.max(...xs);
  const minY = Math.min(...ys), maxY = Math.max(...ys);
  const spanX = Math.max(maxX - minX, 1e-9);
  const spanY = Math.max(maxY - minY, 1e-9);
  const scale = Math.min((width - 2 * margin) / spanX, (height - 2 * margin) / spanY);
  // flip y so the figures draw the usual way up
  return {
    scale,
    ox: margin - minX * scale + (width - 2 * margin - spanX * scale) / 2,
    oy: height - margin + minY * scale - (height - 2 * margin - spanY * scale) / 2,
  };
}

export function toScreen(t: Transform, x: number, y: number): [number, number] {
  return [t.ox + x * t.scale, t.oy - y * t.scale];
}

export function bannerText(game: GamePayload): string {
  const st = game.status;
  if (!st.in_progress && st.winner) {
    const how = st.reason === "cycle_cell"
      ? `completing cycle cell [${(st.cell_vertices ?? []).join(" ")}]`
      : "making the last available move";
    return `${st.winner} wins by ${how}`;
  }
  const seat = game.to_move === game.engine_role ? "engine" : "you";
  return `Player ${game.to_move} to move (${seat})`;
}

/** Cells whose edges are all consistently directed except one unmarked edge. */
export function completableCells(game: GamePayload): number[][] {
  const out: number[][] = [];
  const edgeByPair = new Map<string, { id: number; u: number; v: number }>();
  for (const e of game.board.edges) {
    edgeByPair.set(pairKey(e.u, e.v), e);
  }
  for (const cell of game.board.cells) {
    let blanks = 0;
    let fwd = true;
    let bwd = true;
    for (let i = 0; i < cell.length; i++) {
      const a = cell[i], b = cell[(i + 1) % cell.length];
      const e = edgeByPair.get(pairKey(a, b));
      if (!e) continue;
      const mark = game.marks[String(e.id)];
      if (mark === null || mark === undefined) {
        blanks += 1;
        continue;
      }
      const along: Dir = e.u === a ? "uv" : "vu";
      if (mark === along) bwd = false;
      else fwd = false;
    }
    if (blanks === 1 && (fwd || bwd)) out.push(cell);
  }
  return out;
}

function pairKey(a: number, b: number): string {
  return a < b ? `${a}:${b}` : `${b}:${a}`;
}

export function buildViewModel(game: GamePayload, humanSeat: 1 | 2 | null,
                               t: Transform): ViewModel {
  const pos = new Map(game.board.vertices.map(v => [v.id, toScreen(t, v.x, v.y)]));
  const legalByEdge = new Map<number, Dir[]>();
  for (const mv of game.legal_moves) {
    const dirs = legalByEdge.get(mv.edge) ?? [];
    dirs.push(mv.dir);
    legalByEdge.set(mv.edge, dirs);
  }
  const wonCell = new Set(game.status.cell_vertices ?? []);
  const unmarkable = new Set(game.unmarkable);
  const edges: EdgeView[] = game.board.edges.map(e => {
    const [x1, y1] = pos.get(e.u)!;
    const [x2, y2] = pos.get(e.v)!;
    const mark = game.marks[String(e.id)] ?? null;
    return {
      id: e.id, x1, y1, x2, y2, mark,
      unmarkable: unmarkable.has(e.id),
      clickable: (legalByEdge.get(e.id) ?? []).length > 0,
      inWonCell: wonCell.has(e.u) && wonCell.has(e.v)
        && cellHasEdge(game.status.cell_vertices ?? [], e.u, e.v),
    };
  });
  const humanTurn = game.status.in_progress && game.to_move !== null
    && game.to_move !== game.engine_role
    && (humanSeat === null || game.to_move === humanSeat);
  return {
    vertices: game.board.vertices.map(v => {
      const [x, y] = pos.get(v.id)!;
      return { id: v.id, x, y, exempt: game.board.exempt.includes(v.id) };
    }),
    edges,
    banner: bannerText(game),
    gameOver: !game.status.in_progress,
    humanTurn,
    completableCells: completableCells(game),
  };
}

function cellHasEdge(cell: number[], a: number, b: number): boolean {
  for (let i = 0; i < cell.length; i++) {
    const p = cell[i], q = cell[(i + 1) % cell.length];
    if ((p === a && q === b) || (p === b && q === a)) return true;
  }
  return false;
}

/**
 * Resolve a click at (x, y) on an edge into the move it means: toward the
 * nearer endpoint. Returns null when the edge is not playable or the
 * resulting orientation was not in the server's legal list.
 */
export function clickToMove(game: GamePayload, view: EdgeView,
                            x: number, y: number): MoveDoc | null {
  if (view.mark !== null || view.unmarkable) return null;
  const dU = Math.hypot(x - view.x1, y - view.y1);
  const dV = Math.hypot(x - view.x2, y - view.y2);
  const dir: Dir = dV <= dU ? "uv" : "vu"; // toward the nearer endpoint
  const legal = game.legal_moves.some(m => m.edge === view.id && m.dir === dir);
  return legal ? { edge: view.id, dir } : null;
}

export function violationText(v: { rule?: string; vertex?: number | null }): string {
  if (v.rule === "sink") return `would create a sink at vertex ${v.vertex}`;
  if (v.rule === "source") return `would create a source at vertex ${v.vertex}`;
  if (v.rule === "marked") return "edge is already directed";
  return "illegal move";
}
