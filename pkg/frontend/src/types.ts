// Wire types mirroring the game service payloads.

export interface VertexDoc {
  id: number;
  x: number;
  y: number;
}

export interface EdgeDoc {
  id: number;
  u: number;
  v: number;
}

export interface BoardDoc {
  name: string;
  vertices: VertexDoc[];
  edges: EdgeDoc[];
  cells: number[][];
  exempt: number[];
  symmetry: Record<string, Record<string, number>>;
}

export type Dir = "uv" | "vu";

export interface MoveDoc {
  edge: number;
  dir: Dir;
}

export interface StatusDoc {
  in_progress: boolean;
  winner: "P1" | "P2" | null;
  reason: "cycle_cell" | "last_move" | null;
  cell: number | null;
  cell_vertices: number[] | null;
}

export interface GamePayload {
  id: string;
  board: BoardDoc;
  board_sha256: string;
  history: MoveDoc[];
  marks: Record<string, Dir | null>;
  status: StatusDoc;
  to_move: 1 | 2 | null;
  legal_moves: MoveDoc[];
  unmarkable: number[];
  engine_role: 1 | 2 | null;
  engine_kind: string;
  engine_move?: MoveDoc;
}

export interface RuleViolation {
  error: string;
  rule?: "marked" | "sink" | "source" | "finished";
  edge?: number;
  vertex?: number;
}
