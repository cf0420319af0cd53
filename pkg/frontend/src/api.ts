// Thin typed client for the game service. Same-origin by default (the
// service serves the built UI), overridable for development.

import { GamePayload, MoveDoc, RuleViolation } from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public payload: RuleViolation) {
    super(payload.error);
  }
}

async function request<T>(base: string, method: string, path: string,
                          body?: unknown): Promise<T> {
  const resp = await fetch(base + path, {
    method,
    headers: { "Content-Type": "application/json" },
    body: body === undefined ? undefined : JSON.stringify(body),
  });
  const data = await resp.json();
  if (!resp.ok) throw new ApiError(resp.status, data as RuleViolation);
  return data as T;
}

export class GameApi {
  constructor(private base: string = "") {}

  createGame(board: string, engineRole: 1 | 2 | null,
             engineKind = "solver"): Promise<GamePayload> {
    const body: Record<string, unknown> = { board, engine_kind: engineKind };
    if (engineRole !== null) body.engine_role = engineRole;
    return request(this.base, "POST", "/games", body);
  }

  getGame(id: string): Promise<GamePayload> {
    return request(this.base, "GET", `/games/${id}`);
  }

  postMove(id: string, move: MoveDoc): Promise<GamePayload> {
    return request(this.base, "POST", `/games/${id}/moves`, move);
  }

  engineMove(id: string): Promise<GamePayload> {
    return request(this.base, "POST", `/games/${id}/engine-move`);
  }
}
