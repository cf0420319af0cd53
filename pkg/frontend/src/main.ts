// Boot and interaction loop. One in-flight mutation at a time; every
// response replaces the whole view, and the engine seat is polled right
// after a human move lands.

import { ApiError, GameApi } from "./api.js";
import { renderBoard, toast } from "./render.js";
import {
  buildViewModel,
  clickToMove,
  fitTransform,
  toScreen,
  violationText,
} from "./viewmodel.js";
import { GamePayload } from "./types.js";

const api = new GameApi("");
let game: GamePayload | null = null;
let busy = false;

const svg = document.getElementById("board") as unknown as SVGSVGElement;
const banner = document.getElementById("banner")!;
const newGameBtn = document.getElementById("new-game") as HTMLButtonElement;
const boardSelect = document.getElementById("board-select") as HTMLSelectElement;
const seatSelect = document.getElementById("seat-select") as HTMLSelectElement;

function redraw(): void {
  if (!game) return;
  const width = svg.clientWidth || 760;
  const height = svg.clientHeight || 560;
  const t = fitTransform(game.board, width, height);
  const positions = new Map(
    game.board.vertices.map(v => [v.id, toScreen(t, v.x, v.y)]),
  );
  const humanSeat = game.engine_role === 1 ? 2 : game.engine_role === 2 ? 1 : null;
  const vm = buildViewModel(game, humanSeat as 1 | 2 | null, t);
  banner.textContent = vm.banner;
  renderBoard(svg, vm, positions, {
    onEdgeClick: (edge, x, y) => {
      if (!game || busy || vm.gameOver) return;
      if (!vm.humanTurn) {
        toast("not your turn");
        return;
      }
      if (edge.unmarkable) {
        toast("unmarkable: either direction would make a sink or source");
        return;
      }
      const move = clickToMove(game, edge, x, y);
      if (!move) {
        toast("no legal orientation that way");
        return;
      }
      void submit(move);
    },
  });
}

async function submit(move: { edge: number; dir: "uv" | "vu" }): Promise<void> {
  if (!game) return;
  busy = true;
  try {
    game = await api.postMove(game.id, move);
    redraw();
    while (game.status.in_progress && game.engine_role !== null
           && game.to_move === game.engine_role) {
      game = await api.engineMove(game.id);
      redraw();
    }
  } catch (err) {
    if (err instanceof ApiError) toast(violationText(err.payload));
    else toast("network trouble; board unchanged - try again");
  } finally {
    busy = false;
  }
}

async function newGame(): Promise<void> {
  busy = true;
  try {
    const seat = seatSelect.value; // "1", "2", or "none"
    const engineRole = seat === "1" ? 2 : seat === "2" ? 1 : null;
    game = await api.createGame(boardSelect.value, engineRole as 1 | 2 | null);
    redraw();
    while (game.status.in_progress && game.engine_role !== null
           && game.to_move === game.engine_role) {
      game = await api.engineMove(game.id);
      redraw();
    }
  } catch (err) {
    toast(err instanceof ApiError ? err.payload.error : "could not reach the service");
  } finally {
    busy = false;
  }
}

newGameBtn.addEventListener("click", () => void newGame());
window.addEventListener("resize", redraw);
void newGame();
