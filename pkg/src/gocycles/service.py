"""HTTP game service: sessions, moves, engine replies, and analysis.

Endpoints (JSON in/out):

- POST /games                {board: family-string | board-doc, engine_role: 1|2?,
                              engine_kind: "solver" | policy name}
- GET  /games/{id}           board + marks + status + legal moves + unmarkable edges
- POST /games/{id}/moves     {edge, dir: "uv"|"vu"} -> updated state, or a
                             structured violation naming the broken rule
- POST /games/{id}/engine-move   the engine's reply when it is its turn
- GET  /games/{id}/analysis  exact solver verdict; refuses boards above the
                             size threshold with an explicit "too large"

Sessions live in memory; each serializes its own mutations behind a lock.
Analysis runs on a worker thread with a timeout so a big solve cannot wedge
the request path. The web UI is served from / when a frontend build is
available, but every game-rule decision stays server-side.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass, field
from http.server import BaseHTTPRequestHandler, ThreadingHTTPServer
from pathlib import Path

from . import boardio, generators
from .board import Board, Move, Orientation
from .solver import ResourceLimitError, SearchLimits, solve
from .state import (
    GameState,
    IllegalMoveError,
    Player,
    apply_move,
    is_unmarkable,
    legal_moves,
    new_game,
    status,
)
from .strategies import POLICIES, PolicyError


class ApiError(Exception):
    def __init__(self, code: int, payload: dict):
        self.code = code
        self.payload = payload


@dataclass
class GameSession:
    id: str
    board: Board
    state: GameState
    engine_role: Player | None
    engine_kind: str
    created: float = field(default_factory=time.time)
    updated: float = field(default_factory=time.time)
    lock: threading.Lock = field(default_factory=threading.Lock)


class GameService:
    """Session store plus the request handlers, HTTP-framework free."""

    def __init__(self, max_analysis_edges: int = 14, analysis_timeout: float = 30.0):
        self.sessions: dict[str, GameSession] = {}
        self.max_analysis_edges = max_analysis_edges
        self.analysis_timeout = analysis_timeout
        self.store_lock = threading.Lock()

    # -- session handling --------------------------------------------------

    def create_game(self, body: dict) -> dict:
        spec = body.get("board") or body.get("family")
        if spec is None:
            raise ApiError(400, {"error": "missing board"})
        try:
            if isinstance(spec, str):
                if spec.startswith("named:"):
                    board, preset = generators.named_with_preset(spec.split(":", 1)[1])
                    state = new_game(board)
                    for mv in preset:
                        state = apply_move(state, mv)
                else:
                    board = generators.generate(spec)
                    state = new_game(board)
            else:
                board = boardio.board_from_doc(spec)
                state = new_game(board)
        except (generators.FamilyError, KeyError, ValueError) as exc:
            raise ApiError(400, {"error": f"bad board: {exc}"})
        role = body.get("engine_role")
        engine_role = None
        if role in (1, 2):
            engine_role = Player.P1 if role == 1 else Player.P2
        elif role is not None:
            raise ApiError(400, {"error": "engine_role must be 1 or 2"})
        kind = body.get("engine_kind", "solver")
        if kind != "solver" and kind not in POLICIES:
            raise ApiError(400, {"error": f"unknown engine_kind: {kind}"})
        session = GameSession(uuid.uuid4().hex, board, state, engine_role, kind)
        with self.store_lock:
            self.sessions[session.id] = session
        return self.game_payload(session)

    def _session(self, sid: str) -> GameSession:
        try:
            return self.sessions[sid]
        except KeyError:
            raise ApiError(404, {"error": "unknown session"})

    def game_payload(self, s: GameSession) -> dict:
        st = status(s.state)
        return {
            "id": s.id,
            "board": boardio.board_to_doc(s.board),
            "board_sha256": boardio.board_sha256(s.board),
            "history": [boardio.move_to_doc(m) for m in s.state.history],
            "marks": {
                str(e.id): (None if s.state.marks[i] == 0 else
                            ("uv" if s.state.marks[i] == 1 else "vu"))
                for i, e in enumerate(s.board.edge_order)
            },
            "status": {
                "in_progress": st.in_progress,
                "winner": st.winner.name if st.winner else None,
                "reason": st.reason,
                "cell": st.cell,
                "cell_vertices": list(s.board.cells[st.cell]) if st.cell is not None else None,
            },
            "to_move": None if not st.in_progress else (1 if s.state.to_move is Player.P1 else 2),
            "legal_moves": [boardio.move_to_doc(m) for m in legal_moves(s.state)],
            "unmarkable": [e.id for e in s.board.edge_order
                           if is_unmarkable(s.state, e.id)],
            "engine_role": None if s.engine_role is None else (1 if s.engine_role is Player.P1 else 2),
            "engine_kind": s.engine_kind,
        }

    def get_game(self, sid: str) -> dict:
        return self.game_payload(self._session(sid))

    def post_move(self, sid: str, body: dict) -> dict:
        s = self._session(sid)
        with s.lock:
            try:
                mv = boardio.move_from_doc(body)
            except (KeyError, ValueError) as exc:
                raise ApiError(400, {"error": f"bad move: {exc}"})
            if s.engine_role is not None and status(s.state).in_progress \
                    and s.state.to_move is s.engine_role:
                raise ApiError(409, {"error": "not your turn: engine to move"})
            try:
                s.state = apply_move(s.state, mv)
            except IllegalMoveError as exc:
                raise ApiError(422, {
                    "error": "illegal move",
                    "rule": exc.rule,
                    "edge": exc.edge,
                    "vertex": exc.vertex,
                })
            s.updated = time.time()
            return self.game_payload(s)

    def post_engine_move(self, sid: str) -> dict:
        s = self._session(sid)
        with s.lock:
            st = status(s.state)
            if not st.in_progress:
                raise ApiError(409, {"error": "game over"})
            if s.engine_role is None or s.state.to_move is not s.engine_role:
                raise ApiError(409, {"error": "not the engine's turn"})
            mv = self._engine_move(s)
            s.state = apply_move(s.state, mv)
            s.updated = time.time()
            payload = self.game_payload(s)
            payload["engine_move"] = boardio.move_to_doc(mv)
            return payload

    def _engine_move(self, s: GameSession) -> Move:
        if s.engine_kind == "solver" and s.board.num_edges <= self.max_analysis_edges:
            res = solve(s.state)
            if res.winning_moves:
                return res.winning_moves[0]
            return legal_moves(s.state)[0]
        if s.engine_kind == "solver":
            return legal_moves(s.state)[0]  # over threshold: any legal move
        try:
            inst = POLICIES[s.engine_kind](s.board, s.engine_role)
            for mv in s.state.history:
                inst.observe(mv)
            return inst.choose(s.state)
        except PolicyError as exc:
            raise ApiError(409, {"error": f"policy refused: {exc}"})

    def get_analysis(self, sid: str) -> dict:
        s = self._session(sid)
        if s.board.num_edges > self.max_analysis_edges:
            raise ApiError(413, {
                "error": "too large",
                "edges": s.board.num_edges,
                "max_edges": self.max_analysis_edges,
            })
        if not status(s.state).in_progress:
            raise ApiError(409, {"error": "game over"})
        result: dict = {}

        def work():
            try:
                res = solve(s.state, SearchLimits())
                result["payload"] = {
                    "winner": res.winner.name,
                    "to_move": 1 if s.state.to_move is Player.P1 else 2,
                    "winning_moves": [boardio.move_to_doc(m) for m in res.winning_moves],
                    "principal_line": [boardio.move_to_doc(m) for m in res.principal_line],
                    "nodes": res.stats.nodes,
                    "millis": res.stats.millis,
                }
            except ResourceLimitError as exc:
                result["error"] = ApiError(503, {"error": f"analysis failed: {exc}"})

        worker = threading.Thread(target=work, daemon=True)
        worker.start()
        worker.join(self.analysis_timeout)
        if worker.is_alive():
            raise ApiError(503, {"error": "analysis timeout"})
        if "error" in result:
            raise result["error"]
        return result["payload"]


def make_handler(service: GameService, static_dir: Path | None):
    class Handler(BaseHTTPRequestHandler):
        def log_message(self, fmt, *args):  # quiet by default
            pass

        def _send(self, code: int, payload: dict) -> None:
            body = json.dumps(payload).encode()
            self.send_response(code)
            self.send_header("Content-Type", "application/json")
            self.send_header("Content-Length", str(len(body)))
            self.send_header("Access-Control-Allow-Origin", "*")
            self.end_headers()
            self.wfile.write(body)

        def _body(self) -> dict:
            length = int(self.headers.get("Content-Length") or 0)
            if not length:
                return {}
            try:
                return json.loads(self.rfile.read(length))
            except json.JSONDecodeError:
                raise ApiError(400, {"error": "bad JSON body"})

        def _route(self, method: str) -> None:
            parts = [p for p in self.path.split("?")[0].split("/") if p]
            try:
                if method == "POST" and parts == ["games"]:
                    self._send(201, service.create_game(self._body()))
                elif len(parts) == 2 and parts[0] == "games" and method == "GET":
                    self._send(200, service.get_game(parts[1]))
                elif len(parts) == 3 and parts[0] == "games" and parts[2] == "moves" \
                        and method == "POST":
                    self._send(200, service.post_move(parts[1], self._body()))
                elif len(parts) == 3 and parts[0] == "games" and parts[2] == "engine-move" \
                        and method == "POST":
                    self._send(200, service.post_engine_move(parts[1]))
                elif len(parts) == 3 and parts[0] == "games" and parts[2] == "analysis" \
                        and method == "GET":
                    self._send(200, service.get_analysis(parts[1]))
                elif method == "GET":
                    self._static(parts)
                else:
                    self._send(404, {"error": "no such endpoint"})
            except ApiError as exc:
                self._send(exc.code, exc.payload)

        def _static(self, parts: list[str]) -> None:
            if static_dir is None:
                self._send(404, {"error": "no such endpoint (UI not built)"})
                return
            rel = "index.html" if not parts else "/".join(parts)
            target = (static_dir / rel).resolve()
            if not str(target).startswith(str(static_dir.resolve())) or not target.is_file():
                self._send(404, {"error": "not found"})
                return
            ctype = {
                ".html": "text/html", ".js": "text/javascript",
                ".css": "text/css", ".svg": "image/svg+xml",
            }.get(target.suffix, "application/octet-stream")
            body = target.read_bytes()
            self.send_response(200)
            self.send_header("Content-Type", ctype)
            self.send_header("Content-Length", str(len(body)))
            self.end_headers()
            self.wfile.write(body)

        def do_GET(self):
            self._route("GET")

        def do_POST(self):
            self._route("POST")

    return Handler


def find_frontend_dist() -> Path | None:
    here = Path(__file__).resolve()
    for base in [here.parents[2], *here.parents]:
        cand = base / "frontend" / "dist"
        if cand.is_dir():
            return cand
    return None


def run_server(port: int = 8000, max_analysis_edges: int = 14,
               ready: threading.Event | None = None) -> None:
    service = GameService(max_analysis_edges=max_analysis_edges)
    handler = make_handler(service, find_frontend_dist())
    httpd = ThreadingHTTPServer(("0.0.0.0", port), handler)
    print(f"gocycles service on :{port} (analysis cap {max_analysis_edges} edges)")
    if ready is not None:
        ready.set()
    try:
        httpd.serve_forever()
    except KeyboardInterrupt:
        pass
    finally:
        httpd.server_close()
