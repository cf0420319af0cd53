"""HTTP game service: sessions, moves, engine replies, analysis."""

import json
import threading
import time
import urllib.error
import urllib.request

import pytest

from gocycles.service import GameService, make_handler, ApiError

from http.server import ThreadingHTTPServer


@pytest.fixture(scope="module")
def server():
    service = GameService(max_analysis_edges=10)
    httpd = ThreadingHTTPServer(("127.0.0.1", 0), make_handler(service, None))
    thread = threading.Thread(target=httpd.serve_forever, daemon=True)
    thread.start()
    yield f"http://127.0.0.1:{httpd.server_address[1]}"
    httpd.shutdown()


def call(base, method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    try:
        with urllib.request.urlopen(req, timeout=60) as resp:
            return resp.status, json.loads(resp.read())
    except urllib.error.HTTPError as exc:
        return exc.code, json.loads(exc.read())


def test_session_lifecycle_against_solver_engine(server):
    code, game = call(server, "POST", "/games",
                      {"board": "named:sample_fig3", "engine_role": 2,
                       "engine_kind": "solver"})
    assert code == 201
    sid = game["id"]
    assert game["to_move"] == 1
    assert len(game["legal_moves"]) == 12

    # human plays b -> a; the engine must answer with the paired a -> d
    code, game = call(server, "POST", f"/games/{sid}/moves", {"edge": 0, "dir": "uv"})
    assert code == 200
    code, game = call(server, "POST", f"/games/{sid}/engine-move")
    assert code == 200
    assert game["engine_move"] == {"edge": 1, "dir": "uv"}

    code, got = call(server, "GET", f"/games/{sid}")
    assert code == 200
    assert got["history"][:2] == [{"edge": 0, "dir": "uv"}, {"edge": 1, "dir": "uv"}]


def test_illegal_move_payload_names_rule(server):
    code, game = call(server, "POST", "/games", {"board": "path:3"})
    sid = game["id"]
    call(server, "POST", f"/games/{sid}/moves", {"edge": 1, "dir": "uv"})
    code, err = call(server, "POST", f"/games/{sid}/moves", {"edge": 2, "dir": "vu"})
    assert code == 422
    assert err["error"] == "illegal move"
    assert err["rule"] == "sink"
    assert err["vertex"] == 2
    # state unchanged
    code, got = call(server, "GET", f"/games/{sid}")
    assert len(got["history"]) == 1


def test_unknown_session_is_404(server):
    code, err = call(server, "GET", "/games/nope")
    assert code == 404


def test_not_engine_turn_conflict(server):
    code, game = call(server, "POST", "/games",
                      {"board": "polygon:4", "engine_role": 2})
    sid = game["id"]
    code, err = call(server, "POST", f"/games/{sid}/engine-move")
    assert code == 409


def test_move_completing_cell_reports_winner_and_cell(server):
    code, game = call(server, "POST", "/games", {"board": "polygon:3"})
    sid = game["id"]
    for edge in (0, 1, 2):
        code, game = call(server, "POST", f"/games/{sid}/moves",
                          {"edge": edge, "dir": "uv"})
    assert game["status"]["winner"] == "P1"
    assert game["status"]["reason"] == "cycle_cell"
    assert game["status"]["cell_vertices"] == [0, 1, 2]
    assert game["legal_moves"] == []


def test_unmarkable_edges_reported(server):
    code, game = call(server, "POST", "/games", {"board": "named:counterexample_fig9"})
    assert game["unmarkable"] == [0]


def test_analysis_verdict_and_size_refusal(server):
    code, game = call(server, "POST", "/games", {"board": "named:sample_fig3"})
    code, verdict = call(server, "GET", f"/games/{game['id']}/analysis")
    assert code == 200
    assert verdict["winner"] == "P2"

    code, game = call(server, "POST", "/games", {"board": "grid:3,3"})  # 12 > 10
    code, err = call(server, "GET", f"/games/{game['id']}/analysis")
    assert code == 413
    assert err["error"] == "too large"


def test_inline_board_document(server):
    from gocycles.boardio import board_to_doc
    from gocycles import generators as g

    doc = board_to_doc(g.polygon(5))
    code, game = call(server, "POST", "/games", {"board": doc})
    assert code == 201
    assert game["board"]["name"] == "polygon:5"


def test_session_replay_matches_history(server):
    from gocycles import generators as g, replay, status as game_status
    from gocycles.boardio import board_from_doc, move_from_doc

    code, game = call(server, "POST", "/games", {"board": "polygon:4"})
    sid = game["id"]
    call(server, "POST", f"/games/{sid}/moves", {"edge": 0, "dir": "uv"})
    call(server, "POST", f"/games/{sid}/moves", {"edge": 2, "dir": "vu"})
    code, got = call(server, "GET", f"/games/{sid}")
    board = board_from_doc(got["board"])
    state = replay(board, [move_from_doc(m) for m in got["history"]])
    marks = {str(e.id): (None if state.marks[i] == 0 else ("uv" if state.marks[i] == 1 else "vu"))
             for i, e in enumerate(board.edge_order)}
    assert marks == got["marks"]


def test_engine_never_plays_losing_move_when_winning_exists(server):
    # cross-check on a small board: whenever the solver engine moves from a
    # winning position, the position stays winning for it
    from gocycles import generators as g, new_game, solve, apply_move
    from gocycles.boardio import move_from_doc
    from gocycles.state import Player

    code, game = call(server, "POST", "/games",
                      {"board": "polygon:5", "engine_role": 1})
    sid = game["id"]
    state = new_game(g.polygon(5))
    while True:
        code, got = call(server, "GET", f"/games/{sid}")
        if not got["status"]["in_progress"]:
            assert got["status"]["winner"] == "P1"
            break
        if got["to_move"] == 1:
            before = solve(state).winner
            code, got = call(server, "POST", f"/games/{sid}/engine-move")
            mv = move_from_doc(got["engine_move"])
            state = apply_move(state, mv)
            if before is Player.P1 and got["status"]["in_progress"]:
                assert solve(state).winner is Player.P1
        else:
            # adversarial human: always the first legal move
            mv_doc = got["legal_moves"][0]
            code, got = call(server, "POST", f"/games/{sid}/moves", mv_doc)
            state = apply_move(state, move_from_doc(mv_doc))
