"""Drive the HTTP game service end to end: create, move, engine reply,
analysis. Starts a server on a free port, plays the opening of the
example board against the solver engine, and prints each payload."""

import json
import threading
import urllib.request
from http.server import ThreadingHTTPServer

from gocycles.service import GameService, make_handler

service = GameService(max_analysis_edges=12)
httpd = ThreadingHTTPServer(("127.0.0.1", 0), make_handler(service, None))
threading.Thread(target=httpd.serve_forever, daemon=True).start()
base = f"http://127.0.0.1:{httpd.server_address[1]}"
print("service at", base)


def call(method, path, body=None):
    data = json.dumps(body).encode() if body is not None else None
    req = urllib.request.Request(base + path, data=data, method=method,
                                 headers={"Content-Type": "application/json"})
    with urllib.request.urlopen(req, timeout=60) as resp:
        return json.loads(resp.read())


game = call("POST", "/games", {"board": "named:sample_fig3",
                               "engine_role": 2, "engine_kind": "solver"})
sid = game["id"]
print("created session", sid, "- to move:", game["to_move"])

game = call("POST", f"/games/{sid}/moves", {"edge": 0, "dir": "uv"})
print("human played b->a; legal replies now", len(game["legal_moves"]))

game = call("POST", f"/games/{sid}/engine-move")
print("engine answered:", game["engine_move"], "(the paired edge a->d)")

verdict = call("GET", f"/games/{sid}/analysis")
print("analysis:", verdict["winner"], "to win;",
      len(verdict["winning_moves"]), "winning moves for the mover")

httpd.shutdown()
