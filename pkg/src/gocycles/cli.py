"""Command-line entry points.

Subcommands: gen (emit a board document), solve (exact winner), verify
(prove a policy against all opponent play), scan (parity-conjecture
sweep), oracle (terminal census), play (interactive terminal game), and
serve (the HTTP game service). Boards are named by family strings such as
"path:7", "j2k:3,5", "grid:2,3" or "named:k4", by a file path, or by a
document on stdin with --stdin.

Exit codes: 0 success/verified/agreement, 1 failure or disagreement,
2 usage errors, 3 resource limits.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import analysis, boardio, generators
from .board import Board, Move, Orientation
from .solver import ResourceLimitError, SearchLimits, enumerate_terminals, solve
from .state import (
    GameState,
    IllegalMoveError,
    Player,
    apply_move,
    legal_moves,
    new_game,
    replay,
    status,
    unmarkable_count,
)
from .strategies import POLICIES, PolicyError, verify_policy

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_USAGE = 2
EXIT_RESOURCE = 3


def _load_board(args) -> tuple[Board, GameState]:
    """Resolve --board/--stdin to a board and its (possibly preset) state."""
    if getattr(args, "stdin", False):
        board = boardio.board_from_json(sys.stdin.read())
        return board, new_game(board)
    spec = args.board
    if spec is None:
        raise SystemExit(EXIT_USAGE)
    if ":" in spec:
        if spec.startswith("named:"):
            board, preset = generators.named_with_preset(spec.split(":", 1)[1])
            return board, replay(board, list(preset))
        return (b := generators.generate(spec)), new_game(b)
    with open(spec) as fh:
        board = boardio.board_from_json(fh.read())
    return board, new_game(board)


def _limits(args) -> SearchLimits:
    return SearchLimits(max_nodes=args.max_nodes) if getattr(args, "max_nodes", None) \
        else SearchLimits()


def cmd_gen(args) -> int:
    board = generators.generate(args.family)
    text = boardio.board_to_json(board)
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_solve(args) -> int:
    board, state = _load_board(args)
    try:
        res = solve(state, _limits(args))
    except ResourceLimitError as exc:
        print(f"error: {exc} (nodes={exc.stats.nodes})", file=sys.stderr)
        return EXIT_RESOURCE
    print(f"board: {board.name}")
    print(f"winner: {res.winner.name}")
    moves = ", ".join(_move_text(board, m) for m in res.winning_moves)
    print(f"winning moves: {moves or '(mover loses)'}")
    line = " ".join(_move_text(board, m) for m in res.principal_line)
    print(f"principal line: {line}")
    print(f"nodes: {res.stats.nodes}  table: {res.stats.table_entries}  "
          f"millis: {res.stats.millis:.1f}")
    if args.json:
        print(json.dumps({
            "board": board.name,
            "winner": res.winner.name,
            "winning_moves": [boardio.move_to_doc(m) for m in res.winning_moves],
            "principal_line": [boardio.move_to_doc(m) for m in res.principal_line],
            "nodes": res.stats.nodes,
            "millis": res.stats.millis,
        }))
    return EXIT_OK


def _move_text(board: Board, move: Move) -> str:
    e = board.edge_at(board.index_of(move.edge))
    a, b = (e.u, e.v) if move.dir is Orientation.TOWARD_V else (e.v, e.u)
    return f"{a}->{b}(e{move.edge})"


def cmd_verify(args) -> int:
    board, state = _load_board(args)
    if args.policy not in POLICIES:
        print(f"unknown policy: {args.policy}; available: {', '.join(sorted(POLICIES))}",
              file=sys.stderr)
        return EXIT_USAGE
    player = Player.P1 if args.player == 1 else Player.P2
    start = state if state.history else None
    res = verify_policy(board, args.policy, player, _limits(args), start=start)
    print(f"board: {board.name}  policy: {args.policy}  player: {player.name}")
    print(f"verified: {res.verified}  opponent nodes: {res.opponent_nodes}")
    if res.reason:
        print(f"reason: {res.reason}")
    if res.counterexample:
        print("counterexample:")
        sys.stdout.write(boardio.record_to_json(board, list(res.counterexample)))
    if res.reason and res.reason.startswith("resource limit"):
        return EXIT_RESOURCE
    return EXIT_OK if res.verified else EXIT_FAIL


def cmd_scan(args) -> int:
    boards = analysis.default_scan_boards(args.max_edges)
    rows = analysis.conjecture_scan(boards, _limits(args))
    print(analysis.format_scan(rows))
    if args.json:
        print(json.dumps([
            {"board": r.label, "edges": r.edges, "min_degree": r.min_degree,
             "winner": r.winner.name if r.winner else None, "agrees": r.agrees,
             "in_population": r.in_population, "error": r.error}
            for r in rows
        ]))
    disagreements = [r for r in rows if r.in_population and r.agrees is False]
    errors = [r for r in rows if r.error]
    if disagreements:
        print(f"DISAGREEMENTS: {', '.join(r.label for r in disagreements)}")
        return EXIT_FAIL
    if errors:
        return EXIT_RESOURCE
    print(f"all {sum(1 for r in rows if r.in_population)} population boards agree")
    return EXIT_OK


def cmd_oracle(args) -> int:
    board, state = _load_board(args)
    try:
        census = enumerate_terminals(state, _limits(args))
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    print(f"board: {board.name}")
    print(f"terminal states: {census.total}")
    for player, n in sorted(census.by_winner.items(), key=lambda kv: kv[0].name):
        print(f"  won by {player.name}: {n}")
    for reason, n in sorted(census.by_reason.items()):
        print(f"  by {reason}: {n}")
    for parity, n in sorted(census.by_parity.items()):
        print(f"  unmarkable parity {'even' if parity == 0 else 'odd'}: {n}")
    return EXIT_OK


def cmd_play(args) -> int:
    import random

    board, state = _load_board(args)
    rng = random.Random(args.seed)
    engine_role = None
    if args.engine_role:
        engine_role = Player.P1 if args.engine_role == 1 else Player.P2
    print(f"playing on {board.name}; moves as 'EDGE uv' or 'EDGE vu'")
    while True:
        st = status(state)
        if not st.in_progress:
            print(f"game over: {st.winner.name} wins by {st.reason}"
                  + (f" (cell {st.cell})" if st.cell is not None else ""))
            return EXIT_OK
        mover = state.to_move
        if engine_role is mover:
            mv = _engine_move(args.engine, board, state, mover, rng)
            state = apply_move(state, mv)
            print(f"engine ({mover.name}): {_move_text(board, mv)}")
            continue
        legal = legal_moves(state)
        print(f"{mover.name} to move; marked {state.marked_count}, "
              f"unmarkable {unmarkable_count(state)}")
        print("legal:", " ".join(_move_text(board, m) for m in legal))
        line = sys.stdin.readline()
        if not line:
            print("stdin closed; aborting")
            return EXIT_FAIL
        parts = line.split()
        if len(parts) != 2 or parts[1] not in ("uv", "vu"):
            print("expected: EDGE uv|vu")
            continue
        mv = Move(int(parts[0]), Orientation.TOWARD_V if parts[1] == "uv" else Orientation.TOWARD_U)
        try:
            state = apply_move(state, mv)
        except IllegalMoveError as exc:
            print(f"rejected: {exc}")


def _engine_move(kind: str, board: Board, state: GameState, player: Player,
                 rng=None) -> Move:
    if kind == "solver":
        res = solve(state)
        return res.winning_moves[0] if res.winning_moves else legal_moves(state)[0]
    if kind == "random":
        import random

        rng = rng or random.Random()
        return rng.choice(legal_moves(state))
    inst = POLICIES[kind](board, player)
    for mv in state.history:
        inst.observe(mv)
    return inst.choose(state)


def cmd_serve(args) -> int:
    from .service import run_server

    port = args.port or int(os.environ.get("GOCYCLES_PORT", "8000"))
    run_server(port=port, max_analysis_edges=args.max_analysis_edges)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="gocycles", description=__doc__)
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="emit a board document")
    p.add_argument("family", help="family string, e.g. j2k:3,5 or named:k4")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    def board_args(p, stdin=True):
        p.add_argument("--board", help="family string or board file path")
        if stdin:
            p.add_argument("--stdin", action="store_true", help="read board JSON from stdin")
        p.add_argument("--max-nodes", type=int)

    p = sub.add_parser("solve", help="exact winner of a board")
    board_args(p)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="verify a policy against all opponent play")
    board_args(p)
    p.add_argument("--policy", required=True)
    p.add_argument("--player", type=int, choices=(1, 2), required=True)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("scan", help="parity-conjecture scan over generated boards")
    p.add_argument("--max-edges", type=int, default=12)
    p.add_argument("--max-nodes", type=int)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("oracle", help="enumerate reachable terminal states")
    board_args(p)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("play", help="interactive terminal game")
    board_args(p, stdin=False)
    p.add_argument("--engine-role", type=int, choices=(1, 2))
    p.add_argument("--engine", default="solver",
                   help="'solver', 'random', or a policy name")
    p.add_argument("--seed", type=int, help="seed for the random engine")
    p.set_defaults(func=cmd_play)

    p = sub.add_parser("serve", help="run the HTTP game service")
    p.add_argument("--port", type=int)
    p.add_argument("--max-analysis-edges", type=int, default=14)
    p.set_defaults(func=cmd_serve)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (generators.FamilyError, PolicyError, FileNotFoundError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    raise SystemExit(main())
