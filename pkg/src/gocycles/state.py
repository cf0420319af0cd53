"""Game state and move legality for the Game of Cycles.

The rules, as played here:

1. A player must move if any move is possible.
2. No move may create a sink (every incident edge directed inward) or a
   source (every incident edge directed outward) at a non-exempt vertex.

The winner is whoever first completes a cycle cell - all edges of one
declared cell marked consistently around its stored cyclic order, in
either rotational direction - or whoever makes the last available move.
An edge with no legal orientation left is *unmarkable*; it stays empty for
the rest of the game and is what makes "last available move" interesting.

GameState is an immutable value: apply_move returns a new state and the
mover is always derivable from the mark count (Player 1 moves on even
counts). Everything here is a pure function of (board, marks), safe for
concurrent use.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .board import Board, BoardError, Move, Orientation, UNMARKED


class Player(Enum):
    P1 = 1
    P2 = 2

    @property
    def opponent(self) -> "Player":
        return Player.P2 if self is Player.P1 else Player.P1


class IllegalMoveError(ValueError):
    """Raised by apply_move; `rule` names the violated rule.

    rule is one of "marked", "sink", "source", "finished", "unknown edge".
    `vertex` carries the offending vertex for sink/source violations.
    """

    def __init__(self, rule: str, edge: int | None = None, vertex: int | None = None):
        self.rule = rule
        self.edge = edge
        self.vertex = vertex
        detail = f" at vertex {vertex}" if vertex is not None else ""
        super().__init__(f"illegal move: {rule}{detail}")


@dataclass(frozen=True)
class Status:
    """Game status: winner is None while in progress.

    reason is "cycle_cell" (with `cell` = index of a completed cell) or
    "last_move". A move completing several cells at once still ends the
    game with that mover as winner; `cell` is the lowest completed index.
    """

    winner: Player | None = None
    reason: str | None = None
    cell: int | None = None

    @property
    def in_progress(self) -> bool:
        return self.winner is None


@dataclass(frozen=True)
class GameState:
    """An immutable position: board, per-edge marks, and the move history.

    marks[i] is 0 (unmarked) or an Orientation value for the edge at
    position i of board.edge_order. The history replays to the marks;
    new_game/apply_move keep that invariant.
    """

    board: Board
    marks: tuple[int, ...]
    history: tuple[Move, ...] = ()

    @property
    def marked_count(self) -> int:
        return sum(1 for m in self.marks if m != UNMARKED)

    @property
    def to_move(self) -> Player:
        return Player.P1 if self.marked_count % 2 == 0 else Player.P2

    def mark_of(self, edge_id: int) -> int:
        return self.marks[self.board.index_of(edge_id)]


def new_game(board: Board) -> GameState:
    return GameState(board, (UNMARKED,) * board.num_edges)


def replay(board: Board, moves: list[Move] | tuple[Move, ...]) -> GameState:
    """Rebuild a state by applying `moves` from the empty position."""
    state = new_game(board)
    for mv in moves:
        state = apply_move(state, mv)
    return state


def _completes_sink_or_source(state: GameState, edge_idx: int, value: int) -> int | None:
    """Vertex id where marking edge_idx with `value` creates a sink/source, else None."""
    board = state.board
    edge = board.edge_order[edge_idx]
    for vid in (edge.u, edge.v):
        if vid in board.exempt:
            continue
        unmarked = 0
        into = 0
        outof = 0
        for idx, into_val, _ in board.incident[vid]:
            m = state.marks[idx] if idx != edge_idx else value
            if m == UNMARKED:
                unmarked += 1
            elif m == into_val:
                into += 1
            else:
                outof += 1
        if unmarked == 0 and (into == 0 or outof == 0):
            return vid
    return None


def legal_orientations(state: GameState, edge_id: int) -> set[Orientation]:
    """Orientations of an unmarked edge that leave no non-exempt endpoint a
    sink or source; empty set if the edge is already marked."""
    idx = state.board.index_of(edge_id)
    if state.marks[idx] != UNMARKED:
        return set()
    return {
        o
        for o in (Orientation.TOWARD_V, Orientation.TOWARD_U)
        if _completes_sink_or_source(state, idx, o.value) is None
    }


def legal_moves(state: GameState) -> list[Move]:
    """All legal moves, in deterministic order: ascending edge id, TOWARD_V
    before TOWARD_U. Empty in any terminal position."""
    if not status(state).in_progress:
        return []
    moves = []
    for e in state.board.edge_order:
        for o in sorted(legal_orientations(state, e.id), key=lambda o: o.value):
            moves.append(Move(e.id, o))
    return moves


def is_unmarkable(state: GameState, edge_id: int) -> bool:
    """True iff the edge is unmarked and has no legal orientation."""
    idx = state.board.index_of(edge_id)
    if state.marks[idx] != UNMARKED:
        return False
    return not legal_orientations(state, edge_id)


def unmarkable_count(state: GameState) -> int:
    return sum(1 for e in state.board.edge_order if is_unmarkable(state, e.id))


def apply_move(state: GameState, move: Move) -> GameState:
    """Return the successor state; the input state is untouched.

    Raises IllegalMoveError naming the violated rule: "finished" after the
    game is over, "marked" for an already-directed edge, "sink"/"source"
    for rule-2 violations (with the offending vertex).
    """
    if not status(state).in_progress:
        raise IllegalMoveError("finished", edge=move.edge)
    idx = state.board.index_of(move.edge)
    if state.marks[idx] != UNMARKED:
        raise IllegalMoveError("marked", edge=move.edge)
    vid = _completes_sink_or_source(state, idx, move.dir.value)
    if vid is not None:
        edge = state.board.edge_order[idx]
        into_val = Orientation.TOWARD_V.value if vid == edge.v else Orientation.TOWARD_U.value
        rule = "sink" if move.dir.value == into_val else "source"
        raise IllegalMoveError(rule, edge=move.edge, vertex=vid)
    marks = list(state.marks)
    marks[idx] = move.dir.value
    return GameState(state.board, tuple(marks), state.history + (move,))


def completed_cells(state: GameState, touching_edge: int | None = None) -> list[int]:
    """Indices of consistently-directed cells; optionally only those
    containing the given edge index (the last move's edge suffices under
    legal play, since an earlier completion would have ended the game)."""
    out = []
    for ci, rows in enumerate(state.board.cell_edges):
        if touching_edge is not None and all(idx != touching_edge for idx, _ in rows):
            continue
        fwd = True
        bwd = True
        for idx, along in rows:
            m = state.marks[idx]
            if m == UNMARKED:
                fwd = bwd = False
                break
            if m == along:
                bwd = False
            else:
                fwd = False
        if fwd or bwd:
            out.append(ci)
    return out


def status(state: GameState) -> Status:
    """Game status of a position reached by legal play.

    Won(last mover, cycle_cell) if a cell is complete; else Won(last
    mover, last_move) when no legal move remains. A board with no legal
    first move is Won(P2, last_move) by convention: the player unable to
    move loses.
    """
    if state.history:
        last_idx = state.board.index_of(state.history[-1].edge)
        cells = completed_cells(state, touching_edge=last_idx)
    else:
        cells = completed_cells(state)
    mover = Player.P1 if state.marked_count % 2 == 1 else Player.P2
    if cells:
        return Status(mover, "cycle_cell", cells[0])
    for e in state.board.edge_order:
        if legal_orientations(state, e.id):
            return Status()
    # no legal move: the last mover won; on a dead initial board P1 cannot
    # move at all, so P2 wins by the same rule.
    return Status(mover if state.marked_count else Player.P2, "last_move")
