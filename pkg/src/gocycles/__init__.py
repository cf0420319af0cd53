"""Engine, exact solver, and strategy-verification toolkit for the Game of Cycles."""

from .board import Board, BoardError, Edge, Move, Orientation, UNMARKED, ValidationReport, Vertex, validate_board
from .state import (
    GameState,
    IllegalMoveError,
    Player,
    Status,
    apply_move,
    is_unmarkable,
    legal_moves,
    legal_orientations,
    new_game,
    replay,
    status,
    unmarkable_count,
)
from .solver import (
    ResourceLimitError,
    SearchLimits,
    SolveResult,
    TerminalCensus,
    TerminalInfo,
    enumerate_terminals,
    solve,
    winners_table,
)
from . import generators

__all__ = [
    "Board", "BoardError", "Edge", "Move", "Orientation", "UNMARKED",
    "ValidationReport", "Vertex", "validate_board",
    "GameState", "IllegalMoveError", "Player", "Status", "apply_move",
    "is_unmarkable", "legal_moves", "legal_orientations", "new_game",
    "replay", "status", "unmarkable_count",
    "ResourceLimitError", "SearchLimits", "SolveResult", "TerminalCensus",
    "TerminalInfo", "enumerate_terminals", "solve", "winners_table",
    "generators",
]
