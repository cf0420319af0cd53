"""Board and game-record text formats.

A board document is a single JSON object with fields, in this order:
``name`` (string), ``vertices`` (array of {id, x, y}), ``edges`` (array of
{id, u, v}), ``cells`` (array of arrays of vertex ids), ``exempt`` (array
of vertex ids), ``symmetry`` (object mapping name -> object of
vertex-id -> vertex-id; JSON forces the inner keys to strings).

Emission is canonical - fixed field order, two-space indentation, floats
via repr - so generate -> parse -> emit is byte-identical.

A game record is {"board": name, "board_sha256": hex, "moves": [{edge,
dir}]} with dir "uv" (toward the edge's stored v) or "vu".
"""

from __future__ import annotations

import hashlib
import json

from .board import Board, Move, Orientation


def board_to_doc(board: Board) -> dict:
    return {
        "name": board.name,
        "vertices": [{"id": v.id, "x": v.x, "y": v.y} for v in board.vertices],
        "edges": [{"id": e.id, "u": e.u, "v": e.v} for e in board.edge_order],
        "cells": [list(c) for c in board.cells],
        "exempt": sorted(board.exempt),
        "symmetry": {
            name: {str(a): b for a, b in sorted(vmap.items())}
            for name, vmap in sorted(board.symmetry.items())
        },
    }


def board_to_json(board: Board) -> str:
    return json.dumps(board_to_doc(board), indent=2) + "\n"


def board_from_doc(doc: dict) -> Board:
    return Board(
        name=doc["name"],
        vertices=[(v["id"], float(v["x"]), float(v["y"])) for v in doc["vertices"]],
        edges=[(e["id"], e["u"], e["v"]) for e in doc["edges"]],
        cells=[tuple(c) for c in doc.get("cells", [])],
        exempt=doc.get("exempt", []),
        symmetry={
            name: {int(a): int(b) for a, b in vmap.items()}
            for name, vmap in doc.get("symmetry", {}).items()
        },
    )


def board_from_json(text: str) -> Board:
    return board_from_doc(json.loads(text))


def board_sha256(board: Board) -> str:
    return hashlib.sha256(board_to_json(board).encode()).hexdigest()


def move_to_doc(move: Move) -> dict:
    return {"edge": move.edge, "dir": "uv" if move.dir is Orientation.TOWARD_V else "vu"}


def move_from_doc(doc: dict) -> Move:
    d = doc["dir"]
    if d not in ("uv", "vu"):
        raise ValueError(f"bad move dir: {d!r}")
    return Move(int(doc["edge"]), Orientation.TOWARD_V if d == "uv" else Orientation.TOWARD_U)


def record_to_json(board: Board, moves: list[Move] | tuple[Move, ...]) -> str:
    doc = {
        "board": board.name,
        "board_sha256": board_sha256(board),
        "moves": [move_to_doc(m) for m in moves],
    }
    return json.dumps(doc, indent=2) + "\n"


def record_from_json(text: str) -> tuple[str, str, list[Move]]:
    """Returns (board name, board sha256, moves)."""
    doc = json.loads(text)
    return doc["board"], doc.get("board_sha256", ""), [move_from_doc(m) for m in doc["moves"]]
