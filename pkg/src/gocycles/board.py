"""Gameboard model for the Game of Cycles.

A gameboard is a simple, connected, undirected graph drawn in the plane,
together with the list of *cycle cells* of that drawing. Cells are declared
input, never derived: isomorphic graphs drawn differently have different
cells (two prism drawings disagree on them), so the drawing is authoritative
and the board format carries the cells explicitly.

Vertices carry 2D layout coordinates (used by generators, reports and the
web UI; the rules never read them). Edges are stored as ordered (u, v)
pairs purely so that a direction can be named: an edge mark is either
"toward v" or "toward u" relative to that stored pair.

`exempt` lists vertices at which the sink/source rule is ignored. The only
sanctioned use is the two endpoints of a bare path board, which is why
validation insists exempt vertices have degree 1.

`symmetry` holds optional named vertex involutions ("mirror",
"rotation180") that map edges to edges; generators attach them and the
symmetry strategies and the solver's table reduction consume them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping, Sequence


class Orientation(Enum):
    """Direction of a mark relative to the edge's stored (u, v) pair."""

    TOWARD_V = 1
    TOWARD_U = 2

    @property
    def reverse(self) -> "Orientation":
        return Orientation.TOWARD_U if self is Orientation.TOWARD_V else Orientation.TOWARD_V


UNMARKED = 0
# Integer mark values used throughout the engine: 0 = unmarked, then the
# Orientation values. Base-3 state encodings rely on this being 0/1/2.


@dataclass(frozen=True)
class Move:
    """One game move: direct edge `edge` in direction `dir`."""

    edge: int
    dir: Orientation

    def key(self) -> tuple[int, int]:
        """Lexicographic sort key: edge id, then TOWARD_V before TOWARD_U."""
        return (self.edge, self.dir.value)


@dataclass(frozen=True)
class Vertex:
    id: int
    x: float
    y: float


@dataclass(frozen=True)
class Edge:
    id: int
    u: int
    v: int


class BoardError(ValueError):
    """Raised for structurally unusable board input (bad ids, unknown edges)."""


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of validate_board: violations break invariants, warnings do not."""

    violations: tuple[str, ...] = ()
    warnings: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return not self.violations


class Board:
    """Immutable gameboard with precomputed incidence and cell tables.

    Construction normalizes input and builds the derived structures the
    rules engine needs:

    - ``edge_order``: edges sorted by ascending id; all per-edge arrays in
      the engine (marks vectors, base-3 encodings) are indexed by position
      in this order, which equals the edge id whenever ids are 0..m-1.
    - ``incident[vid]``: tuples of (edge index, mark value that points INTO
      this vertex, other endpoint).
    - ``cell_edges[c]``: for each declared cell, tuples of (edge index,
      mark value that follows the cell's stored traversal direction). A
      cell is complete when all its edges are marked and either every mark
      follows the traversal or every mark opposes it.
    """

    def __init__(
        self,
        name: str,
        vertices: Iterable[Vertex | tuple[int, float, float]],
        edges: Iterable[Edge | tuple[int, int, int]],
        cells: Iterable[Sequence[int]] = (),
        exempt: Iterable[int] = (),
        symmetry: Mapping[str, Mapping[int, int]] | None = None,
    ):
        self.name = name
        self.vertices = tuple(
            v if isinstance(v, Vertex) else Vertex(*v) for v in vertices
        )
        self.edges = tuple(e if isinstance(e, Edge) else Edge(*e) for e in edges)
        self.cells = tuple(tuple(c) for c in cells)
        self.exempt = frozenset(exempt)
        self.symmetry = {
            str(k): dict(v) for k, v in (symmetry or {}).items()
        }

        self.vertex_by_id = {v.id: v for v in self.vertices}
        if len(self.vertex_by_id) != len(self.vertices):
            raise BoardError("duplicate vertex ids")
        self.edge_order = tuple(sorted(self.edges, key=lambda e: e.id))
        self.edge_index = {e.id: i for i, e in enumerate(self.edge_order)}
        if len(self.edge_index) != len(self.edges):
            raise BoardError("duplicate edge ids")
        for e in self.edges:
            if e.u not in self.vertex_by_id or e.v not in self.vertex_by_id:
                raise BoardError(f"edge {e.id} references unknown vertex")

        incident: dict[int, list[tuple[int, int, int]]] = {v.id: [] for v in self.vertices}
        for i, e in enumerate(self.edge_order):
            incident[e.v].append((i, Orientation.TOWARD_V.value, e.u))
            incident[e.u].append((i, Orientation.TOWARD_U.value, e.v))
        self.incident = {vid: tuple(rows) for vid, rows in incident.items()}

        self.cell_edges: tuple[tuple[tuple[int, int], ...], ...] = tuple(
            self._trace_cell(c) for c in self.cells
        )

    # -- derived helpers ---------------------------------------------------

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def degree(self, vid: int) -> int:
        return len(self.incident[vid])

    def edge_at(self, index: int) -> Edge:
        return self.edge_order[index]

    def index_of(self, edge_id: int) -> int:
        try:
            return self.edge_index[edge_id]
        except KeyError:
            raise BoardError(f"no such edge: {edge_id}") from None

    def edge_between(self, a: int, b: int) -> Edge | None:
        pair = {a, b}
        for e in self.edges:
            if {e.u, e.v} == pair:
                return e
        return None

    def _trace_cell(self, cell: Sequence[int]) -> tuple[tuple[int, int], ...]:
        rows = []
        n = len(cell)
        for i in range(n):
            a, b = cell[i], cell[(i + 1) % n]
            e = self.edge_between(a, b)
            if e is None:
                rows.append((-1, 0))  # flagged by validate_board
                continue
            forward = Orientation.TOWARD_V if (e.u, e.v) == (a, b) else Orientation.TOWARD_U
            rows.append((self.edge_index[e.id], forward.value))
        return tuple(rows)

    def __repr__(self) -> str:  # pragma: no cover
        return f"Board({self.name!r}, {len(self.vertices)}v/{len(self.edges)}e/{len(self.cells)}c)"


def _connected(board: Board) -> bool:
    if not board.vertices:
        return True
    seen = {board.vertices[0].id}
    stack = [board.vertices[0].id]
    while stack:
        for _, _, other in board.incident[stack.pop()]:
            if other not in seen:
                seen.add(other)
                stack.append(other)
    return len(seen) == len(board.vertices)


def validate_board(board: Board) -> ValidationReport:
    """Check every board invariant; return a report naming each offender.

    Violations cover: loops, duplicate edges, disconnection, malformed
    cells (repeated vertices, missing boundary edges, length < 3),
    non-involutive or edge-breaking symmetry maps, and exempt vertices of
    degree != 1. Cell chordlessness is reported as a warning only: the
    drawing decides the cells, a chord merely makes the drawing suspect.
    """
    bad: list[str] = []
    warn: list[str] = []

    seen_pairs: set[frozenset[int]] = set()
    for e in board.edges:
        if e.u == e.v:
            bad.append(f"edge {e.id} is a loop at vertex {e.u}")
            continue
        pair = frozenset((e.u, e.v))
        if pair in seen_pairs:
            bad.append(f"duplicate edge {e.id} between {e.u} and {e.v}")
        seen_pairs.add(pair)

    if not _connected(board):
        bad.append("graph is not connected")

    for ci, cell in enumerate(board.cells):
        if len(cell) < 3:
            bad.append(f"cell {ci} has fewer than 3 vertices")
            continue
        if len(set(cell)) != len(cell):
            bad.append(f"cell {ci} repeats a vertex")
        for vid in cell:
            if vid not in board.vertex_by_id:
                bad.append(f"cell {ci} references unknown vertex {vid}")
        for i in range(len(cell)):
            a, b = cell[i], cell[(i + 1) % len(cell)]
            if a in board.vertex_by_id and b in board.vertex_by_id:
                if board.edge_between(a, b) is None:
                    bad.append(f"cell {ci} edge absent between {a} and {b}")
        # chord check: any board edge joining non-consecutive cell vertices
        cset = set(cell)
        n = len(cell)
        consecutive = {frozenset((cell[i], cell[(i + 1) % n])) for i in range(n)}
        for e in board.edges:
            if e.u in cset and e.v in cset and frozenset((e.u, e.v)) not in consecutive:
                warn.append(f"cell {ci} has chord {e.u}-{e.v}")

    for name, mapping in board.symmetry.items():
        dom = set(mapping)
        if dom != set(board.vertex_by_id):
            bad.append(f"symmetry {name!r} is not defined on all vertices")
            continue
        if any(mapping[mapping[v]] != v for v in mapping):
            bad.append(f"symmetry {name!r} not involutive")
            continue
        pairs = {frozenset((e.u, e.v)) for e in board.edges}
        for e in board.edges:
            if frozenset((mapping[e.u], mapping[e.v])) not in pairs:
                bad.append(f"symmetry {name!r} does not map edge {e.u}-{e.v} to an edge")

    for vid in sorted(board.exempt):
        if vid not in board.vertex_by_id:
            bad.append(f"exempt vertex {vid} does not exist")
        elif board.degree(vid) != 1:
            bad.append(f"exempt vertex {vid} has degree {board.degree(vid)}, expected 1")

    return ValidationReport(tuple(bad), tuple(warn))


def normalize_cycle(cycle: Sequence[int]) -> tuple[int, ...]:
    """Canonical form of a vertex cycle, invariant to rotation and direction."""
    n = len(cycle)
    best: tuple[int, ...] | None = None
    for seq in (list(cycle), list(reversed(cycle))):
        for s in range(n):
            cand = tuple(seq[(s + i) % n] for i in range(n))
            if best is None or cand < best:
                best = cand
    return best or tuple(cycle)
