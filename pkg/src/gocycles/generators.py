"""Board generators: every family and named board the toolkit knows.

Families
--------
- path(n): n edges in a line, both endpoints exempt from the sink/source
  rule, no cells.
- polygon(n): an n-cycle with its single cell.
- j2k(j, k) / jnk(j, n, k): two degree-3 hubs joined by internally disjoint
  paths of j, n(=2), k edges - two polygons sharing the middle path. Cells
  are the (j+n)- and (n+k)-cycles.
- ppaths(lengths): p nested paths between hubs u and v, drawn mirror
  symmetric; cells lie between consecutive paths in the given order, and
  the board carries the "mirror" vertex involution.
- grid(a, b): a rows x b columns of vertices, unit-square cells, carrying
  the "rotation180" involution.

Convention: in every multi-path family the hubs are vertex ids 0 (u, left)
and 1 (v, right); path interiors are numbered afterwards, path by path.
The strategy modules rely on this to recover the path structure.

Named boards reproduce specific drawings: the introduction's example board
(vertex letters a..e map to ids 0..4), K4 with its three inner triangle
cells, the degree-1 parity counterexample, the two prism drawings with
different cell sets, and the mid-game "case A fails" position (board plus
preset marks, see named_with_preset).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .board import Board, Move, Orientation
from .state import GameState, replay


class FamilyError(ValueError):
    """Raised for invalid family parameters or unknown family strings."""


@dataclass(frozen=True)
class Family:
    """Parsed family descriptor: kind plus integer arguments (or a name)."""

    kind: str
    args: tuple[int, ...] = ()
    name: str | None = None

    def __str__(self) -> str:
        if self.kind == "named":
            return f"named:{self.name}"
        return f"{self.kind}:{','.join(str(a) for a in self.args)}"


def path(n: int) -> Board:
    """A bare path of n >= 1 edges; both end vertices are exempt."""
    if n < 1:
        raise FamilyError("path needs n >= 1")
    vertices = [(i, float(i), 0.0) for i in range(n + 1)]
    edges = [(i, i, i + 1) for i in range(n)]
    return Board(f"path:{n}", vertices, edges, cells=(), exempt=(0, n))


def polygon(n: int) -> Board:
    """An n-gon (n >= 3) with one cycle cell."""
    if n < 3:
        raise FamilyError("polygon needs n >= 3")
    vertices = [
        (i, math.cos(2 * math.pi * i / n), math.sin(2 * math.pi * i / n))
        for i in range(n)
    ]
    edges = [(i, i, (i + 1) % n) for i in range(n)]
    return Board(f"polygon:{n}", vertices, edges, cells=[tuple(range(n))])


def _multipath(name: str, lengths: list[int], heights: list[float],
               mirror: bool) -> Board:
    """Shared builder for jnk and ppaths: hubs 0/1 plus stacked paths.

    Path i runs left to right at heights[i]; consecutive paths bound a
    cell. With `mirror`, the left-right reflection (which swaps the hubs
    and reverses every path) is attached as the "mirror" involution.
    """
    if len(lengths) < 2:
        raise FamilyError(f"{name} needs at least 2 paths")
    if any(l < 1 for l in lengths):
        raise FamilyError(f"{name} path lengths must be >= 1")
    if sum(1 for l in lengths if l == 1) > 1:
        raise FamilyError(f"{name} allows at most one path of length 1 (simple graph)")

    span = 4.0
    vertices = [(0, 0.0, 0.0), (1, span, 0.0)]
    edges: list[tuple[int, int, int]] = []
    paths: list[list[int]] = []  # vertex chains hub..hub
    next_vid = 2
    eid = 0
    for L, h in zip(lengths, heights):
        chain = [0]
        for t in range(1, L):
            vertices.append((next_vid, span * t / L, h))
            chain.append(next_vid)
            next_vid += 1
        chain.append(1)
        for a, b in zip(chain, chain[1:]):
            edges.append((eid, a, b))
            eid += 1
        paths.append(chain)

    cells = []
    for upper, lower in zip(paths, paths[1:]):
        cells.append(tuple(upper[:-1]) + tuple(reversed(lower[1:])))

    symmetry = None
    if mirror:
        m = {0: 1, 1: 0}
        for chain in paths:
            inner = chain[1:-1]
            for a, b in zip(inner, reversed(inner)):
                m[a] = b
        symmetry = {"mirror": m}

    label = ",".join(str(l) for l in lengths)
    return Board(f"{name}:{label}", vertices, edges, cells, symmetry=symmetry)


def jnk(j: int, n: int, k: int) -> Board:
    """Two hubs joined by paths of j (top), n (middle), k (bottom) edges."""
    return _multipath("jnk", [j, n, k], [1.5, 0.0, -1.5], mirror=False)


def j2k(j: int, k: int) -> Board:
    """The two-polygons-sharing-two-consecutive-edges family.

    j >= 1, k >= 2, never both 1 (parallel edges). Cells have j+2 and k+2
    edges. Edge ids: top path 0..j-1, middle j..j+1, bottom j+2..j+k+1,
    each left hub to right hub.
    """
    if j < 1 or k < 2:
        raise FamilyError("j2k needs j >= 1 and k >= 2")
    board = _multipath("jnk", [j, 2, k], [1.5, 0.0, -1.5], mirror=False)
    return Board(f"j2k:{j},{k}", board.vertices, board.edges, board.cells)


def ppaths(lengths: list[int] | tuple[int, ...]) -> Board:
    """p >= 2 nested paths between u and v with the mirror involution."""
    ls = list(lengths)
    heights = [1.5 * (len(ls) - 1) / 2 - 1.5 * i for i in range(len(ls))]
    return _multipath("ppaths", ls, heights, mirror=True)


def grid(a: int, b: int) -> Board:
    """Grid of a x b vertices (a rows, b columns) with unit-square cells.

    Vertex (col i, row j) has id j*b + i and coordinates (i, j). Carries
    the 180-degree rotation (i, j) -> (b-1-i, a-1-j), which fixes exactly
    one edge when exactly one of a, b is odd and none otherwise.
    """
    if a < 2 or b < 2:
        raise FamilyError("grid needs a, b >= 2")
    vid = lambda i, j: j * b + i
    vertices = [(vid(i, j), float(i), float(j)) for j in range(a) for i in range(b)]
    edges = []
    eid = 0
    for j in range(a):
        for i in range(b - 1):
            edges.append((eid, vid(i, j), vid(i + 1, j)))
            eid += 1
    for j in range(a - 1):
        for i in range(b):
            edges.append((eid, vid(i, j), vid(i, j + 1)))
            eid += 1
    cells = [
        (vid(i, j), vid(i + 1, j), vid(i + 1, j + 1), vid(i, j + 1))
        for j in range(a - 1)
        for i in range(b - 1)
    ]
    rot = {vid(i, j): vid(b - 1 - i, a - 1 - j) for j in range(a) for i in range(b)}
    return Board(f"grid:{a},{b}", vertices, edges, cells, symmetry={"rotation180": rot})


# -- named boards ---------------------------------------------------------

def _sample_fig3() -> tuple[Board, tuple[Move, ...]]:
    # Introduction example board, a j2k(2,2); letters a..e are ids 0..4.
    # Edge order groups the strategy pairs: (b-a, a-d), (b-c, c-d), (b-e, e-d).
    a, b, c, d, e = 0, 1, 2, 3, 4
    vertices = [(a, 0.0, 1.0), (b, -1.0, 0.0), (c, 0.0, 0.0), (d, 1.0, 0.0), (e, 0.0, -1.0)]
    edges = [(0, b, a), (1, a, d), (2, b, c), (3, c, d), (4, b, e), (5, e, d)]
    cells = [(b, a, d, c), (b, c, d, e)]
    return Board("sample_fig3", vertices, edges, cells), ()


def _k4() -> tuple[Board, tuple[Move, ...]]:
    # K4 in the standard drawing: outer triangle plus center; the three
    # bounded faces are the cells.
    vertices = [(0, 0.0, 0.0), (1, 0.0, 1.0), (2, -0.7071, -0.7071), (3, 0.7071, -0.7071)]
    edges = [(0, 0, 1), (1, 0, 2), (2, 0, 3), (3, 1, 2), (4, 1, 3), (5, 2, 3)]
    cells = [(0, 1, 2), (0, 1, 3), (0, 2, 3)]
    return Board("k4", vertices, edges, cells), ()


def _counterexample_fig9() -> tuple[Board, tuple[Move, ...]]:
    # Triangle b,c,d plus the pendant edge a-b; a has degree 1 and is NOT
    # exempt, so edge ab is unmarkable from the start.
    a, b, c, d = 0, 1, 2, 3
    vertices = [(a, 0.0, 1.0), (b, 0.0, 0.0), (c, -1.0, -1.0), (d, 1.0, -1.0)]
    edges = [(0, a, b), (1, b, c), (2, b, d), (3, c, d)]
    cells = [(b, c, d)]
    return Board("counterexample_fig9", vertices, edges, cells), ()


def _prism(name: str, layout: dict[int, tuple[float, float]],
           cells: list[tuple[int, ...]]) -> tuple[Board, tuple[Move, ...]]:
    vertices = [(vid, x, y) for vid, (x, y) in sorted(layout.items())]
    # a,b,c = 0,1,2 outer/left triangle; d,e,f = 3,4,5; matching a-d, b-e, c-f
    edges = [(0, 0, 1), (1, 1, 2), (2, 2, 0), (3, 3, 4), (4, 4, 5), (5, 5, 3),
             (6, 0, 3), (7, 1, 4), (8, 2, 5)]
    return Board(name, vertices, edges, cells), ()


def _prism_left() -> tuple[Board, tuple[Move, ...]]:
    layout = {0: (-0.5, 1.94), 1: (0.0, 0.0), 2: (-0.5, -1.94),
              3: (2.5, 1.94), 4: (2.0, 0.0), 5: (2.5, -1.94)}
    cells = [(0, 1, 2), (3, 4, 5), (0, 3, 4, 1), (1, 4, 5, 2)]
    return _prism("prism_left_fig10", layout, cells)


def _prism_right() -> tuple[Board, tuple[Move, ...]]:
    layout = {0: (0.0, 2.25), 1: (1.95, -1.13), 2: (-1.95, -1.13),
              3: (0.0, 1.0), 4: (0.87, -0.5), 5: (-0.87, -0.5)}
    cells = [(3, 4, 5), (0, 1, 4, 3), (1, 2, 5, 4), (2, 0, 3, 5)]
    return _prism("prism_right_fig10", layout, cells)


def _case_a_fails() -> tuple[Board, tuple[Move, ...]]:
    # A j2k(3,5) in a specific drawing, seven moves in. The position
    # passed through (the rotated image of) case A after four marks, yet
    # the player to move here (P2) loses: all three remaining moves hand
    # the opponent a cycle-cell completion.
    L, R = 0, 1
    t1, t2 = 2, 3        # top interior
    m = 4                # middle interior
    b1, b2, b3, b4 = 5, 6, 7, 8
    vertices = [(L, -3.0, 2.0), (R, 3.0, 2.0), (t1, -1.0, 4.0), (t2, 1.0, 4.0),
                (m, 0.0, 2.0), (b1, -3.0, 1.0), (b2, -2.0, 0.0), (b3, 2.0, 0.0),
                (b4, 3.0, 1.0)]
    edges = [(0, L, t1), (1, t1, t2), (2, t2, R),
             (3, L, m), (4, m, R),
             (5, L, b1), (6, b1, b2), (7, b2, b3), (8, b3, b4), (9, b4, R)]
    cells = [(L, t1, t2, R, m), (L, m, R, b4, b3, b2, b1)]
    board = Board("case_a_fails_fig", vertices, edges, cells)
    preset = (
        Move(0, Orientation.TOWARD_V),   # L -> t1
        Move(5, Orientation.TOWARD_V),   # L -> b1
        Move(9, Orientation.TOWARD_V),   # b4 -> R
        Move(2, Orientation.TOWARD_V),   # t2 -> R    (case A, rotated, reached)
        Move(6, Orientation.TOWARD_V),   # b1 -> b2
        Move(7, Orientation.TOWARD_V),   # b2 -> b3
        Move(3, Orientation.TOWARD_U),   # m -> L
    )
    return board, preset


_NAMED = {
    "sample_fig3": _sample_fig3,
    "k4": _k4,
    "counterexample_fig9": _counterexample_fig9,
    "prism_left_fig10": _prism_left,
    "prism_right_fig10": _prism_right,
    "case_a_fails_fig": _case_a_fails,
}


def named(name: str) -> Board:
    """One of the named boards; see named_with_preset for preset positions."""
    try:
        return _NAMED[name]()[0]
    except KeyError:
        raise FamilyError(f"unknown named board: {name}") from None


def named_with_preset(name: str) -> tuple[Board, tuple[Move, ...]]:
    """Named board plus its preset mark list (empty for plain boards)."""
    try:
        return _NAMED[name]()
    except KeyError:
        raise FamilyError(f"unknown named board: {name}") from None


def case_a_fails_position() -> GameState:
    """The mid-game losing position of the "case A fails" board."""
    board, preset = _case_a_fails()
    return replay(board, list(preset))


def parse_family(text: str) -> Family:
    """Parse a family string like "j2k:3,5" or "named:k4"."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "named":
        if rest not in _NAMED:
            raise FamilyError(f"unknown named board: {rest}")
        return Family("named", name=rest)
    try:
        args = tuple(int(x) for x in rest.split(",") if x.strip() != "")
    except ValueError:
        raise FamilyError(f"bad family arguments: {text!r}") from None
    if kind not in {"path", "polygon", "j2k", "jnk", "ppaths", "grid"}:
        raise FamilyError(f"unknown family: {kind}")
    return Family(kind, args)


def generate(text: str) -> Board:
    """Build the board a family string denotes."""
    kind, _, rest = text.partition(":")
    kind = kind.strip().lower()
    if kind == "named":
        return named(rest.strip())
    fam = parse_family(text)
    n_args = {"path": 1, "polygon": 1, "j2k": 2, "grid": 2, "jnk": 3}
    if kind in n_args and len(fam.args) != n_args[kind]:
        raise FamilyError(f"{kind} takes {n_args[kind]} argument(s)")
    if kind == "path":
        return path(*fam.args)
    if kind == "polygon":
        return polygon(*fam.args)
    if kind == "j2k":
        return j2k(*fam.args)
    if kind == "jnk":
        return jnk(*fam.args)
    if kind == "ppaths":
        return ppaths(list(fam.args))
    return grid(*fam.args)


def strategy_annotations(board: Board) -> dict:
    """Pairing bookkeeping derived from the board's involutions.

    Returns mirror/rotation edge maps (edge id -> edge id) and, when a
    mirror exists, the initial pairing (mirror-image edge pairs) and the
    loner edges (exactly the unmirrorable, i.e. self-mapped, edges).
    """
    out: dict = {"mirror": None, "rotation180": None, "pairing": [], "loners": []}
    for name, vmap in board.symmetry.items():
        emap = {}
        for e in board.edges:
            img = board.edge_between(vmap[e.u], vmap[e.v])
            if img is None:
                raise FamilyError(f"symmetry {name!r} breaks edge {e.id}")
            emap[e.id] = img.id
        out[name] = emap
    if out["mirror"]:
        emap = out["mirror"]
        out["loners"] = sorted(e for e, img in emap.items() if img == e)
        out["pairing"] = sorted(
            (e, img) for e, img in emap.items() if e < img
        )
    return out
