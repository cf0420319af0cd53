"""The parity calculus: signals, interactions, case templates, and the scan.

Sign convention (fixed throughout): at a vertex of interest ("hub"), a
primary edge's signal is +1 when directed toward the hub and -1 when
directed away. A marked primary edge gives an *explicit* signal; an
unmarkable one gives an *implicit* signal - the direction its neighbours
at the hub force on it (the orientation whose illegality does not come
from the hub itself). An unmarked, still-markable edge has no signal.

The interaction of a u-v path is the unordered pair of its end signals;
{+1,-1} forces an even number of unmarkable edges on the path, {+1,+1}
and {-1,-1} an odd number, and the count is the same whether the signals
are explicit or implicit, which is what path_parity_check verifies.

Case templates A-E describe two-polygon (three-path, middle length 2)
positions over the six primary-edge slots:

        1 ----(top path)---- 6
   (hub u)  3 --inner-- 4  (hub v)
        2 ---(bottom path)-- 5

A requires hub u's outer slots +1 and hub v's -1 with the inner path
untouched; B-E mark one inner edge to pin an almost-sink/almost-source
pair. Slots a template leaves blank must be unmarked (implicit signals
are fine, explicit marks disqualify). Matching is tried up to the
horizontal (hub swap), vertical (path swap) and 180-degree symmetries of
the diagram.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import Board, Move, Orientation
from .state import GameState, Player, legal_orientations, replay, unmarkable_count
from .structure import MultiPath, StructureError, multipath_structure


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class Signal:
    """A +-1 direction indicator at a hub; kind is "explicit" or "implicit"."""

    value: int
    kind: str


def signal_of(state: GameState, hub: int, edge_id: int) -> Signal | None:
    """Signal of a primary edge at its hub, or None while unmarked and markable."""
    board = state.board
    idx = board.index_of(edge_id)
    e = board.edge_at(idx)
    if hub not in (e.u, e.v):
        raise AnalysisError(f"edge {edge_id} is not incident to vertex {hub}")
    into_hub = Orientation.TOWARD_V if hub == e.v else Orientation.TOWARD_U
    mark = state.marks[idx]
    if mark:
        return Signal(+1 if mark == into_hub.value else -1, "explicit")
    legal = legal_orientations(state, edge_id)
    if legal:
        return None
    # unmarkable: the forced direction is the one the hub itself permits
    toward_blocked = _blocked_at(state, hub, idx, into_hub.value)
    away_blocked = _blocked_at(state, hub, idx, into_hub.reverse.value)
    if toward_blocked == away_blocked:
        raise AnalysisError(
            f"implicit signal undefined for edge {edge_id} at vertex {hub}"
        )
    return Signal(-1 if toward_blocked else +1, "implicit")


def _blocked_at(state: GameState, vid: int, edge_idx: int, value: int) -> bool:
    """Would marking edge_idx with `value` complete a sink/source at vid itself?"""
    board = state.board
    if vid in board.exempt:
        return False
    into = outof = unmarked = 0
    for idx, into_val, _ in board.incident[vid]:
        m = state.marks[idx] if idx != edge_idx else value
        if not m:
            unmarked += 1
        elif m == into_val:
            into += 1
        else:
            outof += 1
    return unmarked == 0 and (into == 0 or outof == 0)


def interaction_parity(a: int, b: int) -> int:
    """Parity of the unmarkable count a path's end-signal pair forces.

    {+1,-1} -> 0 (even); {+1,+1} and {-1,-1} -> 1 (odd).
    """
    if a not in (-1, 1) or b not in (-1, 1):
        raise AnalysisError("signals must be +-1")
    return 0 if a != b else 1


def path_parity_check(state: GameState, path_edges: list[int] | tuple[int, ...],
                      end_u: int, end_v: int) -> tuple[int, bool]:
    """Predicted vs counted unmarkable parity on a fully played-out path.

    Both end signals must be known (explicit or implicit) and the path
    must have no markable edge left. Returns (predicted parity, flag);
    a False flag would contradict the implicit-signal equivalence.
    """
    s_u = signal_of(state, end_u, path_edges[0])
    s_v = signal_of(state, end_v, path_edges[-1])
    if s_u is None or s_v is None:
        raise AnalysisError("end signals unknown: path not constrained yet")
    board = state.board
    counted = 0
    for eid in path_edges:
        if state.marks[board.index_of(eid)]:
            continue
        if legal_orientations(state, eid):
            raise AnalysisError(f"path edge {eid} is still markable")
        counted += 1
    predicted = interaction_parity(s_u.value, s_v.value)
    return predicted, predicted == counted % 2


# -- almost-sinks and almost-sources ---------------------------------------

def almost_degree(state: GameState, vid: int) -> str:
    """"almost_sink" / "almost_source" / "neither" for a vertex.

    All but one incident edge directed inward (resp. outward), the last
    one unmarked; vertices with fewer than two edges never qualify.
    """
    board = state.board
    into = outof = unmarked = 0
    for idx, into_val, _ in board.incident[vid]:
        m = state.marks[idx]
        if not m:
            unmarked += 1
        elif m == into_val:
            into += 1
        else:
            outof += 1
    degree = into + outof + unmarked
    if degree >= 2 and unmarked == 1:
        if into == degree - 1:
            return "almost_sink"
        if outof == degree - 1:
            return "almost_source"
    return "neither"


# -- case templates ----------------------------------------------------------

CASE_TEMPLATES: dict[str, dict[int, int]] = {
    "A": {1: +1, 2: +1, 5: -1, 6: -1},
    "B": {1: +1, 3: +1, 6: -1},
    "C": {1: +1, 3: +1, 5: -1},
    "D": {1: -1, 3: -1, 6: +1},
    "E": {1: -1, 3: -1, 5: +1},
}

TRANSFORMS: dict[str, dict[int, int]] = {
    "identity": {i: i for i in range(1, 7)},
    "horizontal": {1: 6, 6: 1, 2: 5, 5: 2, 3: 4, 4: 3},
    "vertical": {1: 2, 2: 1, 3: 3, 4: 4, 5: 6, 6: 5},
    "rotational": {1: 5, 5: 1, 2: 6, 6: 2, 3: 4, 4: 3},
}


@dataclass(frozen=True)
class CaseLabel:
    label: str | None
    transform: str | None

    def __bool__(self) -> bool:
        return self.label is not None


@dataclass(frozen=True)
class Slot:
    """A primary-edge slot of the two-polygon diagram: edge id plus its hub."""

    edge: int
    hub: int


def two_polygon_slots(board: Board) -> dict[int, Slot]:
    """Slots 1..6 of a three-path board with a length-2 middle path.

    Top path end edges are slots 1 (left hub) and 6 (right hub), bottom
    path ends are 2 and 5, the inner edges are 3 (left) and 4 (right).
    When the top path is a single edge, slots 1 and 6 are that same edge
    viewed from each hub.
    """
    try:
        ms = multipath_structure(board)
    except StructureError as exc:
        raise AnalysisError(str(exc)) from exc
    if len(ms.paths) != 3 or len(ms.paths[1]) != 2:
        raise AnalysisError("not a three-path board with a length-2 middle path")
    top, mid, bot = ms.paths
    return {
        1: Slot(top.edges[0], ms.u),
        2: Slot(bot.edges[0], ms.u),
        3: Slot(mid.edges[0], ms.u),
        4: Slot(mid.edges[-1], ms.v),
        5: Slot(bot.edges[-1], ms.v),
        6: Slot(top.edges[-1], ms.v),
    }


def classify_case(state: GameState) -> CaseLabel:
    """Match the six primary slots against templates A-E up to symmetry.

    Labels are tried A..E and transforms identity, horizontal, vertical,
    rotational; first hit wins, so the answer is deterministic.
    """
    slots = two_polygon_slots(state.board)
    signals = {i: signal_of(state, s.hub, s.edge) for i, s in slots.items()}
    for label in "ABCDE":
        template = CASE_TEMPLATES[label]
        for tname, perm in TRANSFORMS.items():
            moved = {perm[i]: v for i, v in template.items()}
            if _template_matches(signals, moved):
                return CaseLabel(label, tname)
    return CaseLabel(None, None)


def _template_matches(signals: dict[int, Signal | None], template: dict[int, int]) -> bool:
    for i in range(1, 7):
        want = template.get(i)
        got = signals[i]
        if want is None:
            if got is not None and got.kind == "explicit":
                return False
        else:
            if got is None or got.value != want:
                return False
    return True


def instantiate_case(board: Board, label: str, transform: str = "identity") -> GameState:
    """Play the explicit marks of a case template onto an empty board."""
    slots = two_polygon_slots(board)
    perm = TRANSFORMS[transform]
    moves: dict[int, Move] = {}
    for slot_no, sign in sorted({perm[i]: v for i, v in CASE_TEMPLATES[label].items()}.items()):
        slot = slots[slot_no]
        e = board.edge_at(board.index_of(slot.edge))
        into_hub = Orientation.TOWARD_V if slot.hub == e.v else Orientation.TOWARD_U
        mv = Move(slot.edge, into_hub if sign > 0 else into_hub.reverse)
        if slot.edge in moves:  # one-edge top path: slots 1 and 6 coincide
            if moves[slot.edge] != mv:
                raise AnalysisError(f"template {label}/{transform} conflicts on edge {slot.edge}")
            continue
        moves[slot.edge] = mv
    return replay(board, list(moves.values()))


# -- conjecture scan ---------------------------------------------------------

@dataclass
class ScanRow:
    label: str
    edges: int
    min_degree: int
    winner: Player | None
    agrees: bool | None      # winner == P1 iff edge count odd
    in_population: bool      # min degree >= 2, the conjecture's domain
    error: str | None = None


def conjecture_scan(boards: list[tuple[str, Board]], limits=None) -> list[ScanRow]:
    """Solve each board and compare with the odd-edges => P1 parity rule.

    Boards with a degree-1 vertex are reported but flagged out of the
    conjecture's population. Resource errors are recorded per row and the
    scan continues.
    """
    from .solver import ResourceLimitError, solve
    from .state import new_game

    rows = []
    for label, board in boards:
        min_deg = min(board.degree(v.id) for v in board.vertices)
        row = ScanRow(label, board.num_edges, min_deg, None, None, min_deg >= 2)
        try:
            res = solve(new_game(board), limits)
            row.winner = res.winner
            row.agrees = (res.winner is Player.P1) == (board.num_edges % 2 == 1)
        except ResourceLimitError as exc:
            row.error = str(exc)
        rows.append(row)
    return rows


def default_scan_boards(max_edges: int = 12) -> list[tuple[str, Board]]:
    """The generator families plus named boards, up to a size cap."""
    from . import generators as g

    boards: list[tuple[str, Board]] = []
    for n in range(3, max_edges + 1):
        boards.append((f"polygon:{n}", g.polygon(n)))
    for j in range(1, max_edges):
        for k in range(max(j, 2), max_edges):
            if j + k + 2 <= max_edges:
                boards.append((f"j2k:{j},{k}", g.j2k(j, k)))
    for j in range(1, max_edges):
        for n in range(3, max_edges):
            for k in range(j, max_edges):
                if j + n + k <= min(max_edges, 11) and not (j == 1 and k == 1):
                    boards.append((f"jnk:{j},{n},{k}", g.jnk(j, n, k)))
    for lengths in [(2, 2), (3, 3), (4, 4), (2, 2, 2), (3, 3, 3), (4, 4, 2),
                    (4, 4, 1), (5, 4, 2), (2, 2, 2, 2), (3, 2, 3, 2)]:
        if sum(lengths) <= max_edges:
            boards.append((f"ppaths:{','.join(map(str, lengths))}", g.ppaths(list(lengths))))
    for a, b in [(2, 2), (2, 3), (2, 4), (3, 3)]:
        board = g.grid(a, b)
        if board.num_edges <= max_edges:
            boards.append((f"grid:{a},{b}", board))
    for name in ["k4", "sample_fig3", "prism_left_fig10", "prism_right_fig10",
                 "counterexample_fig9"]:
        boards.append((f"named:{name}", g.named(name)))
    return [(l, b) for l, b in boards if b.num_edges <= max_edges]


def format_scan(rows: list[ScanRow]) -> str:
    lines = [f"{'board':<20} {'edges':>5} {'mindeg':>6} {'winner':>6} {'agrees':>7} {'population':>10}"]
    for r in rows:
        w = r.winner.name if r.winner else f"error"
        a = "-" if r.agrees is None else ("yes" if r.agrees else "NO")
        pop = "yes" if r.in_population else "excluded"
        lines.append(f"{r.label:<20} {r.edges:>5} {r.min_degree:>6} {w:>6} {a:>7} {pop:>10}")
    return "\n".join(lines)
