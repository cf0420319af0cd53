"""Exact winner determination by memoized exhaustive search.

The game is finite and someone always moves last, so every position has a
definite winner; the solver computes it exactly or raises - no heuristics,
no approximations, because a wrong "winner" would poison every check
built on top of it.

State encoding: the marks vector is packed base-3, little-endian by edge
id - digit i is 0 (unmarked), 1 (toward v) or 2 (toward u) for the edge at
position i of the ascending-id edge order. That integer is the
transposition-table key and the state hash quoted in reports, bit-exact.
The mover needs no key component: Player 1 is to move exactly when the
digit-count of marks is even.

When the board carries symmetry involutions that preserve the cell set,
the table key is canonicalized to the minimum encoding over the generated
automorphism group (kept incrementally per group element); this never
changes the winner and the cross-check tests assert as much.

The search is win/loss negamax with an immediate-win shortcut: a push that
completes a cycle cell ends the node. enumerate_terminals shares the same
cursor to visit every distinct reachable terminal once (memoized on the
raw, un-reduced marks vector) - the oracle behind the unmarkable-parity
checks.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .board import Board, Move, Orientation, UNMARKED
from .state import GameState, Player, status


@dataclass(frozen=True)
class SearchLimits:
    max_nodes: int = 200_000_000
    max_table_bytes: int = 4_000_000_000
    deterministic: bool = True
    use_symmetry: bool = True

    def __post_init__(self):
        if self.max_nodes <= 0 or self.max_table_bytes <= 0:
            raise ValueError("limits must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    table_entries: int = 0
    millis: float = 0.0


class ResourceLimitError(RuntimeError):
    """Search exceeded its limits; carries the partial stats."""

    def __init__(self, what: str, stats: SearchStats):
        super().__init__(f"resource limit: {what}")
        self.stats = stats


@dataclass(frozen=True)
class SolveResult:
    winner: Player
    winning_moves: tuple[Move, ...]
    principal_line: tuple[Move, ...]
    stats: SearchStats


# table entry cost estimate for the byte limit: int key + bool in a dict
_ENTRY_BYTES = 96


class _Cursor:
    """Mutable search cursor over one board: push/pop with O(degree) updates.

    Maintains per-vertex unmarked/in/out counts, the base-3 key, and one
    transformed key per symmetry-group element so the canonical key is a
    min() away.
    """

    def __init__(self, board: Board, marks=None, use_symmetry: bool = True):
        self.board = board
        m = board.num_edges
        vid_ix = {v.id: i for i, v in enumerate(board.vertices)}
        self.exempt = [v.id in board.exempt for v in board.vertices]
        # per edge: (u index, v index); mark 1 points into v, 2 into u
        self.ends = [(vid_ix[e.u], vid_ix[e.v]) for e in board.edge_order]
        self.vert_edges: list[list[tuple[int, int]]] = [[] for _ in board.vertices]
        for i, e in enumerate(board.edge_order):
            self.vert_edges[vid_ix[e.v]].append((i, 1))
            self.vert_edges[vid_ix[e.u]].append((i, 2))
        self.cells = [
            ([idx for idx, _ in rows], [along for _, along in rows])
            for rows in board.cell_edges
        ]
        self.cells_of_edge: list[list[int]] = [[] for _ in range(m)]
        for ci, (idxs, _) in enumerate(self.cells):
            for idx in idxs:
                self.cells_of_edge[idx].append(ci)
        self.pow3 = [3 ** i for i in range(m)]

        self.marks = [UNMARKED] * m
        self.unmarked = [len(rows) for rows in self.vert_edges]
        self.n_in = [0] * len(board.vertices)
        self.n_out = [0] * len(board.vertices)
        self.key = 0
        self.count = 0
        self.trail: list[tuple[int, int]] = []

        self.sym = _symmetry_transforms(board) if use_symmetry else []
        self.sym_keys = [0] * len(self.sym)

        if marks is not None:
            for i, mk in enumerate(marks):
                if mk != UNMARKED:
                    self.push(i, mk)
            self.trail.clear()

    def legal(self, i: int, d: int) -> bool:
        if self.marks[i]:
            return False
        u, v = self.ends[i]
        w = v if d == 1 else u
        x = u if d == 1 else v
        # d points into w and out of x
        if not self.exempt[w] and self.unmarked[w] == 1 and self.n_out[w] == 0:
            return False
        if not self.exempt[x] and self.unmarked[x] == 1 and self.n_in[x] == 0:
            return False
        return True

    def moves(self) -> list[tuple[int, int]]:
        out = []
        for i in range(len(self.marks)):
            if not self.marks[i]:
                if self.legal(i, 1):
                    out.append((i, 1))
                if self.legal(i, 2):
                    out.append((i, 2))
        return out

    def has_move(self) -> bool:
        for i in range(len(self.marks)):
            if not self.marks[i] and (self.legal(i, 1) or self.legal(i, 2)):
                return True
        return False

    def push(self, i: int, d: int) -> bool:
        """Mark edge i with d; returns True iff this completes a cell."""
        self.marks[i] = d
        u, v = self.ends[i]
        w, x = (v, u) if d == 1 else (u, v)
        self.unmarked[w] -= 1
        self.unmarked[x] -= 1
        self.n_in[w] += 1
        self.n_out[x] += 1
        self.key += d * self.pow3[i]
        for g, (perm, val1) in enumerate(self.sym):
            self.sym_keys[g] += (d if val1[i] else 3 - d) * self.pow3[perm[i]]
        self.count += 1
        self.trail.append((i, d))
        for ci in self.cells_of_edge[i]:
            idxs, along = self.cells[ci]
            fwd = True
            bwd = True
            for j, a in zip(idxs, along):
                mk = self.marks[j]
                if not mk:
                    fwd = bwd = False
                    break
                if mk == a:
                    bwd = False
                else:
                    fwd = False
            if fwd or bwd:
                return True
        return False

    def pop(self) -> None:
        i, d = self.trail.pop()
        self.marks[i] = UNMARKED
        u, v = self.ends[i]
        w, x = (v, u) if d == 1 else (u, v)
        self.unmarked[w] += 1
        self.unmarked[x] += 1
        self.n_in[w] -= 1
        self.n_out[x] -= 1
        self.key -= d * self.pow3[i]
        for g, (perm, val1) in enumerate(self.sym):
            self.sym_keys[g] -= (d if val1[i] else 3 - d) * self.pow3[perm[i]]
        self.count -= 1

    def canon_key(self) -> int:
        if not self.sym_keys:
            return self.key
        return min(self.key, *self.sym_keys)


def _symmetry_transforms(board: Board) -> list[tuple[list[int], list[bool]]]:
    """Edge permutations for the automorphism group the board's involutions
    generate, restricted to maps that preserve the declared cell set.

    Each element is (perm, val1) where perm[i] is the image edge position
    and val1[i] says whether mark value 1 maps to 1 (endpoint order kept)
    or to 2 (flipped).
    """
    from .board import normalize_cycle

    cellset = {normalize_cycle(c) for c in board.cells}
    edge_pos = {frozenset((e.u, e.v)): i for i, e in enumerate(board.edge_order)}

    def ok(vmap: dict[int, int]) -> bool:
        if set(vmap) != set(board.vertex_by_id):
            return False
        for e in board.edges:
            if frozenset((vmap[e.u], vmap[e.v])) not in edge_pos:
                return False
        return {normalize_cycle([vmap[v] for v in c]) for c in board.cells} == cellset

    ident = {v.id: v.id for v in board.vertices}
    group: dict[tuple, dict[int, int]] = {tuple(sorted(ident.items())): ident}
    frontier = [m for m in (dict(v) for v in board.symmetry.values()) if ok(m)]
    for m in frontier:
        group.setdefault(tuple(sorted(m.items())), m)
    changed = True
    while changed and len(group) <= 16:
        changed = False
        for m1 in list(group.values()):
            for m2 in frontier:
                comp = {v: m2[m1[v]] for v in m1}
                key = tuple(sorted(comp.items()))
                if key not in group:
                    group[key] = comp
                    changed = True

    out = []
    for m in group.values():
        if all(m[v] == v for v in m):
            continue
        perm = []
        val1 = []
        for e in board.edge_order:
            img = edge_pos[frozenset((m[e.u], m[e.v]))]
            ie = board.edge_order[img]
            perm.append(img)
            val1.append((ie.u, ie.v) == (m[e.u], m[e.v]))
        out.append((perm, val1))
    return out


def _check_limits(stats: SearchStats, table: dict, limits: SearchLimits) -> None:
    if stats.nodes > limits.max_nodes:
        raise ResourceLimitError("max_nodes", stats)
    if stats.nodes % 4096 == 0 and len(table) * _ENTRY_BYTES > limits.max_table_bytes:
        raise ResourceLimitError("max_table_bytes", stats)


def _win(cur: _Cursor, table: dict, stats: SearchStats, limits: SearchLimits) -> bool:
    """True iff the side to move wins the position on the cursor."""
    key = cur.canon_key()
    hit = table.get(key)
    if hit is not None:
        return hit
    stats.nodes += 1
    _check_limits(stats, table, limits)
    result = False
    moved = False
    for i in range(len(cur.marks)):
        if cur.marks[i]:
            continue
        for d in (1, 2):
            if not cur.legal(i, d):
                continue
            moved = True
            if cur.push(i, d):
                cur.pop()
                result = True
                break
            w = _win(cur, table, stats, limits)
            cur.pop()
            if not w:
                result = True
                break
        if result:
            break
    if not moved:
        result = False  # cannot move: the previous mover made the last move
    table[key] = result
    return result


def _mover_of(cur: _Cursor) -> Player:
    return Player.P1 if cur.count % 2 == 0 else Player.P2


def solve(state: GameState, limits: SearchLimits | None = None) -> SolveResult:
    """Exact game value of an in-progress position under optimal play.

    winning_moves: every immediately winning move for the mover if any
    exist, else every move leading to a position lost for the opponent
    (empty when the mover loses). The principal line extends the position
    to a terminal with lexicographic tie-breaks on both sides, so reports
    are reproducible bit for bit.
    """
    limits = limits or SearchLimits()
    if not status(state).in_progress:
        raise ValueError("solve requires an in-progress position")
    t0 = time.perf_counter()
    cur = _Cursor(state.board, state.marks, use_symmetry=limits.use_symmetry)
    table: dict[int, bool] = {}
    stats = SearchStats()

    immediate, to_lost = _classify_root_moves(cur, table, stats, limits)
    mover = _mover_of(cur)
    if immediate:
        winner, winning = mover, immediate
    elif to_lost:
        winner, winning = mover, to_lost
    else:
        winner, winning = mover.opponent, []

    line = _principal_line(cur, table, stats, limits)
    stats.table_entries = len(table)
    stats.millis = (time.perf_counter() - t0) * 1000.0
    board = state.board
    to_move = [Move(board.edge_at(i).id, Orientation(d)) for i, d in winning]
    pline = [Move(board.edge_at(i).id, Orientation(d)) for i, d in line]
    return SolveResult(winner, tuple(to_move), tuple(pline), stats)


def _classify_root_moves(cur, table, stats, limits):
    immediate: list[tuple[int, int]] = []
    to_lost: list[tuple[int, int]] = []
    for i, d in cur.moves():
        done = cur.push(i, d)
        if done or not cur.has_move():
            immediate.append((i, d))
        elif not immediate and not _win(cur, table, stats, limits):
            to_lost.append((i, d))
        cur.pop()
    return immediate, to_lost


def _principal_line(cur, table, stats, limits) -> list[tuple[int, int]]:
    line: list[tuple[int, int]] = []
    while True:
        moves = cur.moves()
        if not moves:
            break
        chosen = None
        for i, d in moves:
            done = cur.push(i, d)
            if done or not cur.has_move():
                chosen = (i, d)
                cur.pop()
                break
            w = _win(cur, table, stats, limits)
            cur.pop()
            if not w:
                chosen = (i, d)
                break
        if chosen is None:
            chosen = moves[0]  # mover is lost: lexicographic first
        done = cur.push(*chosen)
        line.append(chosen)
        if done:
            break
    for _ in line:
        cur.pop()
    return line


# -- terminal enumeration ---------------------------------------------------

@dataclass(frozen=True)
class TerminalInfo:
    marks: tuple[int, ...]
    winner: Player
    reason: str
    unmarkable: int
    completed: tuple[int, ...]  # indices of completed cells


@dataclass
class TerminalCensus:
    """Census of the distinct terminal states reachable from a position."""

    total: int = 0
    by_winner: dict = field(default_factory=dict)
    by_reason: dict = field(default_factory=dict)
    by_parity: dict = field(default_factory=dict)
    terminals: list[TerminalInfo] = field(default_factory=list)

    def add(self, info: TerminalInfo) -> None:
        self.total += 1
        self.by_winner[info.winner] = self.by_winner.get(info.winner, 0) + 1
        self.by_reason[info.reason] = self.by_reason.get(info.reason, 0) + 1
        p = info.unmarkable % 2
        self.by_parity[p] = self.by_parity.get(p, 0) + 1
        self.terminals.append(info)


def enumerate_terminals(state: GameState, limits: SearchLimits | None = None) -> TerminalCensus:
    """Visit every distinct reachable terminal state exactly once.

    Memoized on the raw marks vector (no symmetry reduction: distinct
    states are counted as drawn). Winner at a terminal is the parity
    mover; reason is cycle_cell when any cell is complete, else last_move.
    """
    limits = limits or SearchLimits()
    if not status(state).in_progress:
        raise ValueError("enumerate_terminals requires an in-progress position")
    cur = _Cursor(state.board, state.marks, use_symmetry=False)
    census = TerminalCensus()
    visited: set[int] = set()
    stats = SearchStats()

    def record(completed: bool) -> None:
        unmarkable = 0
        for i in range(len(cur.marks)):
            if not cur.marks[i] and not cur.legal(i, 1) and not cur.legal(i, 2):
                unmarkable += 1
        cells = tuple(
            ci for ci in range(len(cur.cells)) if _cell_complete(cur, ci)
        ) if completed else ()
        winner = Player.P1 if cur.count % 2 == 1 else Player.P2
        census.add(TerminalInfo(tuple(cur.marks), winner,
                                "cycle_cell" if cells else "last_move",
                                unmarkable, cells))

    def dfs(completed: bool) -> None:
        key = cur.key
        if key in visited:
            return
        visited.add(key)
        stats.nodes += 1
        if stats.nodes > limits.max_nodes:
            raise ResourceLimitError("max_nodes", stats)
        if completed:
            record(True)
            return
        moves = cur.moves()
        if not moves:
            record(False)
            return
        for i, d in moves:
            done = cur.push(i, d)
            dfs(done)
            cur.pop()

    dfs(False)
    return census


def _cell_complete(cur: _Cursor, ci: int) -> bool:
    idxs, along = cur.cells[ci]
    fwd = bwd = True
    for j, a in zip(idxs, along):
        mk = cur.marks[j]
        if not mk:
            return False
        if mk == a:
            bwd = False
        else:
            fwd = False
    return fwd or bwd


# -- sweep reports ----------------------------------------------------------

@dataclass
class WinnersRow:
    label: str
    edges: int
    winner: Player | None
    nodes: int
    millis: float
    principal_line: tuple[Move, ...] = ()
    error: str | None = None


def winners_table(boards: list[tuple[str, Board]],
                  limits: SearchLimits | None = None) -> list[WinnersRow]:
    """Solve a sweep of boards; errors are recorded per row, the sweep goes on."""
    from .state import new_game

    rows = []
    for label, board in boards:
        try:
            res = solve(new_game(board), limits)
            rows.append(WinnersRow(label, board.num_edges, res.winner,
                                   res.stats.nodes, res.stats.millis,
                                   res.principal_line))
        except ResourceLimitError as exc:
            rows.append(WinnersRow(label, board.num_edges, None,
                                   exc.stats.nodes, exc.stats.millis, (), str(exc)))
    return rows


def format_winners_table(rows: list[WinnersRow]) -> str:
    lines = [f"{'board':<18} {'edges':>5} {'winner':>6} {'nodes':>10} {'ms':>8}"]
    for r in rows:
        w = r.winner.name if r.winner else f"error: {r.error}"
        lines.append(f"{r.label:<18} {r.edges:>5} {w:>6} {r.nodes:>10} {r.millis:>8.1f}")
    return "\n".join(lines)
