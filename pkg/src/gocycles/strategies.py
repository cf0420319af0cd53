"""Constructive winning strategies as deterministic move policies.

Each policy turns one constructive winning recipe into a concrete move
function and is then *proved to win on a given board* by verify_policy,
which recurses over every legal opponent reply and checks that each leaf
is a win for the policy's player. Where a strategy leaves a micro-choice
open ("either direction", "some equivalent move") the policy fixes it
lexicographically; verification shows the fixed choice suffices.

Policies are stateful instances bound to (board, player): observe() feeds
them every move in order, choose() asks for their move, clone() forks the
bookkeeping so the verifier can branch over opponent replies. All
bookkeeping is a pure function of the observed history. Out-of-family
boards or the wrong seat are refused at construction with a PolicyError
naming the offence; the verifier reports such refusals as unverified, and
the short-odd-paths demonstrations rely on that.

The policies:

- path_policy: the inductive line strategy. Open the centre of the
  current 4-edges-smaller nested window; once an end of the line is
  committed (its primary marked, or forced by its secondary), answer on
  the opposite primary so the unmarkable-edge parity hands us the last
  move; after both ends are committed the outcome is locked and any legal
  move does.
- pairing_policy_32k: the 3-2-k pairing. Pair the two inner edges, the
  two outer 3-path edges and the k-path mirror pairs (middle with middle
  when k is odd; with k even Player 1 opens on the unpaired 3-path
  middle), answering on the partner in the same along-path direction.
  For odd k the plain recipe can be tempo-squeezed through the shared
  middle path, so the class adds guard rules - hot-cell repair and
  defusal, cross-path signal balancing, a kill-both-cells middle move,
  and parity-led directions once the cells are dead; see the class
  docstring. Verified exhaustively for k up to 6 (k = 7 is a documented
  frontier).
- j2k_policy (j,k >= 4): direct an inner edge at a hub, then complete two
  tasks - an outer signal matching it at that hub and an opposite outer
  signal at the far hub (two interchangeable edges each, so the opponent
  cannot block both). That pins an almost-sink/almost-source pair, makes
  every terminal's unmarkable count even and leaves at most one
  completable cell; afterwards any move that hands the opponent no
  immediate win preserves the parity, and one is always available.
- policy_12k (1-2-k, k >= 4): the six-case opening around the triangle
  (kill it, or match signals through the one-edge path), then the same
  safe-move endgame.
- mirror_reverse_policy: p-paths play. Open on a loner (unmirrorable)
  edge - the centre of the exceptional short path when there is one -
  then answer loner moves with loner moves and paired moves with the
  mirror-reverse (flip over the vertical mirror, then reverse). Role
  switch: when an odd path is down to three markable edges including its
  loner and the opponent takes a paired one, treat that as the loner move
  and re-pair the two leftovers. The naive variant skips the loner-first
  opening and the switch, which is exactly what the short-odd-paths
  counterexamples punish.
- rotate_reverse_policy: odd-by-even grids. Open on the unique
  self-involutive edge, then answer x->y with r(y)->r(x) under the
  180-degree rotation, completing a cycle instead whenever possible.
"""

from __future__ import annotations

import copy
from dataclasses import dataclass

from .board import Board, Move, Orientation, UNMARKED
from .state import (
    GameState,
    IllegalMoveError,
    Player,
    apply_move,
    legal_moves,
    legal_orientations,
    new_game,
    status,
)
from .structure import MultiPath, PathInfo, StructureError, multipath_structure
from .solver import SearchLimits


class PolicyError(Exception):
    """Policy refusal: out-of-family board, wrong seat, or broken invariant."""


class PolicyBase:
    """Shared plumbing: mark tracking and the clone/observe protocol."""

    name = "policy"

    def __init__(self, board: Board, player: Player):
        self.board = board
        self.player = player
        self.marks = [UNMARKED] * board.num_edges

    def observe(self, move: Move) -> None:
        self._before_apply(move)
        self.marks[self.board.index_of(move.edge)] = move.dir.value

    def _before_apply(self, move: Move) -> None:
        pass

    def choose(self, state: GameState) -> Move:
        raise NotImplementedError

    def clone(self) -> "PolicyBase":
        other = copy.copy(self)
        other.marks = list(self.marks)
        return other


def _lex_first_legal(state: GameState, edge_id: int) -> Move:
    for o in (Orientation.TOWARD_V, Orientation.TOWARD_U):
        if o in legal_orientations(state, edge_id):
            return Move(edge_id, o)
    raise PolicyError(f"edge {edge_id} has no legal orientation")


def _win_now_move(state: GameState) -> Move | None:
    me = state.to_move
    for mv in legal_moves(state):
        if status(apply_move(state, mv)).winner is me:
            return mv
    return None


class WinNow(PolicyBase):
    """Wrapper: play any immediately winning move before consulting inner.

    An immediate win is a cycle-cell completion or the last legal move;
    candidates are scanned in lexicographic order so ties are stable.
    """

    def __init__(self, inner: PolicyBase):
        self.inner = inner
        self.board = inner.board
        self.player = inner.player
        self.name = inner.name

    def observe(self, move: Move) -> None:
        self.inner.observe(move)

    def choose(self, state: GameState) -> Move:
        mv = _win_now_move(state)
        return mv if mv is not None else self.inner.choose(state)

    def clone(self) -> "WinNow":
        return WinNow(self.inner.clone())


def win_now_wrap(inner: PolicyBase) -> WinNow:
    return WinNow(inner)


def _safe_lex_move(state: GameState) -> Move:
    """Lexicographically first legal move after which the opponent has no
    immediately winning reply; falls back to the first legal move."""
    moves = legal_moves(state)
    for mv in moves:
        nxt = apply_move(state, mv)
        if _win_now_move(nxt) is None:
            return mv
    return moves[0]


# -- path policy --------------------------------------------------------------


class PathPolicy(PolicyBase):
    """Inductive strategy for the bare line (exempt endpoints)."""

    name = "path"

    def __init__(self, board: Board, player: Player):
        super().__init__(board, player)
        # a path board: vertices 0..n in a chain, ends exempt
        n = board.num_edges
        chain_ok = all(board.edge_at(i).u == i and board.edge_at(i).v == i + 1
                       for i in range(n))
        if not chain_ok or board.exempt != frozenset({0, n}):
            raise PolicyError("path policy requires a generated path board")
        self.n = n

    # spatial direction: True = rightward (toward higher vertex ids)
    def _mark_dir(self, idx: int) -> bool | None:
        m = self.marks[idx]
        if m == UNMARKED:
            return None
        return m == Orientation.TOWARD_V.value  # edges are stored left-to-right

    def _committed(self, state: GameState, left: bool) -> bool | None:
        """Spatial direction the end's primary is marked or forced to, else None."""
        n = self.n
        primary = 0 if left else n - 1
        d = self._mark_dir(primary)
        if d is not None:
            return d
        secondary = 1 if left else n - 2
        if 0 <= secondary < n and secondary != primary:
            d = self._mark_dir(secondary)
            if d is not None:
                return d  # a secondary forces its primary the same spatial way
        return None

    def _move_for(self, state: GameState, idx: int, rightward: bool) -> Move:
        want = Orientation.TOWARD_V if rightward else Orientation.TOWARD_U
        if want in legal_orientations(state, self.board.edge_at(idx).id):
            return Move(self.board.edge_at(idx).id, want)
        return _lex_first_legal(state, self.board.edge_at(idx).id)

    def choose(self, state: GameState) -> Move:
        n = self.n
        left = self._committed(state, True)
        right = self._committed(state, False)
        if left is not None and right is not None:
            return legal_moves(state)[0]
        if left is not None or right is not None:
            known = left if left is not None else right
            target_idx = n - 1 if left is not None else 0
            # choose the far primary's direction from the parity we need
            u_target = (n - 1) % 2 if self.player is Player.P1 else n % 2
            same = u_target % 2 == 0
            rightward = known if same else not known
            if self.marks[target_idx] == UNMARKED:
                return self._move_for(state, target_idx, rightward)
            return legal_moves(state)[0]
        mv = self._window_move(state, 0, n - 1)
        return mv if mv is not None else legal_moves(state)[0]

    def _window_move(self, state: GameState, lo: int, hi: int) -> Move | None:
        length = hi - lo + 1
        if length <= 0:
            return None
        count = sum(1 for i in range(lo, hi + 1) if self.marks[i] != UNMARKED)
        if count == 0:
            center = (lo + hi) // 2
            if self.marks[center] == UNMARKED:
                return self._move_for(state, center, True)
            return None
        # window end commitments (primary at lo/hi, secondary just inside)
        c_left = self._window_committed(lo, hi, True)
        c_right = self._window_committed(lo, hi, False)
        if c_left is not None and c_right is not None:
            for i in range(lo, hi + 1):
                if self.marks[i] == UNMARKED and legal_orientations(state, self.board.edge_at(i).id):
                    return _lex_first_legal(state, self.board.edge_at(i).id)
            return None
        if c_left is not None or c_right is not None:
            known = c_left if c_left is not None else c_right
            target = hi if c_left is not None else lo
            first_is_me = count % 2 == 0
            u_target = (length - (1 if first_is_me else 0)) % 2
            rightward = known if u_target == 0 else not known
            if self.marks[target] == UNMARKED:
                return self._move_for(state, target, rightward)
            return None
        return self._window_move(state, lo + 2, hi - 2)

    def _window_committed(self, lo: int, hi: int, left: bool) -> bool | None:
        primary = lo if left else hi
        d = self._mark_dir(primary)
        if d is not None:
            return d
        secondary = lo + 1 if left else hi - 1
        if lo <= secondary <= hi and secondary != primary:
            d = self._mark_dir(secondary)
            if d is not None:
                return d
        return None


# -- pairing policy for 3-2-k --------------------------------------------------


class Pairing32K(PolicyBase):
    """Pairing strategy for j2k(3, k); see the module docstring.

    The pair table answers same-direction first, but with j = 3 the two
    cells stay coupled through the shared middle path and the plain
    recipe can be squeezed, so several guard rules sit on top, each a
    local check:

    - a cell standing "hot" (three markable blanks: a pair plus its
      path's middle, the other path's middle still free) is repaired when
      the opponent enters its pair and no pair answer is safe, and
      defused preemptively when the opponent plays elsewhere - in both
      shapes a middle edge is taken, directed to kill its own cell, and
      the leftovers re-pair (the postponed answer keeps its original
      direction via `owed`);
    - an answer on a middle-path edge must not leave any live cell as a
      three-blank race (play the hot cell's own middle instead);
    - once the middle path is spent, an outer end commitment is answered
      by the opposite signal at the same hub on the other path, and when
      both cells are alive demanding the same middle direction one middle
      edge the other way kills them both;
    - with every cell dead the game is the pure unmarkable-parity race
      and answer directions follow the interaction calculus;
    - pairs that died or were broken for tempo are paid back with safe
      tempo moves.
    """

    name = "pairing-32k"

    def __init__(self, board: Board, player: Player):
        super().__init__(board, player)
        try:
            ms = multipath_structure(board)
        except StructureError as exc:
            raise PolicyError(str(exc)) from exc
        if len(ms.paths) != 3 or len(ms.paths[1]) != 2 or len(ms.paths[0]) != 3:
            raise PolicyError("pairing policy requires a j2k(3,k) board")
        self.ms = ms
        top, mid, bot = ms.paths
        k = len(bot)
        favored = Player.P1 if k % 2 == 0 else Player.P2
        if player is not favored:
            raise PolicyError(f"pairing policy plays {favored.name} on j2k(3,{k})")
        self.k = k
        self.along = {}
        for p in ms.paths:
            for eid, al in zip(p.edges, p.along):
                self.along[eid] = al

        self.partner: dict[int, int | None] = {}
        e1, e2 = mid.edges
        ej1, ej2, ej3 = top.edges
        self._pair(e1, e2)
        self._pair(ej1, ej3)
        for i in range(k // 2):
            self._pair(bot.edges[i], bot.edges[k - 1 - i])
        self.mid_of = {0: ej2, 2: bot.edges[k // 2] if k % 2 else None}
        if k % 2:
            self._pair(ej2, self.mid_of[2])
        else:
            self.partner[ej2] = None
        self.pending: tuple[str, int] | None = None  # ("repair"|"defuse", edge)
        self.owed: dict[int, int] = {}  # postponed pair answers: edge -> mark value

    def _pair(self, a: int, b: int) -> None:
        self.partner[a] = b
        self.partner[b] = a

    def clone(self) -> "Pairing32K":
        other = super().clone()
        other.partner = dict(self.partner)
        other.owed = dict(self.owed)
        return other

    def _markable(self, eid: int) -> bool:
        return _raw_markable(self.board, self.marks, eid)

    def _hot_cells(self) -> list[tuple[int, int, int, list[int]]]:
        """Cells in the dangerous three-blank shape, as
        (path index, middle edge, other middle, the blank pair)."""
        top, mid, bot = self.ms.paths
        out = []
        for path_ix, cell_path in ((0, top), (2, bot)):
            middle = self.mid_of[path_ix]
            if middle is None:
                continue
            cell_edges = list(cell_path.edges) + list(mid.edges)
            blanks = [e for e in cell_edges
                      if self.marks[self.board.index_of(e)] == UNMARKED]
            if len(blanks) != 3 or middle not in blanks:
                continue
            if not all(self._markable(e) for e in blanks):
                continue
            others = [e for e in blanks if e != middle]
            if self.partner.get(others[0]) != others[1]:
                continue
            other_middle = self.mid_of[2 if path_ix == 0 else 0]
            if other_middle is None or \
                    self.marks[self.board.index_of(other_middle)] != UNMARKED or \
                    not self._markable(other_middle):
                continue
            out.append((path_ix, middle, other_middle, others))
        return out

    def _before_apply(self, move: Move) -> None:
        mover_is_me = sum(1 for m in self.marks if m) % 2 == (0 if self.player is Player.P1 else 1)
        if mover_is_me:
            return
        self.pending = None
        # repair: the opponent takes a paired edge of a hot cell and the
        # plain answer would leave that cell one move from completion
        for _, middle, other_middle, others in self._hot_cells():
            if move.edge in others:
                survivor = others[0] if move.edge == others[1] else others[1]
                if self._pair_response_dangerous(move, survivor, middle):
                    self._pair(survivor, middle)
                    self.partner[move.edge] = None
                    self.pending = ("repair", other_middle)
                return
        # defuse: a cell stands hot and the opponent played elsewhere; take
        # the hot middle ourselves and re-pair the opponent's answer edge
        # with the orphaned other middle
        idx = self.board.index_of(move.edge)
        self.marks[idx] = move.dir.value
        hot = self._hot_cells()
        self.marks[idx] = UNMARKED
        for _, middle, other_middle, _ in hot:
            if move.edge == middle or move.edge == other_middle:
                continue
            px = self.partner.get(move.edge)
            self.pending = ("defuse", middle)
            self.partner[move.edge] = None
            if px is not None and px != middle:
                self._pair(px, other_middle)
                along_move = move.dir.value == self.along[move.edge]
                self.owed[px] = self.along[px] if along_move else 3 - self.along[px]
            return

    def _pair_response_dangerous(self, move: Move, survivor: int, middle: int) -> bool:
        """Is every orientation of the pair answer on `survivor` either
        illegal or one move from handing the opponent a completion? Only
        then is the repair variation needed."""
        board = self.board
        i_move, i_surv = board.index_of(move.edge), board.index_of(survivor)
        self.marks[i_move] = move.dir.value
        any_safe = False
        for resp in (1, 2):
            if not _raw_markable_dir(board, self.marks, i_surv, resp):
                continue
            self.marks[i_surv] = resp
            if not self._any_cell_one_away():
                any_safe = True
            self.marks[i_surv] = UNMARKED
            if any_safe:
                break
        self.marks[i_move] = UNMARKED
        return not any_safe

    def _any_cell_one_away(self) -> bool:
        for rows in self.board.cell_edges:
            fwd = bwd = True
            blank = 0
            for idx, along in rows:
                m = self.marks[idx]
                if not m:
                    blank += 1
                elif m == along:
                    bwd = False
                else:
                    fwd = False
            if blank == 1 and (fwd or bwd):
                return True
        return False

    def _directed_safely(self, state: GameState, eid: int) -> Move:
        """Choose the orientation of `eid`: prefer one that leaves its own
        cell with no consistent completion at all; then one that leaves no
        cell a single move from completion; then mere legality."""
        legal = sorted(legal_orientations(state, eid), key=lambda o: o.value)
        if not legal:
            raise PolicyError(f"response edge {eid} is unmarkable")
        idx = self.board.index_of(eid)
        scored = []
        for o in legal:
            self.marks[idx] = o.value
            dead = not self._cell_alive_through(idx)
            safe = not self._any_cell_one_away()
            self.marks[idx] = UNMARKED
            scored.append(((0 if dead else 1, 0 if safe else 1), o))
        scored.sort(key=lambda t: t[0])
        return Move(eid, scored[0][1])

    def _cell_alive_through(self, edge_idx: int) -> bool:
        for rows in self.board.cell_edges:
            if all(idx != edge_idx for idx, _ in rows):
                continue
            fwd = bwd = True
            for idx, along in rows:
                m = self.marks[idx]
                if not m:
                    continue
                if m == along:
                    bwd = False
                else:
                    fwd = False
            if fwd or bwd:
                return True
        return False

    def choose(self, state: GameState) -> Move:
        if not state.history:
            return _lex_first_legal(state, self.mid_of[0])  # unpaired e_j2
        if self.pending is not None:
            (_, eid), self.pending = self.pending, None
            return self._directed_safely(state, eid)
        last = state.history[-1]
        both_kill = self._kill_both_cells_move(state, last)
        if both_kill is not None:
            return both_kill
        p = self.partner.get(last.edge)
        if p is None:
            raise PolicyError(f"pairing invariant broken at edge {last.edge}")
        if self.marks[self.board.index_of(p)] != UNMARKED:
            # the opponent finished a pair a tempo move of ours had broken
            return self._tempo_move(state)
        if not self._markable(p):
            # the answer edge died with the opponent's move: the pair is
            # spent, the cells it guarded are dead, so spend a free tempo
            return self._tempo_move(state)
        if p in self.owed:
            want = Orientation(self.owed.pop(p))
        else:
            along_last = last.dir.value == self.along[last.edge]
            want = Orientation(self.along[p] if along_last else (3 - self.along[p]))
        if p in self.ms.paths[1].edges:
            # answering on the middle path seals both cells' rotations; it
            # must not leave a live cell as a three-blank race the opponent
            # enters at leisure - kill that cell's own middle edge instead
            mv = self._inner_answer(state, p, want)
            if mv is not None:
                return mv
        dead_want = self._dead_endgame_want(state, last, p)
        if dead_want is not None:
            want = dead_want
        # preference: same-direction pair answer while it is safe; then the
        # cross-path hub balance; then a flipped pair answer; then anything
        idx = self.board.index_of(p)
        legal = [o for o in (want, want.reverse)
                 if o in legal_orientations(state, p)]
        safe_of = {}
        for o in legal:
            self.marks[idx] = o.value
            safe_of[o] = not self._any_cell_one_away()
            self.marks[idx] = UNMARKED
        if legal and legal[0] is want and safe_of[want]:
            return Move(p, want)
        balance = self._hub_balance_move(state, last)
        if balance is not None:
            return balance
        for o in legal:
            if safe_of[o]:
                return Move(p, o)
        return self._tempo_move(state)

    def _dead_endgame_want(self, state: GameState, last: Move, p: int) -> Orientation | None:
        """Parity-correct direction for a far-primary answer once no cell
        can complete any more.

        The game is then the pure unmarkable-parity race: the favoured
        player needs the total unmarkable count even, each path's count
        follows its end-signal interaction, so the answer's sign is fixed
        by the other paths' already-determined parities.
        """
        from .analysis import interaction_parity, signal_of

        for rows in self.board.cell_edges:
            fwd = bwd = True
            for idx, along in rows:
                m = self.marks[idx]
                if not m:
                    continue
                if m == along:
                    bwd = False
                else:
                    fwd = False
            if fwd or bwd:
                return None
        commit = self._end_commitment(last)
        if commit is None:
            return None
        pi, _ = self.ms.path_of_edge(last.edge)
        path = self.ms.paths[pi]
        if p not in (path.edges[0], path.edges[-1]):
            return None
        needed = 0
        for q in self.ms.paths:
            if q is path:
                continue
            try:
                s_u = signal_of(state, self.ms.u, q.edges[0])
                s_v = signal_of(state, self.ms.v, q.edges[-1])
            except Exception:
                return None
            if s_u is None or s_v is None:
                return None
            needed ^= interaction_parity(s_u.value, s_v.value)
        hub, sign = commit
        answer_sign = sign if needed == 1 else -sign
        far_hub = self.ms.v if hub == self.ms.u else self.ms.u
        e = self.board.edge_at(self.board.index_of(p))
        into = Orientation.TOWARD_V if far_hub == e.v else Orientation.TOWARD_U
        return into if answer_sign > 0 else into.reverse

    def _kill_both_cells_move(self, state: GameState, last: Move) -> Move | None:
        """Dead-both answer to an outer commitment (odd k only).

        When the opponent commits an outer path's end while the middle
        path is untouched and BOTH cells are alive, each with marks, and
        both completions demand the same middle-path direction, one
        middle edge directed the other way kills both cells at once and
        the game collapses to the unmarkable-parity race we win.
        """
        if self.k % 2 == 0:
            return None
        mid = self.ms.paths[1]
        board = self.board
        if any(self.marks[board.index_of(e)] != UNMARKED for e in mid.edges):
            return None
        if self._end_commitment(last) is None:
            return None
        needs = []
        for rows in board.cell_edges:
            fwd = bwd = True
            marked = 0
            for idx, along in rows:
                m = self.marks[idx]
                if not m:
                    continue
                marked += 1
                if m == along:
                    bwd = False
                else:
                    fwd = False
            if marked == 0 or not (fwd or bwd):
                return None  # a cell with no stake, or already dead
            want = {}
            for idx, along in rows:
                e = board.edge_at(idx).id
                if e in mid.edges:
                    want[e] = along if fwd else 3 - along
            needs.append(want)
        if len(needs) != 2 or needs[0] != needs[1]:
            return None
        for eid in mid.edges:
            required = needs[0][eid]
            o = Orientation(3 - required)  # the direction both cells cannot use
            if o in legal_orientations(state, eid) and self._safe_after(eid, o):
                return Move(eid, o)
        return None

    def _hub_balance_move(self, state: GameState, last: Move) -> Move | None:
        """Cross-path balance once the middle path is spent.

        With both middle-path edges directed, the two cells decouple into
        two hub-to-hub paths whose unmarkable parities add; answering an
        end-signal commitment on one path inside that path locks its
        parity and loses the race on the other. The winning shape is to
        mirror the commitment through the hub: opponent fixes signal s at
        a hub on one outer path, we fix -s at the same hub on the other.
        """
        if self.k % 2 == 0:
            # even k: our first move spent the 3-path middle, which pins that
            # path's end signals; in-path pair answers then keep every path
            # even and cross-path balancing would wreck the bookkeeping
            return None
        mid = self.ms.paths[1]
        if any(self.marks[self.board.index_of(e)] == UNMARKED for e in mid.edges):
            return None
        commit = self._end_commitment(last)
        if commit is None:
            return None
        hub, sign = commit
        top, _, bot = self.ms.paths
        other = bot if last.edge in top.edges else top
        primary = other.edges[0] if hub == self.ms.u else other.edges[-1]
        if self.marks[self.board.index_of(primary)] != UNMARKED:
            return None
        e = self.board.edge_at(self.board.index_of(primary))
        into = Orientation.TOWARD_V if hub == e.v else Orientation.TOWARD_U
        want = into.reverse if sign > 0 else into
        if want in legal_orientations(state, primary) and \
                self._safe_after(primary, want):
            return Move(primary, want)
        if len(other) >= 2:
            pos = 1 if hub == self.ms.u else len(other) - 2
            if len(other) == 3 and pos == 1:
                return None  # the doubly-secondary middle balances nothing cleanly
            sec = other.edges[pos]
            if self.marks[self.board.index_of(sec)] == UNMARKED:
                al = other.along[pos]
                # force the primary to -s: along pins -1 at u / +1 at v
                if hub == self.ms.u:
                    o = Orientation(al) if sign > 0 else Orientation(3 - al)
                else:
                    o = Orientation(3 - al) if sign > 0 else Orientation(al)
                if o in legal_orientations(state, sec) and self._safe_after(sec, o):
                    return Move(sec, o)
        return None

    def _safe_after(self, eid: int, o: Orientation) -> bool:
        idx = self.board.index_of(eid)
        self.marks[idx] = o.value
        safe = not self._any_cell_one_away()
        self.marks[idx] = UNMARKED
        return safe

    def _end_commitment(self, move: Move) -> tuple[int, int] | None:
        """(hub, signal) an outer-path primary or secondary move pins; None
        for interior edges or the doubly-secondary middle of the 3-path."""
        top, _, bot = self.ms.paths
        for p in (top, bot):
            if move.edge not in p.edges:
                continue
            pos = p.edges.index(move.edge)
            L = len(p)
            along = move.dir.value == p.along[pos]
            if pos == 0:
                return self.ms.u, (-1 if along else +1)
            if pos == L - 1:
                return self.ms.v, (+1 if along else -1)
            if L >= 4:
                if pos == 1:
                    return self.ms.u, (-1 if along else +1)
                if pos == L - 2:
                    return self.ms.v, (+1 if along else -1)
            return None
        return None

    def _inner_answer(self, state: GameState, p: int, want: Orientation) -> Move | None:
        idx = self.board.index_of(p)
        for o in (want, want.reverse):
            if o not in legal_orientations(state, p):
                continue
            self.marks[idx] = o.value
            ok = not self._any_cell_one_away() and not self._live_trio()
            self.marks[idx] = UNMARKED
            if ok:
                return Move(p, o)
        for middle in (self.mid_of[0], self.mid_of[2]):
            if middle is None or self.marks[self.board.index_of(middle)] != UNMARKED:
                continue
            if not self._markable(middle):
                continue
            return self._directed_safely(state, middle)
        return None

    def _live_trio(self) -> bool:
        """Some cell is consistently directed with exactly three blanks."""
        for rows in self.board.cell_edges:
            fwd = bwd = True
            blank = 0
            for idx, along in rows:
                m = self.marks[idx]
                if not m:
                    blank += 1
                elif m == along:
                    bwd = False
                else:
                    fwd = False
            if blank == 3 and (fwd or bwd):
                return True
        return False

    def _tempo_move(self, state: GameState) -> Move:
        """A move that does not break a live pair: lex-first safe move whose
        partner is already marked or unmarkable; else any safe move."""
        free: list[Move] = []
        rest: list[Move] = []
        for mv in legal_moves(state):
            q = self.partner.get(mv.edge)
            dead = q is None or self.marks[self.board.index_of(q)] != UNMARKED \
                or not self._markable(q)
            (free if dead else rest).append(mv)
        idx_of = self.board.index_of
        for mv in free + rest:
            self.marks[idx_of(mv.edge)] = mv.dir.value
            safe = not self._any_cell_one_away()
            self.marks[idx_of(mv.edge)] = UNMARKED
            if safe:
                return mv
        return legal_moves(state)[0]


def _raw_markable(board: Board, marks: list[int], edge_id: int) -> bool:
    idx = board.index_of(edge_id)
    if marks[idx] != UNMARKED:
        return False
    e = board.edge_at(idx)
    for value in (1, 2):
        ok = True
        for vid in (e.u, e.v):
            if vid in board.exempt:
                continue
            into = outof = unmarked = 0
            for i2, into_val, _ in board.incident[vid]:
                m = marks[i2] if i2 != idx else value
                if not m:
                    unmarked += 1
                elif m == into_val:
                    into += 1
                else:
                    outof += 1
            if unmarked == 0 and (into == 0 or outof == 0):
                ok = False
                break
        if ok:
            return True
    return False

def _raw_markable_dir(board: Board, marks: list[int], idx: int, value: int) -> bool:
    if marks[idx] != UNMARKED:
        return False
    e = board.edge_at(idx)
    for vid in (e.u, e.v):
        if vid in board.exempt:
            continue
        into = outof = unmarked = 0
        for i2, into_val, _ in board.incident[vid]:
            m = marks[i2] if i2 != idx else value
            if not m:
                unmarked += 1
            elif m == into_val:
                into += 1
            else:
                outof += 1
        if unmarked == 0 and (into == 0 or outof == 0):
            return False
    return True



# -- j2k policy, j,k >= 4 -------------------------------------------------------


class J2KPolicy(PolicyBase):
    """Hub-signal strategy for j2k(j,k) with j,k >= 4."""

    name = "j2k"

    def __init__(self, board: Board, player: Player):
        super().__init__(board, player)
        try:
            ms = multipath_structure(board)
        except StructureError as exc:
            raise PolicyError(str(exc)) from exc
        if len(ms.paths) != 3 or len(ms.paths[1]) != 2:
            raise PolicyError("j2k policy requires a j2k board")
        j, k = len(ms.paths[0]), len(ms.paths[2])
        if j < 4 or k < 4:
            raise PolicyError("j2k policy requires j,k >= 4")
        favored = Player.P1 if (j + k) % 2 == 1 else Player.P2
        if player is not favored:
            raise PolicyError(f"j2k policy plays {favored.name} on j2k({j},{k})")
        self.ms = ms

    # outer primary slots per hub: [(edge, hub), ...]
    def _outer_slots(self, hub: int) -> list[int]:
        top, _, bot = self.ms.paths
        if hub == self.ms.u:
            return [top.edges[0], bot.edges[0]]
        return [top.edges[-1], bot.edges[-1]]

    def _signal(self, state: GameState, hub: int, eid: int):
        from .analysis import signal_of

        return signal_of(state, hub, eid)

    def _inner_anchor(self, state: GameState):
        """(hub, sign) fixed by a marked inner edge, if any."""
        mid = self.ms.paths[1]
        for eid, hub in ((mid.edges[0], self.ms.u), (mid.edges[-1], self.ms.v)):
            s = self._signal(state, hub, eid)
            if s is not None and s.kind == "explicit":
                return hub, s.value, eid
        return None

    def _into_hub(self, eid: int, hub: int) -> Orientation:
        e = self.board.edge_at(self.board.index_of(eid))
        return Orientation.TOWARD_V if hub == e.v else Orientation.TOWARD_U

    def _signed_move(self, state: GameState, eid: int, hub: int, sign: int) -> Move | None:
        if self.marks[self.board.index_of(eid)] != UNMARKED:
            return None
        want = self._into_hub(eid, hub) if sign > 0 else self._into_hub(eid, hub).reverse
        if want in legal_orientations(state, eid):
            return Move(eid, want)
        return None

    def _opening_anchor(self, state: GameState) -> Move | None:
        """Mark an inner edge to fix (hub, sign), casing on the first move."""
        mid = self.ms.paths[1]
        inner_left, inner_right = mid.edges[0], mid.edges[-1]
        if all(m == UNMARKED for m in self.marks):
            return Move(inner_left, self._into_hub(inner_left, self.ms.u))  # y -> b
        # P2 seat: exactly one opponent mark so far
        marked = [i for i, m in enumerate(self.marks) if m != UNMARKED]
        eid = self.board.edge_at(marked[0]).id
        hub_sign = self._outer_move_effect(state, eid)
        if hub_sign is None:
            # "any other edge": follow Player 1's plan from the second seat
            return Move(inner_left, self._into_hub(inner_left, self.ms.u))
        hub, sign = hub_sign
        inner = inner_left if hub == self.ms.u else inner_right
        mv = self._signed_move(state, inner, hub, sign)
        if mv is None:
            raise PolicyError("inner response unavailable")
        return mv

    def _outer_move_effect(self, state: GameState, eid: int):
        """(hub, sign) an opponent's outer primary/secondary move pins, else None."""
        top, mid, bot = self.ms.paths
        for p in (top, bot):
            if eid not in p.edges:
                continue
            pos = p.edges.index(eid)
            L = len(p)
            mark = self.marks[self.board.index_of(eid)]
            along = mark == p.along[pos]
            if pos == 0:
                return self.ms.u, (-1 if along else +1)
            if pos == L - 1:
                return self.ms.v, (+1 if along else -1)
            if pos == 1:  # secondary of the u-side primary: forces it spatially
                return self.ms.u, (-1 if along else +1)
            if pos == L - 2:
                return self.ms.v, (+1 if along else -1)
            return None
        return None

    def choose(self, state: GameState) -> Move:
        anchor = self._inner_anchor(state)
        if anchor is None:
            mv = self._opening_anchor(state)
            if mv is not None:
                return mv
            return _safe_lex_move(state)
        hub, sign, _ = anchor
        other = self.ms.v if hub == self.ms.u else self.ms.u
        pending: list[list[Move]] = []
        for target_hub, target_sign in ((hub, sign), (other, -sign)):
            slots = self._outer_slots(target_hub)
            if any(
                (s := self._signal(state, target_hub, e)) is not None and s.value == target_sign
                for e in slots
            ):
                continue  # task already satisfied
            live = [mv for e in slots
                    if (mv := self._signed_move(state, e, target_hub, target_sign)) is not None]
            if not live:
                raise PolicyError(f"cannot place signal {target_sign} at hub {target_hub}")
            pending.append(live)
        if pending:
            # a task the opponent has cut down to one option comes first
            pending.sort(key=len)
            return pending[0][0]
        return _safe_lex_move(state)


# -- 1-2-k policy ---------------------------------------------------------------


class Policy12K(PolicyBase):
    """Triangle-and-signals strategy for j2k(1,k) with k >= 4."""

    name = "12k"

    def __init__(self, board: Board, player: Player):
        super().__init__(board, player)
        try:
            ms = multipath_structure(board)
        except StructureError as exc:
            raise PolicyError(str(exc)) from exc
        if len(ms.paths) != 3 or len(ms.paths[1]) != 2 or len(ms.paths[0]) != 1:
            raise PolicyError("12k policy requires a j2k(1,k) board")
        k = len(ms.paths[2])
        if k < 4:
            raise PolicyError("12k policy requires k >= 4")
        favored = Player.P1 if k % 2 == 0 else Player.P2
        if player is not favored:
            raise PolicyError(f"12k policy plays {favored.name} on j2k(1,{k})")
        self.ms = ms
        self.ac = ms.paths[0].edges[0]
        self.ab, self.bc = ms.paths[1].edges
        self.a, self.c = ms.u, ms.v
        # the triangle is the cell of the one-edge path plus the inner path
        self.triangle = (self.ac, self.ab, self.bc)

    def _into(self, eid: int, hub: int) -> Orientation:
        e = self.board.edge_at(self.board.index_of(eid))
        return Orientation.TOWARD_V if hub == e.v else Orientation.TOWARD_U

    def _triangle_alive(self) -> bool:
        board = self.board
        cell_rows = None
        for rows in board.cell_edges:
            if {board.edge_at(i).id for i, _ in rows} == set(self.triangle):
                cell_rows = rows
                break
        if cell_rows is None:
            return False
        fwd = bwd = True
        for idx, along in cell_rows:
            m = self.marks[idx]
            if not m:
                continue
            if m == along:
                bwd = False
            else:
                fwd = False
        return fwd or bwd

    def _hub_sign(self, state: GameState, hub: int) -> int | None:
        """The sign the marked structure already fixes at a hub.

        Explicit signals of the hub's own primaries count, and so does the
        signal an adjacent secondary forces on an unmarked primary.
        """
        from .analysis import signal_of

        top, mid, bot = self.ms.paths
        prim = {self.a: [self.ac, self.ab, bot.edges[0]],
                self.c: [self.ac, self.bc, bot.edges[-1]]}[hub]
        for eid in prim:
            s = signal_of(state, hub, eid)
            if s is not None:
                return s.value
        # secondary force on the k-path primary
        pos = 1 if hub == self.a else len(bot) - 2
        eid = bot.edges[pos]
        mark = self.marks[self.board.index_of(eid)]
        if mark:
            along = mark == bot.along[pos]
            return (-1 if along else +1) if hub == self.a else (+1 if along else -1)
        # inner-path force through the middle vertex: a marked far inner
        # edge pins this hub's inner primary
        far = self.bc if hub == self.a else self.ab
        mark = self.marks[self.board.index_of(far)]
        if mark:
            mid_along = mark == mid.along[mid.edges.index(far)]
            return -1 if (mid_along == (hub == self.a)) else +1
        return None

    def _signed(self, state: GameState, eid: int, hub: int, sign: int) -> Move | None:
        if self.marks[self.board.index_of(eid)] != UNMARKED:
            return None
        want = self._into(eid, hub) if sign > 0 else self._into(eid, hub).reverse
        if want in legal_orientations(state, eid):
            return Move(eid, want)
        return None

    def _k_side_sign(self, state: GameState, hub: int) -> int | None:
        """Sign the k-path's marks fix at a hub: primary explicit/implicit
        signal, or the force of a marked secondary."""
        from .analysis import signal_of

        bot = self.ms.paths[2]
        prim = bot.edges[0] if hub == self.a else bot.edges[-1]
        s = signal_of(state, hub, prim)
        if s is not None:
            return s.value
        pos = 1 if hub == self.a else len(bot) - 2
        eid = bot.edges[pos]
        mark = self.marks[self.board.index_of(eid)]
        if mark:
            along = mark == bot.along[pos]
            return (-1 if along else +1) if hub == self.a else (+1 if along else -1)
        return None

    def _far_inner_move(self, hub: int, sign: int) -> Move:
        """Direct the inner edge at the far hub so that it induces `sign`
        at `hub` through the middle vertex (both arrows toward `hub`, or
        both away)."""
        mid = self.ms.paths[1]
        if hub == self.a:
            eid = self.bc
            along = sign == -1  # b->c forces ab away from a
        else:
            eid = self.ab
            along = sign == +1  # a->b forces bc toward c
        want = mid.along[mid.edges.index(eid)]
        return Move(eid, Orientation(want if along else 3 - want))

    def choose(self, state: GameState) -> Move:
        marks_total = sum(1 for m in self.marks if m)
        if marks_total == 0:
            return Move(self.ac, self._into(self.ac, self.c))  # a -> c
        board = self.board
        ac_marked = self.marks[board.index_of(self.ac)] != UNMARKED
        inner_marked = any(self.marks[board.index_of(e)] != UNMARKED
                           for e in (self.ab, self.bc))

        if not ac_marked and not inner_marked:
            # opponent is working the k path (or its interior)
            s_a = self._k_side_sign(state, self.a)
            s_c = self._k_side_sign(state, self.c)
            if s_a is not None:
                mv = self._far_inner_move(self.a, s_a)
                if mv.dir in legal_orientations(state, mv.edge):
                    return mv
            elif s_c is not None:
                mv = self._far_inner_move(self.c, s_c)
                if mv.dir in legal_orientations(state, mv.edge):
                    return mv
            else:
                return Move(self.ac, self._into(self.ac, self.c))
        if not ac_marked and inner_marked:
            # direct the one-edge path "accordingly": extend the fixed signs
            for hub in (self.a, self.c):
                sign = self._hub_sign(state, hub)
                if sign is None:
                    continue
                mv = self._signed(state, self.ac, hub, sign)
                if mv is not None and self._kills_or_keeps(mv):
                    return mv
        if self._triangle_alive():
            for eid, hub in ((self.ab, self.a), (self.bc, self.c)):
                sign = self._hub_sign(state, hub)
                if sign is None:
                    continue
                mv = self._signed(state, eid, hub, sign)
                if mv is not None and self._kills(mv):
                    return mv
            for eid in (self.ab, self.bc, self.ac):
                for o in (Orientation.TOWARD_V, Orientation.TOWARD_U):
                    mv = Move(eid, o)
                    if self.marks[board.index_of(eid)] == UNMARKED and \
                            o in legal_orientations(state, eid) and self._kills(mv):
                        return mv
        return _safe_lex_move(state)

    def _kills(self, mv: Move) -> bool:
        """Does mv leave the triangle dead?"""
        idx = self.board.index_of(mv.edge)
        self.marks[idx] = mv.dir.value
        alive = self._triangle_alive()
        self.marks[idx] = UNMARKED
        return not alive

    def _kills_or_keeps(self, mv: Move) -> bool:
        """mv must not hand the opponent a live, nearly-complete triangle."""
        idx = self.board.index_of(mv.edge)
        self.marks[idx] = mv.dir.value
        alive = self._triangle_alive()
        unmarked = sum(1 for e in self.triangle
                       if self.marks[self.board.index_of(e)] == UNMARKED)
        self.marks[idx] = UNMARKED
        return (not alive) or unmarked >= 2


# -- mirror-reverse on p paths ---------------------------------------------------


class MirrorReverse(PolicyBase):
    """Mirror-reverse strategy for p-paths boards (naive variant optional)."""

    name = "mirror-reverse"

    def __init__(self, board: Board, player: Player, naive: bool = False):
        super().__init__(board, player)
        self.naive = naive
        if naive:
            self.name = "mirror-reverse-naive"
        vmap = board.symmetry.get("mirror")
        if not vmap:
            raise PolicyError("mirror-reverse requires a board with a mirror map")
        try:
            self.ms = multipath_structure(board)
        except StructureError as exc:
            raise PolicyError(str(exc)) from exc
        self.emap: dict[int, int] = {}
        for e in board.edges:
            img = board.edge_between(vmap[e.u], vmap[e.v])
            if img is None:
                raise PolicyError("mirror map does not map edges to edges")
            self.emap[e.id] = img.id
        self.vmap = dict(vmap)
        self.loners = {e for e, img in self.emap.items() if img == e}
        self.partner: dict[int, int | None] = {
            e: (img if img != e else None) for e, img in self.emap.items()
        }
        self.exception_path: PathInfo | None = None
        if not naive:
            total = board.num_edges
            favored = Player.P1 if total % 2 == 1 else Player.P2
            if player is not favored:
                raise PolicyError(f"mirror-reverse plays {favored.name} here")
            short = [p for p in self.ms.paths if len(p) % 2 == 1 and len(p) < 5]
            if short:
                if player is Player.P1 and len(short) == 1 and len(short[0]) in (1, 3):
                    self.exception_path = short[0]
                else:
                    names = ", ".join(f"length-{len(p)} path" for p in short)
                    raise PolicyError(f"odd paths shorter than 5 unsupported here: {names}")
        self.respond_loner = False

    def clone(self) -> "MirrorReverse":
        other = super().clone()
        other.partner = dict(self.partner)
        other.loners = set(self.loners)
        return other

    def _markable(self, eid: int) -> bool:
        return _raw_markable(self.board, self.marks, eid)

    def _before_apply(self, move: Move) -> None:
        mover = Player.P1 if sum(1 for m in self.marks if m) % 2 == 0 else Player.P2
        if mover is self.player:
            return
        self.respond_loner = False
        if move.edge in self.loners:
            self.respond_loner = True
            return
        if self.naive:
            return
        # role switch: an odd path down to three markable edges, its loner
        # among them, and the opponent took one of the paired two
        pi, _ = self.ms.path_of_edge(move.edge)
        p = self.ms.paths[pi]
        if len(p) % 2 ==  0:
            return
        unmarked = [e for e in p.edges
                    if self.marks[self.board.index_of(e)] == UNMARKED]
        loner = next((e for e in p.edges if e in self.loners), None)
        if loner is None or loner not in unmarked or len(unmarked) != 3:
            return
        if not all(self._markable(e) for e in unmarked):
            return
        others = [e for e in unmarked if e != loner]
        if move.edge not in others or self.partner.get(others[0]) != others[1]:
            return
        survivor = others[0] if move.edge == others[1] else others[1]
        self.partner[survivor] = loner
        self.partner[loner] = survivor
        self.partner[move.edge] = None
        self.loners.discard(loner)
        self.respond_loner = True  # the marked edge now counts as the loner move

    def _loner_move(self, state: GameState) -> Move | None:
        for eid in sorted(self.loners):
            if self.marks[self.board.index_of(eid)] == UNMARKED and self._markable(eid):
                return _lex_first_legal(state, eid)
        return None

    def _mirror_reverse_of(self, move: Move) -> Move:
        board = self.board
        e = board.edge_at(board.index_of(move.edge))
        x, y = (e.u, e.v) if move.dir is Orientation.TOWARD_V else (e.v, e.u)
        img = board.edge_at(board.index_of(self.emap[move.edge]))
        src, dst = self.vmap[y], self.vmap[x]
        if (img.u, img.v) == (src, dst):
            return Move(img.id, Orientation.TOWARD_V)
        return Move(img.id, Orientation.TOWARD_U)

    def choose(self, state: GameState) -> Move:
        if not state.history:
            if self.exception_path is not None:
                centre = self.exception_path.edges[len(self.exception_path) // 2]
                return _lex_first_legal(state, centre)
            mv = self._loner_move(state)
            if mv is None:
                raise PolicyError("no loner edge available to open on")
            return mv
        last = state.history[-1]
        if self.respond_loner:
            mv = self._loner_move(state)
            if mv is not None:
                return mv
            if self.naive:
                return legal_moves(state)[0]
            raise PolicyError("no loner edge available to answer a loner move")
        p = self.partner.get(last.edge)
        if p is None:
            if self.naive:
                return legal_moves(state)[0]
            raise PolicyError(f"no partner for edge {last.edge}")
        if self.marks[self.board.index_of(p)] != UNMARKED:
            if self.naive:
                return legal_moves(state)[0]
            raise PolicyError(f"partner of edge {last.edge} already marked")
        if p == self.emap[last.edge]:
            return self._mirror_reverse_of(last)
        legal = sorted(legal_orientations(state, p), key=lambda o: o.value)
        if not legal:
            raise PolicyError(f"re-paired response on edge {p} is unmarkable")
        return Move(p, legal[0])


# -- rotate-reverse on grids ------------------------------------------------------


class RotateReverse(PolicyBase):
    """Rotate-reverse strategy for grids with exactly one self-involutive edge."""

    name = "rotate-reverse"

    def __init__(self, board: Board, player: Player):
        super().__init__(board, player)
        if player is not Player.P1:
            raise PolicyError("rotate-reverse plays Player 1")
        vmap = board.symmetry.get("rotation180")
        if not vmap:
            raise PolicyError("rotate-reverse requires a rotation180 map")
        self.vmap = dict(vmap)
        self.emap = {}
        for e in board.edges:
            img = board.edge_between(vmap[e.u], vmap[e.v])
            if img is None:
                raise PolicyError("rotation map does not map edges to edges")
            self.emap[e.id] = img.id
        fixed = [e for e, img in self.emap.items() if img == e]
        if len(fixed) != 1:
            raise PolicyError(
                f"rotate-reverse needs exactly one self-involutive edge, found {len(fixed)}"
            )
        self.fixed_edge = fixed[0]

    def choose(self, state: GameState) -> Move:
        if not state.history:
            return _lex_first_legal(state, self.fixed_edge)
        last = state.history[-1]
        board = self.board
        e = board.edge_at(board.index_of(last.edge))
        x, y = (e.u, e.v) if last.dir is Orientation.TOWARD_V else (e.v, e.u)
        img = board.edge_at(board.index_of(self.emap[last.edge]))
        src, dst = self.vmap[y], self.vmap[x]
        if (img.u, img.v) == (src, dst):
            return Move(img.id, Orientation.TOWARD_V)
        return Move(img.id, Orientation.TOWARD_U)


# -- factory + verification -------------------------------------------------------


def path_policy(board: Board, player: Player) -> WinNow:
    return win_now_wrap(PathPolicy(board, player))


def pairing_policy_32k(board: Board, player: Player) -> WinNow:
    return win_now_wrap(Pairing32K(board, player))


def j2k_policy(board: Board, player: Player) -> WinNow:
    return win_now_wrap(J2KPolicy(board, player))


def policy_12k(board: Board, player: Player) -> WinNow:
    return win_now_wrap(Policy12K(board, player))


def mirror_reverse_policy(board: Board, player: Player) -> WinNow:
    return win_now_wrap(MirrorReverse(board, player))


def mirror_reverse_naive(board: Board, player: Player) -> WinNow:
    return win_now_wrap(MirrorReverse(board, player, naive=True))


def rotate_reverse_policy(board: Board, player: Player) -> WinNow:
    return win_now_wrap(RotateReverse(board, player))


POLICIES = {
    "path": path_policy,
    "pairing-32k": pairing_policy_32k,
    "j2k": j2k_policy,
    "12k": policy_12k,
    "mirror-reverse": mirror_reverse_policy,
    "mirror-reverse-naive": mirror_reverse_naive,
    "rotate-reverse": rotate_reverse_policy,
}


@dataclass(frozen=True)
class VerificationResult:
    verified: bool
    counterexample: tuple[Move, ...]
    opponent_nodes: int
    reason: str | None = None


def verify_policy(board: Board, policy, player: Player,
                  limits: SearchLimits | None = None,
                  start: GameState | None = None) -> VerificationResult:
    """Prove (or refute) that a policy wins against every opponent line.

    `policy` is a factory (board, player) -> instance, a name from
    POLICIES, or a ready instance. Every policy move is legality-checked
    as it is played; a refusal or illegal move surfaces as unverified
    with the reason and the line that provoked it.
    """
    limits = limits or SearchLimits()
    if isinstance(policy, str):
        policy = POLICIES[policy]
    try:
        inst = policy(board, player) if callable(policy) else policy
    except PolicyError as exc:
        return VerificationResult(False, (), 0, f"refused: {exc}")

    state0 = start if start is not None else new_game(board)
    nodes = [0]

    def walk(state: GameState, inst) -> tuple[bool, tuple[Move, ...], str | None]:
        st = status(state)
        if not st.in_progress:
            return st.winner is player, (), None
        if state.to_move is player:
            try:
                mv = inst.choose(state)
                nxt = apply_move(state, mv)
            except (PolicyError, IllegalMoveError) as exc:
                return False, (), f"{type(exc).__name__}: {exc}"
            inst.observe(mv)
            ok, line, reason = walk(nxt, inst)
            return ok, (mv,) + line, reason
        nodes[0] += 1
        if nodes[0] > limits.max_nodes:
            raise _VerifyLimit(nodes[0])
        for mv in legal_moves(state):
            branch = inst.clone()
            branch.observe(mv)
            ok, line, reason = walk(apply_move(state, mv), branch)
            if not ok:
                return False, (mv,) + line, reason
        return True, (), None

    try:
        ok, line, reason = walk(state0, inst)
    except _VerifyLimit:
        return VerificationResult(False, (), nodes[0], "resource limit: max_nodes")
    if ok:
        return VerificationResult(True, (), nodes[0])
    return VerificationResult(False, line, nodes[0], reason)


class _VerifyLimit(Exception):
    def __init__(self, nodes: int):
        self.nodes = nodes
