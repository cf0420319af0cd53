"""Acceptance suite: one test per criterion, exact assertions, stated budgets.

Every claim here is an exact combinatorial statement - no statistical
tolerance anywhere; the only numbers pinned besides equality are the
runtime budgets. Each test prints a PASS line so a -s run reads as a
checklist. The optional slow tier (grid:3,4) runs only with
GOCYCLES_SLOW=1 in the environment.
"""

import os
import time

import pytest

from gocycles import (
    Move,
    Orientation,
    Player,
    enumerate_terminals,
    new_game,
    replay,
    solve,
    status,
    validate_board,
)
from gocycles import generators as g
from gocycles.analysis import (
    CASE_TEMPLATES,
    classify_case,
    conjecture_scan,
    default_scan_boards,
    instantiate_case,
)
from gocycles.board import normalize_cycle
from gocycles.state import apply_move, legal_moves
from gocycles.strategies import POLICIES, verify_policy

V, U = Orientation.TOWARD_V, Orientation.TOWARD_U
P1, P2 = Player.P1, Player.P2


def _report(name, elapsed, budget):
    print(f"PASS {name} ({elapsed:.1f}s / budget {budget:.0f}s)")
    assert elapsed < budget


def test_criterion_01_path_winners():
    t0 = time.perf_counter()
    for n in range(1, 15):
        expect = P1 if n % 2 == 1 else P2
        assert solve(new_game(g.path(n))).winner is expect, n
    _report("1 path winners n=1..14", time.perf_counter() - t0, 60)


def test_criterion_02_polygon_winners():
    t0 = time.perf_counter()
    for n in range(3, 11):
        expect = P1 if n % 2 == 1 else P2
        assert solve(new_game(g.polygon(n))).winner is expect, n
    _report("2 polygon winners n=3..10", time.perf_counter() - t0, 60)


def test_criterion_03_polygon_terminal_parity():
    t0 = time.perf_counter()
    for n in range(3, 9):
        census = enumerate_terminals(new_game(g.polygon(n)))
        assert census.total > 0
        assert census.by_parity.get(1, 0) == 0, n
    _report("3 polygon terminals all even unmarkable n=3..8",
            time.perf_counter() - t0, 120)


def test_criterion_04_line_lemma_oracle():
    t0 = time.perf_counter()
    for n in range(2, 11):
        board = g.path(n)
        census = enumerate_terminals(new_game(board))
        first, last = 0, n - 1
        for info in census.terminals:
            d_first, d_last = info.marks[first], info.marks[last]
            assert d_first and d_last, (n, info)
            same_direction = d_first == d_last  # edges stored left-to-right
            even = info.unmarkable % 2 == 0
            assert even == same_direction, (n, info)
    _report("4 line parity: same ends <=> even unmarkable, n=2..10",
            time.perf_counter() - t0, 120)


def test_criterion_05_j2k_corollary_sweep():
    t0 = time.perf_counter()
    for j in range(1, 12):
        for k in range(max(j, 2), 12):
            if j + k > 12:
                continue
            expect = P1 if (j + k) % 2 == 1 else P2
            got = solve(new_game(g.j2k(j, k))).winner
            assert got is expect, (j, k, got)
    assert solve(new_game(g.j2k(3, 5))).winner is P2  # the motivating board
    _report("5 j-2-k rule: parity of j+k decides, j+k<=12",
            time.perf_counter() - t0, 600)


def test_criterion_06_named_boards():
    t0 = time.perf_counter()
    assert solve(new_game(g.named("k4"))).winner is P2
    assert solve(new_game(g.named("sample_fig3"))).winner is P2
    res = solve(new_game(g.named("counterexample_fig9")))
    assert res.winner is P1 and Move(3, V) in res.winning_moves  # c -> d
    pos = g.case_a_fails_position()
    res = solve(pos)
    assert pos.to_move is P2 and res.winner is P1  # the mover is lost
    _report("6 named boards", time.perf_counter() - t0, 30)


def test_criterion_07_grid_theorem():
    t0 = time.perf_counter()
    assert solve(new_game(g.grid(2, 3))).winner is P1
    assert solve(new_game(g.grid(2, 5))).winner is P1
    assert solve(new_game(g.grid(2, 2))).winner is P2
    assert solve(new_game(g.grid(3, 3))).winner is P2
    _report("7 grid winners", time.perf_counter() - t0, 900)


@pytest.mark.slow
def test_criterion_07_slow_tier_grid_3_4():
    t0 = time.perf_counter()
    assert solve(new_game(g.grid(3, 4))).winner is P1
    print(f"PASS 7+ slow tier grid:3,4 ({time.perf_counter() - t0:.0f}s)")


VERIFICATIONS = [
    ("grid:2,3", "rotate-reverse", P1),
    ("grid:2,5", "rotate-reverse", P1),
    ("j2k:3,4", "pairing-32k", P1),
    ("j2k:3,5", "pairing-32k", P2),
    ("j2k:4,4", "j2k", P2),
    ("j2k:4,5", "j2k", P1),
    ("j2k:1,4", "12k", P1),
    ("j2k:1,5", "12k", P2),
    ("ppaths:4,4,2", "mirror-reverse", P2),
    ("ppaths:5,4,4", "mirror-reverse", P1),
]


@pytest.mark.parametrize("family,policy,player", VERIFICATIONS,
                         ids=[f"{f}-{p}-{pl.name}" for f, p, pl in VERIFICATIONS])
def test_criterion_08_strategy_verification(family, policy, player):
    t0 = time.perf_counter()
    res = verify_policy(g.generate(family), policy, player)
    elapsed = time.perf_counter() - t0
    assert res.verified, (family, policy, res.reason, res.counterexample)
    _report(f"8 verified {policy} on {family} as {player.name} "
            f"({res.opponent_nodes} opponent nodes)", elapsed, 600)


def test_criterion_08_corollary_exception_board():
    # mirror-reverse must also handle the single short odd path exception
    t0 = time.perf_counter()
    res = verify_policy(g.ppaths([4, 4, 1]), "mirror-reverse", P1)
    assert res.verified, res.reason
    _report("8+ mirror-reverse on ppaths:4,4,1 as P1 (short-path exception)",
            time.perf_counter() - t0, 600)


def test_criterion_09_negative_fixtures():
    t0 = time.perf_counter()
    board = g.ppaths([4, 4, 1])
    res = verify_policy(board, "mirror-reverse-naive", P2)
    assert not res.verified
    assert res.counterexample
    end = replay(board, list(res.counterexample))
    st = status(end)
    assert st.winner is P1 and st.reason == "cycle_cell"
    # the final move is the opponent closing the one-edge path's cell
    closing = res.counterexample[-1]
    one_path_edge = board.num_edges - 1
    assert closing.edge == one_path_edge

    # case A alone does not certify a win: the named position classifies
    # as A four marks in, yet the player who reached it is lost
    fig_board, preset = g.named_with_preset("case_a_fails_fig")
    assert classify_case(replay(fig_board, list(preset[:4]))).label == "A"
    pos = g.case_a_fails_position()
    res = solve(pos)
    assert pos.to_move is P2 and res.winner is P1
    _report("9 negative fixtures (naive mirror loses by opposing cycle; case A trap)",
            time.perf_counter() - t0, 600)


@pytest.mark.parametrize("family", ["j2k:4,4", "j2k:4,5"])
@pytest.mark.parametrize("label", list(CASE_TEMPLATES))
def test_criterion_10_case_calculus(family, label):
    t0 = time.perf_counter()
    board = g.generate(family)
    state = instantiate_case(board, label)
    census = enumerate_terminals(state)
    assert census.total > 0
    assert census.by_parity.get(1, 0) == 0, (family, label)
    if label != "A":
        assert all(len(info.completed) <= 1 for info in census.terminals)
        completed = {ci for info in census.terminals for ci in info.completed}
        assert len(completed) <= 1, (family, label, completed)
    _report(f"10 case {label} on {family}: terminals even"
            + ("" if label == "A" else ", single cell"),
            time.perf_counter() - t0, 600)


def test_criterion_11_conjecture_scan():
    t0 = time.perf_counter()
    boards = default_scan_boards(12)
    rows = conjecture_scan(boards)
    population = [r for r in rows if r.in_population]
    assert population
    disagreements = [r for r in population if r.agrees is False]
    errors = [r for r in rows if r.error]
    assert not errors, errors
    assert not disagreements, [r.label for r in disagreements]
    _report(f"11 conjecture scan: {len(population)} boards agree "
            f"({len(rows)} rows)", time.perf_counter() - t0, 900)


def test_criterion_12_prism_pair():
    t0 = time.perf_counter()
    left = g.named("prism_left_fig10")
    right = g.named("prism_right_fig10")
    assert validate_board(left).ok and validate_board(right).ok
    # graph-isomorphic under the identity map on vertex ids
    assert {frozenset((e.u, e.v)) for e in left.edges} == \
           {frozenset((e.u, e.v)) for e in right.edges}
    assert sorted(len(c) for c in left.cells) == [3, 3, 4, 4]
    assert sorted(len(c) for c in right.cells) == [3, 4, 4, 4]
    assert {normalize_cycle(c) for c in left.cells} != \
           {normalize_cycle(c) for c in right.cells}
    _report("12 prism pair: isomorphic graphs, different cells",
            time.perf_counter() - t0, 30)
