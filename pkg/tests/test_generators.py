"""Generator families: shape invariants, symmetry maps, named boards."""

import pytest

from gocycles import validate_board
from gocycles import generators as g
from gocycles.board import normalize_cycle
from gocycles.generators import FamilyError, strategy_annotations


def test_sweep_validates():
    boards = []
    boards += [g.path(n) for n in range(1, 21)]
    boards += [g.polygon(n) for n in range(3, 21)]
    boards += [g.j2k(j, k) for j in range(1, 8) for k in range(2, 9) if j + k <= 16]
    boards += [g.grid(a, b) for a in range(2, 5) for b in range(2, 5)]
    boards += [g.ppaths(list(l)) for l in [(2, 2), (4, 4, 2), (5, 4, 4), (4, 4, 1),
                                           (3, 2, 3, 2), (2, 2, 2, 2)]
               if sum(l) <= 16]
    boards += [g.jnk(3, 3, 4), g.jnk(1, 3, 2), g.jnk(2, 4, 2)]
    for b in boards:
        report = validate_board(b)
        assert report.ok, (b.name, report.violations)


def test_path_exempts_both_endpoints():
    b = g.path(1)
    assert b.num_edges == 1
    assert b.exempt == frozenset({0, 1})
    assert g.path(7).exempt == frozenset({0, 7})


def test_polygon_has_one_cell():
    assert len(g.polygon(6).cells) == 1


def test_j2k_3_5_shape():
    b = g.j2k(3, 5)
    assert b.num_edges == 10
    assert len(b.vertices) == 9
    assert sorted(len(c) for c in b.cells) == [5, 7]


def test_j2k_rejects_bad_params():
    with pytest.raises(FamilyError):
        g.j2k(0, 5)
    with pytest.raises(FamilyError):
        g.j2k(1, 1)


def test_grid_2_3_shape_and_fixed_edge():
    b = g.grid(2, 3)
    assert len(b.vertices) == 6
    assert b.num_edges == 7  # 2*(3-1) + 3*(2-1)
    assert len(b.cells) == 2
    ann = strategy_annotations(b)
    rot = ann["rotation180"]
    fixed = [e for e, img in rot.items() if img == e]
    assert len(fixed) == 1


@pytest.mark.parametrize("a,b,expect_fixed", [
    (2, 3, 1), (2, 5, 1), (3, 4, 1), (2, 2, 0), (3, 3, 0), (2, 4, 0), (4, 4, 0),
])
def test_grid_fixed_edge_parity_rule(a, b, expect_fixed):
    ann = strategy_annotations(g.grid(a, b))
    fixed = [e for e, img in ann["rotation180"].items() if img == e]
    assert len(fixed) == expect_fixed


def test_ppaths_mirror_fixes_odd_path_middles():
    b = g.ppaths([5, 4, 3])
    ann = strategy_annotations(b)
    ms_loners = ann["loners"]
    # middle edge of the 5-path (edges 0..4) is 2; of the 3-path (9..11) is 10
    assert ms_loners == [2, 10]
    assert all(x < y for x, y in ann["pairing"])


def test_ppaths_cells_lie_between_consecutive_paths():
    b = g.ppaths([4, 4, 2])
    assert len(b.cells) == 2
    assert sorted(len(c) for c in b.cells) == [6, 8]


def test_named_prisms_differ_in_cells_only():
    left = g.named("prism_left_fig10")
    right = g.named("prism_right_fig10")
    assert sorted(len(c) for c in left.cells) == [3, 3, 4, 4]
    assert sorted(len(c) for c in right.cells) == [3, 4, 4, 4]
    # identical edge sets under the identity vertex map: graph-isomorphic
    edges_l = {frozenset((e.u, e.v)) for e in left.edges}
    edges_r = {frozenset((e.u, e.v)) for e in right.edges}
    assert edges_l == edges_r
    cells_l = {normalize_cycle(c) for c in left.cells}
    cells_r = {normalize_cycle(c) for c in right.cells}
    assert cells_l != cells_r


def test_named_counterexample_shape():
    b = g.named("counterexample_fig9")
    assert b.num_edges == 4
    assert b.degree(0) == 1
    assert len(b.cells) == 1


def test_named_k4():
    b = g.named("k4")
    assert len(b.vertices) == 4 and b.num_edges == 6 and len(b.cells) == 3


def test_case_a_fails_preset_is_legal_and_midgame():
    state = g.case_a_fails_position()
    assert state.marked_count == 7
    assert state.to_move.name == "P2"


def test_unknown_named_board():
    with pytest.raises(FamilyError):
        g.named("nope")


def test_parse_family_strings():
    assert str(g.parse_family("j2k:3,5")) == "j2k:3,5"
    assert g.generate("path:3").num_edges == 3
    assert g.generate("ppaths:4,4,2").name == "ppaths:4,4,2"
    assert g.generate("named:k4").name == "k4"
    with pytest.raises(FamilyError):
        g.parse_family("blobs:1")
    with pytest.raises(FamilyError):
        g.generate("grid:2")
