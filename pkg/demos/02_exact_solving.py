"""Exact winners across the board families.

The solver is a memoized win/loss search over base-3 packed positions;
every row below is an exact result, not a heuristic.
"""

from gocycles import new_game, solve
from gocycles import generators as g
from gocycles.solver import format_winners_table, winners_table

rows = winners_table(
    [(f, g.generate(f)) for f in [
        "path:7", "path:8",
        "polygon:7", "polygon:8",
        "j2k:3,5",          # the heptagon-pentagon question: Player 2
        "j2k:4,5", "j2k:6,6",
        "grid:2,3", "grid:2,5", "grid:2,2", "grid:3,3",
        "named:k4", "named:sample_fig3", "named:counterexample_fig9",
        "named:prism_left_fig10", "named:prism_right_fig10",
    ]]
)
print(format_winners_table(rows))

res = solve(new_game(g.named("counterexample_fig9")))
print("\nthe degree-1 counterexample: four edges yet Player 1 wins;")
print("winning first moves:", [(m.edge, m.dir.name) for m in res.winning_moves])
print("principal line:", [(m.edge, m.dir.name) for m in res.principal_line])

pos = g.case_a_fails_position()
res = solve(pos)
print(f"\n'case A fails' position: {pos.to_move.name} to move, "
      f"winner {res.winner.name} - reaching case A alone did not save them")
