"""Signals, interactions, and the case calculus on two-polygon boards.

A primary edge signals +1 toward its hub, -1 away; a path's two end
signals fix the parity of its unmarkable count ({+1,-1} even, same signs
odd), and that stays true when a signal is only implicit - the direction
an unmarkable edge is forced to "mean". Cases A-E pin an
almost-sink/almost-source pair so every finish has an even count; A alone
still loses games because both cells stay completable.
"""

from gocycles import enumerate_terminals, new_game, replay
from gocycles import generators as g
from gocycles.analysis import (
    CASE_TEMPLATES,
    classify_case,
    conjecture_scan,
    default_scan_boards,
    format_scan,
    instantiate_case,
    interaction_parity,
)

print("interaction parity: {+1,-1} ->", interaction_parity(+1, -1),
      " {+1,+1} ->", interaction_parity(+1, +1),
      " {-1,-1} ->", interaction_parity(-1, -1))

board = g.j2k(4, 4)
for label in CASE_TEMPLATES:
    state = instantiate_case(board, label)
    census = enumerate_terminals(state)
    both = sum(1 for t in census.terminals if len(t.completed) == 2)
    print(f"case {label}: {census.total} terminals, odd-count terminals "
          f"{census.by_parity.get(1, 0)}, double-cell finishes {both}")

fig, preset = g.named_with_preset("case_a_fails_fig")
print("\nthe cautionary position, four marks in:",
      classify_case(replay(fig, list(preset[:4]))))

print("\nparity-conjecture scan (boards up to 9 edges):")
rows = conjecture_scan(default_scan_boards(9))
print(format_scan(rows))
