"""A guided game on the example board from the introduction.

Two players direct edges of a drawn graph. You win by completing a cycle
cell - one of the drawing's faces with every edge directed the same way
around - or by making the last available move. Nobody may create a sink
or a source, which is what makes edges go dead ("unmarkable") and turns
the endgame into a parity fight.
"""

from gocycles import Move, Orientation, apply_move, legal_moves, new_game, status, unmarkable_count
from gocycles import generators as g

V, U = Orientation.TOWARD_V, Orientation.TOWARD_U

board = g.named("sample_fig3")  # two quads sharing a path: vertices a..e = 0..4
print(f"board {board.name}: {len(board.vertices)} vertices, "
      f"{board.num_edges} edges, cells {[list(c) for c in board.cells]}")

state = new_game(board)
print(f"opening moves available: {len(legal_moves(state))}")

# the famous losing line for Player 1: pair answers, then a forced cycle
line = [Move(0, V), Move(1, V), Move(2, V), Move(3, V), Move(5, U), Move(4, U)]
names = {0: "b->a", 1: "a->d", 2: "b->c", 3: "c->d", 5: "d->e", 4: "e->b"}
for mv in line:
    state = apply_move(state, mv)
    st = status(state)
    print(f"  {state.to_move.name if st.in_progress else '--'} | "
          f"played {names[mv.edge]:>5}  marked={state.marked_count} "
          f"unmarkable={unmarkable_count(state)}")

st = status(state)
print(f"result: {st.winner.name} wins by {st.reason} "
      f"(cell {list(board.cells[st.cell])})")
