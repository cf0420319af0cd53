"""Constructive strategies proved against every opponent line.

Each policy below is a deterministic move rule; verify_policy recurses
over all legal opponent replies and confirms every leaf is a win. The
naive mirror-reverse shows why the loner-first discipline matters: drop
it and the opponent closes the short path's cell in your face.
"""

from gocycles import Player, replay, status
from gocycles import generators as g
from gocycles.strategies import verify_policy

CHECKS = [
    ("grid:2,3", "rotate-reverse", Player.P1),
    ("grid:2,5", "rotate-reverse", Player.P1),
    ("j2k:3,4", "pairing-32k", Player.P1),
    ("j2k:3,5", "pairing-32k", Player.P2),
    ("j2k:4,4", "j2k", Player.P2),
    ("j2k:4,5", "j2k", Player.P1),
    ("j2k:1,4", "12k", Player.P1),
    ("j2k:1,5", "12k", Player.P2),
    ("ppaths:4,4,2", "mirror-reverse", Player.P2),
    ("ppaths:4,4,1", "mirror-reverse", Player.P1),
    ("path:5", "path", Player.P1),
]

for family, policy, player in CHECKS:
    res = verify_policy(g.generate(family), policy, player)
    print(f"{family:<14} {policy:<15} {player.name}: "
          f"{'verified' if res.verified else 'NOT VERIFIED'} "
          f"({res.opponent_nodes} opponent nodes)")

print("\nnegative demonstration: naive mirror-reverse on ppaths:4,4,1 as P2")
board = g.ppaths([4, 4, 1])
res = verify_policy(board, "mirror-reverse-naive", Player.P2)
print(f"verified: {res.verified}")
end = replay(board, list(res.counterexample))
st = status(end)
print(f"counterexample ends: {st.winner.name} wins by {st.reason} - the "
      f"opponent walks the even path, the naive mirror answers in kind, and "
      f"the one-edge path closes the cell")
