import random

import pytest

from gocycles import GameState, apply_move, legal_moves, new_game, status


def random_playout(board, seed, stop_when=None):
    """Play random legal moves to the end; yields every state on the way."""
    rng = random.Random(seed)
    state = new_game(board)
    yield state
    while status(state).in_progress:
        moves = legal_moves(state)
        state = apply_move(state, rng.choice(moves))
        yield state
        if stop_when is not None and stop_when(state):
            return


@pytest.fixture
def playout():
    return random_playout
