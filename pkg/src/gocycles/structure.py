"""Recovery of the hub-and-paths shape of multi-path boards.

The generators number the two hubs 0 (u, left) and 1 (v, right) and lay
every family out as internally disjoint u-v paths; strategies and the
parity analysis recover that shape from the graph itself: the hubs are
the two vertices of degree >= 3 (falling back to ids 0 and 1 when every
vertex has degree 2, the two-path case). Paths are reported in ascending
order of their first edge id, which reproduces the generator's top-to-
bottom order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .board import Board


class StructureError(ValueError):
    """The board is not a hubs-plus-disjoint-paths board."""


@dataclass(frozen=True)
class PathInfo:
    """One u-v path: vertex chain u..v and edge ids in chain order.

    along[i] is the mark value (1 or 2) that directs edge i with the
    chain, i.e. from u toward v.
    """

    chain: tuple[int, ...]
    edges: tuple[int, ...]
    along: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.edges)


@dataclass(frozen=True)
class MultiPath:
    u: int
    v: int
    paths: tuple[PathInfo, ...]

    def path_of_edge(self, edge_id: int) -> tuple[int, int]:
        """(path index, position along the path) of an edge."""
        for pi, p in enumerate(self.paths):
            if edge_id in p.edges:
                return pi, p.edges.index(edge_id)
        raise StructureError(f"edge {edge_id} on no path")


def multipath_structure(board: Board) -> MultiPath:
    hubs = sorted(v.id for v in board.vertices if board.degree(v.id) >= 3)
    if len(hubs) == 2:
        u, v = hubs
    elif not hubs and 0 in board.vertex_by_id and 1 in board.vertex_by_id:
        u, v = 0, 1  # cycle of two paths: hubs by generator convention
    else:
        raise StructureError("board does not have exactly two hub vertices")

    paths = []
    used: set[int] = set()
    for start_idx, _, first_other in sorted(board.incident[u]):
        if start_idx in used:
            continue
        chain = [u]
        edges = []
        along = []
        idx, other = start_idx, first_other
        prev = u
        while True:
            used.add(idx)
            e = board.edge_at(idx)
            edges.append(e.id)
            along.append(1 if e.u == prev else 2)
            chain.append(other)
            if other == v:
                break
            if board.degree(other) != 2 or other == u:
                raise StructureError(f"vertex {other} breaks the path structure")
            nxt = [(i, o) for i, _, o in board.incident[other] if i != idx]
            (idx, other), prev = nxt[0], other
        paths.append(PathInfo(tuple(chain), tuple(edges), tuple(along)))
    if len(used) != board.num_edges:
        raise StructureError("edges remain outside the u-v paths")
    paths.sort(key=lambda p: p.edges[0])
    return MultiPath(u, v, tuple(paths))
