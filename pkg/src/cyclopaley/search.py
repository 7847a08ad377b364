"""Exact maximum-clique search on dense graphs with Python-int bitsets.

Branch and bound with a greedy sequential colouring bound (the MCQ/BBMC
family).  Vertices are renumbered in a degeneracy order so that bit i of a
candidate mask is the i-th vertex of that order.  Three modes share the same
recursion:

* maximize  - largest clique, optionally stopping at a known upper bound;
* find      - first clique of a prescribed size, or None;
* enumerate - every clique of a prescribed size, each reported once.
"""

from __future__ import annotations

import sys
import time

import numpy as np

from .errors import TimedOut

_CHECK_EVERY = 256


class _Done(Exception):
    pass


def degeneracy_order(adj: np.ndarray) -> list[int]:
    """Smallest-last order, reversed so the densest core comes first."""
    m = adj.shape[0]
    deg = adj.sum(axis=1).astype(np.int64)
    alive = np.ones(m, dtype=bool)
    removed = []
    for _ in range(m):
        cand = np.where(alive, deg, np.iinfo(np.int64).max)
        v = int(np.argmin(cand))
        removed.append(v)
        alive[v] = False
        deg -= adj[v]
    removed.reverse()
    return removed


class _Search:
    def __init__(self, adj: np.ndarray, deadline: float | None):
        self.order = degeneracy_order(adj) if adj.shape[0] else []
        pos = np.asarray(self.order, dtype=np.int64)
        sub = adj[np.ix_(pos, pos)] if len(pos) else adj
        self.adj = [_row_bits(row) for row in sub]
        self.deadline = deadline
        self.nodes = 0
        self.best: list[int] = []
        self.found: list[list[int]] = []

    def _tick(self):
        self.nodes += 1
        if self.deadline is not None and self.nodes % _CHECK_EVERY == 1:
            if time.monotonic() > self.deadline:
                raise TimedOut("clique search deadline exceeded", best=self.to_original(self.best))

    def to_original(self, clique) -> list[int]:
        return sorted(self.order[v] for v in clique)

    def _color(self, cand: int, kmin: int) -> tuple[list[int], list[int]]:
        adj = self.adj
        verts: list[int] = []
        colors: list[int] = []
        uncolored = cand
        k = 0
        while uncolored:
            k += 1
            q = uncolored
            while q:
                low = q & -q
                v = low.bit_length() - 1
                q &= ~adj[v]
                q ^= low
                uncolored ^= low
                if k >= kmin:
                    verts.append(v)
                    colors.append(k)
        return verts, colors

    # maximize ------------------------------------------------------------------

    def maximize(self, clique: list[int], cand: int, upper: int | None):
        self._tick()
        verts, colors = self._color(cand, len(self.best) - len(clique) + 1)
        adj = self.adj
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + colors[i] <= len(self.best):
                return
            v = verts[i]
            clique.append(v)
            if len(clique) > len(self.best):
                self.best = list(clique)
                if upper is not None and len(self.best) >= upper:
                    raise _Done
            nxt = cand & adj[v]
            if nxt:
                self.maximize(clique, nxt, upper)
            clique.pop()
            cand &= ~(1 << v)

    # find / enumerate -----------------------------------------------------------

    def at_size(self, clique: list[int], cand: int, size: int, first_only: bool):
        self._tick()
        verts, colors = self._color(cand, size - len(clique))
        adj = self.adj
        for i in range(len(verts) - 1, -1, -1):
            if len(clique) + colors[i] < size:
                return
            v = verts[i]
            clique.append(v)
            if len(clique) > len(self.best):
                self.best = list(clique)
            if len(clique) == size:
                self.found.append(list(clique))
                if first_only:
                    raise _Done
            else:
                nxt = cand & adj[v]
                if nxt:
                    self.at_size(clique, nxt, size, first_only)
            clique.pop()
            cand &= ~(1 << v)


def _row_bits(row: np.ndarray) -> int:
    packed = np.packbits(row.astype(np.uint8), bitorder="little")
    return int.from_bytes(packed.tobytes(), "little")


def _full_mask(m: int) -> int:
    return (1 << m) - 1


def _ensure_recursion(depth: int):
    need = depth + 200
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def max_clique(adj: np.ndarray, *, upper: int | None = None,
               deadline: float | None = None) -> tuple[list[int], int]:
    """Maximum clique of the graph; returns (vertices, nodes explored).

    ``upper`` is a proven upper bound: the search stops as soon as a clique
    of that size is found.
    """
    m = adj.shape[0]
    if m == 0:
        return [], 0
    _ensure_recursion(m)
    s = _Search(adj, deadline)
    try:
        s.maximize([], _full_mask(m), upper)
    except _Done:
        pass
    return s.to_original(s.best), s.nodes


def find_clique_of_size(adj: np.ndarray, size: int, *,
                        deadline: float | None = None) -> tuple[list[int] | None, int]:
    m = adj.shape[0]
    if size <= 0:
        return [], 0
    if m < size:
        return None, 0
    _ensure_recursion(m)
    s = _Search(adj, deadline)
    try:
        s.at_size([], _full_mask(m), size, first_only=True)
    except _Done:
        pass
    return (s.to_original(s.found[0]) if s.found else None), s.nodes


def all_cliques_of_size(adj: np.ndarray, size: int, *,
                        deadline: float | None = None) -> tuple[list[list[int]], int]:
    m = adj.shape[0]
    if size <= 0:
        return [[]], 0
    if m < size:
        return [], 0
    _ensure_recursion(m)
    s = _Search(adj, deadline)
    s.at_size([], _full_mask(m), size, first_only=False)
    return sorted(s.to_original(c) for c in s.found), s.nodes
