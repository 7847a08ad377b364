import time

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from cyclopaley.errors import TimedOut
from cyclopaley.search import all_cliques_of_size, degeneracy_order, find_clique_of_size, max_clique


def _random_adj(n, density, seed):
    rng = np.random.default_rng(seed)
    upper = np.triu(rng.random((n, n)) < density, 1)
    return upper | upper.T


def _nx_graph(adj):
    return nx.from_numpy_array(adj.astype(int))


def _is_clique(adj, verts):
    return all(adj[a, b] for i, a in enumerate(verts) for b in verts[i + 1:])


@settings(max_examples=60, deadline=None)
@given(n=st.integers(0, 40), density=st.floats(0.1, 0.9), seed=st.integers(0, 10**6))
def test_max_clique_matches_networkx(n, density, seed):
    adj = _random_adj(n, density, seed)
    verts, _ = max_clique(adj)
    assert _is_clique(adj, verts)
    omega = max((len(c) for c in nx.find_cliques(_nx_graph(adj))), default=0)
    assert len(verts) == omega


@settings(max_examples=40, deadline=None)
@given(n=st.integers(1, 30), density=st.floats(0.2, 0.8), seed=st.integers(0, 10**6),
       size=st.integers(1, 6))
def test_enumeration_matches_networkx(n, density, seed, size):
    adj = _random_adj(n, density, seed)
    ours, _ = all_cliques_of_size(adj, size)
    theirs = sorted(sorted(c) for c in nx.enumerate_all_cliques(_nx_graph(adj)) if len(c) == size)
    assert ours == theirs
    first, _ = find_clique_of_size(adj, size)
    assert (first is None) == (not theirs)


def test_upper_bound_stops_early():
    adj = _random_adj(60, 0.5, 3)
    full, n_full = max_clique(adj)
    early, n_early = max_clique(adj, upper=len(full))
    assert len(early) == len(full)
    assert n_early <= n_full


def test_degeneracy_order_is_permutation():
    adj = _random_adj(25, 0.4, 7)
    assert sorted(degeneracy_order(adj)) == list(range(25))


def test_deadline_carries_best():
    adj = _random_adj(220, 0.9, 11)
    with pytest.raises(TimedOut) as exc:
        max_clique(adj, deadline=time.monotonic() - 1)
    best = exc.value.best
    assert best is not None and _is_clique(adj, best)


def test_empty_inputs():
    empty = np.zeros((0, 0), dtype=bool)
    assert max_clique(empty) == ([], 0)
    assert find_clique_of_size(empty, 1) == (None, 0)
    assert all_cliques_of_size(np.zeros((3, 3), dtype=bool), 1)[0] == [[0], [1], [2]]
