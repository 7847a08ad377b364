import io
import math
import warnings

import numpy as np
import pytest

from cyclopaley.errors import AsymmetricConnectionSet, DivisibilityViolation, WrongIndexSet
from cyclopaley.field import make_field
from cyclopaley.graph import build_graph, pp_graph, self_complement_witness, write_dimacs


def test_connection_set_size(pp625):
    D = pp625.connection_set()
    assert D.size == 3 * 624 // 6
    assert 0 not in D


def test_symmetric(pp625):
    F = pp625.field
    D = pp625.connection_set()
    assert np.array_equal(np.sort(F.sub_vec(0, D)), D)


@pytest.mark.parametrize("p,n,two_d,I", [(5, 4, 6, (0, 1, 3)), (7, 4, 8, (0, 1, 2, 4)),
                                         (3, 4, 4, (0, 1)), (5, 2, 2, (0,))])
def test_paley_parameters(p, n, two_d, I):
    """Semi-primitive graphs with r even are strongly regular with Paley parameters."""
    g = pp_graph(p, n, two_d, I)
    q = g.q
    D = g.connection_set()
    assert D.size == (q - 1) // 2
    lam, mu = (q - 5) // 4, (q - 1) // 4
    nbr0 = set(D.tolist())
    rng = np.random.default_rng(0)
    for v in rng.choice(np.arange(1, q), min(30, q - 1), replace=False):
        common = len(nbr0 & set(g.neighbors(int(v)).tolist()))
        assert common == (lam if g.in_D[v] else mu)


def test_adjacency(pp625):
    F = pp625.field
    g1 = F.g
    assert pp625.adjacent(0, 1)
    assert pp625.adjacent(0, g1)
    assert not pp625.adjacent(0, F.gpow(2))
    assert not pp625.adjacent(5, 5)


def test_divisibility():
    with pytest.raises(DivisibilityViolation):
        pp_graph(5, 2, 10, (0, 1, 2, 3, 4))


def test_asymmetric_rejected():
    # -1 = g^24 lies in C_8 for 2d = 16, so I must be invariant under +8
    with pytest.raises(AsymmetricConnectionSet), warnings.catch_warnings():
        warnings.simplefilter("ignore")
        pp_graph(7, 2, 16, tuple(range(8)))


def test_non_semiprimitive_warns():
    with warnings.catch_warnings(record=True) as w:
        warnings.simplefilter("always")
        g = pp_graph(5, 4, 8, (0, 1, 4, 5))
    assert g.params is None
    assert any("semi-primitive" in str(x.message) for x in w)


def test_generator_relabelling():
    """Replacing g by g^u turns PP(q, 2d, I) into PP(q, 2d, uI) for the old g."""
    F = make_field(7, 4)
    u = 11  # a unit mod q - 1, and 3 mod 8
    G = make_field(7, 4, generator=F.gpow(u))
    I = (0, 1, 2, 4)
    uI = tuple(sorted((u * m) % 8 for m in I))
    assert uI != I
    assert np.array_equal(build_graph(G, 8, I).in_D, build_graph(F, 8, uI).in_D)


@pytest.mark.parametrize("p,n,two_d", [(5, 4, 6), (7, 4, 8), (3, 4, 4)])
def test_self_complement(p, n, two_d):
    g = pp_graph(p, n, two_d, tuple(range(two_d // 2)))
    assert self_complement_witness(g)


def test_self_complement_wrong_set(pp625):
    with pytest.raises(WrongIndexSet):
        self_complement_witness(pp625)


def test_induced_and_common_neighbors(pp625):
    cn = pp625.common_neighbors([0, 1])
    for v in cn[:20]:
        assert pp625.adjacent(0, int(v)) and pp625.adjacent(1, int(v))
    adj = pp625.induced_adjacency(cn[:30])
    for i in range(30):
        for j in range(30):
            assert adj[i, j] == (i != j and pp625.adjacent(int(cn[i]), int(cn[j])))


def test_dimacs(pp625):
    buf = io.StringIO()
    write_dimacs(pp625, [0, 1, 2, 3], buf)
    lines = buf.getvalue().splitlines()
    header = [ln for ln in lines if ln.startswith("p ")][0]
    m = int(header.split()[3])
    assert m == sum(ln.startswith("e ") for ln in lines)
    assert m == math.comb(4, 2)  # GF(5) lies in C_0 u {0}
