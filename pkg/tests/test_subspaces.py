import numpy as np
import pytest

from cyclopaley import subspaces as ss
from cyclopaley.charsums import clique_certificate
from cyclopaley.cliques import profile
from cyclopaley.errors import NotInC0, WrongFieldShape, WrongIndexSet
from cyclopaley.field import make_field
from cyclopaley.graph import pp_graph


def test_frobenius_basic(pp625):
    F = pp625.field
    assert ss.frobenius_sqrt_q(F, 1) == 1
    for x in range(F.q):
        assert ss.frobenius_sqrt_q(F, ss.frobenius_sqrt_q(F, x)) == x
    for x in F.subfield(2):
        assert ss.frobenius_sqrt_q(F, int(x)) == int(x)


def test_frobenius_is_graph_automorphism(pp625):
    F = pp625.field
    rng = np.random.default_rng(2)
    for a, b in rng.integers(0, F.q, size=(300, 2)):
        a, b = int(a), int(b)
        fa, fb = ss.frobenius_sqrt_q(F, a), ss.frobenius_sqrt_q(F, b)
        # exact class arithmetic: log(x^25) = 25 log(x) and 25 = 1 mod 6
        assert pp625.adjacent(a, b) == pp625.adjacent(fa, fb)


def test_subspace_span():
    F = make_field(5, 4)
    V = ss.Subspace.span(F, 1, (1, F.g))
    assert len(V.elements) == 25 and 1 in V and V.dimension == 2
    with pytest.raises(ValueError):
        ss.Subspace.span(F, 1, (1, 2))


@pytest.mark.parametrize("p,n,two_d,I,count", [
    (5, 4, 6, (0, 1, 3), 2),
    (7, 4, 8, (0, 1, 2, 4), 2),
    (7, 4, 8, (0, 1, 3, 6), 2),
    (7, 4, 4, (0, 1), 0),
    (3, 8, 10, (0, 1, 3, 6, 7), 2),
])
def test_canonical_cliques(p, n, two_d, I, count):
    g = pp_graph(p, n, two_d, I)
    res = ss.enumerate_canonical_cliques(g)
    assert res.count == count
    assert res.fixed == 0 and len(res.pairs) * 2 == count
    share = (g.sqrt_q - 1) // g.d
    for V in res.subspaces:
        assert g.is_clique(V.elements)
        counts = profile(g, V.elements).counts
        assert counts == tuple(share if j in g.index_set else 0 for j in range(g.two_d))
        assert clique_certificate(g, V.elements).certificate == "pass"


def test_canonical_errors():
    with pytest.raises(WrongFieldShape):
        ss.enumerate_canonical_cliques(pp_graph(5, 2, 2, (0,)))
    with pytest.raises(WrongIndexSet):
        ss.enumerate_canonical_cliques(pp_graph(5, 4, 6, (0, 2, 4)))
    with pytest.raises(WrongIndexSet):
        ss.enumerate_canonical_cliques(pp_graph(5, 4, 6, (1, 3, 5)))


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13, 17, 19, 23, 29, 31])
def test_index_set_count(p):
    res = ss.count_valid_index_sets(p)
    assert res.count == (p * p + 3) // 4
    even = tuple(range(0, p + 1, 2))
    for I, mult in res.multiplicity.items():
        assert mult == (1 if I == even else 2)
        assert 0 in I and len(I) == (p + 1) // 2


@pytest.mark.parametrize("p", [3, 5, 7, 11])
def test_subspace_conjecture(p):
    rep = ss.subspace_conjecture_report(p)
    assert rep.holds and rep.subspaces == p * p + p + 1


def test_valid_index_sets_realise_cliques():
    """Each I from the count yields a canonical clique of PP(p^4, p+1, I)."""
    for I in ss.count_valid_index_sets(5).valid_sets:
        if I.is_even_classes():
            continue
        assert ss.enumerate_canonical_cliques(pp_graph(5, 4, 6, I.members)).count == 2


@pytest.mark.parametrize("p,n,two_d", [(5, 4, 6), (3, 8, 10), (7, 4, 8)])
def test_fpt_in_C0(p, n, two_d):
    assert ss.fpt_in_C0_check(pp_graph(p, n, two_d, tuple(range(0, two_d, 2))))


def test_dependence_witness(pp625):
    F = pp625.field
    # GF(5)^* is dependent
    for x in range(1, 5):
        assert ss.dependence_witness(pp625, x)
    step = (25 + 1) * 3
    assert ss.dependence_witness(pp625, F.gpow(step))
    assert not ss.dependence_witness(pp625, F.gpow(6))
    with pytest.raises(NotInC0):
        ss.dependence_witness(pp625, F.g)
    # brute force over C_0: dependent exactly on <g^78>
    for e in range(0, 624, 6):
        assert ss.dependence_witness(pp625, F.gpow(e)) == (e % step == 0)
