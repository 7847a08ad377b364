import math
from itertools import combinations

import pytest

from cyclopaley.cyclotomy import (IndexSet, class_index, minimal_representation,
                                  semiprimitive_params, semiprimitive_t, shift_set,
                                  theta_sum, theta_sum_max)
from cyclopaley.errors import DTooSmall, IndexSetError, ZeroHasNoClass
from cyclopaley.field import make_field


@pytest.mark.parametrize("p,two_d,t", [(5, 6, 1), (7, 8, 1), (3, 10, 2), (11, 12, 1),
                                       (13, 14, 1), (3, 4, 1), (5, 8, None), (5, 4, None)])
def test_semiprimitive_t(p, two_d, t):
    assert semiprimitive_t(p, two_d) == t


def test_semiprimitive_params():
    prm = semiprimitive_params(5, 4, 6)
    assert (prm.t, prm.r, prm.d, prm.r_even, prm.sqrt_q) == (1, 2, 3, True, 25)
    prm = semiprimitive_params(3, 8, 10)
    assert (prm.t, prm.r) == (2, 2)
    assert semiprimitive_params(5, 4, 8) is None
    assert semiprimitive_params(3, 2, 2).r == 1


def test_index_set_validation():
    with pytest.raises(IndexSetError):
        IndexSet(6, (0, 1))
    with pytest.raises(IndexSetError):
        IndexSet(6, (0, 1, 6))
    with pytest.raises(IndexSetError):
        IndexSet(5, (0, 1))
    with pytest.raises(IndexSetError):
        IndexSet(6, (0, 0, 1))
    I = IndexSet(6, (3, 0, 1))
    assert I.members == (0, 1, 3)
    assert I.negated() == (0, 3, 5)
    assert IndexSet.from_json(I.to_json()) == I


def test_class_index(f625):
    g = f625.g
    assert class_index(f625, 1, 6) == 0
    assert class_index(f625, g, 6) == 1
    assert class_index(f625, f625.gpow(6 * 7 + 5), 6) == 5
    with pytest.raises(ZeroHasNoClass):
        class_index(f625, 0, 6)


@pytest.mark.parametrize("members,two_d,expected", [
    ((0, 2, 4), 6, (2, (0,))),
    ((1, 3, 5), 6, (2, (1,))),
    ((0, 1, 3), 6, (6, (0, 1, 3))),
    ((0, 1, 4, 5), 8, (4, (0, 1))),
])
def test_minimal_representation(members, two_d, expected):
    m = minimal_representation(IndexSet(two_d, members))
    assert (m.two_d, m.members) == expected


def test_shift_set():
    assert shift_set(IndexSet(6, (0, 1, 3)), 2).members == (2, 3, 5)


@pytest.mark.parametrize("d", range(2, 9))
def test_theta_sum_lemma_all_index_sets(d):
    """max_k |sum_j theta^(k m_j)| > sqrt(d/2) for every I of size d."""
    two_d = 2 * d
    for members in combinations(range(two_d), d):
        I = IndexSet(two_d, members)
        k, value = theta_sum_max(I)
        assert value > math.sqrt(d / 2)
        assert abs(abs(theta_sum(I, k)) - value) < 1e-12


def test_theta_sum_small_d():
    with pytest.raises(DTooSmall):
        theta_sum_max(IndexSet(2, (0,)))
