import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from sympy import Poly, symbols
from sympy.polys.galoistools import gf_irreducible_p
from sympy.polys.domains import ZZ

from cyclopaley.errors import LogOfZeroError, NotPrimeError, SizeCapExceeded, ZeroInverseError
from cyclopaley.field import conway_polynomial, make_field, read_log_cache, write_log_cache, _cache_path

FIELDS = [(3, 2), (5, 2), (3, 4), (5, 4), (7, 2), (13, 2)]


@pytest.fixture(params=FIELDS, ids=lambda pn: f"GF({pn[0]}^{pn[1]})")
def field(request):
    return make_field(*request.param)


# published Conway polynomials, highest degree first
@pytest.mark.parametrize("p,n,expected", [
    (3, 2, (1, 2, 2)),
    (5, 4, (1, 0, 4, 4, 2)),
    (7, 4, (1, 0, 5, 4, 3)),
    (11, 4, (1, 0, 8, 10, 2)),
    (13, 4, (1, 0, 3, 12, 2)),
    (3, 8, (1, 0, 0, 2, 1, 0, 2, 2, 2)),
    (5, 1, (1, 3)),
])
def test_conway_polynomials(p, n, expected):
    assert conway_polynomial(p, n) == expected


def test_modulus_irreducible(field):
    coeffs = [int(c) for c in field.modulus]
    assert gf_irreducible_p(coeffs, field.p, ZZ)


def test_exp_log_roundtrip(field):
    codes = np.arange(1, field.q)
    assert np.array_equal(field.exp[field.log[codes]], codes)
    assert sorted(field.exp.tolist()) == list(range(1, field.q))


def test_table_mul_matches_schoolbook(field):
    rng = np.random.default_rng(1)
    for a, b in rng.integers(0, field.q, size=(200, 2)):
        assert field.mul(int(a), int(b)) == field.poly_mul(int(a), int(b))


def test_generator_has_full_order(field):
    from sympy import factorint
    for ell in factorint(field.q - 1):
        assert field.poly_pow(field.g, (field.q - 1) // ell) != 1


def test_trace_is_frobenius_sum(field):
    for x in range(0, field.q, max(1, field.q // 50)):
        acc = 0
        y = x
        for _ in range(field.n):
            acc = field.add(acc, y)
            y = field.poly_pow(y, field.p)
        assert acc < field.p
        assert field.trace(x) == acc


def test_prime_field_codes(field):
    one = field.one
    for k in range(field.p):
        assert field.add(k, 0) == k
        assert int(one * k) == k


@settings(max_examples=200, deadline=None)
@given(a=st.integers(0, 624), b=st.integers(0, 624), c=st.integers(0, 624))
def test_ring_axioms_gf625(a, b, c):
    F = make_field(5, 4)
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    assert F.sub(F.add(a, b), b) == a
    if a:
        assert F.mul(a, F.inv(a)) == 1


@settings(max_examples=100, deadline=None)
@given(a=st.integers(0, 2400), b=st.integers(0, 2400))
def test_frobenius_is_additive_and_multiplicative(a, b):
    F = make_field(7, 4)
    fr = lambda x: F.frobenius(x, 1)  # noqa: E731
    assert fr(F.add(a, b)) == F.add(fr(a), fr(b))
    assert fr(F.mul(a, b)) == F.mul(fr(a), fr(b))


def test_field_element_operators(f625):
    g = f625.generator
    assert (g ** (f625.q - 1)).code == 1
    assert (g * g.inv()).code == 1
    assert (g / g).code == 1
    assert g.log() == 1
    assert (g - g).is_zero()
    assert (1 - g + g).code == 1


def test_errors():
    with pytest.raises(NotPrimeError):
        make_field(9, 2)
    with pytest.raises(NotPrimeError):
        make_field(2, 4)
    with pytest.raises(SizeCapExceeded):
        make_field(7, 4, size_cap=1000)
    F = make_field(3, 2)
    with pytest.raises(ZeroInverseError):
        F.inv(0)
    with pytest.raises(LogOfZeroError):
        F.discrete_log(0)


def test_subfield(f625):
    sub = f625.subfield(2)
    assert sub.size == 25
    # closed under + and *
    s = set(sub.tolist())
    for a in sub[:8]:
        for b in sub:
            assert f625.add(int(a), int(b)) in s
            assert f625.mul(int(a), int(b)) in s
    assert np.array_equal(f625.subfield(1), np.arange(5))


def test_lex_rule_is_smallest_irreducible():
    F = make_field(5, 2, modulus="lex")
    x = symbols("x")
    # x^2 + 2 is the lexicographically first monic irreducible quadratic over GF(5)
    assert F.modulus == (1, 0, 2)
    assert Poly(x**2 + 2, x, modulus=5).is_irreducible


def test_descriptor_deterministic():
    a = make_field(5, 4).descriptor_hash()
    b = make_field(5, 4).descriptor_hash()
    assert a == b
    assert a != make_field(5, 4, modulus="lex").descriptor_hash()


def test_log_cache_roundtrip(tmp_path):
    F = make_field(7, 2)
    path = write_log_cache(F, tmp_path)
    assert path == _cache_path(tmp_path, F.descriptor())
    log = read_log_cache(path, 7, 2)
    assert np.array_equal(log, F.log)
    assert read_log_cache(path, 7, 3) is None
    G = make_field(7, 2, cache_dir=tmp_path)
    assert np.array_equal(G.log, F.log)
