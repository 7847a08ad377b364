"""Exact character sums over Z[zeta_p] and Z[zeta_2d].

All values that the theory predicts to be rational (Gauss periods, per-class
energies T_k, Plancherel totals) are computed as exact integers.  Nothing in
this module compares floating-point numbers except the final sign test in
:func:`reis_bound_check`, which is preceded by an exact equality test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import mpmath
import numpy as np
from sympy import Poly, cyclotomic_poly, symbols

from .cyclotomy import IndexSet, semiprimitive_params
from .errors import (NotACliqueError, NotSemiPrimitive, ROddError, SubfieldInput,
                     TrivialCharacter, ZeroFrequency)
from .field import Field
from .graph import GraphSpec


@dataclass(frozen=True)
class CyclotomicInteger:
    """a_0 + a_1 z + ... + a_{p-2} z^{p-2} in Z[z], z a primitive p-th root of 1.

    The basis {1, z, ..., z^{p-2}} is a Z-basis of the ring, so equal values
    have equal coefficient vectors.
    """

    p: int
    coeffs: tuple[int, ...]

    @classmethod
    def from_counts(cls, p: int, counts) -> CyclotomicInteger:
        """sum_k counts[k] z^k for k in [0, p); uses z^(p-1) = -(1 + ... + z^(p-2))."""
        counts = [int(c) for c in counts]
        top = counts[p - 1]
        return cls(p, tuple(c - top for c in counts[: p - 1]))

    @classmethod
    def zeta(cls, p: int, k: int = 1) -> CyclotomicInteger:
        counts = [0] * p
        counts[k % p] = 1
        return cls.from_counts(p, counts)

    @classmethod
    def integer(cls, p: int, value: int) -> CyclotomicInteger:
        return cls(p, (int(value),) + (0,) * (p - 2))

    def _full(self) -> list[int]:
        return list(self.coeffs) + [0]

    def __add__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        return CyclotomicInteger(self.p, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        return CyclotomicInteger(self.p, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> CyclotomicInteger:
        return CyclotomicInteger(self.p, tuple(-a for a in self.coeffs))

    def __mul__(self, other: CyclotomicInteger) -> CyclotomicInteger:
        p = self.p
        prod = [0] * p
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        prod[(i + j) % p] += a * b
        return CyclotomicInteger.from_counts(p, prod)

    def conj(self) -> CyclotomicInteger:
        full = self._full()
        return CyclotomicInteger.from_counts(self.p, [full[(-k) % self.p] for k in range(self.p)])

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def rational_value(self) -> int:
        if not self.is_rational():
            raise ValueError(f"{self} is not a rational integer")
        return self.coeffs[0]

    def trace(self) -> int:
        """Trace from Q(zeta_p) to Q: Tr(1) = p - 1, Tr(z^i) = -1 for 0 < i < p."""
        return (self.p - 1) * self.coeffs[0] - sum(self.coeffs[1:])

    def to_complex(self) -> complex:
        return sum(a * complex(math.cos(2 * math.pi * k / self.p), math.sin(2 * math.pi * k / self.p))
                   for k, a in enumerate(self.coeffs))


def norm_squared(z: CyclotomicInteger) -> Fraction:
    """Rational projection of z * conj(z): the mean of |sigma(z)|^2 over Gal(Q(zeta_p)/Q).

    Equals |z|^2 whenever |z|^2 is rational, and is zero exactly when z is.
    """
    return Fraction((z * z.conj()).trace(), z.p - 1)


# -- S(q, A; c) ----------------------------------------------------------------

def _as_codes(A) -> np.ndarray:
    return np.unique(np.asarray(list(A) if not isinstance(A, np.ndarray) else A, dtype=np.int64))


def trace_counts(field: Field, A, cs) -> np.ndarray:
    """counts[i, k] = #{a in A : Tr(a * cs[i]) = k}."""
    A = _as_codes(A)
    cs = np.asarray(cs, dtype=np.int64)
    p = field.p
    if A.size == 0:
        return np.zeros((cs.size, p), dtype=np.int64)
    tr = field.trace_table[field.mul_vec(cs[:, None], A[None, :])]
    idx = (np.arange(cs.size, dtype=np.int64)[:, None] * p + tr).ravel()
    return np.bincount(idx, minlength=cs.size * p).reshape(cs.size, p)


def char_sum_S(field: Field, A, c: int) -> CyclotomicInteger:
    """S(q, A; c) = sum_{a in A} e_p(Tr(a c)) as an exact element of Z[zeta_p]."""
    if c == 0:
        raise ZeroFrequency("S(q, A; c) is defined for c != 0")
    return CyclotomicInteger.from_counts(field.p, trace_counts(field, A, [c])[0])


def _energies_from_counts(counts: np.ndarray, size: int, p: int) -> np.ndarray:
    """Numerators of norm_squared(S(c)) times (p - 1), one per row."""
    return p * (counts.astype(object) ** 2).sum(axis=1) - size * size


def plancherel_check(field: Field, A) -> bool:
    """sum_{c != 0} |S(q, A; c)|^2 == q|A| - |A|^2, exactly."""
    A = _as_codes(A)
    cs = np.arange(1, field.q, dtype=np.int64)
    counts = trace_counts(field, A, cs)
    total = Fraction(int(_energies_from_counts(counts, A.size, field.p).sum()), field.p - 1)
    return total == field.q * A.size - A.size**2


@dataclass
class CharSumReport:
    A_size: int
    per_class_energy: list[int]
    certificate: str
    dual_classes: list[int]
    residual_dual_energy: int
    nonzero_on_dual: int

    def to_json(self) -> dict:
        return {"A_size": self.A_size, "per_class_energy": self.per_class_energy,
                "certificate": self.certificate, "dual_classes": self.dual_classes,
                "residual_dual_energy": self.residual_dual_energy}


def per_class_energy(field: Field, A, two_d: int) -> list[int]:
    """T_k = sum_{c in C_k} |S(c)|^2 for k in [0, 2d).

    Each C_k is stable under multiplication by GF(p)^* in the semi-primitive
    case, so T_k is a Galois-invariant sum and therefore a rational integer.
    """
    A = _as_codes(A)
    cs = np.arange(1, field.q, dtype=np.int64)
    num = _energies_from_counts(trace_counts(field, A, cs), A.size, field.p)
    classes = field.log[cs] % two_d
    out = []
    for k in range(two_d):
        t = Fraction(int(num[classes == k].sum()), field.p - 1)
        if t.denominator != 1:
            raise AssertionError(f"T_{k} = {t} is not an integer")
        out.append(int(t))
    return out


def _require_even_r(graph: GraphSpec):
    if graph.params is None:
        raise NotSemiPrimitive(f"PP({graph.q},{graph.two_d},I) is not semi-primitive")
    if not graph.params.r_even:
        raise ROddError(f"q = p^(2rt) with r = {graph.params.r}; need r even")


def clique_certificate(graph: GraphSpec, A) -> CharSumReport:
    """Fourier certificate for a clique A.

    When |A| = sqrt(q), passes iff S(q, A; c) = 0 exactly for every c in
    D' = union of C_{-m}, m in I.  Smaller cliques get "n/a" with their
    residual energy on D'.
    """
    _require_even_r(graph)
    A = _as_codes(A)
    if not graph.is_clique(A):
        raise NotACliqueError("certificate requested for a set that is not a clique")
    sqrt_q = graph.sqrt_q
    if A.size > sqrt_q:
        raise AssertionError(f"clique of size {A.size} exceeds sqrt(q) = {sqrt_q}")
    field = graph.field
    energies = per_class_energy(field, A, graph.two_d)
    dual = list(graph.index_set.negated())
    residual = sum(energies[k] for k in dual)

    dual_cs = np.flatnonzero(np.isin(field.log % graph.two_d, dual) & (np.arange(field.q) != 0))
    counts = trace_counts(field, A, dual_cs)
    nonzero = sum(1 for row in counts
                  if not CyclotomicInteger.from_counts(field.p, row).is_zero())
    if A.size == sqrt_q:
        status = "pass" if nonzero == 0 and residual == 0 else "fail"
    else:
        status = "n/a"
    return CharSumReport(int(A.size), energies, status, dual, residual, nonzero)


# -- Gauss periods and Gauss sums ----------------------------------------------------

def class_periods(field: Field, two_d: int) -> list[int]:
    """P_j = sum_{c in C_j} e_p(Tr c) for j in [0, 2d), as exact integers."""
    cs = np.arange(1, field.q, dtype=np.int64)
    classes = field.log[cs] % two_d
    tr = field.trace_table[cs]
    out = []
    for j in range(two_d):
        counts = np.bincount(tr[classes == j], minlength=field.p)
        z = CyclotomicInteger.from_counts(field.p, counts)
        if not z.is_rational():
            raise NotSemiPrimitive(f"period P_{j} is irrational; GF(p)^* is not inside C_0")
        out.append(z.rational_value())
    return out


@dataclass
class PeriodReport:
    periods: list[int]
    lam: int
    mu: int | None
    expected_lam: int
    expected_mu: int
    passed: bool

    def to_json(self) -> dict:
        return {"periods": self.periods, "lambda": self.lam, "mu": self.mu,
                "expected_lambda": self.expected_lam, "expected_mu": self.expected_mu,
                "passed": self.passed}


def _even_r_params(field: Field, two_d: int):
    params = semiprimitive_params(field.p, field.n, two_d)
    if params is None or (field.q - 1) % two_d:
        raise NotSemiPrimitive(f"2d = {two_d} is not semi-primitive for GF({field.p}^{field.n})")
    if not params.r_even:
        raise ROddError(f"q = p^(2rt) with r = {params.r}; need r even")
    return params


def gauss_periods(field: Field, two_d: int) -> PeriodReport:
    """Compute lambda = P_0 and mu = P_k (k != 0) and compare with the closed forms

    lambda = -((2d - 1) sqrt(q) + 1) / 2d,   mu = (sqrt(q) - 1) / 2d.
    """
    params = _even_r_params(field, two_d)
    s = params.sqrt_q
    periods = class_periods(field, two_d)
    lam = periods[0]
    rest = set(periods[1:])
    mu = rest.pop() if len(rest) == 1 else None
    exp_lam = Fraction(-((two_d - 1) * s + 1), two_d)
    exp_mu = Fraction(s - 1, two_d)
    passed = (mu is not None and lam == exp_lam and mu == exp_mu
              and lam + (two_d - 1) * mu == -1
              and Fraction(lam + (two_d // 2 - 1) * mu) == Fraction(-(s + 1), 2))
    return PeriodReport(periods, lam, mu, int(exp_lam), int(exp_mu), passed)


@lru_cache(maxsize=None)
def _cyclotomic_coeffs(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, low -> high."""
    x = symbols("x")
    return tuple(int(c) for c in reversed(Poly(cyclotomic_poly(m, x), x).all_coeffs()))


def reduce_mod_cyclotomic(coeffs, m: int) -> tuple[int, ...]:
    """Canonical representative of sum_i coeffs[i] x^i in Z[x]/Phi_m(x)."""
    phi = _cyclotomic_coeffs(m)
    deg = len(phi) - 1
    work = [int(c) for c in coeffs]
    for k in range(len(work) - 1, deg - 1, -1):
        c = work[k]
        if c:
            for j in range(deg + 1):
                work[k - deg + j] -= c * phi[j]
    work += [0] * max(0, deg - len(work))
    return tuple(work[:deg])


@dataclass
class GaussSumReport:
    k: int
    order: int
    value: tuple[int, ...]
    expected: int
    passed: bool

    def to_json(self) -> dict:
        return {"k": self.k, "order": self.order, "value": list(self.value),
                "expected": self.expected, "passed": self.passed}


def _least_minus_one_power(p: int, m: int) -> int | None:
    """Least t >= 1 with p^t = -1 (mod m), or None."""
    x = p % m
    for t in range(1, m + 1):
        if x == m - 1:
            return t
        x = x * p % m
    return None


def predicted_gauss_sum(p: int, n: int, two_d: int, k: int) -> int:
    """G(chi^k) for chi(g) = exp(i pi / d), from the quadratic-character
    formula (order 2) or Stickelberger's semi-primitive formula (order > 2).
    Only integer-valued cases are supported."""
    q = p**n
    order = two_d // math.gcd(two_d, k)
    if order == 1:
        return -1
    if n % 2:
        raise ValueError("sqrt(q) is irrational; only even n is supported")
    sqrt_q = p ** (n // 2)
    if order == 2:
        sign = (-1) ** (n - 1)
        if p % 4 == 3:
            sign *= (-1) ** (n // 2)  # i^n with n even
        return sign * sqrt_q
    t = _least_minus_one_power(p, order)
    if t is None or n % (2 * t):
        raise NotSemiPrimitive(f"order-{order} characters of GF({q}) are not semi-primitive")
    s = n // (2 * t)
    return (-1) ** (s - 1 + (p**t + 1) * s // order) * sqrt_q


def gauss_sum(field: Field, two_d: int, k: int, periods: list[int] | None = None) -> GaussSumReport:
    """G(chi^k) = sum_j theta^(kj) P_j computed exactly in Z[theta], theta = zeta_2d.

    The result is compared with the closed form (equal to -sqrt(q) whenever
    q = p^(2rt) with r even).
    """
    if not 1 <= k < two_d:
        raise ValueError(f"k must lie in [1, {two_d})")
    if semiprimitive_params(field.p, field.n, two_d) is None:
        raise NotSemiPrimitive(f"2d = {two_d} is not semi-primitive for GF({field.p}^{field.n})")
    if periods is None:
        periods = class_periods(field, two_d)
    poly = [0] * two_d
    for j, pj in enumerate(periods):
        poly[(k * j) % two_d] += pj
    value = reduce_mod_cyclotomic(poly, two_d)
    expected = predicted_gauss_sum(field.p, field.n, two_d, k)
    passed = value[0] == expected and not any(value[1:])
    return GaussSumReport(k, two_d // math.gcd(two_d, k), value, expected, passed)


# -- Reis-type bound ----------------------------------------------------------------

def reis_bound_check(field: Field, t: int, V, two_d: int, k: int) -> bool:
    """Test |sum_{x in V} chi(x)| < (2r / sqrt(p^t)) |V| for chi(g) = zeta_2d^k.

    V is an r-dimensional GF(p^t)-subspace of GF(p^(2rt)) containing 1 and
    different from the subfield of order sqrt(q).  The squared comparison is
    carried out in Z[zeta_2d]: exact equality first, then the sign of the
    difference at 50 significant digits.
    """
    if k % two_d == 0:
        raise TrivialCharacter("chi must be nontrivial")
    V = _as_codes(V)
    if field.n % (2 * t):
        raise ValueError(f"n = {field.n} is not a multiple of 2t = {2 * t}")
    r = field.n // (2 * t)
    if 1 not in set(V.tolist()):
        raise ValueError("V must contain 1")
    if V.size != field.p ** (r * t):
        raise ValueError(f"|V| = {V.size}, expected p^(rt) = {field.p ** (r * t)}")
    if np.array_equal(V, field.subfield(field.n // 2)):
        raise SubfieldInput("V is the subfield of order sqrt(q); the bound excludes it")

    nz = V[V != 0]
    hits = np.bincount(field.log[nz] % two_d, minlength=two_d)
    # |sum|^2 = sum_{a,b} N_a N_b theta^(k(a-b))
    poly = [0] * two_d
    for a in range(two_d):
        for b in range(two_d):
            poly[(k * (a - b)) % two_d] += int(hits[a]) * int(hits[b])
    sq = reduce_mod_cyclotomic(poly, two_d)
    # (2r/sqrt(p^t))^2 |V|^2 = 4 r^2 p^(2rt - t)
    bound = 4 * r * r * field.p ** (2 * r * t - t)
    if sq[0] == bound and not any(sq[1:]):
        return False
    with mpmath.workdps(50):
        theta = mpmath.exp(2j * mpmath.pi / two_d)
        val = mpmath.re(sum(c * theta**i for i, c in enumerate(sq)))
        return bool(val < bound)


def index_sets_containing_zero(two_d: int) -> list[IndexSet]:
    from itertools import combinations
    d = two_d // 2
    return [IndexSet(two_d, (0, *rest)) for rest in combinations(range(1, two_d), d - 1)]
