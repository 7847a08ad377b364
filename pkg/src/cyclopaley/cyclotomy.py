"""Cyclotomic classes, semi-primitivity and index-set algebra."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import DTooSmall, IndexSetError, ZeroHasNoClass
from .field import Field


@dataclass(frozen=True)
class SemiPrimitiveParams:
    """Parameters of a semi-primitive 2d-th cyclotomy of GF(p^n).

    ``t`` is the least positive integer with p^t = -1 (mod 2d).  ``r`` is
    defined by q = p^(2rt) and is ``None`` when 2t does not divide n (only
    possible for 2d = 2 with n odd, where the order of p mod 2 is 1).
    """

    p: int
    n: int
    two_d: int
    t: int
    r: int | None

    @property
    def d(self) -> int:
        return self.two_d // 2

    @property
    def r_even(self) -> bool:
        return self.r is not None and self.r % 2 == 0

    @property
    def sqrt_q(self) -> int | None:
        return self.p ** (self.n // 2) if self.n % 2 == 0 else None


@dataclass(frozen=True)
class IndexSet:
    """A subset I of Z/2d with |I| = d, stored sorted."""

    two_d: int
    members: tuple[int, ...]

    def __post_init__(self):
        if self.two_d < 2 or self.two_d % 2:
            raise IndexSetError(f"2d must be an even integer >= 2, got {self.two_d}")
        members = tuple(sorted(set(int(m) for m in self.members)))
        if len(members) != len(self.members):
            raise IndexSetError(f"duplicate members in {self.members}")
        if any(not 0 <= m < self.two_d for m in members):
            raise IndexSetError(f"members {members} must lie in [0, {self.two_d})")
        if len(members) != self.two_d // 2:
            raise IndexSetError(f"|I| = {len(members)} but d = {self.two_d // 2}")
        object.__setattr__(self, "members", members)

    @classmethod
    def of(cls, two_d: int, members) -> IndexSet:
        return cls(two_d, tuple(members))

    @property
    def d(self) -> int:
        return self.two_d // 2

    def __contains__(self, j: int) -> bool:
        return j % self.two_d in self.members

    def __iter__(self):
        return iter(self.members)

    def __len__(self) -> int:
        return len(self.members)

    def is_even_classes(self) -> bool:
        return self.members == tuple(range(0, self.two_d, 2))

    def is_odd_classes(self) -> bool:
        return self.members == tuple(range(1, self.two_d, 2))

    def negated(self) -> tuple[int, ...]:
        """Indices of the dual set D' = union of C_{-m}."""
        return tuple(sorted((-m) % self.two_d for m in self.members))

    def to_json(self) -> dict:
        return {"two_d": self.two_d, "I": list(self.members)}

    @classmethod
    def from_json(cls, obj: dict) -> IndexSet:
        return cls(int(obj["two_d"]), tuple(obj["I"]))


def semiprimitive_t(p: int, two_d: int) -> int | None:
    """Least t >= 1 with p^t = -1 (mod 2d), or None if -1 is not a power of p."""
    if two_d < 2 or two_d % 2:
        raise ValueError("two_d must be an even integer >= 2")
    target = (-1) % two_d
    x = p % two_d
    seen = set()
    t = 1
    while x not in seen:
        if x == target:
            return t
        seen.add(x)
        x = (x * p) % two_d
        t += 1
    return None


def semiprimitive_params(p: int, n: int, two_d: int) -> SemiPrimitiveParams | None:
    t = semiprimitive_t(p, two_d)
    if t is None:
        return None
    r = n // (2 * t) if n % (2 * t) == 0 else None
    return SemiPrimitiveParams(p=p, n=n, two_d=two_d, t=t, r=r)


def class_index(field: Field, x: int, two_d: int) -> int:
    """Index j with x in C_j = g^j <g^(2d)>."""
    if x == 0:
        raise ZeroHasNoClass("0 lies in no cyclotomic class")
    if (field.q - 1) % two_d:
        raise ValueError(f"2d = {two_d} does not divide q - 1 = {field.q - 1}")
    return int(field.log[x]) % two_d


def shift_set(index_set: IndexSet, k: int) -> IndexSet:
    return IndexSet(index_set.two_d, tuple((m + k) % index_set.two_d for m in index_set))


def _divisors(n: int) -> list[int]:
    return sorted(d for d in range(1, n + 1) if n % d == 0)


def minimal_representation(index_set: IndexSet) -> IndexSet:
    """Smallest (2d', I') presenting the same connection set.

    I is the lift of I' when I = {j : j mod 2d' in I'}.
    """
    two_d = index_set.two_d
    members = set(index_set.members)
    for e2 in _divisors(two_d):
        if e2 % 2:
            continue
        reduced = {m % e2 for m in members}
        lift = {j for j in range(two_d) if j % e2 in reduced}
        if lift == members:
            return IndexSet(e2, tuple(sorted(reduced)))
    return index_set


def theta_sum(index_set: IndexSet, k: int) -> complex:
    theta = cmath.exp(1j * math.pi / index_set.d)
    return sum(theta ** (k * m) for m in index_set)


def theta_sum_max(index_set: IndexSet) -> tuple[int, float]:
    """argmax over 1 <= k < 2d of |sum_j theta^(k m_j)| with theta = exp(i pi/d).

    Ties resolve to the smallest k.  The returned value always exceeds
    sqrt(d/2); an AssertionError signals a broken invariant.
    """
    d = index_set.d
    if d < 2:
        raise DTooSmall("the theta-sum bound needs d >= 2")
    best_k, best = 0, -1.0
    for k in range(1, index_set.two_d):
        value = abs(theta_sum(index_set, k))
        if value > best + 1e-12:
            best_k, best = k, value
    if not best > math.sqrt(d / 2) + 1e-9:
        raise AssertionError(f"theta-sum bound violated for {index_set}: {best}")
    return best_k, best
