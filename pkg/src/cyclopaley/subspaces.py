"""Subspaces over GF(p^t) inside GF(q): canonical cliques, Frobenius pairing,
index-set counting and the two small-p subspace checks."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field as dc_field

import numpy as np

from .cyclotomy import IndexSet
from .errors import NotInC0, WrongFieldShape, WrongIndexSet
from .field import Field, make_field
from .graph import GraphSpec


@dataclass(frozen=True)
class Subspace:
    """span_{GF(p^t)}(basis) inside ``field``; elements are materialised on demand."""

    field: Field = dc_field(repr=False, compare=False)
    t: int
    basis: tuple[int, ...]
    elements: tuple[int, ...] = dc_field(default=(), repr=False)

    @classmethod
    def span(cls, field: Field, t: int, basis) -> Subspace:
        basis = tuple(int(b) for b in basis)
        K = field.subfield(t)
        pts = np.zeros(1, dtype=np.int64)
        for b in basis:
            line = field.mul_vec(K, b)
            pts = np.unique(field.add_vec(pts[:, None], line[None, :]).ravel())
        if pts.size != (field.p**t) ** len(basis):
            raise ValueError(f"basis {basis} is not linearly independent over GF(p^{t})")
        return cls(field, t, basis, tuple(pts.tolist()))

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __contains__(self, x: int) -> bool:
        return int(x) in set(self.elements)

    def key(self) -> frozenset:
        return frozenset(self.elements)

    def image(self, fn) -> frozenset:
        return frozenset(int(fn(x)) for x in self.elements)


def frobenius_sqrt_q(field: Field, x: int) -> int:
    """x -> x^sqrt(q)."""
    if field.n % 2:
        raise WrongFieldShape("q is not a square")
    return field.frobenius(int(x), field.n // 2)


def _lines_ok(graph: GraphSpec, a: int, K: np.ndarray) -> bool:
    """a + K lies inside D."""
    return bool(graph.in_D[graph.field.add_vec(K, a)].all())


@dataclass
class CanonicalCliques:
    subspaces: list[Subspace]
    pairs: list[tuple[int, int]]
    fixed: int

    @property
    def count(self) -> int:
        return len(self.subspaces)


def enumerate_canonical_cliques(graph: GraphSpec) -> CanonicalCliques:
    """All cliques V = GF(p^t) + a GF(p^t) with V \\ {0} inside D, for q = p^(4t).

    GF(p^t)^* lies in C_0, so V is a clique iff a + GF(p^t) lies in D.  a runs
    over one representative g^e per GF(p^t)^*-coset, e in [1, (q-1)/(p^t-1)).
    The result is checked to split into Frobenius-swapped pairs.
    """
    if graph.params is None:
        raise WrongFieldShape("graph is not semi-primitive")
    field, t = graph.field, graph.params.t
    if field.n != 4 * t:
        raise WrongFieldShape(f"q = p^{field.n} is not p^(4t) with t = {t}")
    I = graph.index_set
    if 0 not in I:
        raise WrongIndexSet("0 must lie in I")
    if I.is_even_classes():
        raise WrongIndexSet("I = {0, 2, ...} is the Paley graph")
    sub_sqrt = field.subfield(field.n // 2)
    if graph.is_clique(sub_sqrt):
        raise AssertionError("GF(sqrt(q)) is a clique although I is not the Paley set")

    K = field.subfield(t)
    stride = (field.q - 1) // (field.p**t - 1)
    seen: dict[frozenset, Subspace] = {}
    for e in range(1, stride):
        a = int(field.exp[e])
        if _lines_ok(graph, a, K):
            V = Subspace.span(field, t, (1, a))
            seen.setdefault(V.key(), V)
    subs = sorted(seen.values(), key=lambda V: V.elements)
    index = {V.key(): i for i, V in enumerate(subs)}
    pairs, fixed = [], 0
    for i, V in enumerate(subs):
        j = index.get(V.image(lambda x: frobenius_sqrt_q(field, x)))
        if j is None:
            raise AssertionError("Frobenius image of a canonical clique is not canonical")
        if j == i:
            fixed += 1
        elif i < j:
            pairs.append((i, j))
    if fixed or len(subs) % 2:
        raise AssertionError(f"{len(subs)} canonical cliques with {fixed} fixed by Frobenius")
    return CanonicalCliques(subs, pairs, fixed)


# -- p^4 with 2d = p + 1 ---------------------------------------------------------

def _fp4(p: int, **field_kwargs) -> Field:
    return make_field(p, 4, **field_kwargs)


def _line_classes(field: Field, a: int, two_d: int) -> list[int]:
    """Class indices of 1 and a + k (k in GF(p)): one per GF(p)-line of span(1, a)."""
    reps = np.concatenate(([1], field.add_vec(np.arange(field.p), a)))
    return (field.log[reps] % two_d).tolist()


def _valid_index(classes: list[int], two_d: int) -> IndexSet | None:
    hits = Counter(classes)
    if all(v == 2 for v in hits.values()):
        return IndexSet(two_d, tuple(sorted(hits)))
    return None


@dataclass
class IndexSetCount:
    p: int
    valid_sets: list[IndexSet]
    count: int
    per_k: list[tuple[int, tuple[int, ...]]]
    multiplicity: dict[tuple[int, ...], int]

    @property
    def expected(self) -> int:
        return (self.p**2 + 3) // 4

    def to_json(self) -> dict:
        return {"p": self.p, "count": self.count, "expected": "(p^2+3)/4",
                "expected_value": self.expected,
                "valid_sets": [list(I.members) for I in self.valid_sets]}


def count_valid_index_sets(p: int, **field_kwargs) -> IndexSetCount:
    """Index sets I (0 in I) hit exactly twice by R = {1, a, a+1, ..., a+p-1}, a = g^((p+1)k).

    k runs over [0, p^2]; values with a in GF(p) (only k = 0) are skipped
    because R would then contain 0.  ``multiplicity`` counts the distinct
    subspaces span(1, a) producing each I.
    """
    field = _fp4(p, **field_kwargs)
    two_d = p + 1
    found: dict[tuple[int, ...], set[frozenset]] = {}
    per_k = []
    for k in range(p * p + 1):
        a = int(field.exp[((p + 1) * k) % (field.q - 1)])
        if a < p:
            continue
        I = _valid_index(_line_classes(field, a, two_d), two_d)
        if I is None:
            continue
        per_k.append((k, I.members))
        found.setdefault(I.members, set()).add(Subspace.span(field, 1, (1, a)).key())
    valid = [IndexSet(two_d, m) for m in sorted(found)]
    mult = {m: len(v) for m, v in sorted(found.items())}
    return IndexSetCount(p, valid, len(valid), per_k, mult)


@dataclass
class ConjectureCheck:
    p: int
    subspaces: int
    qualifying: int
    predicted: int
    holds: bool

    def __bool__(self) -> bool:
        return self.holds

    def to_json(self) -> dict:
        return {"p": self.p, "subspaces": self.subspaces, "qualifying": self.qualifying,
                "predicted": self.predicted, "holds": self.holds}


def subspace_conjecture_report(p: int, **field_kwargs) -> ConjectureCheck:
    """Compare the qualifying 2-dimensional GF(p)-subspaces V containing 1 with
    {GF(p) + a GF(p) : a = g^((p+1)k), k odd}.

    Every V is visited once: after V = span(1, a) is handled, all of V \\ GF(p)
    is marked so no other a produces it again.
    """
    field = _fp4(p, **field_kwargs)
    two_d = p + 1
    visited = np.zeros(field.q, dtype=bool)
    visited[:p] = True
    qualifying: set[frozenset] = set()
    total = 0
    for a in range(p, field.q):
        if visited[a]:
            continue
        V = Subspace.span(field, 1, (1, a))
        visited[list(V.elements)] = True
        total += 1
        if _valid_index(_line_classes(field, a, two_d), two_d) is not None:
            qualifying.add(V.key())
    predicted = set()
    for k in range(1, p * p + 1, 2):
        a = int(field.exp[((p + 1) * k) % (field.q - 1)])
        predicted.add(Subspace.span(field, 1, (1, a)).key())
    if total != p * p + p + 1:
        raise AssertionError(f"found {total} subspaces, expected p^2 + p + 1")
    return ConjectureCheck(p, total, len(qualifying), len(predicted), qualifying == predicted)


def verify_subspace_conjecture(p: int, **field_kwargs) -> bool:
    return subspace_conjecture_report(p, **field_kwargs).holds


# -- lemmas on C_0 -------------------------------------------------------------------

def fpt_in_C0_check(graph: GraphSpec) -> bool:
    """Every nonzero element of GF(p^t) has class index 0."""
    if graph.params is None:
        raise ValueError("graph is not semi-primitive")
    K = graph.field.subfield(graph.params.t)[1:]
    return bool((graph.field.log[K] % graph.two_d == 0).all())


def dependence_witness(graph: GraphSpec, x: int) -> bool:
    """Whether {x, x^(p^(2t))} is GF(p^t)-linearly dependent, for x in C_0 and q = p^(4t).

    When dependent, also asserts x lies in <g^((p^(2t)+1) d)>.
    """
    field = graph.field
    if graph.params is None or field.n != 4 * graph.params.t:
        raise WrongFieldShape("needs a semi-primitive graph with q = p^(4t)")
    x = int(x)
    if x == 0 or field.log[x] % graph.two_d:
        raise NotInC0(f"{x} is not in C_0")
    t = graph.params.t
    ratio = field.mul(field.frobenius(x, 2 * t), field.inv(x))
    dependent = field.pow(ratio, field.p**t) == ratio
    if dependent:
        step = (field.p ** (2 * t) + 1) * graph.d
        if int(field.log[x]) % step:
            raise AssertionError(f"log {field.log[x]} not divisible by {step}")
    return dependent
