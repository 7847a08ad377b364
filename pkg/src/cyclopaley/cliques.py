"""Maximum cliques through a seed, enumeration, class profiles and the naive set."""

from __future__ import annotations

import enum
import time
from dataclasses import dataclass

import numpy as np

from .cyclotomy import IndexSet, minimal_representation, semiprimitive_params
from .errors import (InducedGraphTooLarge, NotACliqueError, SeedNotClique, TimedOut,
                     ZeroNotInClique)
from .graph import DEFAULT_DENSE_BOUND, GraphSpec
from .search import all_cliques_of_size, find_clique_of_size, max_clique

REDUCTION_THRESHOLD = 700


@dataclass(frozen=True)
class Clique:
    """A verified clique; ``vertices`` are element codes sorted by discrete log (0 first)."""

    vertices: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.vertices)

    def logs(self, graph: GraphSpec) -> list[int | None]:
        return [None if v == 0 else int(graph.field.log[v]) for v in self.vertices]

    def __contains__(self, v: int) -> bool:
        return v in self.vertices

    def __len__(self) -> int:
        return len(self.vertices)


@dataclass(frozen=True)
class CliqueProfile:
    counts: tuple[int, ...]
    contains_zero: bool


@dataclass
class CliqueResult:
    clique: Clique
    seed: tuple[int, ...]
    candidates: int
    nodes: int
    upper_bound: int | None
    k_used: int | None = None

    @property
    def size(self) -> int:
        return self.clique.size

    @property
    def attains_bound(self) -> bool:
        return self.upper_bound is not None and self.size == self.upper_bound


def _sorted_by_log(graph: GraphSpec, vertices) -> tuple[int, ...]:
    log = graph.field.log
    return tuple(sorted({int(v) for v in vertices}, key=lambda v: int(log[v])))


def verify_clique(graph: GraphSpec, vertices) -> bool:
    """Independent pairwise check, one adjacency lookup per pair."""
    verts = [int(v) for v in vertices]
    sub, in_D = graph.field.sub, graph.in_D
    for i, a in enumerate(verts):
        for b in verts[i + 1:]:
            if a == b or not in_D[sub(a, b)]:
                return False
    return True


def make_clique(graph: GraphSpec, vertices) -> Clique:
    if not verify_clique(graph, vertices):
        raise NotACliqueError("vertex set is not a clique")
    return Clique(_sorted_by_log(graph, vertices))


def delsarte_bound(graph: GraphSpec) -> int | None:
    """sqrt(q) when the graph has Paley parameters (semi-primitive, r even), else None."""
    if graph.params is not None and graph.params.r_even:
        return graph.sqrt_q
    return None


def seed_set(graph: GraphSpec, kind: str = "pair") -> tuple[int, ...]:
    """{0, 1} for "pair", the prime field GF(p) for "subfield"."""
    if kind == "pair":
        return (0, 1)
    if kind == "subfield":
        return tuple(range(graph.field.p))
    raise ValueError(f"unknown seed kind {kind!r}")


def _candidates(graph: GraphSpec, seed, bound: int) -> tuple[np.ndarray, np.ndarray]:
    cand = graph.common_neighbors(seed)
    if cand.size > bound:
        raise InducedGraphTooLarge(f"{cand.size} candidates exceeds exact-search bound {bound}")
    return cand, graph.induced_adjacency(cand, bound=bound)


def _deadline(deadline_s: float | None) -> float | None:
    return None if deadline_s is None else time.monotonic() + deadline_s


def max_clique_through(graph: GraphSpec, seed=(0, 1), *, bound: int = DEFAULT_DENSE_BOUND,
                       upper: int | None = None, deadline_s: float | None = None) -> CliqueResult:
    """Maximum clique containing ``seed``, by exact search on the common neighbourhood.

    ``upper`` is a proven bound on the clique number; it defaults to the
    Delsarte bound sqrt(q) where that applies.  On timeout, TimedOut.best
    holds the best clique found (a lower bound only).
    """
    seed = tuple(sorted({int(s) for s in seed}))
    if not verify_clique(graph, seed):
        raise SeedNotClique(f"seed {seed} is not a clique")
    if upper is None:
        upper = delsarte_bound(graph)
    cand, adj = _candidates(graph, seed, bound)
    deadline = _deadline(deadline_s)
    try:
        idx, nodes = None, 0
        if upper is not None:
            # a clique meeting the proven bound settles the question; the
            # colouring bound prunes much harder at a fixed target size
            idx, nodes = find_clique_of_size(adj, upper - len(seed), deadline=deadline)
        if idx is None:
            idx, more = max_clique(adj, upper=None if upper is None else upper - len(seed),
                                   deadline=deadline)
            nodes += more
    except TimedOut as exc:
        best = seed + tuple(int(cand[i]) for i in (exc.best or []))
        raise TimedOut(str(exc), best=make_clique(graph, best)) from None
    clique = make_clique(graph, seed + tuple(int(cand[i]) for i in idx))
    return CliqueResult(clique, seed, int(cand.size), nodes, upper)


def reduction_k(q: int, threshold: int = REDUCTION_THRESHOLD) -> int:
    """min{n >= 1 : q / 2^n < threshold}."""
    n = 1
    while q / 2**n >= threshold:
        n += 1
    return n


def clique_number_via_reduction(graph: GraphSpec, target_size: int | None = None, *,
                                threshold: int = REDUCTION_THRESHOLD,
                                bound: int = DEFAULT_DENSE_BOUND,
                                deadline_s: float | None = None) -> CliqueResult:
    """Largest clique through the prefix {0, 1, ..., k-1} with k from the halving schedule.

    The prefix is shrunk until it is itself a clique, and the k actually used
    is reported.  ``target_size`` acts as a proven upper bound (search stops on
    reaching it); it defaults to the Delsarte bound.
    """
    k = min(reduction_k(graph.q, threshold), graph.q)
    while k > 1 and not verify_clique(graph, range(k)):
        k -= 1
    res = max_clique_through(graph, tuple(range(k)), bound=bound, upper=target_size,
                             deadline_s=deadline_s)
    res.k_used = k
    return res


def enumerate_max_cliques_through(graph: GraphSpec, seed=(0, 1), size: int | None = None, *,
                                  bound: int = DEFAULT_DENSE_BOUND,
                                  deadline_s: float | None = None) -> list[Clique]:
    """Every clique of ``size`` (default sqrt(q)) containing ``seed``, in canonical order."""
    seed = tuple(sorted({int(s) for s in seed}))
    if not verify_clique(graph, seed):
        raise SeedNotClique(f"seed {seed} is not a clique")
    if size is None:
        size = graph.sqrt_q
    cand, adj = _candidates(graph, seed, bound)
    found, _ = all_cliques_of_size(adj, size - len(seed), deadline=_deadline(deadline_s))
    cliques = [make_clique(graph, seed + tuple(int(cand[i]) for i in c)) for c in found]
    return sorted(cliques, key=lambda c: sorted(c.vertices))


def has_clique_through(graph: GraphSpec, seed, size: int, *,
                       bound: int = DEFAULT_DENSE_BOUND) -> Clique | None:
    seed = tuple(sorted({int(s) for s in seed}))
    if not verify_clique(graph, seed):
        raise SeedNotClique(f"seed {seed} is not a clique")
    cand, adj = _candidates(graph, seed, bound)
    idx, _ = find_clique_of_size(adj, size - len(seed))
    if idx is None:
        return None
    return make_clique(graph, seed + tuple(int(cand[i]) for i in idx))


def profile(graph: GraphSpec, A) -> CliqueProfile:
    """counts[j] = |A n C_j|.  For a clique of size sqrt(q) with Paley parameters,
    asserts the equal-contribution identity counts[m] = (sqrt(q) - 1) / d on I."""
    verts = A.vertices if isinstance(A, Clique) else tuple(int(v) for v in A)
    if 0 not in verts:
        raise ZeroNotInClique("profile requires 0 in A")
    if not verify_clique(graph, verts):
        raise NotACliqueError("profile requires a clique")
    nz = np.asarray([v for v in verts if v != 0], dtype=np.int64)
    counts = np.bincount(graph.field.log[nz] % graph.two_d, minlength=graph.two_d) \
        if nz.size else np.zeros(graph.two_d, dtype=np.int64)
    prof = CliqueProfile(tuple(int(c) for c in counts), True)
    if len(verts) == graph.sqrt_q and delsarte_bound(graph) is not None:
        share = (graph.sqrt_q - 1) // graph.d
        want = tuple(share if j in graph.index_set else 0 for j in range(graph.two_d))
        if prof.counts != want:
            raise AssertionError(f"equal contribution violated: {prof.counts} != {want}")
    return prof


def naive_set(graph: GraphSpec, *, literal: bool = False) -> tuple[int, ...]:
    """A(q, 2d, I) = {0} u union_j g^(m_j u) H, with H = <g^(d(sqrt(q)+1))> and u = (sqrt(q)+1)/2.

    H has order (sqrt(q)-1)/d.  The coset representative g^(m u) lies in C_m
    when u = 1 (mod 2d), and for I = {0, 2, ..., 2d-2} the union is exactly
    GF(sqrt(q)).  ``literal=True`` uses g^(m_j) as representative instead,
    which only agrees with the subfield at the level of classes and is never
    a clique for d >= 2.
    """
    s = graph.sqrt_q
    step = graph.d * (s + 1)
    reps = (graph.q - 1) // step
    u = 1 if literal else (s + 1) // 2
    out = {0}
    for m in graph.index_set:
        out.update(int(graph.field.exp[(m * u + step * i) % (graph.q - 1)]) for i in range(reps))
    return _sorted_by_log(graph, out)


def is_clique(graph: GraphSpec, subset) -> bool:
    return verify_clique(graph, subset)


class Verdict(enum.Enum):
    PALEY_TYPE = "PaleyType"
    CONDITIONALLY_BELOW_SQRT_Q = "ConditionallyBelowSqrtQ"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class VerdictReport:
    verdict: Verdict
    p: int
    t: int
    r: int
    d: int
    threshold: float

    def to_json(self) -> dict:
        return {"verdict": self.verdict.value, "p": self.p, "t": self.t, "r": self.r,
                "d": self.d, "p^t": self.p**self.t, "10.2*r^2*d": self.threshold}


def verdict_from_params(p: int, t: int, r: int, index_set: IndexSet) -> VerdictReport:
    d = index_set.d
    threshold = 10.2 * r * r * d
    if index_set.is_even_classes() or index_set.is_odd_classes():
        v = Verdict.PALEY_TYPE
    elif p**t > threshold:
        v = Verdict.CONDITIONALLY_BELOW_SQRT_Q
    else:
        v = Verdict.INCONCLUSIVE
    return VerdictReport(v, p, t, r, d, threshold)


def conditional_verdict(graph: GraphSpec) -> VerdictReport:
    """Classify by the minimal representation of I; the threshold p^t > 10.2 r^2 d is
    evaluated with that representation's own (t, r, d)."""
    if graph.params is None or not graph.params.r_even:
        raise ValueError("verdict needs semi-primitive parameters with r even")
    mini = minimal_representation(graph.index_set)
    params = semiprimitive_params(graph.field.p, graph.field.n, mini.two_d)
    if params is None or not params.r_even:
        params, mini = graph.params, graph.index_set
    return verdict_from_params(graph.field.p, params.t, params.r, mini)


def scaled(graph: GraphSpec, A, c: int) -> tuple[int, ...]:
    """c * A, for testing the multiplicative symmetry x -> c x with c in C_0."""
    return _sorted_by_log(graph, graph.field.mul_vec(np.asarray(list(A), dtype=np.int64), c))

