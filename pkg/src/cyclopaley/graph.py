"""Pseudo-Paley Cayley graphs PP(q, 2d, I) as adjacency oracles over GF(q)."""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field as dc_field

import numpy as np

from .cyclotomy import IndexSet, SemiPrimitiveParams, semiprimitive_params
from .errors import (AsymmetricConnectionSet, DivisibilityViolation, InducedGraphTooLarge,
                     WrongIndexSet)
from .field import Field, make_field

DEFAULT_DENSE_BOUND = 4096


@dataclass(frozen=True, eq=False)
class GraphSpec:
    """Cay(GF(q)^+, D) with D the union of the classes C_j, j in I.

    ``in_D`` is a boolean lookup over element codes, so adjacency of a and b
    costs one subtraction and one table read.
    """

    field: Field
    index_set: IndexSet
    params: SemiPrimitiveParams | None
    class_mask: np.ndarray = dc_field(repr=False)
    in_D: np.ndarray = dc_field(repr=False)

    @property
    def two_d(self) -> int:
        return self.index_set.two_d

    @property
    def d(self) -> int:
        return self.index_set.d

    @property
    def q(self) -> int:
        return self.field.q

    @property
    def semi_primitive(self) -> bool:
        return self.params is not None

    @property
    def sqrt_q(self) -> int | None:
        n = self.field.n
        return self.field.p ** (n // 2) if n % 2 == 0 else None

    def class_of(self, x: int) -> int:
        return int(self.field.log[x]) % self.two_d

    def adjacent(self, a: int, b: int) -> bool:
        if a == b:
            return False
        return bool(self.in_D[self.field.sub(a, b)])

    def connection_set(self) -> np.ndarray:
        return np.flatnonzero(self.in_D)

    def neighbors(self, v: int) -> np.ndarray:
        """Sorted codes of v + D."""
        return np.sort(self.field.add_vec(self.connection_set(), v))

    def is_clique(self, vertices) -> bool:
        verts = np.unique(np.asarray(list(vertices), dtype=np.int64))
        if verts.size < 2:
            return True
        diffs = self.field.sub_vec(verts[:, None], verts[None, :])
        off = ~np.eye(verts.size, dtype=bool)
        return bool(self.in_D[diffs][off].all())

    def common_neighbors(self, seed) -> np.ndarray:
        """Vertices adjacent to every seed vertex (seed vertices excluded)."""
        mask = np.ones(self.q, dtype=bool)
        codes = np.arange(self.q, dtype=np.int64)
        for s in seed:
            mask &= self.in_D[self.field.sub_vec(codes, int(s))]
        return np.flatnonzero(mask)

    def induced_adjacency(self, vertices, bound: int = DEFAULT_DENSE_BOUND) -> np.ndarray:
        """Dense boolean adjacency matrix of the induced subgraph."""
        verts = np.asarray(vertices, dtype=np.int64)
        m = verts.size
        if m > bound:
            raise InducedGraphTooLarge(f"{m} vertices exceeds dense bound {bound}")
        adj = np.zeros((m, m), dtype=bool)
        rows = max(1, 2_000_000 // max(m, 1))
        for start in range(0, m, rows):
            block = verts[start:start + rows]
            diffs = self.field.sub_vec(block[:, None], verts[None, :])
            adj[start:start + rows] = self.in_D[diffs]
        np.fill_diagonal(adj, False)
        return adj

    def descriptor(self) -> dict:
        out = {"field": self.field.descriptor(), "two_d": self.two_d,
               "I": list(self.index_set.members), "semi_primitive": self.semi_primitive,
               "t": None, "r": None}
        if self.params is not None:
            out["t"] = self.params.t
            out["r"] = self.params.r
        return out


def build_graph(field: Field, two_d: int, members) -> GraphSpec:
    """Build PP(q, 2d, I).

    Non-semi-primitive parameters give a valid graph with ``params=None``
    and a warning; character-sum certificates refuse such graphs.
    """
    index_set = members if isinstance(members, IndexSet) else IndexSet(two_d, tuple(members))
    if index_set.two_d != two_d:
        raise ValueError("index set modulus does not match two_d")
    if (field.q - 1) % two_d:
        raise DivisibilityViolation(f"2d = {two_d} does not divide q - 1 = {field.q - 1}")
    params = semiprimitive_params(field.p, field.n, two_d)
    if params is None:
        warnings.warn(f"PP({field.q},{two_d},I) is not semi-primitive", stacklevel=2)
    mask = np.zeros(two_d, dtype=bool)
    mask[list(index_set.members)] = True
    in_D = np.zeros(field.q, dtype=bool)
    in_D[1:] = mask[field.log[1:] % two_d]
    # -1 = g^((q-1)/2); D = -D iff I is invariant under that shift
    half = ((field.q - 1) // 2) % two_d
    if any(not mask[(m + half) % two_d] for m in index_set):
        raise AsymmetricConnectionSet(f"D != -D for 2d={two_d}, I={index_set.members}")
    mask.setflags(write=False)
    in_D.setflags(write=False)
    return GraphSpec(field, index_set, params, mask, in_D)


def pp_graph(p: int, n: int, two_d: int, members, **field_kwargs) -> GraphSpec:
    """Convenience constructor: build GF(p^n) then PP(p^n, 2d, I)."""
    return build_graph(make_field(p, n, **field_kwargs), two_d, members)


def self_complement_witness(graph: GraphSpec) -> bool:
    """Check that x -> g^d x sends edges of GP*(q, 2d) to non-edges and back.

    By translation invariance it is enough to check every nonzero difference c:
    c in D must hold exactly when g^d c is not in D.  The image g^d c is
    computed by polynomial multiplication, independently of the log table.
    """
    members = graph.index_set.members
    if members != tuple(range(graph.d)):
        raise WrongIndexSet(f"expected I = {{0..{graph.d - 1}}}, got {members}")
    field = graph.field
    gd = field.poly_pow(field.g, graph.d)
    for c in range(1, field.q):
        image = field.poly_mul(gd, c)
        if bool(graph.in_D[c]) == bool(graph.in_D[image]):
            return False
    return True


def write_dimacs(graph: GraphSpec, vertices, fh) -> None:
    """Write the induced subgraph on ``vertices`` in DIMACS edge format.

    Vertex i (1-based) is the i-th entry of ``vertices``.
    """
    verts = list(vertices)
    adj = graph.induced_adjacency(verts, bound=max(len(verts), 1))
    iu, ju = np.nonzero(np.triu(adj, 1))
    fh.write(f"c induced subgraph of PP({graph.q},{graph.two_d},{list(graph.index_set.members)})\n")
    fh.write(f"p edge {len(verts)} {iu.size}\n")
    for i, j in zip(iu.tolist(), ju.tolist()):
        fh.write(f"e {i + 1} {j + 1}\n")
