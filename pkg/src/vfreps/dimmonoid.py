"""The dimension-vector monoid of a graph of groups.

A dimension vector assigns a multiplicity vector to every vertex group,
subject to one linear constraint per edge: both restrictions to the edge
group must agree.  The weighted total dimension is then the same at every
vertex and grades the monoid.

Enumeration is deterministic (lexicographic on the concatenated vertex
vectors) and every enumerated vector is interned per graph, so vectors can
be used as dictionary keys in the series layer at tuple-hashing cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .groupgraph import GraphOfGroups


class DimVector:
    """An element of the dimension-vector monoid.

    per_vertex holds one multiplicity vector per vertex group; per_edge
    caches the common restriction to each edge group; total is the weighted
    total dimension.  Instances are immutable, hashable and interned per
    graph (use GraphOfGroups-bound helpers or dimvector() to create them).
    """

    __slots__ = ("graph", "per_vertex", "per_edge", "total", "_hash")

    def __init__(self, graph, per_vertex, per_edge, total):
        self.graph = graph
        self.per_vertex = per_vertex
        self.per_edge = per_edge
        self.total = total
        self._hash = hash(per_vertex)

    def __eq__(self, other):
        return isinstance(other, DimVector) and self.per_vertex == other.per_vertex

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self.per_vertex < other.per_vertex

    def is_zero(self):
        return self.total == 0 and all(all(x == 0 for x in v) for v in self.per_vertex)

    def __add__(self, other):
        return _intern_sum(self.graph, self, other, 1)

    def __repr__(self):
        return format_dimvector(self)

    def text(self):
        return format_dimvector(self)


def format_dimvector(m: DimVector) -> str:
    """Nested-tuple text form, e.g. ((2,1),(1,1,1))."""
    parts = ",".join("(" + ",".join(str(x) for x in v) + ")" for v in m.per_vertex)
    return "(" + parts + ")"


def parse_dimvector(g: GraphOfGroups, text: str) -> DimVector:
    """Inverse of format_dimvector, tolerant of whitespace."""
    stripped = text.replace(" ", "")
    if not (stripped.startswith("((") and stripped.endswith("))")):
        raise ValueError(f"malformed dimension vector {text!r}")
    body = stripped[2:-2]
    parts = body.split("),(")
    vecs = []
    for part in parts:
        vecs.append(tuple(int(x) for x in part.split(",")) if part else ())
    return dimvector(g, vecs)


def dimvector(g: GraphOfGroups, per_vertex) -> DimVector:
    """Validating constructor; checks edge constraints and the common
    weighted total, then interns."""
    pv = tuple(tuple(int(x) for x in v) for v in per_vertex)
    cached = g._dv_cache.get(pv)
    if cached is not None:
        return cached
    if len(pv) != len(g.vertices):
        raise ValueError(f"expected {len(g.vertices)} vertex vectors, got {len(pv)}")
    totals = []
    for i, v in enumerate(g.vertices):
        if len(pv[i]) != len(v.simple_dims):
            raise ValueError(
                f"vertex {i}: expected {len(v.simple_dims)} multiplicities, got {len(pv[i])}"
            )
        if any(x < 0 for x in pv[i]):
            raise ValueError(f"vertex {i}: negative multiplicity in {pv[i]}")
        totals.append(sum(d * x for d, x in zip(v.simple_dims, pv[i])))
    if len(set(totals)) > 1:
        raise ValueError(f"vertex totals differ: {totals}")
    per_edge = []
    for j, e in enumerate(g.edges):
        u = e.iota.apply(pv[e.s])
        w = e.kappa.apply(pv[e.t])
        if u != w:
            raise ValueError(f"edge {j} constraint violated: {u} != {w}")
        per_edge.append(u)
    m = DimVector(g, pv, tuple(per_edge), totals[0] if totals else 0)
    g._dv_cache[pv] = m
    return m


def _intern_sum(g, a: DimVector, b: DimVector, sign: int):
    """a + sign*b without revalidation (constraints are linear)."""
    if a.graph is not b.graph:
        raise ValueError("dimension vectors over different graphs")
    if sign > 0:
        pv = tuple(
            tuple(x + y for x, y in zip(va, vb))
            for va, vb in zip(a.per_vertex, b.per_vertex)
        )
    else:
        pv = []
        for va, vb in zip(a.per_vertex, b.per_vertex):
            row = tuple(x - y for x, y in zip(va, vb))
            if any(x < 0 for x in row):
                return None
            pv.append(row)
        pv = tuple(pv)
    cached = g._dv_cache.get(pv)
    if cached is not None:
        return cached
    pe = tuple(
        tuple(x + sign * y for x, y in zip(ua, ub))
        for ua, ub in zip(a.per_edge, b.per_edge)
    )
    m = DimVector(g, pv, pe, a.total + sign * b.total)
    g._dv_cache[pv] = m
    return m


def zero_vector(g: GraphOfGroups) -> DimVector:
    return dimvector(g, tuple((0,) * len(v.simple_dims) for v in g.vertices))


def total_dim(m: DimVector) -> int:
    return m.total


def add(m: DimVector, n: DimVector) -> DimVector:
    return _intern_sum(m.graph, m, n, 1)


def try_sub(m: DimVector, n: DimVector):
    """Componentwise difference when it stays nonnegative, else None."""
    return _intern_sum(m.graph, m, n, -1)


def scale(m: DimVector, c: int) -> DimVector:
    pv = tuple(tuple(c * x for x in v) for v in m.per_vertex)
    cached = m.graph._dv_cache.get(pv)
    if cached is not None:
        return cached
    dv = DimVector(
        m.graph, pv,
        tuple(tuple(c * x for x in u) for u in m.per_edge),
        c * m.total,
    )
    m.graph._dv_cache[pv] = dv
    return dv


def gcd_div(m: DimVector):
    """(gcd of all entries, list of all c dividing m); m must be nonzero."""
    g = 0
    for v in m.per_vertex:
        for x in v:
            g = math.gcd(g, x)
    if g == 0:
        raise ValueError("gcd of the zero vector is undefined")
    divisors = [c for c in range(1, g + 1) if g % c == 0]
    return g, divisors


def divide(m: DimVector, c: int):
    """m/c when c divides every entry, else None."""
    if c == 0:
        raise ZeroDivisionError("division of a dimension vector by zero")
    if any(x % c for v in m.per_vertex for x in v):
        return None
    pv = tuple(tuple(x // c for x in v) for v in m.per_vertex)
    return dimvector(m.graph, pv)


# ---------------------------------------------------------------------------
# enumeration
# ---------------------------------------------------------------------------

def enumerate_dimvectors(g: GraphOfGroups, d: int):
    """All dimension vectors of total dimension d, sorted lexicographically
    on the concatenated per-vertex vectors.

    Vertex 0 ranges over the weighted compositions of d; each amalgam tree
    edge then propagates by solving its linear constraint; HNN loops are
    pure filters.
    """
    if d < 0:
        raise ValueError("negative total dimension")
    cached = g._enum_cache.get(d)
    if cached is not None:
        return cached
    amalgams = [e for e in g.edges if e.kind == "amalgam"]
    hnns = [e for e in g.edges if e.kind == "hnn"]
    partial = [[v] for v in _weighted_compositions(d, g.vertices[0].simple_dims)]
    for e in amalgams:
        # tree order guarantees e.s < e.t and e.t is the next new vertex
        grown = []
        dims_t = g.vertices[e.t].simple_dims
        for pv in partial:
            u = e.iota.apply(pv[e.s])
            for w in _constrained_vectors(u, e.kappa.matrix, dims_t):
                grown.append(pv + [w])
        partial = grown
    out = []
    for pv in partial:
        if all(e.iota.apply(pv[e.s]) == e.kappa.apply(pv[e.t]) for e in hnns):
            out.append(dimvector(g, pv))
    out.sort()
    out = tuple(out)
    g._enum_cache[d] = out
    return out


def _weighted_compositions(d: int, dims):
    """All nonnegative m with sum(dims[i] * m[i]) = d."""
    out = []

    def rec(i, rest, acc):
        if i == len(dims) - 1:
            if rest % dims[i] == 0:
                out.append(tuple(acc + [rest // dims[i]]))
            return
        w = dims[i]
        for x in range(rest // w + 1):
            rec(i + 1, rest - w * x, acc + [x])

    if dims:
        rec(0, d, [])
    return out


def _constrained_vectors(u, matrix, dims):
    """All nonnegative integer x with matrix . x = u (column-nonzero matrix).

    Dimension preservation makes the weighted total of x automatic.
    """
    rows = len(matrix)
    cols = len(dims)
    out = []

    def rec(gamma, residual, acc):
        if gamma == cols:
            if all(r == 0 for r in residual):
                out.append(tuple(acc))
            return
        bound = None
        for delta in range(rows):
            c = matrix[delta][gamma]
            if c:
                b = residual[delta] // c
                bound = b if bound is None else min(bound, b)
        for x in range(bound + 1):
            rec(
                gamma + 1,
                tuple(residual[delta] - x * matrix[delta][gamma] for delta in range(rows)),
                acc + [x],
            )

    rec(0, tuple(u), [])
    return out


# ---------------------------------------------------------------------------
# Euler form, parity correction, shift exponent
# ---------------------------------------------------------------------------

def euler_form(g: GraphOfGroups, m: DimVector, n: DimVector) -> int:
    """Homological Euler form: vertex dot products minus edge dot products."""
    tot = 0
    for vm, vn in zip(m.per_vertex, n.per_vertex):
        tot += sum(x * y for x, y in zip(vm, vn))
    for um, un in zip(m.per_edge, n.per_edge):
        tot -= sum(x * y for x, y in zip(um, un))
    return tot


def correction_y(g: GraphOfGroups, m: DimVector) -> int:
    """Additive integer form congruent to euler_form(m, m) mod 2: sum of
    vertex multiplicities minus sum of edge multiplicities."""
    return sum(sum(v) for v in m.per_vertex) - sum(sum(u) for u in m.per_edge)


def shift_exponent(g: GraphOfGroups, m: DimVector, y_func=None) -> int:
    """(euler_form(m,m) - Y(m)) / 2; integral by the parity congruence."""
    y = (y_func or correction_y)(g, m)
    e = euler_form(g, m, m) - y
    if e % 2:
        raise ArithmeticError(
            f"parity violation at {format_dimvector(m)}: "
            f"euler form and correction differ mod 2"
        )
    return e // 2


# ---------------------------------------------------------------------------
# symmetry orbits
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SymmetryGroupDescriptor:
    """Generators of the symmetry group acting on dimension vectors.

    kind "trivial_edges": every edge group is trivial and each vertex's
    simples of equal dimension may be permuted freely.

    kind "abelian_vertices": one amalgam edge between abelian vertex
    groups; each vertex's simples fall into partition blocks indexed by
    the edge characters, and allowed permutations preserve (or coherently
    permute) the blocks on both sides at once.

    generators: tuples of per-vertex permutations (index tuples).
    blocks: per vertex, the tuple of partition blocks (None for
    trivial_edges).
    """

    kind: str
    generators: tuple
    blocks: tuple = None


def symmetry_descriptor(g: GraphOfGroups) -> SymmetryGroupDescriptor:
    """Derive the applicable symmetry descriptor, or raise ValueError."""
    if all(e.group.order == 1 for e in g.edges):
        gens = []
        for i, v in enumerate(g.vertices):
            by_dim = {}
            for gamma, d in enumerate(v.simple_dims):
                by_dim.setdefault(d, []).append(gamma)
            for idxs in by_dim.values():
                for a, b in zip(idxs, idxs[1:]):
                    gens.append(_one_vertex_transposition(g, i, a, b))
        return SymmetryGroupDescriptor("trivial_edges", tuple(gens))
    if (
        len(g.edges) == 1
        and g.edges[0].kind == "amalgam"
        and all(all(d == 1 for d in v.simple_dims) for v in g.vertices)
    ):
        e = g.edges[0]
        blocks = (_blocks_of(e.iota.matrix), _blocks_of(e.kappa.matrix))
        gens = []
        # swaps inside one block leave the edge restriction unchanged
        for vi in range(2):
            for block in blocks[vi]:
                for k in range(len(block) - 1):
                    gens.append(_one_vertex_transposition(g, vi, block[k], block[k + 1]))
        # paired block swaps realize transpositions of edge characters
        nblocks = len(blocks[0])
        for delta in range(nblocks - 1):
            if all(len(blocks[vi][delta]) == len(blocks[vi][delta + 1]) for vi in range(2)):
                perms = []
                for vi in range(2):
                    p = list(range(len(g.vertices[vi].simple_dims)))
                    for x, y in zip(blocks[vi][delta], blocks[vi][delta + 1]):
                        p[x], p[y] = y, x
                    perms.append(tuple(p))
                gens.append(tuple(perms))
        return SymmetryGroupDescriptor("abelian_vertices", tuple(gens), blocks)
    raise ValueError(
        "symmetry group supported only for trivial edge groups or a single "
        "amalgam of abelian vertex groups"
    )


def _blocks_of(matrix):
    """Partition of vertex simples by the edge character they restrict to;
    requires exactly one 1 per column."""
    blocks = [[] for _ in matrix]
    for gamma in range(len(matrix[0])):
        col = [matrix[delta][gamma] for delta in range(len(matrix))]
        if sorted(col) != [0] * (len(col) - 1) + [1]:
            raise ValueError("edge restriction does not induce a partition")
        blocks[col.index(1)].append(gamma)
    return tuple(tuple(b) for b in blocks)


def _one_vertex_transposition(g, vertex, a, b):
    perms = []
    for i, v in enumerate(g.vertices):
        p = list(range(len(v.simple_dims)))
        if i == vertex:
            p[a], p[b] = b, a
        perms.append(tuple(p))
    return tuple(perms)


def apply_symmetry(m: DimVector, perms) -> DimVector:
    pv = []
    for v, p in zip(m.per_vertex, perms):
        out = [0] * len(v)
        for gamma, x in enumerate(v):
            out[p[gamma]] = x
        pv.append(tuple(out))
    return dimvector(m.graph, pv)


def symmetry_orbits(g: GraphOfGroups, descriptor: SymmetryGroupDescriptor, d: int):
    """Partition of enumerate_dimvectors(g, d) into symmetry orbits,
    each orbit sorted, orbits ordered by their minimal element."""
    vectors = enumerate_dimvectors(g, d)
    seen = set()
    orbits = []
    for start in vectors:
        if start in seen:
            continue
        orbit = {start}
        frontier = [start]
        while frontier:
            cur = frontier.pop()
            for perms in descriptor.generators:
                nxt = apply_symmetry(cur, perms)
                if nxt not in orbit:
                    orbit.add(nxt)
                    frontier.append(nxt)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits
