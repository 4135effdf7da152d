"""Brute-force verification over small finite fields.

Counts tuples of invertible matrices satisfying the defining relations of
a preset group, classifies which tuples generate absolutely simple
modules, and reads the dimension vector off a tuple by eigenvalue
multiplicities.  Everything here is deliberately independent of the
series pipeline: matrix enumeration, orbit counting and linear algebra
over F_q only, so agreement with the pipeline is a real cross-check.

Supported: d <= 2, q <= 13 with q = 4, 9 realized through fixed
irreducible polynomials.  Character indexing over F_q fixes the canonical
primitive element g0 (the smallest generator of the multiplicative
group); the n-th root of unity underlying character gamma of a cyclic
vertex group is g0^((q-1)/n) raised to gamma.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .dimmonoid import dimvector
from .exactalg import QPower
from .groupgraph import is_suitable_prime_power, preset


# ---------------------------------------------------------------------------
# small finite fields with table arithmetic
# ---------------------------------------------------------------------------

# modulus coefficients (low degree first, without the leading 1) of the
# irreducible polynomials realizing the supported prime-power fields
_IRREDUCIBLE = {4: (1, 1), 9: (1, 0)}  # x^2+x+1 over F_2, x^2+1 over F_3


class SmallField:
    """F_q for q <= 13 with precomputed operation tables.

    Elements are integers 0..q-1.  For prime q they are the residues; for
    q = 4, 9 the element a + b*x is encoded as a + b*p.
    """

    def __init__(self, q: int):
        qp = QPower.from_value(q)
        if q > 13:
            raise ValueError("oracle fields are limited to q <= 13")
        self.q = q
        self.p = qp.p
        self.e = qp.e
        if qp.e == 1:
            add = [[(a + b) % q for b in range(q)] for a in range(q)]
            mul = [[(a * b) % q for b in range(q)] for a in range(q)]
        elif q in _IRREDUCIBLE:
            add, mul = self._extension_tables(qp.p, _IRREDUCIBLE[q])
        else:
            raise ValueError(f"no irreducible polynomial on file for q={q}")
        self.add = add
        self.mul = mul
        self.neg = [add[a].index(0) for a in range(q)]
        self.inv = [0] * q
        for a in range(1, q):
            self.inv[a] = mul[a].index(1)
        self.generator = self._find_generator()
        # discrete powers of the canonical generator
        self.pow_of_gen = [1]
        for _ in range(q - 2):
            self.pow_of_gen.append(self.mul[self.pow_of_gen[-1]][self.generator])

    def _extension_tables(self, p, modulus):
        q = p * p
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            a0, a1 = a % p, a // p
            for b in range(q):
                b0, b1 = b % p, b // p
                add[a][b] = (a0 + b0) % p + p * ((a1 + b1) % p)
                # (a0 + a1 x)(b0 + b1 x) reduced modulo x^2 + m1 x + m0
                c0 = a0 * b0
                c1 = a0 * b1 + a1 * b0
                c2 = a1 * b1
                m0, m1 = modulus
                c0 -= c2 * m0
                c1 -= c2 * m1
                mul[a][b] = c0 % p + p * (c1 % p)
        return add, mul

    def _find_generator(self):
        for g in range(2, self.q):
            seen = set()
            x = 1
            for _ in range(self.q - 1):
                x = self.mul[x][g]
                seen.add(x)
            if len(seen) == self.q - 1:
                return g
        return 1  # F_2 has trivial multiplicative group

    def root_of_unity(self, n: int) -> int:
        """Canonical primitive n-th root of unity; needs n | q-1."""
        if (self.q - 1) % n:
            raise ValueError(f"F_{self.q} has no primitive {n}-th root of unity")
        if n == 1:
            return 1
        return self.pow_of_gen[(self.q - 1) // n]


@lru_cache(maxsize=None)
def field(q: int) -> SmallField:
    return SmallField(q)


# ---------------------------------------------------------------------------
# 2x2 matrices as flat tuples
# ---------------------------------------------------------------------------

def mat_mul(F, A, B):
    a, b, c, d = A
    e, f_, g, h = B
    M, P = F.mul, F.add
    return (
        P[M[a][e]][M[b][g]], P[M[a][f_]][M[b][h]],
        P[M[c][e]][M[d][g]], P[M[c][f_]][M[d][h]],
    )


def mat_pow(F, A, k):
    out = (1, 0, 0, 1)
    base = A
    while k:
        if k & 1:
            out = mat_mul(F, out, base)
        base = mat_mul(F, base, base)
        k >>= 1
    return out


def mat_det(F, A):
    a, b, c, d = A
    return F.add[F.mul[a][d]][F.neg[F.mul[b][c]]]


@lru_cache(maxsize=None)
def power_solutions(q: int, d: int, k):
    """All X in GL_d(F_q) with X^k = 1 (all of GL_d when k is None)."""
    F = field(q)
    if d == 1:
        if k is None:
            return tuple(range(1, q))
        out = []
        for x in range(1, q):
            y = 1
            for _ in range(k):
                y = F.mul[y][x]
            if y == 1:
                out.append(x)
        return tuple(out)
    if d == 2:
        out = []
        for a in range(q):
            for b in range(q):
                for c in range(q):
                    for dd in range(q):
                        A = (a, b, c, dd)
                        if mat_det(F, A) == 0:
                            continue
                        if k is None or mat_pow(F, A, k) == (1, 0, 0, 1):
                            out.append(A)
        return tuple(out)
    raise ValueError("oracle supports d <= 2 only")


@lru_cache(maxsize=None)
def invariant_lines(q: int, A):
    """Indices of the projective lines of F_q^2 mapped to themselves by A."""
    F = field(q)
    lines = _lines(q)
    out = []
    for idx, (v0, v1) in enumerate(lines):
        a, b, c, d = A
        w0 = F.add[F.mul[a][v0]][F.mul[b][v1]]
        w1 = F.add[F.mul[c][v0]][F.mul[d][v1]]
        # w colinear with v: w0*v1 == w1*v0
        if F.mul[w0][v1] == F.mul[w1][v0]:
            out.append(idx)
    return frozenset(out)


@lru_cache(maxsize=None)
def _lines(q: int):
    return tuple([(1, x) for x in range(q)] + [(0, 1)])


def commutant_dimension(q: int, mats) -> int:
    """Dimension of {X : AX = XA for all generator images A}, by rank of
    the stacked centralizer equations over F_q."""
    F = field(q)
    rows = []
    for A in mats:
        a, b, c, d = A
        n = F.neg
        # AX - XA = 0 in the basis (x00, x01, x10, x11)
        rows.append((0, n[c], b, 0))
        rows.append((n[b], F.add[a][n[d]], 0, b))
        rows.append((c, 0, F.add[d][n[a]], n[c]))
        rows.append((0, c, n[b], 0))
    return 4 - _rank(F, rows)


def _rank(F, rows):
    rows = [list(r) for r in rows]
    rank = 0
    ncols = 4
    for col in range(ncols):
        pivot = None
        for r in range(rank, len(rows)):
            if rows[r][col]:
                pivot = r
                break
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        inv = F.inv[rows[rank][col]]
        rows[rank] = [F.mul[x][inv] for x in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                factor = rows[r][col]
                rows[r] = [
                    F.add[x][F.neg[F.mul[factor][y]]]
                    for x, y in zip(rows[r], rows[rank])
                ]
        rank += 1
    return rank


# ---------------------------------------------------------------------------
# presentations of the oracle-supported presets
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PresentationData:
    """Generators and relations in the two shapes the presets need:
    one power relation per generator (g_i^k = 1, k None when free) and at
    most one equality relation g_i^a = g_j^b.

    Generator i corresponds to vertex group i of the preset's graph
    (free groups: one trivial vertex, all generators HNN letters).
    """

    preset_name: str
    generators: int
    power_orders: tuple
    equality: tuple = None  # (i, a, j, b) meaning  g_i^a = g_j^b


def presentation(name: str) -> PresentationData:
    """Presentation paired with the preset's graph-of-groups data."""
    base = name.split("(")[0]
    if base == "dinf":
        return PresentationData(name, 2, (2, 2))
    if base == "psl2z":
        return PresentationData(name, 2, (2, 3))
    if base == "sl2z":
        return PresentationData(name, 2, (4, 6), (0, 2, 1, 3))
    if base == "gc":
        c = int(name[name.index("(") + 1:-1])
        return PresentationData(name, 2, (2 * c, 2 * c), (0, 2, 1, 2))
    if base == "cyclic_free_product":
        a, b = (int(x) for x in name[name.index("(") + 1:-1].split(","))
        return PresentationData(name, 2, (a, b))
    if base == "free":
        a = int(name[name.index("(") + 1:-1])
        return PresentationData(name, a, (None,) * a)
    raise ValueError(f"no oracle presentation for preset {name!r}")


def _check_supported(p: PresentationData, d: int, q: int):
    if d > 2 or d < 1:
        raise ValueError("oracle supports dimensions 1 and 2 only")
    if q > 13:
        raise ValueError("oracle supports q <= 13 only")
    g = preset(p.preset_name)
    if not is_suitable_prime_power(g, q):
        raise ValueError(f"q={q} is not suitable for {p.preset_name}")
    return g


def _power_value(q, d, x, k):
    if d == 1:
        F = field(q)
        y = 1
        for _ in range(k):
            y = F.mul[y][x]
        return y
    return mat_pow(field(q), x, k)


def _solution_buckets(p: PresentationData, d: int, q: int):
    """Per generator: its power-solution set, keyed by the value of the
    side of the equality relation it participates in (None when free)."""
    sets = [power_solutions(q, d, k) for k in p.power_orders]
    if p.equality is None:
        return sets, None
    i, a, j, b = p.equality
    buckets_i = {}
    for x in sets[i]:
        buckets_i.setdefault(_power_value(q, d, x, a), []).append(x)
    buckets_j = {}
    for x in sets[j]:
        buckets_j.setdefault(_power_value(q, d, x, b), []).append(x)
    return sets, (i, j, buckets_i, buckets_j)


def count_hom(p: PresentationData, d: int, q: int) -> int:
    """Number of generator tuples in GL_d(F_q) satisfying all relations."""
    _check_supported(p, d, q)
    sets, eq = _solution_buckets(p, d, q)
    if eq is None:
        total = 1
        for s in sets:
            total *= len(s)
        return total
    _, _, bi, bj = eq
    return sum(len(bi[v]) * len(bj[v]) for v in bi if v in bj)


def _hom_pairs(p: PresentationData, d: int, q: int):
    """Iterate all relation-satisfying generator tuples."""
    from itertools import product

    sets, eq = _solution_buckets(p, d, q)
    if eq is None:
        yield from product(*sets)
        return
    if p.generators != 2:
        raise ValueError("equality relations are handled for two generators only")
    _, _, bi, bj = eq
    for v, xs in bi.items():
        ys = bj.get(v)
        if not ys:
            continue
        for x in xs:
            for y in ys:
                yield (x, y)


def count_absim_orbits(p: PresentationData, d: int, q: int) -> int:
    """Number of isomorphism classes of absolutely simple d-dimensional
    modules: points with no common invariant line and one-dimensional
    commutant, divided by the conjugation-orbit size |GL_d|/(q-1)."""
    _check_supported(p, d, q)
    if d != 2:
        raise ValueError("absolutely simple orbit counting needs d = 2")
    points = 0
    for mats in _hom_pairs(p, d, q):
        common = invariant_lines(q, mats[0])
        for A in mats[1:]:
            if not common:
                break
            common = common & invariant_lines(q, A)
        if common:
            continue
        if commutant_dimension(q, mats) == 1:
            points += 1
    gl2 = (q * q - 1) * (q * q - q)
    orbit_size = gl2 // (q - 1)
    if points % orbit_size:
        raise ArithmeticError(
            f"absim point count {points} not divisible by orbit size {orbit_size}"
        )
    return points // orbit_size


def dimvector_of_point(p: PresentationData, mats, q: int):
    """Dimension vector of a relation-satisfying tuple, by reading each
    vertex generator's eigenvalue multiplicities against the canonical
    root-of-unity indexing."""
    g = preset(p.preset_name)
    if not is_suitable_prime_power(g, q):
        raise ValueError(f"q={q} is not suitable for {p.preset_name}")
    F = field(q)
    per_vertex = []
    for i, v in enumerate(g.vertices):
        if v.order == 1:
            d = _dim_of(mats[0] if mats else 1)
            per_vertex.append((d,))
            continue
        n = v.order  # cyclic vertex groups only
        if v.simple_dims != (1,) * n:
            raise ValueError("eigenvalue readout implemented for cyclic vertex groups")
        x = mats[i]
        omega = F.root_of_unity(n)
        roots = [1]
        for _ in range(n - 1):
            roots.append(F.mul[roots[-1]][omega])
        mult = [0] * n
        for ev, count in _eigenvalues(F, x):
            if ev not in roots:
                raise ArithmeticError(
                    f"eigenvalue outside the expected roots of unity at q={q}"
                )
            mult[roots.index(ev)] += count
        per_vertex.append(tuple(mult))
    return dimvector(g, per_vertex)


def _dim_of(x):
    return 1 if isinstance(x, int) else 2


def _eigenvalues(F, x):
    """Eigenvalues with multiplicities for d <= 2 (diagonalizable inputs)."""
    if isinstance(x, int):
        return [(x, 1)]
    a, b, c, d = x
    if b == 0 and c == 0 and a == d:
        return [(a, 2)]
    # roots of t^2 - (a+d) t + det
    tr = F.add[a][d]
    det = mat_det(F, x)
    roots = []
    for t in range(F.q):
        t2 = F.mul[t][t]
        val = F.add[F.add[t2][F.neg[F.mul[tr][t]]]][det]
        if val == 0:
            roots.append(t)
    if len(roots) != 2:
        raise ArithmeticError("characteristic polynomial does not split simply")
    return [(roots[0], 1), (roots[1], 1)]


def dimvector_census(p: PresentationData, d: int, q: int):
    """Per-dimension-vector point counts, refining count_hom."""
    _check_supported(p, d, q)
    out = {}
    for mats in _hom_pairs(p, d, q):
        m = dimvector_of_point(p, mats, q)
        out[m] = out.get(m, 0) + 1
    return out


def count_gl1_orbits(p: PresentationData, q: int) -> int:
    """d = 1: conjugation is trivial, orbits are points."""
    return count_hom(p, 1, q)
