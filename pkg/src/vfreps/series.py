"""Truncated graded series over the dimension-vector monoid and the full
counting-polynomial pipeline.

A GradedSeries keeps one exact rational-function coefficient per dimension
vector up to a total-dimension truncation D.  The pipeline is

    F            product-form point counts of representation spaces,
                 divided by the general-linear count, shift applied
    F^-1         inversion in the completed monoid algebra
    inverse shift, plethystic Log, scalar (1-s)   ->  absolutely simple counts
    plethystic Exp of those                       ->  semisimple counts
    Moebius/Adams combination                     ->  simple counts

All reductions iterate keys in the deterministic monoid order, so repeated
runs are bit-identical.  Coefficient values are interned per graph and all
scalar operations are memoized on interned values; dimension vectors with
symmetric data therefore cost one polynomial operation per distinct value,
which is what makes desk-scale truncations (D around 12) fast in exact
arithmetic.

exp and log of series are computed through the graded derivation
recurrence (d * g_d = sum k * l_k * g_{d-k}), which agrees with the
defining power sums truncated at total degree D; the test suite checks the
two against each other on small truncations.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from . import dimmonoid
from .dimmonoid import DimVector, enumerate_dimvectors, shift_exponent, zero_vector
from .exactalg import (
    POLY_ONE,
    Poly,
    RatFunc,
    RF_ONE,
    RF_ZERO,
    gl_count,
    mobius,
)
from .groupgraph import GraphOfGroups


class NonPolynomialCoefficient(ArithmeticError):
    """A pipeline coefficient failed to normalize to an integer polynomial.

    Counting polynomials of valid graph-of-groups data always lie in Z[s],
    so this signals corrupted input data or a pipeline bug; the offending
    value is attached for diagnosis.
    """

    def __init__(self, dimvector, value):
        self.dimvector = dimvector
        self.value = value
        super().__init__(
            f"coefficient at {dimvector} is not an integer polynomial: {value}"
        )


class GradedSeries:
    """Truncated series: dimension vector -> rational function, zero absent."""

    __slots__ = ("graph", "trunc", "coeffs")

    def __init__(self, graph: GraphOfGroups, trunc: int, coeffs=None):
        if trunc < 0:
            raise ValueError("truncation must be nonnegative")
        self.graph = graph
        self.trunc = trunc
        clean = {}
        for m, v in (coeffs or {}).items():
            if m.graph is not graph:
                raise ValueError("coefficient key belongs to a different graph")
            if m.total > trunc:
                raise ValueError(f"key {m} exceeds truncation {trunc}")
            if not v.is_zero():
                clean[m] = v
        self.coeffs = clean

    def coefficient(self, m: DimVector) -> RatFunc:
        return self.coeffs.get(m, RF_ZERO)

    def items_sorted(self):
        return sorted(self.coeffs.items(), key=lambda kv: (kv[0].total, kv[0].per_vertex))

    def __eq__(self, other):
        return (
            isinstance(other, GradedSeries)
            and self.graph is other.graph
            and self.trunc == other.trunc
            and self.coeffs == other.coeffs
        )

    def __repr__(self):
        return f"GradedSeries(D={self.trunc}, {len(self.coeffs)} terms)"


def unit_series(g: GraphOfGroups, trunc: int) -> GradedSeries:
    return GradedSeries(g, trunc, {zero_vector(g): RF_ONE})


# ---------------------------------------------------------------------------
# interned values with memoized arithmetic
# ---------------------------------------------------------------------------

class _Values:
    """Per-graph intern table for RatFunc values.

    Every coefficient flowing through the pipeline is replaced by a unique
    representative; products, scalings, Adams substitutions and whole
    reduction sums are memoized on representative indices.  Symmetric
    dimension vectors share values, so each distinct polynomial operation
    happens once no matter how many keys need it.
    """

    def __init__(self):
        self.rep = {}
        self.index = {}
        self.by_index = []
        self.mul_memo = {}
        self.scale_memo = {}
        self.adams_memo = {}
        self.sum_memo = {}
        self.one = self.intern(RF_ONE)
        self.zero = self.intern(RF_ZERO)

    def intern(self, v: RatFunc) -> RatFunc:
        r = self.rep.get(v)
        if r is None:
            self.rep[v] = v
            self.index[id(v)] = len(self.by_index)
            self.by_index.append(v)
            return v
        return r

    def mul(self, a: RatFunc, b: RatFunc) -> RatFunc:
        ia, ib = self.index[id(a)], self.index[id(b)]
        if ib < ia:
            ia, ib = ib, ia
        key = (ia, ib)
        r = self.mul_memo.get(key)
        if r is None:
            r = self.intern(a * b)
            self.mul_memo[key] = r
        return r

    def scale(self, a: RatFunc, c) -> RatFunc:
        if c == 1:
            return a
        key = (self.index[id(a)], c)
        r = self.scale_memo.get(key)
        if r is None:
            r = self.intern(a.scale(c))
            self.scale_memo[key] = r
        return r

    def adams(self, a: RatFunc, beta: int) -> RatFunc:
        if beta == 1:
            return a
        key = (self.index[id(a)], beta)
        r = self.adams_memo.get(key)
        if r is None:
            r = self.intern(a.adams(beta))
            self.adams_memo[key] = r
        return r

    def reduce(self, counter: dict) -> RatFunc:
        """Sum of value*multiplicity over a {value: multiplicity} dict."""
        items = sorted((self.index[id(v)], mult) for v, mult in counter.items())
        key = tuple(items)
        r = self.sum_memo.get(key)
        if r is not None:
            return r
        by_den = {}
        for idx, mult in items:
            v = self.scale(self.by_index[idx], mult)
            if v.is_zero():
                continue
            prev = by_den.get(v.den)
            by_den[v.den] = v.num if prev is None else prev + v.num
        parts = [RatFunc(num, den) for den, num in by_den.items()]
        acc = RF_ZERO
        for p in parts:
            acc = acc + p
        r = self.intern(acc)
        self.sum_memo[key] = r
        return r


def _values_for(g: GraphOfGroups) -> _Values:
    vals = g._pipeline_cache.get("values")
    if vals is None:
        vals = _Values()
        g._pipeline_cache["values"] = vals
    return vals


def _by_degree(coeffs: dict, vals: _Values):
    """Split {key: value} into degree buckets of sorted (key, interned) lists."""
    out = {}
    for m, v in coeffs.items():
        out.setdefault(m.total, []).append((m, vals.intern(v)))
    for d in out:
        out[d].sort(key=lambda kv: kv[0].per_vertex)
    return out


def _accumulate(acc, items1, items2, vals, weight_by_left_degree=False, d1=0):
    """Add products of two degree buckets into per-key counters."""
    w = d1 if weight_by_left_degree else 1
    for m1, v1 in items1:
        for m2, v2 in items2:
            p = vals.mul(v1, v2)
            if p.num.is_zero():
                continue
            key = m1 + m2
            c = acc.get(key)
            if c is None:
                acc[key] = {p: w}
            else:
                c[p] = c.get(p, 0) + w
    return acc


def _sorted_keys(acc):
    return sorted(acc.keys(), key=lambda m: m.per_vertex)


# ---------------------------------------------------------------------------
# public series operations
# ---------------------------------------------------------------------------

def mul(f: GradedSeries, g: GradedSeries) -> GradedSeries:
    """Convolution product, truncated at the common truncation."""
    if f.graph is not g.graph:
        raise ValueError("series over different graphs")
    if f.trunc != g.trunc:
        raise ValueError("series with different truncations")
    vals = _values_for(f.graph)
    fd = _by_degree(f.coeffs, vals)
    gd = _by_degree(g.coeffs, vals)
    acc = {}
    for d1, items1 in fd.items():
        for d2, items2 in gd.items():
            if d1 + d2 <= f.trunc:
                _accumulate(acc, items1, items2, vals)
    out = {m: vals.reduce(acc[m]) for m in _sorted_keys(acc)}
    return GradedSeries(f.graph, f.trunc, out)


def invert(f: GradedSeries) -> GradedSeries:
    """Multiplicative inverse up to truncation; needs a unit constant term."""
    vals = _values_for(f.graph)
    zero = zero_vector(f.graph)
    f0 = f.coefficient(zero)
    if f0.is_zero():
        raise ValueError("series with zero constant term has no inverse")
    inv0 = vals.intern(RF_ONE / f0)
    neg_inv0 = vals.intern(-(RF_ONE / f0))
    fd = _by_degree(f.coeffs, vals)
    out = {zero: inv0}
    out_by_deg = {0: [(zero, inv0)]}
    for d in range(1, f.trunc + 1):
        acc = {}
        for d1 in range(1, d + 1):
            items1 = fd.get(d1)
            items2 = out_by_deg.get(d - d1)
            if items1 and items2:
                _accumulate(acc, items1, items2, vals)
        bucket = []
        for m in _sorted_keys(acc):
            v = vals.mul(neg_inv0, vals.reduce(acc[m]))
            if not v.is_zero():
                out[m] = v
                bucket.append((m, v))
        out_by_deg[d] = bucket
    return GradedSeries(f.graph, f.trunc, out)


def shift(f: GradedSeries, direction: str, y_func=None) -> GradedSeries:
    """Multiply the coefficient at m by s^(+-shift_exponent(m)).

    "forward" turns the twisted product into the plain one; "inverse"
    undoes it.
    """
    if direction not in ("forward", "inverse"):
        raise ValueError(f"unknown shift direction {direction!r}")
    sign = 1 if direction == "forward" else -1
    vals = _values_for(f.graph)
    out = {}
    for m, v in f.coeffs.items():
        e = sign * shift_exponent(f.graph, m, y_func)
        out[m] = vals.mul(vals.intern(v), vals.intern(RatFunc.s_power(e)))
    return GradedSeries(f.graph, f.trunc, out)


def build_F(g: GraphOfGroups, trunc: int, y_func=None) -> GradedSeries:
    """The generating series of representation-space point counts.

    Coefficient at m: the counting polynomial of the m-component of the
    representation space, assembled edge by edge (vertex factors times
    amalgam corrections, one general-linear factor per HNN loop), divided
    by the general-linear count of the total dimension, with the forward
    shift applied.
    """
    vals = _values_for(g)
    factor_memo = g._pipeline_cache.setdefault("F_factors", {})
    out = {}
    for d in range(trunc + 1):
        for m in enumerate_dimvectors(g, d):
            exps = {}

            def bump(k, e):
                if k >= 1:  # gl_0 is the empty product
                    exps[k] = exps.get(k, 0) + e

            for mv in m.per_vertex:
                bump(d, 1)
                for x in mv:
                    bump(x, -1)
            for j, e in enumerate(g.edges):
                u = m.per_edge[j]
                for x in u:
                    bump(x, 1)
                if e.kind == "amalgam":
                    bump(d, -1)
            bump(d, -1)  # divide by gl_d
            sigma = shift_exponent(g, m, y_func)
            key = (tuple(sorted((k, e) for k, e in exps.items() if e)), sigma)
            v = factor_memo.get(key)
            if v is None:
                num, den = POLY_ONE, POLY_ONE
                for k, e in key[0]:
                    if e > 0:
                        num = num * gl_count(k) ** e
                    else:
                        den = den * gl_count(k) ** (-e)
                if sigma >= 0:
                    num = num.shift_up(sigma)
                else:
                    den = den.shift_up(-sigma)
                v = vals.intern(RatFunc(num, den))
                factor_memo[key] = v
            out[m] = v
    return GradedSeries(g, trunc, out)


def rep_space_count(g: GraphOfGroups, m: DimVector) -> RatFunc:
    """Counting polynomial P_m of one representation-space component."""
    f = build_F(g, m.total)
    sigma = shift_exponent(g, m)
    return f.coefficient(m) * RatFunc.s_power(-sigma) * RatFunc.from_poly(gl_count(m.total))


# ---------------------------------------------------------------------------
# exp / log / plethystic operations
# ---------------------------------------------------------------------------

def _log_recurrence(coeffs, graph, trunc, vals):
    """log of a series with constant term 1, via d*l_d = d*f_d - sum k*l_k*f_{d-k}."""
    fd = _by_degree(coeffs, vals)
    ell = {}
    ell_by_deg = {}
    for d in range(1, trunc + 1):
        acc = {}
        for d1 in range(1, d):
            items1 = ell_by_deg.get(d1)
            items2 = fd.get(d - d1)
            if items1 and items2:
                _accumulate(acc, items1, items2, vals, weight_by_left_degree=True, d1=d1)
        bucket = []
        corr = {m: vals.scale(vals.reduce(c), Fraction(-1, d)) for m, c in acc.items()}
        keys = set(corr)
        keys.update(m for m, _ in fd.get(d, ()))
        direct = dict(fd.get(d, ()))
        for m in sorted(keys, key=lambda m: m.per_vertex):
            v = direct.get(m, vals.zero)
            c = corr.get(m)
            if c is not None and not c.is_zero():
                v = vals.intern(v + c)
            if not v.is_zero():
                ell[m] = v
                bucket.append((m, v))
        ell_by_deg[d] = bucket
    return ell


def _exp_recurrence(coeffs, graph, trunc, vals):
    """exp of a series with constant term 0, via d*g_d = sum k*l_k*g_{d-k}."""
    ld = _by_degree(coeffs, vals)
    zero = zero_vector(graph)
    out = {zero: vals.one}
    out_by_deg = {0: [(zero, vals.one)]}
    for d in range(1, trunc + 1):
        acc = {}
        for d1 in range(1, d + 1):
            items1 = ld.get(d1)
            items2 = out_by_deg.get(d - d1)
            if items1 and items2:
                _accumulate(acc, items1, items2, vals, weight_by_left_degree=True, d1=d1)
        bucket = []
        for m in _sorted_keys(acc):
            v = vals.scale(vals.reduce(acc[m]), Fraction(1, d))
            if not v.is_zero():
                out[m] = v
                bucket.append((m, v))
        out_by_deg[d] = bucket
    return out


def _psi(coeffs, trunc, vals, inverse: bool):
    """Adams-operation sum: Psi or its Moebius inverse."""
    acc = {}
    for m, v in sorted(coeffs.items(), key=lambda kv: (kv[0].total, kv[0].per_vertex)):
        dm = m.total
        if dm == 0:
            raise ValueError("Adams sums need vanishing constant term")
        beta = 1
        while beta * dm <= trunc:
            mu = mobius(beta) if inverse else 1
            if mu:
                w = vals.scale(vals.adams(vals.intern(v), beta), Fraction(mu, beta))
                if not w.is_zero():
                    key = dimmonoid.scale(m, beta)
                    c = acc.setdefault(key, {})
                    c[w] = c.get(w, 0) + 1
            beta += 1
    return {m: vals.reduce(acc[m]) for m in _sorted_keys(acc)}


def plethystic(f: GradedSeries, direction: str) -> GradedSeries:
    """Plethystic Exp (exp after the Adams sum, needs constant term 0) or
    Log (Moebius-inverted Adams sum after log, needs constant term 1)."""
    vals = _values_for(f.graph)
    zero = zero_vector(f.graph)
    d = direction.lower()
    if d == "exp":
        if not f.coefficient(zero).is_zero():
            raise ValueError("plethystic Exp needs constant term 0")
        psi = _psi(f.coeffs, f.trunc, vals, inverse=False)
        out = _exp_recurrence(psi, f.graph, f.trunc, vals)
    elif d == "log":
        if not f.coefficient(zero).is_one():
            raise ValueError("plethystic Log needs constant term 1")
        ell = _log_recurrence(f.coeffs, f.graph, f.trunc, vals)
        out = _psi(ell, f.trunc, vals, inverse=True)
    else:
        raise ValueError(f"unknown plethystic direction {direction!r}")
    return GradedSeries(f.graph, f.trunc, out)


# ---------------------------------------------------------------------------
# the counting pipeline
# ---------------------------------------------------------------------------

def compute_absim(g: GraphOfGroups, trunc: int, y_func=None) -> dict:
    """Counting polynomials of absolutely simple modules per dimension
    vector: (1-s) * Log(unshift(F^-1)), coefficients forced into Z[s].

    Returns {DimVector: Poly} with zero entries absent.  Raises
    NonPolynomialCoefficient if any coefficient fails to normalize.
    """
    cache_key = ("absim", trunc, y_func)
    cached = g._pipeline_cache.get(cache_key)
    if cached is not None:
        return cached
    vals = _values_for(g)
    f = build_F(g, trunc, y_func)
    finv = invert(f)
    unshifted = shift(finv, "inverse", y_func)
    ell = _log_recurrence(unshifted.coeffs, g, trunc, vals)
    series = _psi(ell, trunc, vals, inverse=True)
    one_minus_s = vals.intern(RatFunc.from_poly(Poly((1, -1))))
    out = {}
    for m, v in series.items():
        w = vals.mul(one_minus_s, vals.intern(v))
        if w.is_zero():
            continue
        p = w.as_integer_poly()
        if p is None:
            raise NonPolynomialCoefficient(m, w)
        out[m] = p
    g._pipeline_cache[cache_key] = out
    return out


def compute_ss(g: GraphOfGroups, trunc: int, y_func=None) -> dict:
    """Counting polynomials of semisimple modules per dimension vector:
    plethystic Exp of the absolutely simple series.  The zero vector maps
    to the constant 1 (the zero module)."""
    cache_key = ("ss", trunc, y_func)
    cached = g._pipeline_cache.get(cache_key)
    if cached is not None:
        return cached
    absim = compute_absim(g, trunc, y_func)
    vals = _values_for(g)
    as_series = {m: RatFunc.from_poly(p) for m, p in absim.items()}
    psi = _psi(as_series, trunc, vals, inverse=False)
    series = _exp_recurrence(psi, g, trunc, vals)
    out = {}
    for m, v in series.items():
        p = v.as_integer_poly()
        if p is None:
            raise NonPolynomialCoefficient(m, v)
        if not p.is_zero():
            out[m] = p
    g._pipeline_cache[cache_key] = out
    return out


def compute_sim(g: GraphOfGroups, trunc: int):
    """Counting polynomials of simple modules.

    Returns (per_pair, per_vector): per_pair maps (m, c) with c | m to the
    rational-coefficient polynomial counting simples of dimension vector m
    with endomorphism field of degree c; per_vector sums those over c.
    """
    absim = compute_absim(g, trunc)
    per_pair = {}
    per_vector = {}
    for d in range(1, trunc + 1):
        for m in enumerate_dimvectors(g, d):
            gcd_m, divisors = dimmonoid.gcd_div(m)
            total = Poly(())
            for c in divisors:
                base = dimmonoid.divide(m, c)
                acc = Poly(())
                for gamma in range(1, c + 1):
                    if c % gamma:
                        continue
                    mu = mobius(gamma)
                    if not mu:
                        continue
                    p = absim.get(base)
                    if p is not None:
                        acc = acc + p.subs_power(c // gamma).scale(mu)
                val = acc.scale(Fraction(1, c))
                per_pair[(m, c)] = val
                total = total + val
            if not total.is_zero():
                per_vector[m] = total
    return per_pair, per_vector


def sim_value(per_pair, m: DimVector, c: int) -> Poly:
    """R^sim for (m, c); zero when c does not divide m."""
    return per_pair.get((m, c), Poly(()))


# ---------------------------------------------------------------------------
# counting tables and E-polynomials
# ---------------------------------------------------------------------------

@dataclass
class CountingTable:
    """All counting polynomials of one group up to a truncation."""

    graph: GraphOfGroups
    trunc: int
    absim: dict = field(repr=False)  # DimVector -> Poly (nonzero entries)
    ss: dict = field(repr=False)     # DimVector -> Poly (includes zero vector)
    sim_pairs: dict = field(repr=False)
    sim: dict = field(repr=False)

    def per_vector(self, kind: str) -> dict:
        return {"absim": self.absim, "ss": self.ss, "sim": self.sim}[kind]

    def aggregate(self, kind: str) -> dict:
        """Per total dimension: sum of the per-vector polynomials."""
        table = self.per_vector(kind)
        out = {}
        for m, p in table.items():
            out[m.total] = out.get(m.total, Poly(())) + p
        for d in range(self.trunc + 1):
            if kind == "ss" and d == 0:
                out.setdefault(0, POLY_ONE)
            else:
                out.setdefault(d, Poly(()))
        return dict(sorted(out.items()))


def build_counting_table(g: GraphOfGroups, trunc: int) -> CountingTable:
    absim = compute_absim(g, trunc)
    ss = compute_ss(g, trunc)
    sim_pairs, sim = compute_sim(g, trunc)
    return CountingTable(g, trunc, absim, ss, sim_pairs, sim)


def epoly_text(p: Poly) -> str:
    """E-polynomial as text: the verbatim substitution s -> xy."""
    return _epoly_terms(p)


def epoly_latex(p: Poly) -> str:
    coeffs = p.coefficients()
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if mag.denominator == 1:
            head = "" if (mag == 1 and k > 0) else str(mag)
        else:
            head = rf"\frac{{{mag.numerator}}}{{{mag.denominator}}}"
        if k == 0:
            body = head if head else "1"
        elif k == 1:
            body = (head + " " if head else "") + "xy"
        else:
            body = (head + " " if head else "") + f"(xy)^{{{k}}}"
        out.append((sign, body))
    s0, b0 = out[0]
    text = ("-" if s0 == "-" else "") + b0
    for sign, body in out[1:]:
        text += f" {sign} {body}"
    return text


def _epoly_terms(p: Poly) -> str:
    coeffs = p.coefficients()
    if not coeffs:
        return "0"
    out = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        magtxt = str(mag.numerator) if mag.denominator == 1 else f"{mag.numerator}/{mag.denominator}"
        if k == 0:
            body = magtxt
        else:
            head = "" if mag == 1 else magtxt + "*"
            body = head + ("x*y" if k == 1 else f"(x*y)^{k}")
        out.append((sign, body))
    if not out:
        return "0"
    s0, b0 = out[0]
    text = ("-" if s0 == "-" else "") + b0
    for sign, body in out[1:]:
        text += sign + body
    return text


def epoly_and_euler(table: CountingTable, kind: str = "ss", by: str = "total"):
    """E-polynomial text (substitution s -> xy) and Euler characteristic
    (evaluation at 1) for every table entry."""
    if by == "total":
        entries = table.aggregate(kind)
    else:
        entries = table.per_vector(kind)
    out = {}
    for key, p in entries.items():
        out[key] = (_epoly_terms(p), int(p.eval(1)))
    return out
