import random
from fractions import Fraction

import pytest

from vfreps.dimmonoid import (
    correction_y,
    dimvector,
    enumerate_dimvectors,
    euler_form,
    parse_dimvector,
    shift_exponent,
    symmetry_descriptor,
    symmetry_orbits,
    try_sub,
    zero_vector,
)
from vfreps.exactalg import POLY_ONE, Poly, RatFunc, S, gl_count, mobius
from vfreps.groupgraph import is_suitable_prime_power, preset
from vfreps.series import (
    GradedSeries,
    build_F,
    compute_absim,
    compute_sim,
    compute_ss,
    epoly_text,
    invert,
    mul,
    plethystic,
    rep_space_count,
    shift,
    unit_series,
)


def poly(text_coeffs):
    return Poly.from_coeffs(text_coeffs)


def aggregate(table):
    out = {}
    for m, p in table.items():
        out[m.total] = out.get(m.total, Poly(())) + p
    return out


# ---------------------------------------------------------------------------
# reference implementations (independent of the production recurrences)
# ---------------------------------------------------------------------------

def reference_log(f: GradedSeries) -> GradedSeries:
    """log(1+h) = sum (-1)^(b+1) h^b / b, truncated at b <= D."""
    g = f.graph
    one = unit_series(g, f.trunc)
    h = GradedSeries(g, f.trunc, {m: v for m, v in f.coeffs.items() if m.total > 0})
    acc = GradedSeries(g, f.trunc, {})
    power = one
    for b in range(1, f.trunc + 1):
        power = mul(power, h)
        sign = Fraction((-1) ** (b + 1), b)
        terms = dict(acc.coeffs)
        for m, v in power.coeffs.items():
            terms[m] = terms.get(m, RatFunc(Poly(()))) + v.scale(sign)
        acc = GradedSeries(g, f.trunc, terms)
    return acc


def reference_exp(f: GradedSeries) -> GradedSeries:
    g = f.graph
    acc = unit_series(g, f.trunc)
    power = unit_series(g, f.trunc)
    fact = 1
    for b in range(1, f.trunc + 1):
        power = mul(power, f)
        fact *= b
        terms = dict(acc.coeffs)
        for m, v in power.coeffs.items():
            terms[m] = terms.get(m, RatFunc(Poly(()))) + v.scale(Fraction(1, fact))
        acc = GradedSeries(g, f.trunc, terms)
    return acc


def reference_psi(f: GradedSeries, inverse: bool) -> GradedSeries:
    from vfreps.dimmonoid import scale as dv_scale

    g = f.graph
    terms = {}
    for m, v in f.coeffs.items():
        beta = 1
        while beta * m.total <= f.trunc:
            mu = mobius(beta) if inverse else 1
            if mu:
                key = dv_scale(m, beta)
                add = v.adams(beta).scale(Fraction(mu, beta))
                terms[key] = terms.get(key, RatFunc(Poly(()))) + add
            beta += 1
    return GradedSeries(g, f.trunc, terms)


def reference_plethystic(f: GradedSeries, direction: str) -> GradedSeries:
    if direction == "exp":
        return reference_exp(reference_psi(f, inverse=False))
    return reference_psi(reference_log(f), inverse=True)


def random_sparse_series(g, trunc, rng, with_unit_constant):
    """A handful of nonzero coefficients with small polynomial or simple
    rational-function values."""
    pool = [m for d in range(1, trunc + 1) for m in enumerate_dimvectors(g, d)]
    coeffs = {}
    for m in rng.sample(pool, k=min(len(pool), rng.randint(2, 5))):
        if rng.random() < 0.7:
            coeffs[m] = RatFunc(poly([rng.randint(-3, 3) for _ in range(rng.randint(1, 3))]))
        else:
            coeffs[m] = RatFunc(POLY_ONE, S - Poly.const(rng.randint(2, 4)))
    if with_unit_constant:
        coeffs[zero_vector(g)] = RatFunc(POLY_ONE)
    return GradedSeries(g, trunc, coeffs)


# ---------------------------------------------------------------------------
# multiplication
# ---------------------------------------------------------------------------

def test_mul_unit():
    g = preset("psl2z")
    f = build_F(g, 3)
    assert mul(f, unit_series(g, 3)) == f


def test_mul_difference_of_powers():
    g = preset("psl2z")
    a = parse_dimvector(g, "((1,0),(1,0,0))")
    one = RatFunc(POLY_ONE)
    plus = GradedSeries(g, 2, {zero_vector(g): one, a: one})
    minus = GradedSeries(g, 2, {zero_vector(g): one, a: -one})
    prod = mul(plus, minus)
    two_a = parse_dimvector(g, "((2,0),(2,0,0))")
    assert prod.coeffs == {zero_vector(g): one, two_a: -one}


def test_mul_support_matches_pair_enumeration():
    g = preset("psl2z")
    f = build_F(g, 4)
    target = parse_dimvector(g, "((2,1),(1,1,1))")
    expected = RatFunc(Poly(()))
    pairs = 0
    for d1 in range(target.total + 1):
        for m1 in enumerate_dimvectors(g, d1):
            m2 = try_sub(target, m1)
            if m2 is not None:
                expected = expected + f.coefficient(m1) * f.coefficient(m2)
                pairs += 1
    assert pairs > 1
    assert mul(f, f).coefficient(target) == expected


def test_mul_mismatch_errors():
    g, g2 = preset("psl2z"), preset("dinf")
    with pytest.raises(ValueError):
        mul(build_F(g, 2), build_F(g2, 2))
    with pytest.raises(ValueError):
        mul(build_F(g, 2), build_F(g, 3))


# ---------------------------------------------------------------------------
# inversion
# ---------------------------------------------------------------------------

def test_invert_unit():
    g = preset("psl2z")
    assert invert(unit_series(g, 3)) == unit_series(g, 3)


def test_invert_geometric_series():
    g = preset("psl2z")
    a = parse_dimvector(g, "((1,0),(1,0,0))")
    one = RatFunc(POLY_ONE)
    f = GradedSeries(g, 4, {zero_vector(g): one, a: -one})
    inv = invert(f)
    from vfreps.dimmonoid import scale as dv_scale

    expected = {dv_scale(a, k): one for k in range(5)}
    assert inv.coeffs == expected


def test_invert_times_self_is_unit():
    g = preset("psl2z")
    f = build_F(g, 6)
    assert mul(f, invert(f)) == unit_series(g, 6)


def test_invert_requires_unit():
    g = preset("psl2z")
    with pytest.raises(ValueError):
        invert(GradedSeries(g, 2, {}))


# ---------------------------------------------------------------------------
# shift
# ---------------------------------------------------------------------------

def test_shift_examples():
    g = preset("psl2z")
    u = unit_series(g, 2)
    assert shift(u, "forward") == u
    f = build_F(g, 3)
    m = parse_dimvector(g, "((1,1),(1,1,0))")
    assert shift_exponent(g, m) == -1
    unshifted = shift(f, "inverse")
    assert f.coefficient(m) == unshifted.coefficient(m) * RatFunc.s_power(-1)
    assert shift(shift(f, "forward"), "inverse") == f
    with pytest.raises(ValueError):
        shift(f, "sideways")


# ---------------------------------------------------------------------------
# the generating series F
# ---------------------------------------------------------------------------

def test_build_F_coefficients():
    g = preset("psl2z")
    f = build_F(g, 2)
    assert f.coefficient(zero_vector(g)).is_one()
    m = parse_dimvector(g, "((1,1),(1,1,0))")
    # s^(-1) * gl2^2/(s-1)^4 / gl2 simplifies to (s+1)/(s-1)^2
    assert f.coefficient(m) == RatFunc(S + POLY_ONE, (S - POLY_ONE) ** 2)
    # and the representation-space count itself is s^2 (s+1)^2
    assert rep_space_count(g, m) == RatFunc((S * (S + POLY_ONE)) ** 2)


def test_build_F_free_group():
    for a in (1, 2, 3):
        g = preset(f"free({a})")
        f = build_F(g, 4)
        for d in range(1, 5):
            m = dimvector(g, ((d,),))
            e = ((1 - a) * d * d - (1 - a) * d) // 2
            expected = RatFunc.s_power(e) * RatFunc(gl_count(d)) ** (a - 1)
            assert f.coefficient(m) == expected
            assert rep_space_count(g, m) == RatFunc(gl_count(d)) ** a


def test_rep_space_denominators_clear_of_suitable_values():
    # the rational functions P_m / gl never degenerate at suitable q <= 13
    for name in ["psl2z", "sl2z", "dinf", "gc(2)", "gl2z", "pgl2z", "free(2)"]:
        g = preset(name)
        f = build_F(g, 4)
        qs = [q for q in range(2, 14) if is_prime_power_safe(q) and is_suitable_prime_power(g, q)]
        for m, v in f.coeffs.items():
            for q in qs:
                assert v.den.eval(q) != 0


def is_prime_power_safe(q):
    from vfreps.exactalg import is_prime_power

    return is_prime_power(q)


# ---------------------------------------------------------------------------
# plethystic operations
# ---------------------------------------------------------------------------

def test_plethystic_trivial_values():
    g = preset("psl2z")
    zero = GradedSeries(g, 3, {})
    assert plethystic(zero, "exp") == unit_series(g, 3)
    assert plethystic(unit_series(g, 3), "log") == zero


def test_plethystic_preconditions():
    g = preset("psl2z")
    with pytest.raises(ValueError):
        plethystic(unit_series(g, 2), "exp")
    with pytest.raises(ValueError):
        plethystic(GradedSeries(g, 2, {}), "log")
    with pytest.raises(ValueError):
        plethystic(unit_series(g, 2), "sideways")


def test_exp_of_geometric_coefficient_is_product_expansion():
    # Exp(t^m / (1 - s^c)) has coefficient prod_{b=1..k} (1 - s^(c b))^(-1)
    # at k.m; checked here for c = 1, 2 at small k (the acceptance suite
    # extends the range).
    g = preset("cyclic(1)")
    m = dimvector(g, ((1,),))
    from vfreps.dimmonoid import scale as dv_scale

    for c in (1, 2):
        geo = RatFunc(POLY_ONE, POLY_ONE - Poly.monomial(c))
        f = GradedSeries(g, 3, {m: geo})
        e = plethystic(f, "exp")
        for k in range(4):
            expected = RatFunc(POLY_ONE)
            for b in range(1, k + 1):
                expected = expected / RatFunc(POLY_ONE - Poly.monomial(c * b))
            assert e.coefficient(dv_scale(m, k)) == expected


def test_plethystic_round_trips_small():
    rng = random.Random(23)
    g = preset("psl2z")
    for _ in range(6):
        f = random_sparse_series(g, 5, rng, with_unit_constant=False)
        assert plethystic(plethystic(f, "exp"), "log") == f
        h = random_sparse_series(g, 5, rng, with_unit_constant=True)
        assert plethystic(plethystic(h, "log"), "exp") == h


def test_recurrences_match_reference_power_sums():
    rng = random.Random(5)
    for name in ("psl2z", "dinf"):
        g = preset(name)
        for _ in range(4):
            f = random_sparse_series(g, 4, rng, with_unit_constant=False)
            assert plethystic(f, "exp") == reference_plethystic(f, "exp")
            h = random_sparse_series(g, 4, rng, with_unit_constant=True)
            assert plethystic(h, "log") == reference_plethystic(h, "log")


# ---------------------------------------------------------------------------
# the counting pipeline
# ---------------------------------------------------------------------------

def test_absim_published_values():
    g = preset("psl2z")
    absim = compute_absim(g, 6)
    assert absim[parse_dimvector(g, "((1,1),(1,1,0))")].text() == "s-2"
    assert absim[parse_dimvector(g, "((2,2),(1,2,1))")].text() == "s^3-3*s^2+5*s-4"
    assert (
        absim[parse_dimvector(g, "((3,3),(2,2,2))")].text()
        == "s^7+3*s^6-10*s^5+3*s^4+14*s^3-27*s^2+35*s-23"
    )
    # entries absent from the published nonzero table really vanish
    assert parse_dimvector(g, "((2,0),(1,1,0))") not in absim


def test_ss_published_values():
    assert aggregate(compute_ss(preset("psl2z"), 2))[2].text() == "3*s+15"
    assert aggregate(compute_ss(preset("gl2z"), 4))[4].text() == "3*s^2+26*s+56"
    assert aggregate(compute_ss(preset("pgl2z"), 2))[2].text() == "14"


def test_ss_equals_exp_of_absim_series():
    g = preset("psl2z")
    D = 5
    absim = compute_absim(g, D)
    ss = compute_ss(g, D)
    f = GradedSeries(g, D, {m: RatFunc(p) for m, p in absim.items()})
    e = plethystic(f, "exp")
    assert {m: v.as_integer_poly() for m, v in e.coeffs.items()} == ss


def test_sim_corollary_values():
    g = preset("psl2z")
    pairs, per_m = compute_sim(g, 4)
    m = parse_dimvector(g, "((2,2),(2,2,0))")
    assert pairs[(m, 2)].text() == "1/2*s^2-1/2*s"
    assert pairs[(m, 1)].is_zero()
    assert per_m[m].text() == "1/2*s^2-1/2*s"
    # gcd 1 forces R^sim = R^absim
    absim = compute_absim(g, 4)
    n = parse_dimvector(g, "((2,1),(1,1,1))")
    assert per_m[n] == absim[n]
    # c does not divide m -> no stored entry, value zero
    assert (n, 2) not in pairs


def test_degree_law_small():
    # R^ss is always monic; when the absolutely simple count is nonzero the
    # moduli space has dimension 1 - <m,m> and both polynomials are monic of
    # that degree (with vanishing absim the moduli space is smaller and only
    # monicity survives)
    for name in ("psl2z", "gc(2)"):
        g = preset(name)
        D = 4
        absim = compute_absim(g, D)
        ss = compute_ss(g, D)
        for d in range(1, D + 1):
            for m in enumerate_dimvectors(g, d):
                want = 1 - euler_form(g, m, m)
                p = ss[m]
                assert p.leading() == 1
                if m in absim:
                    q = absim[m]
                    assert q.degree == want and q.leading() == 1
                    assert p.degree == want


def test_symmetry_law_small():
    g = preset("psl2z")
    D = 4
    absim = compute_absim(g, D)
    ss = compute_ss(g, D)
    desc = symmetry_descriptor(g)
    for d in range(1, D + 1):
        for orbit in symmetry_orbits(g, desc, d):
            vals_a = {absim.get(m, Poly(())) for m in orbit}
            vals_s = {ss[m] for m in orbit}
            assert len(vals_a) == 1 and len(vals_s) == 1


def test_correction_choice_does_not_matter_small():
    def alt_y(g, m):
        return correction_y(g, m) + 2 * sum(v[0] for v in m.per_vertex)

    g = preset("psl2z")
    assert compute_absim(g, 4) == compute_absim(g, 4, y_func=alt_y)
    assert compute_ss(g, 4) == compute_ss(g, 4, y_func=alt_y)


def test_extended_dihedral_closed_form_small():
    # one-dimensional vectors count 1; the single-block doubled vector
    # counts s-2; everything else vanishes
    for c in (1, 2):
        g = preset(f"gc({c})")
        absim = compute_absim(g, 3)
        for d in range(1, 4):
            for m in enumerate_dimvectors(g, d):
                got = absim.get(m, Poly(()))
                if d == 1:
                    assert got == POLY_ONE
                else:
                    blocks0 = _gc_blocks(m.per_vertex[0], c)
                    blocks1 = _gc_blocks(m.per_vertex[1], c)
                    is_block = any(
                        blocks0[gamma] == (1, 1) and blocks1[gamma] == (1, 1)
                        and all(blocks0[d2] == (0, 0) and blocks1[d2] == (0, 0)
                                for d2 in range(c) if d2 != gamma)
                        for gamma in range(c)
                    )
                    if is_block:
                        assert got.text() == "s-2"
                    else:
                        assert got.is_zero()


def _gc_blocks(vec, c):
    return [(vec[gamma], vec[gamma + c]) for gamma in range(c)]


def test_single_block_reduction_for_cyclic_amalgams():
    # nonzero absolutely-simple counts of C4 *_C2 C6 live on one congruence
    # block and there equal the C2 * C3 value
    gs = preset("sl2z")
    gp = preset("psl2z")
    absim_s = compute_absim(gs, 4)
    absim_p = compute_absim(gp, 4)
    for d in range(1, 5):
        for m in enumerate_dimvectors(gs, d):
            got = absim_s.get(m, Poly(()))
            blocks = _sl2z_to_blocks(m)
            support = [gamma for gamma, b in enumerate(blocks) if any(b[0]) or any(b[1])]
            if len(support) == 1:
                proj = blocks[support[0]]
                expected = absim_p.get(dimvector(gp, _pad_psl2z(proj)), Poly(()))
                assert got == expected
            else:
                assert got.is_zero()


def _sl2z_to_blocks(m):
    c4, c6 = m.per_vertex
    return [
        ((c4[gamma], c4[gamma + 2]), (c6[gamma], c6[gamma + 2], c6[gamma + 4]))
        for gamma in range(2)
    ]


def _pad_psl2z(block):
    return (block[0], block[1])


@pytest.mark.parametrize("name", ["cyclic(4)", "dihedral(6)"])
def test_finite_group_closed_form(name):
    # a single finite vertex group: every dimension vector carries exactly
    # one semisimple class, and the absolutely simple ones are the unit
    # vectors (the simple modules themselves)
    g = preset(name)
    absim = compute_absim(g, 4)
    ss = compute_ss(g, 4)
    for d in range(1, 5):
        for m in enumerate_dimvectors(g, d):
            is_unit = sum(sum(v) for v in m.per_vertex) == 1
            assert ss[m].is_one()
            assert absim.get(m, Poly(())) == (POLY_ONE if is_unit else Poly(()))


def test_symmetry_law_for_unequal_block_sizes():
    g = preset("cyclic_amalgam(2,2,4)")
    desc = symmetry_descriptor(g)
    absim = compute_absim(g, 4)
    ss = compute_ss(g, 4)
    for d in range(1, 5):
        for orbit in symmetry_orbits(g, desc, d):
            assert len({absim.get(m, Poly(())) for m in orbit}) == 1
            assert len({ss[m] for m in orbit}) == 1


def test_epoly_examples():
    p = Poly.from_coeffs([-2, 1])
    assert epoly_text(p) == "x*y-2"
    assert p.eval(1) == -1
    assert epoly_text(Poly.const(6)) == "6"
    q = Poly.from_coeffs([15, 3])
    assert epoly_text(q) == "3*x*y+15"
    assert Poly.from_coeffs([-4, 5, -3, 1]).eval(1) == -1


def test_ss_dimension_one_matches_oracle_counts():
    from vfreps import fforacle

    g = preset("psl2z")
    ss = compute_ss(g, 1)
    for q in (7, 13):
        total = sum(int(p.eval(q)) for m, p in ss.items() if m.total == 1)
        assert total == fforacle.count_gl1_orbits(fforacle.presentation("psl2z"), q)


def _absim_orbits_by_enumeration(q, generator_sets):
    """Matrix brute force for arbitrary generator tuples (d = 2)."""
    from itertools import product as iproduct

    from vfreps.fforacle import commutant_dimension, invariant_lines

    points = 0
    for mats in iproduct(*generator_sets):
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
    orbit = gl2 // (q - 1)
    assert points % orbit == 0
    return points // orbit


def test_three_vertex_tree_and_cross_vertex_loop():
    # topologies not covered by the presets: a three-vertex amalgam tree
    # (C2 * C2 * C2) and an extra HNN edge joining distinct vertices
    # (C2 * C2 * Z); both checked against matrix brute force at q = 5
    from vfreps.fforacle import power_solutions
    from vfreps.groupgraph import (
        Edge,
        GraphOfGroups,
        RestrictionMap,
        TRIVIAL_GROUP,
        cyclic_group,
        validate,
    )

    c2 = cyclic_group(2)
    to_triv = RestrictionMap(((1, 1),))
    chain = GraphOfGroups("c2_chain", [c2, c2, c2], [
        Edge(TRIVIAL_GROUP, 0, 1, to_triv, to_triv, "amalgam"),
        Edge(TRIVIAL_GROUP, 0, 2, to_triv, to_triv, "amalgam"),
    ])
    mixed = GraphOfGroups("c2_c2_z", [c2, c2], [
        Edge(TRIVIAL_GROUP, 0, 1, to_triv, to_triv, "amalgam"),
        Edge(TRIVIAL_GROUP, 0, 1, to_triv, to_triv, "hnn"),
    ])
    assert validate(chain) == [] and validate(mixed) == []

    q = 5
    invol = power_solutions(q, 2, 2)
    units = power_solutions(q, 2, None)

    absim = compute_absim(chain, 2)
    assert aggregate(absim)[1] == Poly.const(8)
    got = sum(int(p.eval(q)) for m, p in absim.items() if m.total == 2)
    assert got == _absim_orbits_by_enumeration(q, [invol, invol, invol])

    absim = compute_absim(mixed, 2)
    assert aggregate(absim)[1].text() == "4*s-4"
    got = sum(int(p.eval(q)) for m, p in absim.items() if m.total == 2)
    assert got == _absim_orbits_by_enumeration(q, [invol, invol, units])
