import json
import random

import pytest

from qtorus import FieldSpec, get_field, kernel_lattice
from qtorus.errors import MismatchedRing, NotCentral, NotInvertible
from qtorus.series import (
    INF,
    SkewSeries,
    central_coordinates,
    is_central,
    series_add,
    series_invert,
    series_mul,
    series_scale,
)
from qtorus.verify import random_commutation_data, random_scalar, random_series

from conftest import ALL_ANTI, PARTIAL_ANTI, Q_MINUS1, cd_of, rank_two, field_for, normal_order_word, word_of


def xs(cd, F):
    return [SkewSeries.variable(cd, F, i) for i in range(cd.n)]


def product_oracle(cd, F, lf, lg):
    """Expand every term pair into a word and normal-order it letter by letter."""
    out = {}
    for s, c in lf.items():
        for t, d in lg.items():
            u, e = normal_order_word(cd, word_of(s) + word_of(t))
            term = c * d * F.root_power(e)
            out[u] = out[u] + term if u in out else term
    return {u: c for u, c in out.items() if not c.is_zero()}


def random_laurent(rng, cd, F, terms=4, lo=-2, hi=3):
    out = {}
    for _ in range(rng.randint(1, terms)):
        out[tuple(rng.randint(lo, hi) for _ in range(cd.n))] = random_scalar(rng, F)
    return {u: c for u, c in out.items() if not c.is_zero()}


# -- addition and scaling ---------------------------------------------------


def test_add_examples(cd_q):
    F = field_for(cd_q)
    x1, x2 = xs(cd_q, F)
    f = SkewSeries(cd_q, F, {(1, 0): 3, (0, 2): -1}, precision=5)
    assert f + SkewSeries.zero(cd_q, F) == f
    z = f + series_scale(-1, f)
    assert z.is_zero() and z.precision == 5
    assert (x1 + x2) + (x1 - x2) == series_scale(2, x1)


def test_add_precision_is_min_of_aligned(cd_q):
    F = field_for(cd_q)
    f = SkewSeries(cd_q, F, {(0, 0): 1}, shift=(1, 0), precision=4)
    g = SkewSeries(cd_q, F, {(0, 0): 1}, shift=(0, 0), precision=6)
    h = series_add(f, g)
    assert h.shift == (1, 0)
    # g re-aligned to shift (1, 0) has precision 7; f has 4
    assert h.precision == 4
    assert h.abs_precision == 3


def test_mismatched_ring(cd_q, cd_i):
    with pytest.raises(MismatchedRing):
        SkewSeries.one(cd_q, field_for(cd_q)) + SkewSeries.one(cd_i, field_for(cd_i))
    F2 = get_field(FieldSpec("prime", 2, 13))
    with pytest.raises(MismatchedRing):
        SkewSeries.one(cd_q, field_for(cd_q)) * SkewSeries.one(cd_q, F2)


# -- multiplication ---------------------------------------------------------


def test_square_of_x1_plus_x2(cd_q):
    for F in (field_for(cd_q), field_for(cd_q, "prime", 13)):
        x1, x2 = xs(cd_q, F)
        assert (x1 + x2) * (x1 + x2) == x1 * x1 + x2 * x2
        assert ((x1 + x2) * (x1 + x2)).terms == {(2, 0): F.one, (0, 2): F.one}
        assert x1 * x2 + x2 * x1 == SkewSeries.zero(cd_q, F)


def test_mul_unit(cd_i):
    F = field_for(cd_i)
    f = random_series(random.Random(0), cd_i, F)
    one = SkewSeries.one(cd_i, F)
    assert f * one == f and one * f == f


def test_cube_word_example(cd_i):
    F = field_for(cd_i)
    x1, x2, x3 = xs(cd_i, F)
    m = x1 * x2 * x3
    u, e = normal_order_word(cd_i, word_of((1, 1, 1)) * 2)
    assert (u, e) == ((2, 2, 2), 1)
    assert m * m == SkewSeries(cd_i, F, {(2, 2, 2): -1})


@pytest.mark.parametrize("seed", range(6))
def test_mul_matches_word_oracle(seed):
    rng = random.Random(seed)
    for _ in range(15):
        cd = random_commutation_data(rng, 3, 6)
        F = field_for(cd)
        lf, lg = random_laurent(rng, cd, F), random_laurent(rng, cd, F)
        f = SkewSeries.from_laurent(cd, F, lf)
        g = SkewSeries.from_laurent(cd, F, lg)
        assert series_mul(f, g).laurent() == product_oracle(cd, F, lf, lg)


def test_shifted_storage_round_trip():
    rng = random.Random(5)
    for _ in range(50):
        cd = random_commutation_data(rng, 3, 8)
        F = field_for(cd)
        lf = random_laurent(rng, cd, F)
        f = SkewSeries.from_laurent(cd, F, lf)
        assert f.laurent() == lf
        assert all(x >= 0 for s in f.terms for x in s)
        # stored x^(-v) x^s must normal-order to the Laurent term
        for s, c in f.terms.items():
            u, e = normal_order_word(cd, word_of(tuple(-x for x in f.shift)) + word_of(s))
            assert lf[u] == c * F.root_power(e)


def test_monomial_commutation_law():
    rng = random.Random(17)
    from qtorus.commutation import sigma_exponent

    for _ in range(200):
        cd = random_commutation_data(rng, 4, 9)
        F = field_for(cd)
        s = tuple(rng.randint(-4, 4) for _ in range(cd.n))
        t = tuple(rng.randint(-4, 4) for _ in range(cd.n))
        a, b = SkewSeries.monomial(cd, F, s), SkewSeries.monomial(cd, F, t)
        assert a * b == series_scale(F.root_power(sigma_exponent(cd, s, t)), b * a)


def test_associativity_distributivity_with_shifts():
    rng = random.Random(23)
    for _ in range(60):
        cd = random_commutation_data(rng, 3, 6)
        F = field_for(cd)
        f, g, h = (random_series(rng, cd, F) for _ in range(3))
        m = SkewSeries.monomial(cd, F, tuple(rng.randint(-2, 0) for _ in range(cd.n)))
        f = m * f
        assert (f * g) * h == f * (g * h)
        assert f * (g + h) == f * g + f * h
        assert (g + h) * f == g * f + h * f


def test_truncation_consistency():
    rng = random.Random(31)
    for _ in range(80):
        cd = random_commutation_data(rng, 3, 6)
        F = field_for(cd)
        f = random_series(rng, cd, F, precision=INF, max_degree=6)
        g = random_series(rng, cd, F, precision=INF, max_degree=6)
        a, b = rng.randint(1, 7), rng.randint(1, 7)
        lhs = f.truncate(a) * g.truncate(b)
        assert lhs == (f * g).truncate(min(a, b))
        assert lhs.precision == min(a, b)


def test_product_precision_is_min(cd_q):
    F = field_for(cd_q)
    f = SkewSeries(cd_q, F, {(0, 0): 1, (1, 0): 1}, precision=3)
    g = SkewSeries(cd_q, F, {(0, 0): 1, (0, 1): 2}, precision=5)
    assert (f * g).precision == 3
    zero = SkewSeries.zero(cd_q, F, precision=4)
    assert (zero * g).precision == 4 and (zero * g).is_zero()


def test_power(cd_q):
    F = field_for(cd_q)
    x1, x2 = xs(cd_q, F)
    assert (x1 + x2) ** 2 == x1 * x1 + x2 * x2
    assert (x1 + x2) ** 0 == SkewSeries.one(cd_q, F)


# -- inversion --------------------------------------------------------------


def test_invert_geometric(cd_q):
    F = field_for(cd_q)
    x1, _ = xs(cd_q, F)
    one = SkewSeries.one(cd_q, F)
    g = series_invert(one - x1, 5)
    assert g == SkewSeries(cd_q, F, {(k, 0): 1 for k in range(5)}, precision=5)


def test_invert_constant():
    cd = cd_of(*rank_two(5))
    F = field_for(cd)
    c = F.from_coords([2, 1])
    g = series_invert(SkewSeries(cd, F, {(0, 0): c}), 4)
    assert g.terms == {(0, 0): c.inverse()}


def test_invert_one_plus_x1_plus_x2(cd_q):
    F = field_for(cd_q)
    x1, x2 = xs(cd_q, F)
    f = SkewSeries.one(cd_q, F) + x1 + x2
    g = series_invert(f, 3)
    # multiply back with the word oracle: everything below degree 3 except 1 vanishes
    prod = product_oracle(cd_q, F, f.laurent(), g.laurent())
    low = {u: c for u, c in prod.items() if sum(u) < 3}
    assert low == {(0, 0): F.one}
    assert f * g == SkewSeries.one(cd_q, F, 3) == g * f


def test_invert_laurent_monomial_times_unit():
    rng = random.Random(41)
    for _ in range(40):
        cd = random_commutation_data(rng, 3, 6)
        F = field_for(cd)
        u = random_series(rng, cd, F, precision=INF, unit=True)
        v = tuple(rng.randint(-3, 3) for _ in range(cd.n))
        f = SkewSeries.monomial(cd, F, v) * u
        # leave room for the shift bookkeeping in the product bound
        target = 5 + 2 * sum(abs(x) for x in v) + sum(f.shift)
        g = series_invert(f, target)
        for one in (f * g, g * f):
            assert one.abs_precision >= 5
            assert one.laurent() == {(0,) * cd.n: F.one}


def test_invert_units_both_sides():
    rng = random.Random(43)
    for _ in range(50):
        cd = random_commutation_data(rng, 3, 8)
        F = field_for(cd)
        f = random_series(rng, cd, F, unit=True, precision=6)
        g = series_invert(f, 6)
        one = SkewSeries.one(cd, F, 6)
        assert f * g == one and g * f == one


def test_invert_errors(cd_q):
    F = field_for(cd_q)
    x1, x2 = xs(cd_q, F)
    with pytest.raises(NotInvertible):
        series_invert(x1 + x2, 4)
    with pytest.raises(NotInvertible):
        series_invert(SkewSeries.zero(cd_q, F), 4)
    with pytest.raises(ValueError):
        series_invert(SkewSeries.one(cd_q, F), 0)


# -- centrality ---------------------------------------------------------------


def test_is_central_examples(cd_i, cd_ii):
    for args in (ALL_ANTI, Q_MINUS1, rank_two(3), rank_two(6)):
        cd = cd_of(*args)
        F = field_for(cd)
        assert is_central(SkewSeries.monomial(cd, F, (cd.ell,) + (0,) * (cd.n - 1)))
    assert not is_central(xs(cd_i, field_for(cd_i))[0])
    F = field_for(cd_ii)
    assert is_central(SkewSeries.monomial(cd_ii, F, (0, 1, 1)))


def test_central_series_commute():
    rng = random.Random(53)
    for _ in range(30):
        cd = random_commutation_data(rng, 3, 6)
        F = field_for(cd)
        basis = kernel_lattice(cd)
        f = SkewSeries.zero(cd, F)
        for _ in range(3):
            m = [rng.randint(-1, 2) for _ in range(cd.n)]
            s = [sum(mi * b[j] for mi, b in zip(m, basis.rows)) for j in range(cd.n)]
            f = f + SkewSeries.monomial(cd, F, s, random_scalar(rng, F))
        assert is_central(f)
        for _ in range(50):
            g = random_series(rng, cd, F, precision=INF)
            assert f * g == g * f


def test_central_coordinates_examples(cd_q, cd_i):
    from qtorus.lattice import LatticeBasis

    basis = kernel_lattice(cd_q)
    assert central_coordinates(cd_q, (2, 2), basis) == ((1, 1), 0)
    assert central_coordinates(cd_q, basis.rows[1], basis) == ((0, 1), 0)
    bi = kernel_lattice(cd_i)
    assert bi.rows[0] == (1, 1, 1)
    assert central_coordinates(cd_i, (2, 2, 2), bi) == ((2, 0, 0), 1)
    with pytest.raises(NotCentral):
        central_coordinates(cd_i, (1, 0, 0), bi)


def test_central_coordinates_round_trip():
    rng = random.Random(59)
    for _ in range(60):
        cd = random_commutation_data(rng, 4, 8)
        F = field_for(cd)
        basis = kernel_lattice(cd)
        m = [rng.randint(-3, 3) for _ in range(cd.n)]
        s = tuple(sum(mi * b[j] for mi, b in zip(m, basis.rows)) for j in range(cd.n))
        coords, gamma = central_coordinates(cd, s, basis)
        assert list(coords) == m
        z = SkewSeries.one(cd, F)
        for mi, b in zip(coords, basis.rows):
            zb = SkewSeries.monomial(cd, F, b)
            power = series_invert(zb, 200) if mi < 0 else zb
            for _ in range(abs(mi)):
                z = z * power
        # exact monomials: compare the single Laurent coefficient
        lhs = SkewSeries.monomial(cd, F, s).laurent()
        rhs = series_scale(F.root_power(gamma), z).laurent()
        assert lhs == rhs


# -- serialization ------------------------------------------------------------


def test_json_round_trip():
    rng = random.Random(61)
    for kind in ("cyclotomic", "prime"):
        for _ in range(20):
            cd = random_commutation_data(rng, 3, 6)
            # F_61 has every root of unity of order dividing 60
            F = field_for(cd, "prime", 61) if kind == "prime" and 60 % cd.ell == 0 else field_for(cd)
            f = random_series(rng, cd, F) * SkewSeries.monomial(cd, F, (-1,) * cd.n)
            text = json.dumps(f.to_json_obj(), sort_keys=True)
            g = SkewSeries.from_json_obj(cd, F, json.loads(text))
            assert g == f and g.shift == f.shift and g.precision == f.precision
            assert json.dumps(g.to_json_obj(), sort_keys=True) == text


def test_json_format(cd_q):
    F = field_for(cd_q)
    x1, x2 = xs(cd_q, F)
    obj = ((x1 + x2) * (x1 + x2)).to_json_obj()
    assert obj == {
        "shift": [0, 0],
        "precision": "inf",
        "terms": [{"exp": [2, 0], "coeff": ["1"]}, {"exp": [0, 2], "coeff": ["1"]}],
    }


def test_terms_sorted_graded_lex(cd_i):
    F = field_for(cd_i)
    f = SkewSeries(cd_i, F, {(0, 0, 2): 1, (1, 0, 0): 1, (0, 1, 1): 1, (0, 0, 0): 1, (2, 0, 0): 1})
    assert list(f.terms) == [(0, 0, 0), (1, 0, 0), (2, 0, 0), (0, 1, 1), (0, 0, 2)]


def test_invariants_enforced(cd_q):
    F = field_for(cd_q)
    with pytest.raises(ValueError):
        SkewSeries(cd_q, F, {(-1, 0): 1})
    f = SkewSeries(cd_q, F, {(0, 0): 0, (3, 0): 1, (1, 0): 2}, precision=3)
    assert f.terms == {(1, 0): F.from_int(2)}
    with pytest.raises(AttributeError):
        f.precision = 4
