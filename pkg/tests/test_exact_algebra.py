import random
from fractions import Fraction

import pytest

from amzeta.errors import NotDivisibleError, PreconditionError
from amzeta.exact_algebra import (
    BiRational,
    LaurentPoly,
    MultiSeries,
    RationalUni,
    exact_div,
    palindromic_check,
    poly_arith,
    series_div,
    series_mul,
)


def L(coeffs, var="L"):
    return LaurentPoly(var, coeffs)


# ---------------------------------------------------------------------------
# Laurent polynomials
# ---------------------------------------------------------------------------

def test_poly_arith_examples():
    lm1 = L({1: 1, 0: -1})
    lp1 = L({1: 1, 0: 1})
    assert poly_arith(lm1, lp1, "mul") == L({2: 1, 0: -1})
    assert poly_arith(L({-1: 1, 0: 1}), L({-1: -1}), "add") == L({0: 1})
    q = L({2: 1, 1: 4, 0: 1}, "q")
    assert poly_arith(q, LaurentPoly.one("q"), "mul") == q


def test_var_mismatch_rejected():
    with pytest.raises(PreconditionError):
        L({0: 1}, "L") + L({0: 1}, "q")


def test_exact_div_examples():
    lm1 = L({1: 1, 0: -1})
    assert exact_div(L({3: 1, 0: -1}), lm1) == L({2: 1, 1: 1, 0: 1})
    with pytest.raises(NotDivisibleError):
        exact_div(L({2: 1, 0: -1}), L({1: 1, 0: 2}))
    assert exact_div(L({3: 1, 1: -1}, "q"), L({1: 1}, "q")) == L({2: 1, 0: -1}, "q")


def rand_poly(rng, var="L", span=3):
    return LaurentPoly(var, {e: rng.randint(-4, 4)
                             for e in range(-span, span + 1)
                             if rng.random() < 0.5})


def test_ring_axioms_random():
    rng = random.Random(7)
    for _ in range(60):
        a, b, c = (rand_poly(rng) for _ in range(3))
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)
        assert a * (b + c) == a * b + a * c
        assert a * b == b * a


def test_exact_div_roundtrip_random():
    rng = random.Random(11)
    for _ in range(60):
        a, b = rand_poly(rng), rand_poly(rng)
        if b.is_zero():
            continue
        assert exact_div(a * b, b) == a


def test_palindromic_check():
    assert palindromic_check(L({2: 1, 1: 4, 0: 1}, "q")) == (True, 2)
    assert palindromic_check(L({3: 1, 2: 11, 1: 11, 0: 1}, "q")) == (True, 3)
    assert palindromic_check(L({2: 1, 1: 1}, "q")) == (False, 2)
    with pytest.raises(PreconditionError):
        palindromic_check(L({}, "q"))
    with pytest.raises(PreconditionError):
        palindromic_check(L({-1: 1, 0: 1}, "q"))


def test_evaluate_and_reverse():
    p = L({2: 3, -1: 1}, "q")
    assert p.evaluate(2) == Fraction(12) + Fraction(1, 2)
    assert p.reverse() == L({-2: 3, 1: 1}, "q")


def test_json_roundtrip_poly():
    p = L({3: 12345678901234567890, -2: -7}, "q")
    assert LaurentPoly.from_json(p.to_json()) == p


# ---------------------------------------------------------------------------
# univariate rational functions
# ---------------------------------------------------------------------------

def test_rational_normalization():
    q = "q"
    num = L({3: 1, 0: -1}, q)          # q^3 - 1
    den = L({1: 1, 0: -1}, q)          # q - 1
    r = RationalUni(num, den)
    assert r.is_laurent()
    assert r.as_laurent() == L({2: 1, 1: 1, 0: 1}, q)

    r2 = RationalUni(L({1: 2, 0: 2}, q), L({0: 4}, q))
    assert r2.num == L({1: 1, 0: 1}, q)
    assert r2.den == L({0: 2}, q)

    r3 = RationalUni(L({0: 1}, q), L({1: -1, 0: 1}, q))
    assert r3.den.leading_coeff() > 0


def test_rational_arithmetic_random():
    rng = random.Random(3)
    for _ in range(40):
        a = rand_poly(rng, "q", 2)
        b = rand_poly(rng, "q", 2)
        c = rand_poly(rng, "q", 2)
        if b.is_zero() or c.is_zero():
            continue
        x = RationalUni(a, b)
        y = RationalUni(b, c)
        z = x * y + y
        pt = Fraction(7, 3)
        try:
            expected = x.evaluate(pt) * y.evaluate(pt) + y.evaluate(pt)
        except ZeroDivisionError:
            continue
        assert z.evaluate(pt) == expected


def test_rational_degree():
    r = RationalUni(L({2: 1, 0: 1}, "q"), L({2: 5, 1: 1}, "q"))
    assert r.degree() == 0


# ---------------------------------------------------------------------------
# two-variable rational functions
# ---------------------------------------------------------------------------

def one_over(a):
    return BiRational({(0, 0): 1}, den=[(a, 1)])


def test_birational_trivial_adds():
    from amzeta.exact_algebra import birational_add
    x = one_over(1)
    assert birational_add(x, BiRational.zero()) == x
    assert birational_add(one_over(1), -one_over(1)) == BiRational.zero()


def test_birational_distinct_factor_sum():
    # (q-1)/(q^2-t) + (q-1)/(q-t): denominator stays (q^2-t)(q-t)
    qm1 = LaurentPoly("q", {1: 1, 0: -1})
    x = BiRational.from_q_poly(qm1).over_factor(2)
    y = BiRational.from_q_poly(qm1).over_factor(1)
    z = x + y
    assert dict(z.den) == {1: 1, 2: 1}
    # cross-multiplication against the unreduced sum:
    # num = (q-1)(q-t) + (q-1)(q^2-t) = q^3 - q + t(2 - 2q)
    unreduced = BiRational(
        {(3, 0): 1, (1, 0): -1, (1, 1): -2, (0, 1): 2},
        den=[(1, 1), (2, 1)])
    assert z == unreduced
    assert z.cross_equal(unreduced)


def test_birational_reduction_preserves_value():
    rng = random.Random(5)
    for trial in range(120):
        terms = []
        for _ in range(rng.randint(2, 4)):
            num = {(rng.randint(-2, 3), rng.randint(-2, 2)):
                   rng.randint(-3, 3) for _ in range(rng.randint(1, 4))}
            den = [(rng.randint(1, 3), rng.randint(1, 2))]
            terms.append(BiRational(num, (rng.randint(-2, 2),
                                          rng.randint(-2, 2)), den))
        # mix in products so reducible numerators actually appear
        if trial % 3 == 0 and not terms[0].is_zero():
            terms.append(terms[0] * BiRational({(rng.randint(1, 3), 0): 1,
                                                (0, 1): -1}))
        total = BiRational.zero()
        for t in terms:
            total = total + t
        q0, t0 = Fraction(7), Fraction(3, 2)
        expected = sum((t.evaluate(q0, t0) for t in terms), Fraction(0))
        assert total.evaluate(q0, t0) == expected
        # equality is canonical: rebuilding from the unreduced cross sum
        # must give the identical object
        assert total == BiRational(total.num, total.unit, total.den)


def test_birational_laurent_numerator_normalization():
    # a numerator living at negative t-exponents must not be corrupted by
    # the reduction pass
    x = BiRational({(0, -1): 1}, (0, 0), [(1, 1)])      # t^-1 / (q - t)
    assert x.num == {(0, 0): 1} and x.unit == (0, 1)
    assert dict(x.den) == {1: 1}
    assert x.evaluate(5, Fraction(1, 2)) == Fraction(1, Fraction(9, 4))
    # (q - t) t^-1 / (q - t) reduces fully to t^-1
    y = BiRational({(1, -1): 1, (0, 0): -1}, (0, 0), [(1, 1)])
    assert y == BiRational({(0, 0): 1}, (0, 1), ())


def test_birational_mul_pow_shift():
    x = one_over(2)
    y = x * x
    assert dict(y.den) == {2: 2}
    sh = x.shift_s(3)   # 1/(q^2 - q^-3 t) = q^3/(q^5 - t)
    assert sh == BiRational({(3, 0): 1}, den=[(5, 1)])


def test_invert_vars_on_simple_value():
    # x = 1/(q - t);  x(q^-1, t^-1) = qt/(t - q) = -qt/(q - t)
    x = one_over(1)
    inv = x.invert_vars()
    assert inv == BiRational({(1, 1): -1}, den=[(1, 1)])
    q0, t0 = Fraction(5), Fraction(2)
    assert inv.evaluate(q0, t0) == x.evaluate(Fraction(1, 5), Fraction(1, 2))


def test_expand_in_t_examples():
    x = one_over(1)
    assert x.expand_in_t(5, 2) == [Fraction(1, 5), Fraction(1, 25),
                                   Fraction(1, 125)]
    c = BiRational.const(9)
    assert c.expand_in_t(5, 2) == [Fraction(9), Fraction(0), Fraction(0)]


def test_expand_in_t_pole_at_zero_rejected():
    x = BiRational({(0, 0): 1}, (0, 1), ())     # 1/t
    with pytest.raises(PreconditionError):
        x.expand_in_t(5, 2)


def test_substitute_t_qpower():
    # (q^3 - t)/(q - t) at t = q^2 -> (q^3 - q^2)/(q - q^2) = -q
    x = BiRational({(3, 0): 1, (0, 1): -1}, den=[(1, 1)])
    r = x.substitute_t_qpower(2)
    assert r == RationalUni.from_laurent(LaurentPoly("q", {1: -1}))
    with pytest.raises(PreconditionError):
        x.substitute_t_qpower(1)


def test_birational_json_roundtrip():
    x = BiRational({(2, 1): 3, (0, 0): -1}, (1, -2), [(2, 1), (3, 2)])
    assert BiRational.from_json(x.to_json()) == x


# ---------------------------------------------------------------------------
# truncated multivariate series
# ---------------------------------------------------------------------------

def const_series(nvars, bound, k):
    return MultiSeries(nvars, bound,
                       {(0,) * nvars: RationalUni.const("L", k)})


def test_series_div_self():
    rng = random.Random(13)
    coeffs = {}
    for v in [(0,), (1,), (2,), (3,)]:
        coeffs[v] = RationalUni.const("L", rng.randint(1, 5))
    f = MultiSeries(1, 3, coeffs)
    assert series_div(f, f) == MultiSeries.one(1, 3)


def test_series_div_geometric():
    one = MultiSeries.one(1, 3)
    den = MultiSeries(1, 3, {(0,): RationalUni.one("L"),
                             (1,): RationalUni.const("L", -1)})
    res = series_div(one, den)
    assert all(res.coeff((k,)).is_one() for k in range(4))


def test_series_mul_div_roundtrip():
    rng = random.Random(17)
    for _ in range(10):
        a = MultiSeries(2, 3, {
            v: RationalUni.const("L", rng.randint(-3, 3))
            for v in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 0)]})
        b = MultiSeries(2, 3, {
            v: RationalUni.const("L", rng.randint(-3, 3))
            for v in [(0, 0), (1, 0), (0, 2)]})
        if b.coeff((0, 0)).is_zero():
            continue
        assert series_div(series_mul(a, b), b) == a


def test_series_div_zero_constant_rejected():
    one = MultiSeries.one(1, 2)
    bad = MultiSeries(1, 2, {(1,): RationalUni.one("L")})
    with pytest.raises(PreconditionError):
        series_div(one, bad)
