import random

import pytest

from amzeta.errors import InvariantError, ParseError, PreconditionError
from amzeta.exact_algebra import LaurentPoly, RationalUni
from amzeta.quiver_varieties import (
    Quiver,
    dimension_pairing,
    hua_term,
    nakajima_gf,
    partition_inner,
    partitions,
)
from amzeta.reference import hilbert_series_coefficients, jordan_quiver


def L(coeffs):
    return LaurentPoly("L", coeffs)


def test_partitions_enumeration():
    assert list(partitions(0)) == [()]
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1),
                                   (1, 1, 1, 1)]


def test_partition_inner_examples():
    assert partition_inner((1,), (1,)) == 1
    assert partition_inner((2, 1), ()) == 0
    assert partition_inner((2, 1), (2, 1)) == 5


def test_partition_inner_symmetric_random():
    rng = random.Random(23)
    pool = [lam for n in range(6) for lam in partitions(n)]
    for _ in range(50):
        a, b = rng.choice(pool), rng.choice(pool)
        assert partition_inner(a, b) == partition_inner(b, a)
        assert partition_inner(a, b) >= 0


def test_quiver_validation():
    with pytest.raises(ParseError):
        Quiver(2, [(1, 3)])
    q = Quiver(2, [(1, 2), (1, 2), (2, 2)])
    assert Quiver.from_json(q.to_json()) == q


def test_hua_term_examples():
    jordan = jordan_quiver()
    assert hua_term(jordan, (1,), ((),)) == RationalUni.one("L")
    term = hua_term(jordan, (1,), ((1,),))
    # L^2 / (L (1 - L^-1)) = L^2 / (L - 1)
    assert term == RationalUni(L({2: 1}), L({1: 1, 0: -1}))
    term0 = hua_term(jordan, (0,), ((1,),))
    assert term0 == RationalUni(L({1: 1}), L({1: 1, 0: -1}))


def test_dimension_pairing_jordan():
    jordan = jordan_quiver()
    for n in range(1, 5):
        assert dimension_pairing(jordan, (n,), (1,)) == -n


def test_series_is_one_for_zero_framing():
    for quiver in [jordan_quiver(), Quiver(2, [(1, 2)])]:
        gf = nakajima_gf(quiver, (0,) * quiver.vertices, 3)
        assert gf.series.coeff((0,) * quiver.vertices).is_one()
        assert all(v == (0,) * quiver.vertices for v in gf.series.coeffs)


def test_jordan_small_classes():
    gf = nakajima_gf(jordan_quiver(), (1,), 2)
    assert gf.classes[(1,)] == L({2: 1})
    assert gf.classes[(2,)] == L({4: 1, 3: 1})


def test_jordan_matches_product_expansion_through_degree_six():
    bound = 6
    gf = nakajima_gf(jordan_quiver(), (1,), bound)
    expected = hilbert_series_coefficients(bound)
    for n in range(bound + 1):
        # the product's T^n coefficient equals class * L^(-n)
        got = gf.series.coeff((n,))
        assert got == RationalUni.from_laurent(expected[n])
        if n:
            assert gf.classes[(n,)] == expected[n] * L({n: 1})


def test_edgeless_vertex_classes():
    # one vertex, no arrows, one-dimensional framing: only the dimension-1
    # class survives (a point); higher coefficients cancel to zero exactly
    quiver = Quiver(1, [])
    gf = nakajima_gf(quiver, (1,), 4)
    assert gf.classes[(1,)] == L({0: 1})
    assert all(v in ((0,), (1,)) for v in gf.classes)


def test_all_extracted_classes_are_laurent():
    quiver = Quiver(2, [(1, 2)])
    gf = nakajima_gf(quiver, (1, 0), 3)
    for v, cls in gf.classes.items():
        assert isinstance(cls, LaurentPoly)


def test_framing_length_checked():
    with pytest.raises(PreconditionError):
        nakajima_gf(jordan_quiver(), (1, 1), 2)
