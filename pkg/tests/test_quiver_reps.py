from fractions import Fraction

import pytest

from amzeta.errors import PreconditionError
from amzeta.exact_algebra import LaurentPoly
from amzeta.quiver_reps import (
    a_gamma_alpha,
    a_gamma_limit,
    betti,
    brute_force_indec,
    check_lastone,
    is_two_edge_connected,
)
from amzeta.quiver_varieties import Quiver
from amzeta.reference import (
    a_limit_cycle,
    a_limit_cycle3_doubled,
    cycle3_doubled_quiver,
    cycle_quiver,
    single_edge_quiver,
)


def q(coeffs):
    return LaurentPoly("q", coeffs)


def test_betti_and_connectivity():
    tri = cycle_quiver(3)
    assert betti(tri, 0b111) == 1
    assert betti(tri, 0b011) == 0
    assert is_two_edge_connected(tri)
    assert not is_two_edge_connected(single_edge_quiver())
    assert is_two_edge_connected(Quiver(2, [(1, 2), (1, 2)]))


def test_depth_one_triangle():
    assert a_gamma_alpha(cycle_quiver(3), 1) == q({1: 1, 0: 2})


def test_depth_one_single_edge():
    assert a_gamma_alpha(single_edge_quiver(), 1) == q({0: 1})


def test_depth_two_single_edge():
    assert a_gamma_alpha(single_edge_quiver(), 2) == q({0: 2})


def test_degree_equals_depth_times_betti():
    for quiver in [cycle_quiver(3), cycle_quiver(4), cycle3_doubled_quiver()]:
        b = betti(quiver, (1 << len(quiver.edges)) - 1)
        for alpha in (1, 2, 3):
            assert a_gamma_alpha(quiver, alpha).degree() == alpha * b


def test_disconnected_rejected():
    with pytest.raises(PreconditionError):
        a_gamma_alpha(Quiver(4, [(1, 2), (3, 4)]), 1)


# ---------------------------------------------------------------------------
# brute-force agreement
# ---------------------------------------------------------------------------

def test_brute_force_triangle_depth_one():
    tri = cycle_quiver(3)
    assert brute_force_indec(tri, 3, 1) == 5
    assert brute_force_indec(tri, 5, 1) == 7


def test_brute_force_raw_agrees_small():
    tri = cycle_quiver(3)
    for p in (3, 5):
        assert (brute_force_indec(tri, p, 1, method="raw")
                == brute_force_indec(tri, p, 1))
    edge = single_edge_quiver()
    assert brute_force_indec(edge, 3, 2, method="raw") == 2
    assert brute_force_indec(edge, 3, 2) == 2


def test_brute_force_matches_polynomial():
    for quiver in [cycle_quiver(3), cycle3_doubled_quiver()]:
        for p in (3, 5):
            for alpha in (1, 2):
                poly = a_gamma_alpha(quiver, alpha)
                assert brute_force_indec(quiver, p, alpha) == poly.evaluate(p)


def test_orbit_count_identity():
    # sum of automorphism counts over indecomposables = |G| * class count
    import itertools
    from amzeta.quiver_reps import components
    tri = cycle_quiver(3)
    for p, alpha in [(3, 1), (3, 2), (5, 1)]:
        mod = p ** alpha
        total = 0
        for rep in itertools.product(range(mod), repeat=3):
            support = sum(1 << i for i, x in enumerate(rep) if x)
            if components(tri, support) != 1:
                continue
            aut = (p - 1) ** components(tri, support)
            for k in range(1, alpha):
                # edges of valuation < k survive at level k
                level = sum(1 << i for i, x in enumerate(rep)
                            if x % p ** k != 0)
                aut *= p ** components(tri, level)
            total += aut
        group = ((p - 1) * p ** (alpha - 1)) ** 3
        assert total == group * brute_force_indec(tri, p, alpha)


# ---------------------------------------------------------------------------
# normalized limits
# ---------------------------------------------------------------------------

def test_limit_values():
    assert a_gamma_limit(cycle_quiver(3)) == a_limit_cycle(3)
    assert a_gamma_limit(cycle_quiver(4)) == a_limit_cycle(4)
    assert a_gamma_limit(cycle3_doubled_quiver()) == a_limit_cycle3_doubled()


def test_limit_rejects_bridges():
    with pytest.raises(PreconditionError):
        a_gamma_limit(single_edge_quiver())


def test_numeric_limit_probe():
    # q^(-alpha b) A(alpha) at q=5 approaches the limit value
    quiver = cycle_quiver(3)
    lim = a_gamma_limit(quiver).evaluate(5)
    diffs = []
    for alpha in (2, 4, 6):
        val = a_gamma_alpha(quiver, alpha).evaluate(5) * Fraction(5) ** (-alpha)
        diffs.append(abs(val - lim))
    assert diffs[0] > diffs[1] > diffs[2]
    assert diffs[2] / lim < Fraction(1, 100)


# ---------------------------------------------------------------------------
# the conjectural bridge
# ---------------------------------------------------------------------------

def test_lastone_on_fixtures():
    for quiver in [cycle_quiver(3), cycle_quiver(4), cycle3_doubled_quiver()]:
        report = check_lastone(quiver)
        assert report.equal


def test_lastone_five_cycle():
    report = check_lastone(cycle_quiver(5))
    assert report.equal
    from amzeta.reference import EULERIAN
    assert report.rhs == EULERIAN[5]
