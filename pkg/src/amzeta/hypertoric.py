"""Motivic class of the variety attached to a central essential
arrangement, together with a finite-field moment-map-fiber oracle.

The class is the Laurent polynomial obtained by clearing (L-1)^m from
L^(n-m) * sum_F nu(F, top) L^|F|; failure to clear is a hard error.  The
oracle counts pairs (v, w) in F_p^(2n) with sum v_i w_i a_i = xi for a
generic xi and certifies count / (p-1)^m = class(p) in the unimodular
essential case.
"""

from __future__ import annotations

import itertools

from .arrangement import (
    Arrangement,
    FlatLattice,
    rank_mod_p,
    structural_flags,
)
from .errors import (
    BudgetExceededError,
    InvariantError,
    NotDivisibleError,
    PreconditionError,
)
from .exact_algebra import LaurentPoly, exact_div


class HypertoricClass:
    """Class polynomial plus the smoothness bookkeeping around it."""

    __slots__ = ("arrangement", "value", "unimodular", "formal")

    def __init__(self, arrangement, value, unimodular):
        self.arrangement = arrangement
        self.value = value
        self.unimodular = unimodular
        # without unimodularity the defining formula is evaluated formally
        self.formal = not unimodular


def hypertoric_class(arrangement: Arrangement,
                     lat: FlatLattice) -> HypertoricClass:
    flags = structural_flags(arrangement)
    if not flags["essential"]:
        raise PreconditionError("class formula needs an essential arrangement")
    n, m = arrangement.n, arrangement.m
    acc = LaurentPoly.zero("L")
    for i, f in enumerate(lat.flats):
        acc = acc + LaurentPoly.monomial("L", len(f), lat.mobius(i, lat.top))
    try:
        cleared = exact_div(acc, LaurentPoly("L", {1: 1, 0: -1}) ** m)
    except NotDivisibleError as exc:
        raise InvariantError(
            f"(L-1)^{m} does not divide the flat sum") from exc
    value = LaurentPoly.monomial("L", n - m) * cleared
    if n >= m and not value.is_zero() and value.low_degree() < 0:
        raise InvariantError("class has negative exponents with n >= m")
    return HypertoricClass(arrangement, value, flags["unimodular"])


def e_polynomial(cls: HypertoricClass) -> LaurentPoly:
    """Specialize L to the single variable u (standing for the product of
    the two refinement variables)."""
    if not cls.value.is_polynomial():
        raise PreconditionError("class has negative exponents")
    return cls.value.rename("u")


# ---------------------------------------------------------------------------
# finite-field fiber oracle
# ---------------------------------------------------------------------------

def xi_is_generic(arrangement: Arrangement, lat: FlatLattice, p: int,
                  xi) -> bool:
    """xi must avoid the F_p-span of every proper flat's normals."""
    xi = [x % p for x in xi]
    if not any(xi):
        return False
    for i, f in enumerate(lat.flats):
        if i == lat.top:
            continue
        rows = arrangement.rows(f)
        if rank_mod_p(rows + [xi], p) == rank_mod_p(rows, p):
            return False
    return True


def find_generic_xi(arrangement: Arrangement, lat: FlatLattice, p: int):
    """First generic vector in lexicographic order; exists for admissible p."""
    for xi in itertools.product(range(p), repeat=arrangement.m):
        if xi_is_generic(arrangement, lat, p, xi):
            return xi
    raise PreconditionError(f"no generic vector mod {p}")


def count_moment_fiber(arrangement: Arrangement, lat: FlatLattice, p: int,
                       xi, budget: int = 10 ** 8,
                       method: str = "auto") -> int:
    """|{(v, w) in F_p^2n : sum v_i w_i a_i = xi}| for generic xi."""
    flags = structural_flags(arrangement)
    if p <= flags["max_abs_minor"]:
        raise PreconditionError(
            f"prime {p} not larger than max |minor| {flags['max_abs_minor']}")
    if not xi_is_generic(arrangement, lat, p, xi):
        raise PreconditionError(f"{tuple(xi)} is not generic mod {p}")
    n, m = arrangement.n, arrangement.m
    xi = tuple(x % p for x in xi)
    if method == "auto":
        method = "direct" if p ** (2 * n) <= 10 ** 6 else "convolution"
    if method == "direct":
        if p ** (2 * n) > budget:
            raise BudgetExceededError("direct fiber enumeration over budget")
        count = 0
        rows = [tuple(x % p for x in r) for r in arrangement.normals]
        for vw in itertools.product(range(p), repeat=2 * n):
            v, w = vw[:n], vw[n:]
            image = [0] * m
            for i in range(n):
                c = v[i] * w[i]
                if c % p:
                    for k in range(m):
                        image[k] += c * rows[i][k]
            if tuple(x % p for x in image) == xi:
                count += 1
        return count
    if method != "convolution":
        raise PreconditionError(f"unknown method {method!r}")
    # products v_i w_i are distributed as: 0 with weight 2p-1, each unit
    # with weight p-1; convolve the weighted sums lambda_i a_i over F_p^m
    if p ** n * p ** m > budget:
        raise BudgetExceededError("convolution fiber count over budget")
    rows = [tuple(x % p for x in r) for r in arrangement.normals]
    states = {(0,) * m: 1}
    for i in range(n):
        nxt = {}
        for state, ways in states.items():
            for lam in range(p):
                weight = (2 * p - 1) if lam == 0 else (p - 1)
                new = tuple((s + lam * a) % p for s, a in zip(state, rows[i]))
                nxt[new] = nxt.get(new, 0) + ways * weight
        states = nxt
    return states.get(xi, 0)
