"""Brute-force counting of moment-map congruences modulo prime powers and
their exact reconciliation with the symbolic zeta function.

With 2n variables, depth-alpha counts B_alpha feed the power series
P(t) = sum B_alpha q^(-2 n alpha) t^alpha, and the zeta function satisfies
I = (P(t) - 1)(1 - 1/t) + 1, equivalently

  i_0 = 1 - p_1,   i_beta = p_beta - p_(beta+1)  (beta >= 1),

where i_beta are the t-expansion coefficients of I at q = p and
p_alpha = B_alpha p^(-2 n alpha).  The reconciliation is exact rational
arithmetic throughout; any mismatch is a pipeline-level failure.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .arrangement import Arrangement, FlatLattice, structural_flags
from .errors import BudgetExceededError, InvariantError, PreconditionError
from .igusa import IgusaZeta, igusa_chain
from .residues import b_mu


class OracleCount:
    __slots__ = ("arrangement", "p", "alpha", "count", "normalized")

    def __init__(self, arrangement, p, alpha, count):
        self.arrangement = arrangement
        self.p = p
        self.alpha = alpha
        self.count = count
        n, m = arrangement.n, arrangement.m
        self.normalized = Fraction(count, p ** (alpha * (2 * n - m)))


def product_count_table(p: int, alpha: int):
    """N[lam] = |{(z, w) in (Z/p^alpha)^2 : z w = lam}| by direct
    tabulation over all p^(2 alpha) pairs."""
    mod = p ** alpha
    table = [0] * mod
    for z in range(mod):
        for w in range(mod):
            table[z * w % mod] += 1
    return table


def count_solutions_mod(arrangement: Arrangement, p: int, alpha: int,
                        budget: int = 10 ** 8,
                        method: str = "convolution") -> OracleCount:
    """Solutions of sum x_i y_i a_i = 0 in (Z/p^alpha)^(2n)."""
    flags = structural_flags(arrangement)
    if p <= flags["max_abs_minor"]:
        raise PreconditionError(
            f"prime {p} not larger than max |minor| {flags['max_abs_minor']}")
    if alpha < 1:
        raise PreconditionError("depth must be >= 1")
    n, m = arrangement.n, arrangement.m
    mod = p ** alpha
    if method == "direct":
        if mod ** (2 * n) > budget:
            raise BudgetExceededError("direct congruence count over budget")
        count = 0
        for xy in itertools.product(range(mod), repeat=2 * n):
            x, y = xy[:n], xy[n:]
            if all(sum(x[i] * y[i] * arrangement.normals[i][k]
                       for i in range(n)) % mod == 0 for k in range(m)):
                count += 1
        return OracleCount(arrangement, p, alpha, count)
    if method != "convolution":
        raise PreconditionError(f"unknown method {method!r}")
    if mod ** n * mod ** m > budget:
        raise BudgetExceededError("convolution congruence count over budget")
    table = product_count_table(p, alpha)
    rows = [tuple(x % mod for x in r) for r in arrangement.normals]
    states = {(0,) * m: 1}
    for i in range(n):
        nxt = {}
        for state, ways in states.items():
            for lam in range(mod):
                w = table[lam]
                new = tuple((s + lam * a) % mod
                            for s, a in zip(state, rows[i]))
                nxt[new] = nxt.get(new, 0) + ways * w
        states = nxt
    return OracleCount(arrangement, p, alpha, states.get((0,) * m, 0))


# ---------------------------------------------------------------------------
# reconciliation with the symbolic zeta function
# ---------------------------------------------------------------------------

class PoincareReport:
    __slots__ = ("p", "alpha_max", "counts", "series_values", "match")

    def __init__(self, p, alpha_max, counts, series_values, match):
        self.p = p
        self.alpha_max = alpha_max
        self.counts = counts
        self.series_values = series_values
        self.match = match


def series_counts_from_zeta(zeta: IgusaZeta, p: int, alpha_max: int):
    """Normalized counts p_1..p_alpha_max recovered from the t-expansion."""
    coeffs = zeta.value.expand_in_t(p, max(alpha_max - 1, 0))
    values = []
    current = 1 - coeffs[0]
    values.append(current)
    for beta in range(1, alpha_max):
        current = current - coeffs[beta]
        values.append(current)
    return values


def poincare_check(arrangement: Arrangement, lat: FlatLattice, p: int,
                   alpha_max: int, zeta: IgusaZeta = None,
                   budget: int = 10 ** 8) -> PoincareReport:
    """Exact equality of the series coefficients with the brute-force
    normalized counts, for every depth up to alpha_max."""
    if zeta is None:
        zeta = igusa_chain(arrangement, lat)
    n = arrangement.n
    expected = series_counts_from_zeta(zeta, p, alpha_max)
    counts = [count_solutions_mod(arrangement, p, alpha, budget)
              for alpha in range(1, alpha_max + 1)]
    got = [Fraction(c.count, p ** (2 * n * c.alpha)) for c in counts]
    match = got == expected
    if not match:
        raise InvariantError(
            f"series/oracle mismatch at p={p}: {expected} vs {got}")
    return PoincareReport(p, alpha_max, counts, expected, match)


class LimitProbe:
    __slots__ = ("p", "values", "limit", "distances", "converges")

    def __init__(self, p, values, limit, distances, converges):
        self.p = p
        self.values = values
        self.limit = limit
        self.distances = distances
        self.converges = converges


def limit_probe(arrangement: Arrangement, lat: FlatLattice, p: int,
                alpha_max: int, budget: int = 10 ** 8) -> LimitProbe:
    """Normalized count sequence and exact distances to the symbolic limit.

    Convergence holds exactly when the arrangement is coloop-free; for a
    coloop the sequence diverges and the probe reports that."""
    flags = structural_flags(arrangement)
    values = [count_solutions_mod(arrangement, p, alpha, budget).normalized
              for alpha in range(1, alpha_max + 1)]
    if flags["essential"] and flags["coloop_free"]:
        limit = b_mu(arrangement, lat).evaluate(p)
        distances = [abs(v - limit) for v in values]
        return LimitProbe(p, values, limit, distances, True)
    return LimitProbe(p, values, None, None, False)
