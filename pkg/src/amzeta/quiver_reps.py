"""Counting one-dimensional indecomposable representations of a graph over
rings of finite depth, the normalized limit, brute-force oracles, and the
bridge to the arrangement-side numerator polynomial.

A representation assigns a scalar x_e in Z/p^alpha to every edge; it is
indecomposable exactly when the edges with x_e != 0 span a connected
subgraph.  Grouping by edge valuations gives the finite-depth polynomial

  A(alpha) = sum over nested spanning subgraphs G_1 <= ... <= G_alpha with
             G_alpha connected of (q-1)^b(G_alpha) q^(sum_{k<alpha} b(G_k)),

with b the first Betti number; the normalized limit over 2-edge-connected
graphs is

  A = (1 - 1/q)^b(G) * sum over strict chains G'_1 < ... < G'_beta = G of
      prod_{j=1}^{beta-1} 1/(q^(b(G) - b(G'_j)) - 1).
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from .arrangement import build_lattice, graphic_arrangement
from .errors import BudgetExceededError, InvariantError, PreconditionError
from .exact_algebra import LaurentPoly, RationalUni
from .quiver_varieties import Quiver


# ---------------------------------------------------------------------------
# subgraph combinatorics (spanning subgraphs = edge subsets)
# ---------------------------------------------------------------------------

def components(quiver: Quiver, edge_mask: int) -> int:
    parent = list(range(quiver.vertices))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for idx, (s, t) in enumerate(quiver.edges):
        if edge_mask >> idx & 1:
            parent[find(s - 1)] = find(t - 1)
    return len({find(v) for v in range(quiver.vertices)})


def betti(quiver: Quiver, edge_mask: int) -> int:
    """b = components - vertices + edges of the spanning subgraph."""
    edges = bin(edge_mask).count("1")
    return components(quiver, edge_mask) - quiver.vertices + edges


def is_connected(quiver: Quiver, edge_mask=None) -> bool:
    if edge_mask is None:
        edge_mask = (1 << len(quiver.edges)) - 1
    return components(quiver, edge_mask) == 1


def is_two_edge_connected(quiver: Quiver) -> bool:
    """Connected and bridgeless; parallel edges are distinct edges."""
    full = (1 << len(quiver.edges)) - 1
    if not is_connected(quiver, full):
        return False
    return all(is_connected(quiver, full & ~(1 << i))
               for i in range(len(quiver.edges)))


# ---------------------------------------------------------------------------
# the finite-depth polynomial
# ---------------------------------------------------------------------------

def a_gamma_alpha(quiver: Quiver, alpha: int) -> LaurentPoly:
    """Polynomial count of indecomposable classes at depth alpha."""
    if alpha < 1:
        raise PreconditionError("depth must be >= 1")
    if not is_connected(quiver):
        raise PreconditionError("graph must be connected")
    ne = len(quiver.edges)
    masks = list(range(1 << ne))
    b = {mask: betti(quiver, mask) for mask in masks}
    subsets = {mask: [s for s in masks if s & mask == s] for mask in masks}
    qpoly = LaurentPoly.monomial
    # level[mask] = sum over nested chains ending at mask of q^(sum of
    # b-values of the earlier levels)
    level = {mask: LaurentPoly.one("q") for mask in masks}
    for _ in range(alpha - 1):
        level = {
            mask: sum((level[s] * qpoly("q", b[s]) for s in subsets[mask]),
                      LaurentPoly.zero("q"))
            for mask in masks
        }
    qm1 = LaurentPoly("q", {1: 1, 0: -1})
    total = LaurentPoly.zero("q")
    for mask in masks:
        if components(quiver, mask) == 1:
            total = total + level[mask] * qm1 ** b[mask]
    if total.degree() != alpha * b[(1 << ne) - 1]:
        raise InvariantError("depth polynomial has wrong degree")
    return total


def a_gamma_limit(quiver: Quiver) -> RationalUni:
    """Normalized limit of q^(-alpha b) A(alpha) for 2-edge-connected graphs."""
    if not is_two_edge_connected(quiver):
        raise PreconditionError(
            "graph has a bridge: the normalized limit diverges")
    ne = len(quiver.edges)
    full = (1 << ne) - 1
    b_top = betti(quiver, full)
    masks = list(range(1 << ne))
    b = {mask: betti(quiver, mask) for mask in masks}

    def weight(mask):
        return RationalUni(
            LaurentPoly.one("q"),
            LaurentPoly("q", {b_top - b[mask]: 1, 0: -1}))

    # chains of proper subgraphs below the full graph, each weighted by
    # 1/(q^(b(G)-b(G'_j)) - 1); accumulated bottom-up
    acc = {}
    for mask in sorted(masks, key=lambda m: bin(m).count("1")):
        if mask == full:
            continue
        inner = RationalUni.one("q")
        for sub in masks:
            if sub != mask and sub & mask == sub and sub in acc:
                inner = inner + acc[sub]
        acc[mask] = weight(mask) * inner
    total = RationalUni.one("q")
    for mask, val in acc.items():
        total = total + val
    norm = RationalUni(LaurentPoly("q", {0: 1, -1: -1}),
                       LaurentPoly.one("q")) ** b_top
    return norm * total


# ---------------------------------------------------------------------------
# brute-force oracles
# ---------------------------------------------------------------------------

def _unit_weights(p: int, alpha: int):
    """Count of elements of Z/p^alpha with each valuation 0..alpha."""
    return [(p - 1) * p ** (alpha - 1 - v) if v < alpha else 1
            for v in range(alpha + 1)]


def brute_force_indec(quiver: Quiver, p: int, alpha: int,
                      method: str = "grouped",
                      budget: int = 10 ** 7) -> int:
    """Number of isomorphism classes of indecomposable all-ones
    representations over Z/p^alpha.

    grouped: enumerate edge valuation patterns and weight each by the
    automorphism count (q-1)^c_alpha q^(sum c_k) via the orbit-count lemma.
    raw: enumerate representations and canonicalize orbits explicitly.
    """
    if alpha < 1:
        raise PreconditionError("depth must be >= 1")
    if not is_connected(quiver):
        raise PreconditionError("graph must be connected")
    ne = len(quiver.edges)
    if method == "raw":
        return _brute_force_raw(quiver, p, alpha, budget)
    if method != "grouped":
        raise PreconditionError(f"unknown method {method!r}")
    if (alpha + 1) ** ne > budget:
        raise BudgetExceededError("valuation pattern count over budget")
    weights = _unit_weights(p, alpha)
    group_order = ((p - 1) * p ** (alpha - 1)) ** quiver.vertices
    total = 0
    for pattern in itertools.product(range(alpha + 1), repeat=ne):
        support = 0
        for i, v in enumerate(pattern):
            if v < alpha:
                support |= 1 << i
        if components(quiver, support) != 1:
            continue
        count = 1
        for v in pattern:
            count *= weights[v]
        aut = (p - 1) ** components(quiver, support)
        for k in range(1, alpha):
            mask = 0
            for i, v in enumerate(pattern):
                if v < k:
                    mask |= 1 << i
            aut *= p ** components(quiver, mask)
        total += count * aut
    classes = Fraction(total, group_order)
    if classes.denominator != 1:
        raise InvariantError("orbit count is not an integer")
    return int(classes)


def _brute_force_raw(quiver: Quiver, p: int, alpha: int, budget: int) -> int:
    ne = len(quiver.edges)
    mod = p ** alpha
    units = [u for u in range(1, mod) if u % p]
    if mod ** ne * len(units) ** quiver.vertices > budget:
        raise BudgetExceededError("raw orbit enumeration over budget")
    seen = set()
    classes = 0
    for rep in itertools.product(range(mod), repeat=ne):
        support = 0
        for i, x in enumerate(rep):
            if x:
                support |= 1 << i
        if components(quiver, support) != 1:
            continue
        if rep in seen:
            continue
        classes += 1
        for g in itertools.product(units, repeat=quiver.vertices):
            moved = tuple(
                x * g[t - 1] * pow(g[s - 1], -1, mod) % mod
                for x, (s, t) in zip(rep, quiver.edges))
            seen.add(moved)
    return classes


# ---------------------------------------------------------------------------
# the bridge to the arrangement numerator
# ---------------------------------------------------------------------------

class LastOneReport:
    __slots__ = ("quiver", "lhs", "rhs", "equal")

    def __init__(self, quiver, lhs, rhs, equal):
        self.quiver = quiver
        self.lhs = lhs
        self.rhs = rhs
        self.equal = equal


def check_lastone(quiver: Quiver) -> LastOneReport:
    """Compare (q^b - 1)^(V-1) * A(q) with the numerator polynomial of the
    graphic arrangement.  A mismatch is reported, never raised: the
    equality is conjectural."""
    if not is_two_edge_connected(quiver):
        raise PreconditionError("check requires a 2-edge-connected graph")
    limit = a_gamma_limit(quiver)
    b_top = betti(quiver, (1 << len(quiver.edges)) - 1)
    lhs = limit * RationalUni.from_laurent(
        LaurentPoly("q", {b_top: 1, 0: -1})) ** (quiver.vertices - 1)
    arr = graphic_arrangement(quiver)
    from .residues import b_prime
    rhs = b_prime(arr, build_lattice(arr)).b_prime
    equal = lhs == RationalUni.from_laurent(rhs)
    return LastOneReport(quiver, lhs, rhs, equal)
