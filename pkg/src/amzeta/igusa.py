"""Zeta function of the moment map of a central essential arrangement.

Two independent computations are provided and must agree exactly:

  igusa_chain      dynamic programming over the lattice of flats that
                   resums the chain formula
                     I = (q^m-1)/(q^m-t)
                       + pref * sum_{I != top} W(I) q^(rk I - m),
                   with W(top) = 1 and
                     W(I) = sum_{J > I} W(J) chi_[I,J](q) * t/(q^dI - t).

  igusa_recursion  a recursion over localizations: each proper flat I
                   contributes through the zeta data of the arrangement
                   formed by its own hyperplanes, with a shifted variable.

Everywhere t = q^(-s), so q^(s+a) - 1 = (q^a - t)/t and a denominator
factor (q^a - t) of multiplicity mu is a pole of order mu at s = -a.
"""

from __future__ import annotations

from .arrangement import (
    Arrangement,
    FlatLattice,
    build_lattice,
    localization,
    structural_flags,
)
from .errors import InvariantError, PreconditionError
from .exact_algebra import BiRational


class IgusaZeta:
    __slots__ = ("arrangement", "lattice", "value")

    def __init__(self, arrangement, lattice, value):
        self.arrangement = arrangement
        self.lattice = lattice
        self.value = value


def _require_essential(arrangement: Arrangement):
    flags = structural_flags(arrangement)
    if not flags["essential"]:
        raise PreconditionError(
            "arrangement is not essential; restrict to the span of the "
            "normals first")
    return flags


def _leading_term(m: int) -> BiRational:
    # (q^m - 1)/(q^m - t)
    return BiRational({(m, 0): 1, (0, 0): -1}, den=[(m, 1)])


def _prefactor(m: int) -> BiRational:
    # (1 - q^s)/(1 - q^(-(s+m))) = q^m (t - 1) / (t (q^m - t))
    return BiRational({(m, 1): 1, (m, 0): -1}, (0, 1), [(m, 1)])


def _check_pole_set(value: BiRational, lat: FlatLattice):
    candidates = {lat.delta(i) for i in range(len(lat.flats))}
    for a, _ in value.den:
        if a not in candidates:
            raise InvariantError(
                f"reduced denominator factor q^{a} - t outside the "
                "candidate pole set")


def igusa_chain(arrangement: Arrangement, lat: FlatLattice) -> IgusaZeta:
    """Resummed chain formula via one pass over the lattice."""
    _require_essential(arrangement)
    m = arrangement.m
    order = sorted(range(len(lat.flats)),
                   key=lambda i: -len(lat.flats[i]))
    W = {lat.top: BiRational.one()}
    for i in order:
        if i == lat.top:
            continue
        acc = BiRational.zero()
        for j in order:
            if j != i and lat.leq(i, j):
                acc = acc + W[j] * BiRational.from_q_poly(
                    lat.char_poly_interval(i, j))
        W[i] = acc * BiRational({(0, 1): 1}, den=[(lat.delta(i), 1)])
    total = BiRational.zero()
    for i in order:
        if i != lat.top:
            total = total + W[i].times_unit(lat.ranks[i] - m, 0)
    value = _leading_term(m) + _prefactor(m) * total
    _check_pole_set(value, lat)
    return IgusaZeta(arrangement, lat, value)


def igusa_recursion(arrangement: Arrangement, lat: FlatLattice) -> IgusaZeta:
    """Localization recursion; an independent derivation of the same value.

    For the arrangement attached to a flat F (its hyperplanes in their own
    span) the auxiliary series satisfies J'(empty) = 0 and

      J'(F) = q^(-rk F) * sum_{J < F} q^(rk J - rk F) chi_[J,F](q)
               * t/(q^dJ - t) * (q^(rk J) J'(J)|_{s -> s + dJ - rk J} + 1),

    with dJ = |F| - |J| + rk J, and the zeta function is

      I = (q^m-1)/(q^m-t) + q^(2m) (t-1)/(t (q^m-t)) * J'(top).

    The localization arrangements are materialized explicitly and their
    lattices are checked against the corresponding order ideals.
    """
    _require_essential(arrangement)
    m = arrangement.m
    order = sorted(range(len(lat.flats)), key=lambda i: len(lat.flats[i]))
    jprime = {}
    for i in order:
        flat = lat.flats[i]
        if not flat:
            jprime[i] = BiRational.zero()
            continue
        loc, idx = localization(arrangement, flat)
        if loc.rank() != lat.ranks[i] or loc.n != len(flat):
            raise InvariantError("localization shape mismatch")
        sub = build_lattice(loc)
        mapped = {frozenset(idx[k] for k in g) for g in sub.flats}
        if mapped != {g for g in lat.flats if g <= flat}:
            raise InvariantError(
                "localization lattice differs from the order ideal")
        rk_i = lat.ranks[i]
        acc = BiRational.zero()
        for j in order:
            if j == i or not lat.leq(j, i):
                continue
            rk_j = lat.ranks[j]
            d_j = len(flat) - len(lat.flats[j]) + rk_j
            chi = lat.char_poly_interval(j, i)
            inner = jprime[j].shift_s(d_j - rk_j).times_unit(rk_j, 0) + 1
            term = (BiRational.from_q_poly(chi)
                    * BiRational({(0, 1): 1}, den=[(d_j, 1)])
                    * inner).times_unit(rk_j - rk_i, 0)
            acc = acc + term
        jprime[i] = acc.times_unit(-rk_i, 0)
    tail = BiRational({(2 * m, 1): 1, (2 * m, 0): -1}, (0, 1), [(m, 1)])
    value = _leading_term(m) + tail * jprime[lat.top]
    _check_pole_set(value, lat)
    return IgusaZeta(arrangement, lat, value)


# ---------------------------------------------------------------------------
# pole structure
# ---------------------------------------------------------------------------

class LevelSet:
    """All flats sharing one candidate pole -delta, with the chain data
    sufficient for the order criterion."""

    __slots__ = ("eps", "members", "length", "minimal", "tops", "criterion")

    def __init__(self, eps, members, length, minimal, tops, criterion):
        self.eps = eps
        self.members = members
        self.length = length          # longest chain length inside the set
        self.minimal = minimal
        self.tops = tops              # tops of maximum-length chains
        self.criterion = criterion    # sum of nu(top, lattice top)


def level_sets(lat: FlatLattice) -> dict:
    """Group flats by -delta and analyse each group."""
    groups = {}
    for i in range(len(lat.flats)):
        groups.setdefault(-lat.delta(i), []).append(i)
    out = {}
    for eps, members in groups.items():
        mset = set(members)
        # interval property: anything between two members is a member
        for a in members:
            for b in members:
                if lat.leq(a, b):
                    for h in lat.between(a, b):
                        if h not in mset:
                            raise InvariantError(
                                "level set is not interval-closed")
        minimal = [a for a in members
                   if not any(b != a and lat.leq(b, a) for b in members)]
        for a in members:
            below = [j for j in minimal if lat.leq(j, a)]
            if len(below) != 1:
                raise InvariantError(
                    "member contains more than one minimal flat")
        # longest chains inside the set, measured from the minimal flats
        depth = {}
        for a in sorted(members, key=lambda i: len(lat.flats[i])):
            preds = [depth[b] for b in members
                     if b != a and lat.leq(b, a)]
            depth[a] = max(preds) + 1 if preds else 0
        length = max(depth.values())
        tops = sorted(a for a in members if depth[a] == length)
        criterion = sum(lat.mobius(a, lat.top) for a in tops)
        out[eps] = LevelSet(eps, sorted(members), length, minimal, tops,
                            criterion)
    return out


class PoleEntry:
    __slots__ = ("eps", "predicted_bound", "criterion", "actual_order",
                 "distinguished", "criterion_inconclusive")

    def __init__(self, eps, predicted_bound, criterion, actual_order,
                 distinguished, criterion_inconclusive):
        self.eps = eps
        self.predicted_bound = predicted_bound
        self.criterion = criterion
        self.actual_order = actual_order
        self.distinguished = distinguished
        self.criterion_inconclusive = criterion_inconclusive

    def to_json(self):
        return {
            "eps": self.eps,
            "predicted_order_bound": self.predicted_bound,
            "criterion": str(self.criterion),
            "actual_order": self.actual_order,
            "distinguished": sorted(self.distinguished),
            "criterion_inconclusive": self.criterion_inconclusive,
        }


class PoleReport:
    __slots__ = ("entries",)

    def __init__(self, entries):
        self.entries = entries

    def entry(self, eps) -> PoleEntry:
        return next(e for e in self.entries if e.eps == eps)

    def to_json(self):
        return {"poles": [e.to_json() for e in self.entries]}


def pole_report(zeta: IgusaZeta, arrangement: Arrangement,
                lat: FlatLattice) -> PoleReport:
    """Compare the reduced denominator against the lattice predictions.

    The criterion is sufficient only: a nonzero criterion forces the full
    order; a zero criterion decides nothing and is flagged inconclusive
    when the actual order falls short of the bound.
    """
    m = arrangement.m
    n = arrangement.n
    levels = level_sets(lat)
    orders = zeta.value.pole_orders()
    entries = []
    candidates = sorted(levels, reverse=True)
    second = max((e for e in candidates if e != -m), default=None)
    for eps in candidates:
        lv = levels[eps]
        bound = lv.length + 1
        actual = orders.get(-eps, 0)
        if actual > bound:
            raise InvariantError(
                f"pole order {actual} at {eps} exceeds bound {bound}")
        distinguished = set()
        if eps == -m:
            distinguished.add("-m")
        if eps == -n:
            distinguished.add("-n")
        if second is not None and eps == second:
            distinguished.add("second-largest")
        if eps != -m and lv.criterion != 0 and actual != bound:
            raise InvariantError(
                f"nonzero criterion at {eps} but order {actual} < {bound}")
        if distinguished and actual != bound:
            raise InvariantError(
                f"distinguished candidate {eps} has order {actual}, "
                f"expected {bound}")
        inconclusive = (eps != -m and lv.criterion == 0)
        entries.append(PoleEntry(eps, bound, lv.criterion, actual,
                                 distinguished, inconclusive))
    return PoleReport(entries)


def functional_equation_check(zeta: IgusaZeta) -> bool:
    """Degree-2 homogeneity: inverting both variables multiplies by t^2."""
    inverted = zeta.value.invert_vars()
    return inverted == zeta.value.times_unit(0, 2)
