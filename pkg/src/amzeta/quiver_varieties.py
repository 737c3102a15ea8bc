"""Partition combinatorics and the generating function packaging the
classes attached to a framed quiver.

For a quiver with vertex set I, framing vector w and truncation bound D,
the series in variables T_i (i in I) is a quotient of two partition sums:
the coefficient of T^v, multiplied by L^(-d(v,w)) with
d(v,w) = sum_i v_i^2 - sum_e v_s(e) v_t(e) - sum_i v_i w_i,
must reduce to a Laurent polynomial in L; failure to reduce is a hard
internal error.
"""

from __future__ import annotations

import itertools

from .errors import InvariantError, ParseError, PreconditionError
from .exact_algebra import LaurentPoly, MultiSeries, RationalUni, series_div


# ---------------------------------------------------------------------------
# partitions
# ---------------------------------------------------------------------------

def partitions(n: int, max_part=None):
    """Weakly decreasing tuples summing to n, lexicographically descending."""
    if n == 0:
        yield ()
        return
    if max_part is None or max_part > n:
        max_part = n
    for first in range(max_part, 0, -1):
        for rest in partitions(n - first, first):
            yield (first,) + rest


def multiplicities(lam) -> dict:
    out = {}
    for part in lam:
        out[part] = out.get(part, 0) + 1
    return out


def partition_inner(lam, mu) -> int:
    """sum_{i,j} min(i,j) m_i(lam) m_j(mu); symmetric and nonnegative."""
    ml, mm = multiplicities(lam), multiplicities(mu)
    return sum(min(i, j) * a * b
               for i, a in ml.items() for j, b in mm.items())


# ---------------------------------------------------------------------------
# quivers
# ---------------------------------------------------------------------------

class Quiver:
    """Directed multigraph on vertices 1..k; loops and parallels allowed."""

    __slots__ = ("vertices", "edges")

    def __init__(self, vertices: int, edges):
        if vertices < 1:
            raise ParseError("quiver needs at least one vertex")
        clean = []
        for e in edges:
            s, t = int(e[0]), int(e[1])
            if not (1 <= s <= vertices and 1 <= t <= vertices):
                raise ParseError(f"edge ({s},{t}) out of range")
            clean.append((s, t))
        self.vertices = vertices
        self.edges = tuple(clean)

    def __eq__(self, other):
        return (isinstance(other, Quiver)
                and (self.vertices, self.edges) == (other.vertices, other.edges))

    def __repr__(self):
        return f"Quiver({self.vertices}, {list(self.edges)})"

    def to_json(self) -> dict:
        return {"vertices": self.vertices,
                "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, obj) -> "Quiver":
        try:
            return cls(int(obj["vertices"]), obj["edges"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad Quiver JSON: {exc}") from exc


def dimension_pairing(quiver: Quiver, v, w) -> int:
    """d(v,w) = sum v_i^2 - sum_e v_s v_t - sum v_i w_i."""
    total = sum(x * x for x in v)
    for s, t in quiver.edges:
        total -= v[s - 1] * v[t - 1]
    total -= sum(x * y for x, y in zip(v, w))
    return total


# ---------------------------------------------------------------------------
# the partition sum
# ---------------------------------------------------------------------------

def hua_term(quiver: Quiver, w, blam) -> RationalUni:
    """One multipartition summand: products of L^<.,.> over edges and
    framings divided by the centralizer class of the multipartition."""
    exp = 0
    for s, t in quiver.edges:
        exp += partition_inner(blam[s - 1], blam[t - 1])
    for i, lam in enumerate(blam):
        exp += partition_inner((1,) * w[i], lam)
    num = LaurentPoly.monomial("L", exp)
    den = LaurentPoly.one("L")
    for lam in blam:
        den = den * LaurentPoly.monomial("L", partition_inner(lam, lam))
        for mult in multiplicities(lam).values():
            for j in range(1, mult + 1):
                den = den * LaurentPoly("L", {0: 1, -j: -1})
    return RationalUni(num, den)


def _vectors_of_total(nvars, total):
    if nvars == 1:
        yield (total,)
        return
    for head in range(total + 1):
        for rest in _vectors_of_total(nvars - 1, total - head):
            yield (head,) + rest


def _partition_sum(quiver: Quiver, w, bound: int) -> MultiSeries:
    nvars = quiver.vertices
    coeffs = {}
    for total in range(bound + 1):
        for v in _vectors_of_total(nvars, total):
            acc = RationalUni.zero("L")
            pools = [list(partitions(x)) for x in v]
            for blam in itertools.product(*pools):
                acc = acc + hua_term(quiver, w, blam)
            if not acc.is_zero():
                coeffs[v] = acc
    return MultiSeries(nvars, bound, coeffs)


class NakajimaGF:
    """Quotient series and the Laurent-polynomial classes extracted from it."""

    __slots__ = ("quiver", "w", "bound", "series", "classes")

    def __init__(self, quiver, w, bound, series, classes):
        self.quiver = quiver
        self.w = tuple(w)
        self.bound = bound
        self.series = series
        self.classes = classes


def nakajima_gf(quiver: Quiver, w, bound: int) -> NakajimaGF:
    """Build the quotient series and extract one class per coefficient."""
    w = tuple(int(x) for x in w)
    if len(w) != quiver.vertices:
        raise PreconditionError("framing vector length != vertex count")
    if any(x < 0 for x in w):
        raise PreconditionError("framing vector must be nonnegative")
    if bound < 0:
        raise PreconditionError("truncation bound must be >= 0")
    num = _partition_sum(quiver, w, bound)
    den = _partition_sum(quiver, (0,) * quiver.vertices, bound)
    series = series_div(num, den)
    if not series.coeff((0,) * quiver.vertices).is_one():
        raise InvariantError("series constant term is not 1")
    classes = {}
    for v in sorted(series.coeffs):
        d = dimension_pairing(quiver, v, w)
        cls = series.coeff(v) * RationalUni.from_laurent(
            LaurentPoly.monomial("L", -d))
        try:
            classes[v] = cls.as_laurent()
        except InvariantError as exc:
            raise InvariantError(
                f"coefficient at {v} is not a Laurent polynomial") from exc
    return NakajimaGF(quiver, w, bound, series, classes)
