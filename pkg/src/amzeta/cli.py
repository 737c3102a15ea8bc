"""Command-line front end.

One subcommand per computation; JSON on stdout (deterministic: sorted
keys, coefficients as decimal strings), human-oriented notes on stderr.
Exit codes: 0 ok, 1 parse error, 2 precondition violation, 3 budget
exceeded, 4 internal invariant violation / failed verification.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys

from .arrangement import (
    DEFAULT_FLAT_BUDGET,
    Arrangement,
    build_lattice,
    char_poly_of,
    count_complement_Fq,
    deletion,
    graphic_arrangement,
    restriction,
    structural_flags,
)
from .errors import AmzError, InvariantError, ParseError
from .exact_algebra import LaurentPoly, RationalUni
from .hypertoric import (
    count_moment_fiber,
    e_polynomial,
    find_generic_xi,
    hypertoric_class,
)
from .igusa import (
    functional_equation_check,
    igusa_chain,
    igusa_recursion,
    pole_report,
)
from .open_derham import OdrInput, odr_class
from .padic_oracle import count_solutions_mod, limit_probe, poincare_check
from .quiver_reps import (
    a_gamma_alpha,
    a_gamma_limit,
    brute_force_indec,
    check_lastone,
    is_two_edge_connected,
)
from .quiver_varieties import Quiver, nakajima_gf
from . import reference
from .residues import b_mu, b_prime

DEFAULT_BUDGET = 10 ** 9


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ParseError(message)


def _load_json(path):
    try:
        with open(path) as handle:
            return json.load(handle)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}") from exc


def _arrangement(path) -> Arrangement:
    return Arrangement.from_json(_load_json(path))


def _quiver(path) -> Quiver:
    return Quiver.from_json(_load_json(path))


def _emit(payload):
    print(json.dumps(payload, sort_keys=True, indent=2))


def _flat_json(flat):
    return sorted(i + 1 for i in flat)


def _parse_flat(text, n):
    if text in ("empty", ""):
        return frozenset()
    if text == "all":
        return frozenset(range(n))
    try:
        indices = [int(x) for x in text.split(",")]
    except ValueError as exc:
        raise ParseError(f"bad flat spec {text!r}") from exc
    if any(not 1 <= i <= n for i in indices):
        raise ParseError(f"flat indices out of range in {text!r}")
    return frozenset(i - 1 for i in indices)


def _budget(args, kind: str = "states"):
    """Work budget: flats default 10^6, brute-force states default 10^9;
    AMZ_BUDGET overrides both, --budget overrides the states budget."""
    env = os.environ.get("AMZ_BUDGET")
    if env is not None:
        try:
            return int(env)
        except ValueError as exc:
            raise ParseError(f"AMZ_BUDGET={env!r} is not an integer") from exc
    if kind == "flats":
        return DEFAULT_FLAT_BUDGET
    return args.budget


# ---------------------------------------------------------------------------
# subcommand handlers
# ---------------------------------------------------------------------------

def cmd_lattice(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    _emit({
        "flats": [_flat_json(f) for f in lat.flats],
        "ranks": list(lat.ranks),
        "deltas": [lat.delta(i) for i in range(len(lat.flats))],
        "mobius_to_top": [str(lat.mobius(i, lat.top))
                          for i in range(len(lat.flats))],
        "flags": structural_flags(arr),
    })


def cmd_chi(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    chi = lat.char_poly()
    if args.format == "plain":
        print(chi.to_str())
    else:
        _emit(chi.to_json())


def cmd_mobius(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    lower = _parse_flat(args.lower, arr.n)
    upper = _parse_flat(args.upper, arr.n)
    _emit({"lower": _flat_json(lower), "upper": _flat_json(upper),
           "mobius": str(lat.mobius(lower, upper))})


def cmd_hypertoric(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    cls = hypertoric_class(arr, lat)
    payload = {"class": cls.value.to_json(), "formal": cls.formal,
               "unimodular": cls.unimodular}
    if cls.value.is_polynomial():
        payload["e_polynomial"] = e_polynomial(cls).to_json()
    _emit(payload)


def cmd_nakajima(args):
    quiver = _quiver(args.input)
    w = [int(x) for x in args.w.split(",")]
    gf = nakajima_gf(quiver, w, args.depth)
    _emit({"classes": {",".join(map(str, v)): cls.to_json()
                       for v, cls in gf.classes.items()}})


def cmd_odr(args):
    orders = [int(x) for x in args.orders.split(",")]
    cls = odr_class(OdrInput(args.n, orders))
    _emit({"class": cls.value.to_json(),
           "dimension": cls.input.dimension(),
           "positive_coeffs_observed": cls.positive_coeffs})


def cmd_igusa(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    compute = igusa_recursion if args.method == "recursion" else igusa_chain
    zeta = compute(arr, lat)
    if args.format == "latex":
        print(zeta.value.to_latex())
    elif args.format == "plain":
        print(zeta.value.to_plain())
    else:
        _emit(zeta.value.to_json())


def cmd_poles(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    zeta = igusa_chain(arr, lat)
    report = pole_report(zeta, arr, lat)
    payload = report.to_json()
    payload["functional_equation"] = functional_equation_check(zeta)
    _emit(payload)


def cmd_bmu(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    value = b_mu(arr, lat)
    if args.format == "plain":
        print(value.to_str())
    else:
        _emit(value.to_json())


def cmd_bprime(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    data = b_prime(arr, lat)
    if args.format == "plain":
        print(data.b_prime.to_str())
        return
    _emit({
        "poly": {str(e): str(c) for e, c in data.b_prime.items()},
        "palindromic": data.palindromic,
        "degree": data.degree,
        "declared_degree": data.declared_degree,
        "degree_discrepancy": data.degree_discrepancy,
        "positive_coeffs_observed": data.positive_coeffs,
    })


def cmd_quiver_indec(args):
    quiver = _quiver(args.input)
    poly = a_gamma_alpha(quiver, args.alpha)
    payload = {"poly": poly.to_json(), "alpha": args.alpha}
    if args.p is not None:
        count = brute_force_indec(quiver, args.p, args.alpha,
                                  budget=_budget(args))
        payload["brute_force"] = {"p": args.p, "count": str(count)}
        if count != poly.evaluate(args.p):
            raise InvariantError("brute force disagrees with the polynomial")
    _emit(payload)


def cmd_quiver_limit(args):
    quiver = _quiver(args.input)
    value = a_gamma_limit(quiver)
    if args.format == "plain":
        print(value.to_str())
    else:
        _emit(value.to_json())


def cmd_check_lastone(args):
    quiver = _quiver(args.input)
    report = check_lastone(quiver)
    _emit({
        "equal": report.equal,
        "lhs": report.lhs.to_json(),
        "rhs": report.rhs.to_json(),
        "status": "observed" if report.equal else "violated",
    })


def cmd_oracle(args):
    arr = _arrangement(args.input)
    lat = build_lattice(arr, max_flats=_budget(args, "flats"))
    counts = [count_solutions_mod(arr, args.p, alpha, budget=_budget(args))
              for alpha in range(1, args.alpha + 1)]
    probe = limit_probe(arr, lat, args.p, args.alpha, budget=_budget(args))
    payload = {
        "p": args.p,
        "counts": [{"alpha": c.alpha, "count": str(c.count),
                    "normalized": str(c.normalized)} for c in counts],
        "converges": probe.converges,
    }
    if probe.converges:
        payload["limit"] = str(probe.limit)
        payload["distances"] = [str(d) for d in probe.distances]
    _emit(payload)


# ---------------------------------------------------------------------------
# verification suites
# ---------------------------------------------------------------------------

def _suite_paper(args):
    checks = []

    def zeta_of(arr):
        lat = build_lattice(arr)
        return igusa_chain(arr, lat), lat

    def origin_zetas():
        for n in range(1, 6):
            z, _ = zeta_of(reference.n_origins(n))
            assert z.value == reference.zeta_n_origins(n)
    checks.append(("igusa rank-1 origin family n=1..5", origin_zetas))

    def triangle_zeta():
        z, _ = zeta_of(reference.triangle())
        assert z.value == reference.zeta_triangle()
    checks.append(("igusa triangle", triangle_zeta))

    def six_zeta():
        z, _ = zeta_of(reference.six_normals_rank3())
        assert z.value == reference.zeta_six_normals()
        assert z.value.pole_orders() == {3: 1, 5: 1, 6: 3}
    checks.append(("igusa six-normal rank-3", six_zeta))

    def toric_classes():
        for n in range(1, 5):
            arr = reference.n_origins(n)
            cls = hypertoric_class(arr, build_lattice(arr))
            expected = (LaurentPoly.monomial("L", n - 1)
                        * LaurentPoly("L", {e: 1 for e in range(n)}))
            assert cls.value == expected
    checks.append(("hypertoric origin family classes", toric_classes))

    def odr_values():
        assert odr_class(OdrInput(1, (2, 5))).value == LaurentPoly.one("L")
        for d in (2, 3, 4):
            for k in range(2 * d, 9):
                orders = (k - 2 * (d - 1),) + (2,) * (d - 1)
                got = odr_class(OdrInput(2, orders)).value
                assert got == reference.odr_rank2_expected(d, k)
    checks.append(("open de Rham rank-2 family", odr_values))

    def one_loop_series():
        gf = nakajima_gf(reference.jordan_quiver(), (1,), 5)
        expected = reference.hilbert_series_coefficients(5)
        for n in range(6):
            assert gf.series.coeff((n,)) == RationalUni.from_laurent(
                expected[n])
        assert gf.classes[(1,)] == LaurentPoly("L", {2: 1})
        assert gf.classes[(2,)] == LaurentPoly("L", {4: 1, 3: 1})
    checks.append(("one-loop quiver series vs product expansion",
                   one_loop_series))

    def residue_values():
        arr = reference.triangle()
        lat = build_lattice(arr)
        assert b_mu(arr, lat) == reference.bmu_triangle()
        assert b_prime(arr, lat).b_prime == reference.EULERIAN[3]
        arr4 = graphic_arrangement(reference.cycle_quiver(4))
        assert b_prime(arr4, build_lattice(arr4)).b_prime == \
            reference.EULERIAN[4]
        arrd = reference.triangle_doubled()
        latd = build_lattice(arrd)
        assert b_mu(arrd, latd) == reference.bmu_triangle_doubled()
        arr6 = reference.six_normals_rank3()
        assert b_prime(arr6, build_lattice(arr6)).b_prime == \
            reference.SIX_NORMALS_BPRIME
        for n in (2, 3):
            arrn = reference.n_origins(n)
            assert b_mu(arrn, build_lattice(arrn)) == \
                reference.bmu_n_origins(n)
    checks.append(("residues and numerators", residue_values))

    def divisor_counts():
        arr = reference.n_origins(1)
        for alpha in (1, 2, 3):
            got = count_solutions_mod(arr, 5, alpha).count
            assert got == (alpha + 1) * 5 ** alpha - alpha * 5 ** (alpha - 1)
    checks.append(("single-origin depth counts", divisor_counts))

    def rep_limits():
        assert a_gamma_limit(reference.cycle_quiver(3)) == \
            reference.a_limit_cycle(3)
        assert a_gamma_limit(reference.cycle_quiver(4)) == \
            reference.a_limit_cycle(4)
        assert a_gamma_limit(reference.cycle3_doubled_quiver()) == \
            reference.a_limit_cycle3_doubled()
        assert a_gamma_alpha(reference.cycle_quiver(3), 1) == \
            LaurentPoly("q", {1: 1, 0: 2})
    checks.append(("indecomposable count limits", rep_limits))

    return checks, []


def _suite_oracle(args):
    p = args.p or 5
    alpha = args.alpha or 2
    checks = []

    def origin1():
        arr = reference.n_origins(1)
        poincare_check(arr, build_lattice(arr), p, max(alpha, 3))
    checks.append((f"series vs counts, single origin, p={p}", origin1))

    def origin2():
        arr = reference.n_origins(2)
        poincare_check(arr, build_lattice(arr), p, alpha)
    checks.append((f"series vs counts, two origins, p={p}", origin2))

    def tri():
        arr = reference.triangle()
        poincare_check(arr, build_lattice(arr), p, alpha)
    checks.append((f"series vs counts, triangle, p={p}", tri))

    def probes():
        arr = reference.triangle()
        probe = limit_probe(arr, build_lattice(arr), p, alpha)
        assert probe.converges and probe.distances[-1] < probe.distances[0]
    checks.append((f"normalized limit probe, triangle, p={p}", probes))

    return checks, []


def _random_arrangement(rng, require_essential=False):
    while True:
        m = rng.randint(1, 3)
        n = rng.randint(1, 5)
        rows = [tuple(rng.randint(-2, 2) for _ in range(m))
                for _ in range(n)]
        rows = [r for r in rows if any(r)]
        if not rows:
            continue
        arr = Arrangement(rows)
        if require_essential and arr.rank() != m:
            continue
        return arr


def _next_prime_above(bound):
    p = max(bound, 1) + 1
    while any(p % d == 0 for d in range(2, int(p ** 0.5) + 1)):
        p += 1
    return p


def _suite_properties(args):
    rng = random.Random(args.seed)
    arrangements = [_random_arrangement(rng, require_essential=True)
                    for _ in range(20)]
    checks = []
    conjectures = []

    def core(arr):
        def run():
            lat = build_lattice(arr)
            chi = lat.char_poly()
            assert chi.degree() == arr.m and chi.leading_coeff() == 1
            from .exact_algebra import exact_div
            exact_div(chi, LaurentPoly("q", {1: 1, 0: -1}))
            for fi in range(len(lat.flats)):
                for gi in range(len(lat.flats)):
                    if lat.leq(fi, gi):
                        assert lat.mobius(fi, gi) == \
                            lat.mobius_via_chains(fi, gi)
                        r = lat.ranks[gi] - lat.ranks[fi]
                        assert (-1) ** r * lat.mobius(fi, gi) > 0
            for i in range(arr.n):
                fi = min((f for f in lat.flats if i in f), key=len)
                deleted, _ = deletion(arr, fi)
                restricted, _ = restriction(arr, fi)
                assert chi == (char_poly_of(deleted, ambient_m=arr.m)
                               - char_poly_of(restricted,
                                              ambient_m=arr.m
                                              - lat.rank_of(fi)))
            p = _next_prime_above(structural_flags(arr)["max_abs_minor"])
            assert count_complement_Fq(arr, p) == chi.evaluate(p)
            zeta = igusa_chain(arr, lat)
            assert zeta.value == igusa_recursion(arr, lat).value
            assert functional_equation_check(zeta)
            pole_report(zeta, arr, lat)
        return run

    for k, arr in enumerate(arrangements):
        checks.append((f"random arrangement #{k + 1} invariants", core(arr)))

    def positivity():
        seen = violated = 0
        for arr in arrangements:
            flags = structural_flags(arr)
            if not (flags["essential"] and flags["coloop_free"]):
                continue
            seen += 1
            if not b_prime(arr, build_lattice(arr)).positive_coeffs:
                violated += 1
        return seen, violated
    conjectures.append(("positivity of the cleared numerator", positivity))

    def bridge():
        seen = violated = 0
        for quiver in [reference.cycle_quiver(3), reference.cycle_quiver(4),
                       reference.cycle3_doubled_quiver()]:
            if is_two_edge_connected(quiver):
                seen += 1
                if not check_lastone(quiver).equal:
                    violated += 1
        return seen, violated
    conjectures.append(("graph-count vs numerator bridge", bridge))

    return checks, conjectures


def cmd_verify(args):
    suites = {"paper": _suite_paper, "oracle": _suite_oracle,
              "properties": _suite_properties}
    checks, conjectures = suites[args.suite](args)
    lines = []
    failed = 0
    for name, fn in checks:
        try:
            fn()
            lines.append({"check": name, "status": "ok"})
            print(f"ok        {name}", file=sys.stderr)
        except AssertionError as exc:
            failed += 1
            lines.append({"check": name, "status": "FAIL",
                          "detail": str(exc)})
            print(f"FAIL      {name}: {exc}", file=sys.stderr)
        except AmzError as exc:
            failed += 1
            lines.append({"check": name, "status": "FAIL",
                          "detail": str(exc)})
            print(f"FAIL      {name}: {exc}", file=sys.stderr)
    conjecture_lines = []
    for name, fn in conjectures:
        seen, violated = fn()
        status = "observed" if violated == 0 else "VIOLATED"
        conjecture_lines.append({"conjecture": name, "cases": seen,
                                 "violations": violated, "status": status})
        print(f"{status:9} {name} ({seen} cases)", file=sys.stderr)
    _emit({"suite": args.suite, "checks": lines,
           "conjectures": conjecture_lines,
           "failed": failed})
    return 4 if failed else 0


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

def build_parser() -> _Parser:
    parser = _Parser(prog="amz", description=__doc__)
    parser.add_argument("--threads", type=int, default=1,
                        help="cap on worker threads (execution is "
                             "deterministic regardless)")
    parser.add_argument("--budget", type=int, default=DEFAULT_BUDGET,
                        help="work budget for enumerations; the AMZ_BUDGET "
                             "environment variable overrides this")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        p = sub.add_parser(name, **kwargs)
        p.set_defaults(handler=fn)
        return p

    p = add("lattice", cmd_lattice, help="flats, ranks, Mobius data")
    p.add_argument("input")

    p = add("chi", cmd_chi, help="characteristic polynomial")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "plain"], default="json")

    p = add("mobius", cmd_mobius, help="Mobius value between two flats")
    p.add_argument("input")
    p.add_argument("--lower", default="empty",
                   help="comma list of 1-based indices, 'empty' or 'all'")
    p.add_argument("--upper", default="all")

    p = add("hypertoric", cmd_hypertoric, help="class of the arrangement")
    p.add_argument("input")

    p = add("nakajima", cmd_nakajima, help="quiver-variety classes")
    p.add_argument("input")
    p.add_argument("--w", required=True, help="comma list framing vector")
    p.add_argument("--depth", type=int, default=5)

    p = add("odr", cmd_odr, help="class for prescribed pole orders")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--orders", required=True, help="comma list, each >= 2")

    p = add("igusa", cmd_igusa, help="zeta function of the moment map")
    p.add_argument("input")
    p.add_argument("--method", choices=["chain", "recursion"],
                   default="chain")
    p.add_argument("--format", choices=["json", "latex", "plain"],
                   default="json")

    p = add("poles", cmd_poles, help="pole orders and criteria")
    p.add_argument("input")

    p = add("bmu", cmd_bmu, help="normalized limit of solution counts")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "plain"], default="json")

    p = add("bprime", cmd_bprime, help="cleared numerator polynomial")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "plain"], default="json")

    p = add("quiver-indec", cmd_quiver_indec,
            help="indecomposable class count polynomial at fixed depth")
    p.add_argument("input")
    p.add_argument("--alpha", type=int, required=True)
    p.add_argument("--p", type=int)

    p = add("quiver-limit", cmd_quiver_limit,
            help="normalized limit of indecomposable counts")
    p.add_argument("input")
    p.add_argument("--format", choices=["json", "plain"], default="json")

    p = add("check-lastone", cmd_check_lastone,
            help="compare graph counts against the arrangement numerator")
    p.add_argument("input")

    p = add("oracle", cmd_oracle, help="congruence counts modulo p^alpha")
    p.add_argument("input")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--alpha", type=int, required=True)

    p = add("verify", cmd_verify, help="run a verification suite")
    p.add_argument("--suite", choices=["paper", "oracle", "properties"],
                   required=True,
                   help="paper: transcribed reference values; oracle: "
                        "series vs brute-force counts; properties: "
                        "invariants on random arrangements")
    p.add_argument("--p", type=int)
    p.add_argument("--alpha", type=int)
    p.add_argument("--seed", type=int, default=20260808)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.threads < 1:
            raise ParseError("--threads must be >= 1")
        result = args.handler(args)
        return int(result) if result is not None else 0
    except AmzError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code
    except BrokenPipeError:
        return 0


if __name__ == "__main__":
    sys.exit(main())
